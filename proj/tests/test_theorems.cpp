#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "triq/theorems.hpp"

using namespace triq;

TEST_CASE("classification") {
    CaseId c = classify(41, 13);
    CHECK(c.theorem == Theorem::MT4);
    CHECK(c.item == 1);
    CHECK(!c.swapped);

    c = classify(97, 17);
    CHECK(c.theorem == Theorem::MT3);
    CHECK(c.item == 3);

    c = classify(13, 5);
    CHECK(c.theorem == Theorem::MT1A);

    // mixed pair given in the "wrong" order: roles are swapped, not rejected
    c = classify(5, 17);
    CHECK(c.swapped == false);
    c = classify(17, 5);
    CHECK((c.theorem == Theorem::MT3 || c.theorem == Theorem::MT4));
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(classify(41, 41), precondition_error);
    CHECK_THROWS_AS(classify(7, 13), precondition_error);
    CHECK_THROWS_AS(classify(15, 13), precondition_error);
    CHECK_THROWS_AS(analyze(13, 3), precondition_error);
}

TEST_CASE("sqrt(e_2p) half parameters") {
    SqrtHalfParams h = lemma7_params(17);
    CHECK(h.alpha1 == 6);
    CHECK(h.alpha2 == 1);
    CHECK(h.u == 0);
}

TEST_CASE("sqrt(e_2p1p2) shape trichotomy") {
    for (auto [a, b] : std::vector<std::pair<int, int>>{{89, 73}, {41, 73}, {97, 17}}) {
        SqrtFormResult f = sqrt_2p1p2_form(a, b);
        CHECK(!f.contradiction);
        CHECK((f.shift_sign == 1 || f.shift_sign == -1));
    }
}

TEST_CASE("biquadratic F.S.U. tables") {
    for (auto [a, b] : std::vector<std::pair<int, int>>{{41, 13}, {5, 13}, {41, 73}}) {
        for (SubfieldId sf : {SubfieldId::k1, SubfieldId::k2, SubfieldId::k3, SubfieldId::k4,
                              SubfieldId::k5, SubfieldId::k6, SubfieldId::k7}) {
            auto words = biquad_fsu(sf, a, b);
            CHECK(words.size() == 3);
        }
    }
    // k4 always contains the joint half-exponent unit
    auto words = biquad_fsu(SubfieldId::k4, 5, 13);
    int halves = 0;
    for (const auto& w : words)
        for (const auto& e : w.exps)
            if (e == Rat(1, 2)) ++halves;
    CHECK(halves == 3);
}

TEST_CASE("analyze golden pairs") {
    CaseReport r = analyze(41, 13);
    CHECK(r.qK == 16);
    CHECK(r.h2K == 2);
    CHECK(r.generators.size() == 7);
    CHECK(!r.contradiction);

    r = analyze(41, 29);
    CHECK(r.qK == 32);
    CHECK(r.resolved_by_search);
    CHECK(r.resolution.witness.has_value());

    r = analyze(5, 13);
    CHECK(r.case_id.theorem == Theorem::MT1A);
    CHECK(r.case_id.item == 3);
    CHECK(r.qK == 32);
    CHECK(r.h2K == 2);
    CHECK(*r.h2K_closed_form == 2);
    CHECK(r.L.covered);
    CHECK(*r.L.qL == 64);
    CHECK(*r.L.h2L == 16);
}

TEST_CASE("ambiguous cases resolve deterministically") {
    ResolutionRecord rec = resolve_ambiguous(classify(41, 29), 41, 29);
    CHECK(rec.searched);
    CHECK(rec.witness.has_value());
    CHECK(!rec.tried.empty());

    rec = resolve_ambiguous(classify(457, 41), 457, 41);
    CHECK(rec.searched);
    CHECK(!rec.witness.has_value());  // all candidates absent: the smaller index

    CHECK_THROWS_AS(resolve_ambiguous(CaseId{Theorem::MT3, 1, 0, false}, 89, 73),
                    precondition_error);
}

TEST_CASE("reports are deterministic") {
    std::string j1 = analyze(41, 13).to_json();
    std::string j2 = analyze(41, 13).to_json();
    CHECK(j1 == j2);
    CHECK(j1.find("\"schema\": 1") != std::string::npos);
}

TEST_CASE("ordering of 1 mod 8 pairs does not change the index") {
    for (auto [a, b] : std::vector<std::pair<int, int>>{{89, 73}, {97, 17}, {41, 337}}) {
        CHECK(analyze(a, b).qK == analyze(b, a).qK);
        CHECK(analyze(a, b).h2K == analyze(b, a).h2K);
    }
}

TEST_CASE("generator words are consistent with their values") {
    CaseReport r = analyze(97, 17);
    int fractional = 0;
    for (const auto& g : r.generators) {
        CHECK(!g.label.empty());
        for (const auto& e : g.word.exps) CHECK(e >= 0);
        for (const auto& e : g.word.exps)
            if (e.get_den() > 1) {
                ++fractional;
                break;
            }
    }
    CHECK(fractional >= 3);  // a rank-7 system needs several half-exponent units
}
