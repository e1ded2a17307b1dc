#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "triq/verify.hpp"

using namespace triq;

namespace {
std::vector<Generator> plain_quadratic_gens(const Int& p1, const Int& p2) {
    const FieldCtx& ctx = FieldCtx::get(p1, p2);
    std::vector<Generator> gens;
    for (int s = 1; s <= 7; ++s) {
        UnitWord w;
        w.exps[s - 1] = 1;
        gens.push_back(Generator{"e" + ctx.radicand(s).get_str(), w,
                                 embed_quad_unit(fundamental_unit(ctx.radicand(s)), ctx)});
    }
    return gens;
}
}  // namespace

TEST_CASE("regulator basics") {
    auto gens = plain_quadratic_gens(41, 13);
    std::vector<MQElement> vals;
    for (const auto& g : gens) vals.push_back(g.value);
    Interval r = regulator(vals, 256);
    CHECK(r.is_positive());
    // |.| kills a sign flip
    std::vector<MQElement> flipped = vals;
    flipped[3] = -flipped[3];
    Interval r2 = regulator(flipped, 256);
    CHECK(r2.contains(Rat(0)) == r.contains(Rat(0)));
    CHECK((r / r2).contains(Rat(1)));
    // a repeated generator gives a singular matrix
    std::vector<MQElement> dup = vals;
    dup[6] = dup[0];
    CHECK(regulator(dup, 256).contains_zero());
    // row permutation leaves the magnitude unchanged
    std::vector<MQElement> perm = vals;
    std::rotate(perm.begin(), perm.begin() + 2, perm.end());
    CHECK((regulator(perm, 256) / r).contains(Rat(1)));
}

TEST_CASE("regulator-ratio index") {
    CHECK(verify_index(analyze(41, 13).generators, 41, 13) == 16);
    CHECK(verify_index(analyze(193, 97).generators, 193, 97) == 32);
    CHECK(verify_index(plain_quadratic_gens(41, 13), 41, 13) == 1);
}

TEST_CASE("golden table") {
    for (const Table1Row& r : run_table1()) {
        INFO("(", r.p1.get_str(), ",", r.p2.get_str(), ") ", r.detail);
        CHECK(r.pass);
    }
}

TEST_CASE("norm rule sweep") {
    SweepReport r = sweep_norm_rules(300, 200);
    CHECK(r.checked > 0);
    CHECK(r.ok());
}

TEST_CASE("shift non-square sweep") {
    SweepReport r = sweep_shift_nonsquares(500);
    CHECK(r.checked > 0);
    CHECK(r.ok());
}

TEST_CASE("sqrt-half sweep") {
    SweepReport r = sweep_sqrt_half(500);
    CHECK(r.checked > 0);
    CHECK(r.ok());
}

TEST_CASE("square membership sweep") {
    SweepReport r = sweep_square_memberships(100);
    CHECK(r.checked > 0);
    CHECK(r.ok());
}

TEST_CASE("h2 rule sweep") {
    SweepReport r = sweep_h2_rules(600);
    CHECK(r.checked > 0);
    CHECK(r.ok());
}

TEST_CASE("index sweep on the curated pairs") {
    auto pairs = default_index_pairs(100);
    CHECK(pairs.size() >= 8);
    SweepReport r = sweep_index(pairs);
    CHECK(r.ok());
}

TEST_CASE("mixed pair rules") {
    SweepReport r = sweep_mixed_pair_rules(200);
    CHECK(r.checked > 0);
    CHECK(r.ok());
}

TEST_CASE("four equivalent subfield memberships for 5 mod 8 pairs") {
    // for p1 = p2 = 5 (mod 8) with (p1/p2) = -1, the k3/k5/k6/k7 tests agree
    std::vector<Int> ps = {5, 13, 29, 37, 53, 61};
    for (size_t i = 0; i < ps.size(); ++i)
        for (size_t j = i + 1; j < ps.size(); ++j) {
            if (legendre(ps[i], ps[j]) != -1) continue;
            const FieldCtx& ctx = FieldCtx::get(ps[i], ps[j]);
            auto u = [&](int s) { return embed_quad_unit(fundamental_unit(ctx.radicand(s)), ctx); };
            bool in3 = is_square_in_subfield(u(1) * u(6) * u(7), SubfieldId::k3).has_value();
            bool in5 = is_square_in_subfield(u(3) * u(4) * u(7), SubfieldId::k5).has_value();
            bool in6 = is_square_in_subfield(u(2) * u(5) * u(7), SubfieldId::k6).has_value();
            bool in7 = is_square_in_subfield(u(4) * u(5) * u(6), SubfieldId::k7).has_value();
            CHECK(in3 == in5);
            CHECK(in3 == in6);
            CHECK(in3 == in7);
        }
}

TEST_CASE("report serialization") {
    std::vector<SweepReport> rs = {sweep_sqrt_half(200)};
    std::string j = sweep_report_json(rs);
    CHECK(j.find("\"name\": \"sqrt_half\"") != std::string::npos);
    CHECK(j.find("\"ok\": true") != std::string::npos);
}
