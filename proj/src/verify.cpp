#include "triq/verify.hpp"

#include <json.hpp>

#include <sstream>

namespace triq {

namespace {

MQElement base_unit(const FieldCtx& ctx, int slot) {
    return embed_quad_unit(fundamental_unit(ctx.radicand(slot)), ctx);
}

std::vector<MQElement> quadratic_units(const FieldCtx& ctx) {
    std::vector<MQElement> us;
    us.reserve(7);
    for (int slot = 1; slot <= 7; ++slot) us.push_back(base_unit(ctx, slot));
    return us;
}

// Determinant by Laplace expansion with memoization over column subsets;
// division-free, so singular (zero-containing) matrices are handled soundly.
Interval det_interval(const std::array<std::array<Interval*, 7>, 7>& m, mpfr_prec_t prec) {
    std::vector<std::optional<Interval>> memo(1u << 7);
    memo[0] = Interval::from_int(1, prec);

    // minor over the last popcount(mask) rows with the columns in mask
    auto minor = [&](auto&& self, unsigned mask) -> const Interval& {
        if (memo[mask]) return *memo[mask];
        int row = 7 - __builtin_popcount(mask);
        Interval acc(prec);
        int pos = 0;
        for (int col = 0; col < 7; ++col) {
            if (!(mask & (1u << col))) continue;
            Interval term = *m[row][col] * self(self, mask & ~(1u << col));
            acc = (pos & 1) ? acc - term : acc + term;
            ++pos;
        }
        memo[mask] = acc;
        return *memo[mask];
    };
    return minor(minor, (1u << 7) - 1).abs();
}

std::string pair_tag(const Int& p1, const Int& p2) {
    return "(" + p1.get_str() + "," + p2.get_str() + ")";
}

std::vector<Int> primes_1mod4_below(long bound) {
    std::vector<Int> ps;
    Int p = 2;
    while (true) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (p >= bound) break;
        if (p % 4 == 1) ps.push_back(p);
    }
    return ps;
}

MQElement pow_mq(const MQElement& x, const Int& e) {
    MQElement r = MQElement::one(x.ctx());
    for (Int i = 0; i < e; ++i) r = r * x;
    return r;
}

}  // namespace

Interval regulator(const std::vector<MQElement>& gens, mpfr_prec_t prec) {
    if (gens.size() != 7) throw precondition_error("regulator: expected 7 generators");
    // rows: the seven non-identity embeddings; the full 8-row log matrix has
    // zero column sums, so dropping the identity row leaves the magnitude
    // unchanged.
    std::vector<Interval> cells;
    cells.reserve(49);
    for (unsigned mask = 1; mask <= 7; ++mask)
        for (int j = 0; j < 7; ++j)
            cells.push_back(embed_real(gens[j], GaloisElement{mask}, prec).abs().log());
    std::array<std::array<Interval*, 7>, 7> m;
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) m[i][j] = &cells[i * 7 + j];
    return det_interval(m, prec);
}

Int verify_index(const std::vector<Generator>& fsu, const Int& p1, const Int& p2,
                 mpfr_prec_t start_prec) {
    if (fsu.size() != 7) throw precondition_error("verify_index: expected 7 generators");
    if (start_prec < 2) throw precondition_error("verify_index: bad precision");
    const FieldCtx& ctx = FieldCtx::get(p1, p2);
    std::vector<MQElement> claimed;
    claimed.reserve(7);
    for (const auto& g : fsu) claimed.push_back(g.value);
    std::vector<MQElement> quads = quadratic_units(ctx);

    for (mpfr_prec_t prec = start_prec; prec <= std::max<mpfr_prec_t>(4096, start_prec);
         prec *= 2) {
        Interval rq = regulator(quads, prec);
        Interval rf = regulator(claimed, prec);
        if (rf.contains_zero()) continue;
        Interval ratio = (rq / rf).abs();
        if (!ratio.width_below(4)) continue;
        if (auto n = ratio.unique_integer()) {
            if (*n <= 0)
                throw inconsistency_error("verify_index: nonpositive index for " +
                                          pair_tag(p1, p2));
            return *n;
        }
    }
    throw inconsistency_error("verify_index: interval never certified a unique integer for " +
                              pair_tag(p1, p2));
}

std::vector<Table1Row> run_table1() {
    struct Row {
        long p1, p2, n1, n2, n3, n4, qK;
    };
    static const Row rows[] = {
        {89, 73, 1, 1, 1, 1, 32},      {193, 97, 1, 1, 1, 1, 32},
        {41, 13, -1, -1, -1, -1, 16},  {41, 29, -1, -1, -1, -1, 32},
        {457, 41, -1, -1, -1, -1, 16}, {457, 113, -1, -1, -1, -1, 32},
        {97, 17, 1, 1, -1, 1, 32},     {281, 17, 1, 1, -1, 1, 16},
        {41, 73, -1, 1, 1, 1, 32},     {41, 337, -1, 1, 1, 1, 16},
    };
    std::vector<Table1Row> out;
    for (const Row& r : rows) {
        Table1Row t{Int(r.p1), Int(r.p2),
                    NormSignature{int(r.n1), int(r.n2), int(r.n3), int(r.n4)}, Int(r.qK)};
        try {
            CaseReport rep = analyze(t.p1, t.p2);
            std::ostringstream d;
            if (!(rep.signature == t.expected_sig))
                d << "signature (" << rep.signature.n1 << "," << rep.signature.n2 << ","
                  << rep.signature.n3 << "," << rep.signature.n4 << ")";
            if (rep.qK != t.expected_qK) d << " qK=" << rep.qK.get_str();
            t.detail = d.str();
            if (!t.detail.empty()) t.detail = rep.to_json();  // full report on mismatch
            t.pass = t.detail.empty();
        } catch (const std::exception& e) {
            t.pass = false;
            t.detail = e.what();
        }
        out.push_back(std::move(t));
    }
    return out;
}

SweepReport sweep_norm_rules(long prime_bound, long item_bound) {
    SweepReport rep{"norm_rules"};
    for (const Int& p : primes_1mod4_below(prime_bound)) {
        ++rep.checked;
        if (fundamental_unit(p).norm != -1)
            rep.violations.push_back("N(e_" + p.get_str() + ") != -1");
        if (p % 8 == 5 && fundamental_unit(2 * p).norm != -1)
            rep.violations.push_back("N(e_" + Int(2 * p).get_str() + ") != -1 (5 mod 8)");
    }
    std::vector<Int> small = primes_1mod4_below(item_bound);
    for (const Int& p : small) {
        if (p % 8 != 1) continue;
        ++rep.checked;
        int q2p = quartic_2_under_p(p);
        int qp2 = quartic_p_under_2(p);
        int n = fundamental_unit(2 * p).norm;
        if (q2p != qp2 && n != 1)
            rep.violations.push_back("N(e_" + Int(2 * p).get_str() + ") != +1 (quartic rule)");
        if (q2p == -1 && qp2 == -1 && n != -1)
            rep.violations.push_back("N(e_" + Int(2 * p).get_str() + ") != -1 (quartic rule)");
    }
    for (size_t i = 0; i < small.size(); ++i)
        for (size_t j = i + 1; j < small.size(); ++j) {
            const Int &p = small[i], &q = small[j];
            ++rep.checked;
            int spq = legendre(p, q);
            int s2p = legendre(2, p);
            int s2q = legendre(2, q);
            if (spq == -1 && fundamental_unit(p * q).norm != -1)
                rep.violations.push_back("N(e_" + Int(p * q).get_str() + ") != -1");
            int minus = (spq == -1) + (s2p == -1) + (s2q == -1);
            if (minus >= 2 && fundamental_unit(2 * p * q).norm != -1)
                rep.violations.push_back("N(e_" + Int(2 * p * q).get_str() + ") != -1");
        }
    return rep;
}

SweepReport sweep_shift_nonsquares(long dbound) {
    SweepReport rep{"shift_nonsquares"};
    for (long d = 2; d <= dbound; ++d) {
        if (!is_squarefree(d)) continue;
        QuadUnit u = fundamental_unit(d);
        if (u.norm != 1) continue;
        ++rep.checked;
        Rat x = u.x();
        for (int s : {1, -1}) {
            Rat shift = x + s;
            if (rational_square_root(2 * shift))
                rep.violations.push_back("2(x" + std::string(s > 0 ? "+" : "-") +
                                         "1) square at d=" + std::to_string(d));
            if (rational_square_root(2 * d * shift))
                rep.violations.push_back("2d(x" + std::string(s > 0 ? "+" : "-") +
                                         "1) square at d=" + std::to_string(d));
        }
    }
    return rep;
}

SweepReport sweep_sqrt_half(long pbound) {
    SweepReport rep{"sqrt_half"};
    for (const Int& p : primes_1mod4_below(pbound)) {
        if (p % 8 != 1) continue;
        QuadUnit u = fundamental_unit(2 * p);
        if (u.norm != 1) continue;
        ++rep.checked;
        try {
            SqrtHalfParams hp = lemma7_params(p);
            bool ok = hp.alpha1 * hp.alpha2 == u.b &&
                      hp.alpha1 * hp.alpha1 + 2 * p * hp.alpha2 * hp.alpha2 == 2 * u.a &&
                      hp.alpha1 * hp.alpha1 - 2 * p * hp.alpha2 * hp.alpha2 ==
                          (hp.u == 0 ? 2 : -2);
            if (!ok) rep.violations.push_back("identities fail at p=" + p.get_str());
        } catch (const std::exception& e) {
            rep.violations.push_back("p=" + p.get_str() + ": " + e.what());
        }
    }
    return rep;
}

SweepReport sweep_square_memberships(long pair_bound) {
    SweepReport rep{"square_memberships"};
    std::vector<Int> ps = primes_1mod4_below(pair_bound);
    for (size_t i = 0; i < ps.size(); ++i)
        for (size_t j = i + 1; j < ps.size(); ++j) {
            const Int &p1 = ps[i], &p2 = ps[j];
            ++rep.checked;
            const FieldCtx& ctx = FieldCtx::get(p1, p2);
            NormSignature sig = norm_signature(p1, p2);
            MQElement e2 = base_unit(ctx, 1), ep1 = base_unit(ctx, 2), ep2 = base_unit(ctx, 3);
            if (sig.n4 == -1) {
                if (!is_square(e2 * ep1 * ep2 * base_unit(ctx, 7)))
                    rep.violations.push_back("sqrt(e2 e_p1 e_p2 e_2p1p2) missing at " +
                                             pair_tag(p1, p2));
            } else {
                try {
                    SqrtFormResult f = sqrt_2p1p2_form(p1, p2);
                    if (f.contradiction)
                        rep.violations.push_back("shape trichotomy not unique at " +
                                                 pair_tag(p1, p2));
                } catch (const std::exception& e) {
                    rep.violations.push_back(pair_tag(p1, p2) + ": " + e.what());
                }
            }
            if (sig.n3 == -1 && !is_square(ep1 * ep2 * base_unit(ctx, 6)))
                rep.violations.push_back("sqrt(e_p1 e_p2 e_p1p2) missing at " + pair_tag(p1, p2));
        }
    return rep;
}

SweepReport sweep_h2_rules(long dbound) {
    SweepReport rep{"h2_rules"};
    for (long d = 2; d <= dbound; ++d) {
        if (!is_squarefree(d)) continue;
        auto rule = h2_lemma(d);
        if (!rule) continue;
        ++rep.checked;
        Int oracle = class_group_real(d).second;
        if (*rule != oracle)
            rep.violations.push_back("d=" + std::to_string(d) + ": rule " + rule->get_str() +
                                     " vs oracle " + oracle.get_str());
    }
    return rep;
}

std::vector<std::pair<Int, Int>> default_index_pairs(long bound) {
    static const long raw[][2] = {
        // golden-table pairs
        {89, 73}, {193, 97}, {41, 13}, {41, 29}, {457, 41}, {457, 113}, {97, 17}, {281, 17},
        {41, 73}, {41, 337},
        // small pairs covering the remaining dispatch families
        {5, 13}, {5, 29}, {5, 37}, {5, 53}, {13, 29}, {13, 37}, {5, 17}, {5, 41}, {13, 17},
        {17, 29},
    };
    std::vector<std::pair<Int, Int>> out;
    for (const auto& r : raw)
        if (r[0] <= bound && r[1] <= bound) out.emplace_back(r[0], r[1]);
    return out;
}

SweepReport sweep_index(const std::vector<std::pair<Int, Int>>& pairs) {
    SweepReport rep{"index_oracle"};
    for (const auto& [p1, p2] : pairs) {
        ++rep.checked;
        try {
            CaseReport r = analyze(p1, p2);
            Int idx = verify_index(r.generators, p1, p2);
            if (idx != r.qK)
                rep.violations.push_back(pair_tag(p1, p2) + ": regulator index " + idx.get_str() +
                                         " vs dispatched " + r.qK.get_str());
            // generators live in the canonical (possibly swapped) role order
            const FieldCtx& ctx = r.generators.front().value.ctx();
            for (const Generator& g : r.generators) {
                // exact algebraic norm: product over all eight embeddings
                MQElement nrm = g.value;
                for (unsigned mask = 1; mask <= 7; ++mask)
                    nrm = nrm * apply_galois(GaloisElement{mask}, g.value);
                bool rational_pm1 = nrm == MQElement::rational(ctx, 1) ||
                                    nrm == MQElement::rational(ctx, -1);
                if (!rational_pm1)
                    rep.violations.push_back(pair_tag(p1, p2) + ": " + g.label +
                                             " fails the unit norm check");
                // exact squaring of fractional-exponent generators
                bool fractional = false;
                Int k = 2;
                for (const Rat& e : g.word.exps) {
                    if (e.get_den() > 1) fractional = true;
                    if (e.get_den() > 2) k = 4;
                }
                if (!fractional) continue;
                MQElement lhs = pow_mq(g.value, k);
                MQElement rhs = MQElement::one(ctx);
                for (int b = 0; b < 7; ++b) {
                    Rat ke = k * g.word.exps[b];
                    if (ke.get_den() != 1)
                        throw inconsistency_error("non-integral word power");
                    rhs = rhs * pow_mq(base_unit(ctx, b + 1), Int(ke.get_num()));
                }
                if (!(lhs == rhs || lhs == -rhs))
                    rep.violations.push_back(pair_tag(p1, p2) + ": " + g.label +
                                             " fails exact squaring");
            }
        } catch (const std::exception& e) {
            rep.violations.push_back(pair_tag(p1, p2) + ": " + e.what());
        }
    }
    return rep;
}

SweepReport sweep_mixed_pair_rules(long pair_bound) {
    SweepReport rep{"mixed_pair_rules"};
    std::vector<Int> ps = primes_1mod4_below(pair_bound);
    for (const Int& a : ps) {
        if (a % 8 != 1) continue;
        for (const Int& b : ps) {
            if (a == b) continue;
            NormSignature sig = norm_signature(a, b);
            if (b % 8 == 5 && legendre(a, b) == -1 &&
                sig == NormSignature{-1, -1, -1, -1}) {
                ++rep.checked;
                const FieldCtx& ctx = FieldCtx::get(a, b);
                MQElement k3prod = base_unit(ctx, 1) * base_unit(ctx, 6) * base_unit(ctx, 7);
                MQElement k6prod = base_unit(ctx, 2) * base_unit(ctx, 5) * base_unit(ctx, 7);
                MQElement k5prod = base_unit(ctx, 3) * base_unit(ctx, 4) * base_unit(ctx, 7);
                if (!is_square_in_subfield(k3prod, SubfieldId::k3))
                    rep.violations.push_back("q(k3) != 2 at " + pair_tag(a, b));
                if (!is_square_in_subfield(k6prod, SubfieldId::k6))
                    rep.violations.push_back("q(k6) != 2 at " + pair_tag(a, b));
                Int expected = is_square_in_subfield(k5prod, SubfieldId::k5) ? 32 : 16;
                CaseReport r = analyze(a, b);
                if (r.qK != expected)
                    rep.violations.push_back("qK != 16*q(k5) at " + pair_tag(a, b));
            }
            if (sig == NormSignature{-1, 1, 1, 1}) {
                // shift-condition rule: 2p1(x+-1) square and 2p1(a'+-1) not
                bool big_shift = shift_square_sign(fundamental_unit(2 * a * b), 2 * a) != 0;
                bool small_shift = shift_square_sign(fundamental_unit(a * b), 2 * a) != 0;
                if (big_shift && !small_shift) {
                    ++rep.checked;
                    CaseReport r = analyze(a, b);
                    if (r.qK != 16)
                        rep.violations.push_back("qK != 16 under shift rule at " + pair_tag(a, b));
                    if (r.L.covered && r.L.qL && *r.L.qL != 32)
                        rep.violations.push_back("qL != 32 under shift rule at " + pair_tag(a, b));
                }
            }
        }
    }
    return rep;
}

std::vector<SweepReport> sweep_properties(long bound) {
    if (bound < 100) throw precondition_error("sweep_properties: bound must be >= 100");
    std::vector<SweepReport> out;
    out.push_back(sweep_norm_rules(bound, std::min(bound, 500L)));
    out.push_back(sweep_shift_nonsquares(bound));
    out.push_back(sweep_sqrt_half(bound));
    out.push_back(sweep_square_memberships(std::min(bound, 300L)));
    out.push_back(sweep_h2_rules(bound));
    out.push_back(sweep_mixed_pair_rules(std::min(bound, 500L)));
    return out;
}

std::string sweep_report_json(const std::vector<SweepReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json o;
        o["name"] = r.name;
        o["checked"] = r.checked;
        o["violations"] = r.violations;
        o["ok"] = r.ok();
        arr.push_back(std::move(o));
    }
    return arr.dump(2);
}

}  // namespace triq
