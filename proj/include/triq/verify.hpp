#pragma once

#include "triq/theorems.hpp"

namespace triq {

// |det| of the 7x7 log-embedding matrix of gens over the seven non-identity
// real embeddings (the identity row of the full 8x7 matrix is dropped; the
// rows of that matrix sum to zero, so the magnitude does not depend on the
// dropped row).
Interval regulator(const std::vector<MQElement>& gens, mpfr_prec_t prec);

// Regulator-ratio index of <gens> against the group generated by the seven
// quadratic-subfield fundamental units.  Certified: the ratio interval must
// have width < 1/4 and contain exactly one integer; the precision ladder is
// 256 -> 4096 bits and an interval that never certifies raises
// inconsistency_error (never silently rounded).
Int verify_index(const std::vector<Generator>& fsu, const Int& p1, const Int& p2,
                 mpfr_prec_t start_prec = 256);

struct Table1Row {
    Int p1, p2;
    NormSignature expected_sig;
    Int expected_qK;
    bool pass = false;
    std::string detail;  // mismatch description, empty on pass
};

std::vector<Table1Row> run_table1();

struct SweepReport {
    std::string name;
    long checked = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

// Norm rules: N(e_p) = -1 and, for p = 5 (mod 8), N(e_2p) = -1 for primes
// below prime_bound; the pair/quartic-symbol rules below item_bound.
SweepReport sweep_norm_rules(long prime_bound, long item_bound);

// For squarefree 1 < d <= dbound with N(e_d) = +1: none of 2(x+-1),
// 2d(x+-1) is a rational square.
SweepReport sweep_shift_nonsquares(long dbound);

// For p = 1 (mod 8) below pbound with N(e_2p) = +1: the (alpha1, alpha2, u)
// decomposition of sqrt(e_2p) exists and passes its exact identities.
SweepReport sweep_sqrt_half(long pbound);

// Pairs below pair_bound: the two product-unit square roots exist in K
// whenever their norm hypotheses hold, and the sqrt(e_2p1p2) shape
// trichotomy fires exactly once whenever N(e_2p1p2) = +1.
SweepReport sweep_square_memberships(long pair_bound);

// Closed-form h2 rules against the form-class-group oracle for every
// applicable squarefree d below dbound.
SweepReport sweep_h2_rules(long dbound);

// Regulator-ratio index == dispatched qK for each pair; every generator has
// rational algebraic norm +-1; every fractional-exponent generator passes
// exact squaring against its word.
SweepReport sweep_index(const std::vector<std::pair<Int, Int>>& pairs);

// The curated index-check list: every golden-table pair plus enough small
// pairs to span all three dispatch families, filtered to primes <= bound.
std::vector<std::pair<Int, Int>> default_index_pairs(long bound);

// Mixed pairs (p1 = 1, p2 = 5 mod 8, (p1/p2) = -1, all-minus signature):
// k3/k6 memberships present and qK = 16 * q(k5); and the (-1,1,1,1)
// shift-condition rule forces qK = 16, qL = 32.
SweepReport sweep_mixed_pair_rules(long pair_bound);

// All of the above at a common bound (bound >= 100).
std::vector<SweepReport> sweep_properties(long bound);

std::string sweep_report_json(const std::vector<SweepReport>& reports);

}  // namespace triq
