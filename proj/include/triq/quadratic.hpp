#pragma once

#include <string>
#include <utility>

#include "triq/arith.hpp"

namespace triq {

// Fundamental unit (a + b*sqrt(d))/denom of the maximal order of Q(sqrt(d)).
struct QuadUnit {
    Int d;
    Int a;
    Int b;
    int denom = 1;  // 2 only possible when d = 1 (mod 4)
    int norm = 1;

    Rat x() const { return Rat(a, denom); }
    Rat y() const { return Rat(b, denom); }
    bool pell_holds() const { return a * a - d * b * b == norm * denom * denom; }
};

// Continued-fraction computation, memoized process-wide (thread-safe).
QuadUnit fundamental_unit(const Int& d);

// Unit cache file: line-delimited "d a b denom norm" in decimal, with a
// version header. Records are re-verified on load (untrusted input).
std::size_t load_unit_cache(const std::string& path);
std::size_t save_unit_cache(const std::string& path);
void clear_unit_cache();

struct NormSignature {
    int n1, n2, n3, n4;  // N(e_2p1), N(e_2p2), N(e_p1p2), N(e_2p1p2)
    bool operator==(const NormSignature&) const = default;
};

NormSignature norm_signature(const Int& p1, const Int& p2);

enum class H2Source { lemma_rule, form_oracle };

struct ClassNumber2 {
    Int d;
    Int value;
    H2Source source;
};

// The six closed-form rules; absent when none applies.
std::optional<Int> h2_lemma(const Int& d);

// Form-class-group oracles: (h, 2-part of h).
std::pair<Int, Int> class_group_imaginary(const Int& d);
std::pair<Int, Int> class_group_real(const Int& d, const Int& disc_bound = Int(1000000));

// Lemma rule if available, otherwise the matching form oracle.
ClassNumber2 h2_of(const Int& d, const Int& disc_bound = Int(1000000));

// Whether t*(a + s) or t*(a - s) is a perfect square, where a is the stored
// numerator of u and s = 1 (integer coordinates) or 2 (half-integer
// coordinates, i.e. the doubled-coordinate form of the factorization systems).
// Returns +1 / -1 for the sign of the shift that fires, 0 if neither does.
int shift_square_sign(const QuadUnit& u, const Int& t);

}  // namespace triq
