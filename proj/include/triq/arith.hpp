#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>

namespace triq {

using Int = mpz_class;
using Rat = mpq_class;

// Raised when inputs violate a documented precondition (CLI exit code 2).
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised when a theorem-backed expectation fails at runtime (CLI exit code 3).
struct inconsistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Int powmod(const Int& base, const Int& exp, const Int& mod);

// Nonnegative root if n is a perfect square, absent otherwise.
std::optional<Int> is_perfect_square(const Int& n);

// Exact square test for rationals (num and den both squares after reduction).
std::optional<Rat> rational_square_root(const Rat& q);

// Deterministic Miller-Rabin below 3.317e24; probabilistic fallback above.
bool is_prime(const Int& n);

bool is_squarefree(const Int& n);

// Legendre symbol via Euler's criterion; p must be an odd prime.
int legendre(const Int& a, const Int& p);

// (2/p)_4 = 2^((p-1)/4) mod p reduced to +-1; requires p prime, p = 1 (mod 8).
int quartic_2_under_p(const Int& p);

// (p/2)_4 = (-1)^((p-1)/8); requires p prime, p = 1 (mod 8).
int quartic_p_under_2(const Int& p);

}  // namespace triq
