#include "triq/arith.hpp"

namespace triq {

Int powmod(const Int& base, const Int& exp, const Int& mod) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

std::optional<Int> is_perfect_square(const Int& n) {
    if (n < 0) return std::nullopt;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::optional<Rat> rational_square_root(const Rat& q) {
    if (q < 0) return std::nullopt;
    auto n = is_perfect_square(Int(q.get_num()));
    if (!n) return std::nullopt;
    auto d = is_perfect_square(Int(q.get_den()));
    if (!d) return std::nullopt;
    return Rat(*n, *d);
}

namespace {

bool miller_rabin_witness(const Int& n, const Int& a) {
    // returns true if a proves n composite
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    Int x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return false;
    }
    return true;
}

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    static const int small_primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (int p : small_primes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // The witness set {2,...,37} is a deterministic test below 3.317e24
    // (Sorenson & Webster). Inputs here are desk-scale, so this is exact.
    static const Int limit("3317044064679887385961981");
    if (n < limit) {
        for (int a : small_primes)
            if (miller_rabin_witness(n, a)) return false;
        return true;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

bool is_squarefree(const Int& n) {
    if (n == 0) return false;
    Int m = abs(n);
    if (m % 4 == 0) return false;
    for (Int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            m /= p;
            if (m % p == 0) return false;
        }
    }
    return true;
}

int legendre(const Int& a, const Int& p) {
    if (p % 2 == 0 || !is_prime(p))
        throw precondition_error("legendre: modulus must be an odd prime");
    Int r = powmod(((a % p) + p) % p, (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

int quartic_2_under_p(const Int& p) {
    if (p % 8 != 1 || !is_prime(p))
        throw precondition_error("quartic_2_under_p: p must be prime, 1 mod 8");
    Int r = powmod(2, (p - 1) / 4, p);
    if (r == 1) return 1;
    if (r == p - 1) return -1;
    throw inconsistency_error("quartic_2_under_p: 2^((p-1)/4) not +-1 mod p");
}

int quartic_p_under_2(const Int& p) {
    if (p % 8 != 1 || !is_prime(p))
        throw precondition_error("quartic_p_under_2: p must be prime, 1 mod 8");
    return mpz_tstbit(Int((p - 1) / 8).get_mpz_t(), 0) ? -1 : 1;
}

}  // namespace triq
