#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "triq/arith.hpp"

using namespace triq;

TEST_CASE("powmod") {
    CHECK(powmod(2, 10, 1000) == 24);
    CHECK(powmod(3, 0, 7) == 1);
    CHECK(powmod(Int("123456789"), Int("987654321"), Int("1000000007")) ==
          Int("652541198"));
}

TEST_CASE("perfect squares") {
    CHECK(*is_perfect_square(0) == 0);
    CHECK(*is_perfect_square(144) == 12);
    CHECK(!is_perfect_square(145));
    CHECK(!is_perfect_square(-4));
    CHECK(*is_perfect_square(Int("1000000000000000000000000")) == Int("1000000000000"));
}

TEST_CASE("rational square roots") {
    CHECK(*rational_square_root(Rat(9, 4)) == Rat(3, 2));
    CHECK(!rational_square_root(Rat(8, 4)));  // reduces to 2
    CHECK(!rational_square_root(Rat(-9, 4)));
    CHECK(*rational_square_root(Rat(0)) == 0);
}

TEST_CASE("primality") {
    CHECK(is_prime(2));
    CHECK(is_prime(457));
    CHECK(!is_prime(1));
    CHECK(!is_prime(341));  // Fermat pseudoprime base 2
    CHECK(is_prime(Int("2305843009213693951")));  // 2^61 - 1
}

TEST_CASE("squarefree") {
    CHECK(is_squarefree(1));
    CHECK(is_squarefree(2 * 3 * 5 * 7));
    CHECK(!is_squarefree(12));
    CHECK(!is_squarefree(49));
}

TEST_CASE("legendre symbol") {
    CHECK(legendre(3, 7) == -1);
    CHECK(legendre(5, 29) == 1);
    CHECK(legendre(41, 13) == -1);
    CHECK(legendre(14, 7) == 0);
}

TEST_CASE("quartic residue symbols") {
    // (2/p)_4 and (p/2)_4 for small p = 1 (mod 8)
    CHECK(quartic_2_under_p(17) == -1);
    CHECK(quartic_p_under_2(17) == 1);
    CHECK(quartic_2_under_p(41) == -1);
    CHECK(quartic_p_under_2(41) == -1);
    CHECK(quartic_2_under_p(73) == 1);
    CHECK(quartic_p_under_2(73) == -1);
    CHECK(quartic_2_under_p(89) == 1);
    CHECK(quartic_p_under_2(89) == -1);
}
