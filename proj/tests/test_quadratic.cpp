#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "triq/quadratic.hpp"

using namespace triq;

static void check_unit(long d, long a, long b, int denom, int norm) {
    QuadUnit u = fundamental_unit(d);
    CHECK(u.a == a);
    CHECK(u.b == b);
    CHECK(u.denom == denom);
    CHECK(u.norm == norm);
    CHECK(u.pell_holds());
}

TEST_CASE("fundamental units") {
    check_unit(2, 1, 1, 1, -1);
    check_unit(5, 1, 1, 2, -1);
    check_unit(13, 3, 1, 2, -1);
    check_unit(34, 35, 6, 1, 1);
    check_unit(82, 9, 1, 1, -1);
    // a unit of nontrivial height: d = 2*457*113
    CHECK(fundamental_unit(103282).pell_holds());
}

TEST_CASE("unit cache round trip") {
    fundamental_unit(34);
    std::string path = "/tmp/triq_test_units.cache";
    CHECK(save_unit_cache(path) > 0);
    clear_unit_cache();
    CHECK(load_unit_cache(path) > 0);
    check_unit(34, 35, 6, 1, 1);
    // records failing the Pell re-verification are rejected on load
    FILE* f = fopen(path.c_str(), "a");
    fputs("34 35 7 1 1\n", f);
    fclose(f);
    clear_unit_cache();
    std::size_t n = load_unit_cache(path);
    CHECK(n > 0);
    check_unit(34, 35, 6, 1, 1);  // the tampered record was not accepted
    std::remove(path.c_str());
}

TEST_CASE("norm signatures") {
    CHECK(norm_signature(41, 13) == NormSignature{-1, -1, -1, -1});
    CHECK(norm_signature(89, 73) == NormSignature{1, 1, 1, 1});
    CHECK(norm_signature(41, 73) == NormSignature{-1, 1, 1, 1});
    CHECK(norm_signature(97, 17) == NormSignature{1, 1, -1, 1});
}

TEST_CASE("class group oracles") {
    CHECK(class_group_imaginary(-1) == std::pair<Int, Int>{1, 1});
    CHECK(class_group_imaginary(-5) == std::pair<Int, Int>{2, 2});
    CHECK(class_group_imaginary(-41) == std::pair<Int, Int>{8, 8});
    CHECK(class_group_real(65) == std::pair<Int, Int>{2, 2});
    CHECK(class_group_real(10) == std::pair<Int, Int>{2, 2});
    CHECK(class_group_real(2) == std::pair<Int, Int>{1, 1});
}

TEST_CASE("h2 closed-form rules agree with the oracle where both exist") {
    for (long d : {2L, 5L, 13L, 65L, 205L, 1066L}) {
        auto rule = h2_lemma(d);
        if (rule) CHECK(*rule == class_group_real(d).second);
    }
}

TEST_CASE("shift square detection") {
    QuadUnit u34 = fundamental_unit(34);  // 35 + 6*sqrt(34), x+1 = 36
    CHECK(shift_square_sign(u34, 1) == 1);
    CHECK(shift_square_sign(u34, 2) == 0);
}
