#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "triq/mfield.hpp"

using namespace triq;

namespace {
MQElement unit_in(const FieldCtx& ctx, int slot) {
    return embed_quad_unit(fundamental_unit(ctx.radicand(slot)), ctx);
}
}  // namespace

TEST_CASE("field context basics") {
    const FieldCtx& ctx = FieldCtx::get(41, 13);
    CHECK(ctx.radicand(0) == 1);
    CHECK(ctx.radicand(1) == 2);
    CHECK(ctx.radicand(2) == 41);
    CHECK(ctx.radicand(3) == 13);
    CHECK(ctx.radicand(7) == 2 * 41 * 13);
    CHECK(ctx.slot_of(533) == 6);
    CHECK(ctx.slot_of(7) == -1);
    CHECK(&ctx == &FieldCtx::get(41, 13));
}

TEST_CASE("ring arithmetic") {
    const FieldCtx& ctx = FieldCtx::get(5, 13);
    MQElement a(ctx);
    a.set_coeff(1, 1);  // sqrt(2)
    a.set_coeff(3, 1);  // sqrt(13)
    MQElement sq = a * a;  // 15 + 2*sqrt(26)
    CHECK(sq.coeff(0) == 15);
    CHECK(sq.coeff(5) == 2);
    CHECK(a * a.inverse() == MQElement::one(ctx));
    CHECK(a + (-a) == MQElement(ctx));
    // associativity / distributivity spot check
    MQElement b(ctx), c(ctx);
    b.set_coeff(2, Rat(1, 2));
    b.set_coeff(6, 3);
    c.set_coeff(4, 2);
    c.set_coeff(0, Rat(-7, 3));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
}

TEST_CASE("galois action and relative norms") {
    const FieldCtx& ctx = FieldCtx::get(41, 13);
    MQElement a(ctx);
    a.set_coeff(1, 1);
    a.set_coeff(2, 1);  // sqrt(2) + sqrt(41)
    MQElement t1 = apply_galois(kTau1, a);
    CHECK(t1.coeff(1) == -1);
    CHECK(t1.coeff(2) == 1);
    CHECK(apply_galois(kTau1 * kTau1, a) == a);
    // the relative norm of a unit lands in the fixed subfield, norm value +-1
    MQElement u = unit_in(ctx, 7);
    MQElement n = rel_norm(u, kTau3);
    CHECK(apply_galois(kTau3, n) == n);
}

TEST_CASE("exact square detection") {
    const FieldCtx& ctx = FieldCtx::get(5, 13);
    MQElement e5 = unit_in(ctx, 2), e13 = unit_in(ctx, 3), e65 = unit_in(ctx, 6);
    MQElement prod = e5 * e13 * e65;  // square in K since N(e_65) = -1
    auto root = is_square(prod);
    REQUIRE(root.has_value());
    CHECK(*root * *root == prod);
    CHECK(root->coeff(0) >= 0);  // canonical identity-positive choice
    CHECK(!is_square(e5));
    CHECK(!is_square(e5 * e13));
}

TEST_CASE("subfield structure") {
    const SubfieldInfo& k3 = subfield_info(SubfieldId::k3);
    CHECK(k3.slots == std::array<int, 4>{0, 1, 6, 7});
    const FieldCtx& ctx = FieldCtx::get(5, 13);
    MQElement prod = unit_in(ctx, 2) * unit_in(ctx, 3) * unit_in(ctx, 6);
    // square in K but its root lies in k4, not in k3
    CHECK(is_square_in_subfield(prod, SubfieldId::k4));
    MQElement k3prod = unit_in(ctx, 1) * unit_in(ctx, 6) * unit_in(ctx, 7);
    auto r = is_square_in_subfield(k3prod, SubfieldId::k3);
    if (r) CHECK(*r * *r == k3prod);
}

TEST_CASE("real embeddings bracket the exact value") {
    const FieldCtx& ctx = FieldCtx::get(41, 13);
    MQElement u = unit_in(ctx, 1);  // 1 + sqrt(2)
    Interval v = embed_real(u, kIdentity, 128);
    CHECK(v.is_positive());
    CHECK(v.contains(Rat(0)) == false);
    Interval w = embed_real(u, kTau1, 128);  // 1 - sqrt(2) < 0
    CHECK(w.is_negative());
}
