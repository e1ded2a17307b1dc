#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "triq/interval.hpp"
#include "triq/quadratic.hpp"

namespace triq {

// Galois element of K/Q as a sign pattern on the generators:
// bit 0 flips sqrt(2), bit 1 flips sqrt(p1), bit 2 flips sqrt(p2).
struct GaloisElement {
    unsigned mask = 0;

    int sign_on_mask(unsigned radicand_mask) const {
        return (__builtin_popcount(mask & radicand_mask) & 1) ? -1 : 1;
    }
    GaloisElement operator*(GaloisElement o) const { return {mask ^ o.mask}; }
    bool operator==(const GaloisElement&) const = default;
};

inline constexpr GaloisElement kIdentity{0};
inline constexpr GaloisElement kTau1{1};  // flips sqrt(2)
inline constexpr GaloisElement kTau2{2};  // flips sqrt(p1)
inline constexpr GaloisElement kTau3{4};  // flips sqrt(p2)

// Basis order: 1, sqrt2, sqrt(p1), sqrt(p2), sqrt(2p1), sqrt(2p2),
// sqrt(p1p2), sqrt(2p1p2).  Slot i corresponds to the generator mask
// kSlotMask[i] over {2, p1, p2}.
inline constexpr std::array<unsigned, 8> kSlotMask = {0, 1, 2, 4, 3, 5, 6, 7};
inline constexpr std::array<int, 8> kMaskSlot = {0, 1, 2, 4, 3, 5, 6, 7};

enum class SubfieldId { k1, k2, k3, k4, k5, k6, k7 };

struct SubfieldInfo {
    SubfieldId id;
    GaloisElement fixer;              // the subfield is fixed by <fixer>
    std::array<int, 4> slots;         // basis slots spanning it
    std::array<int, 3> quad_slots;    // its three quadratic subfields (slots 1..7)
};

const SubfieldInfo& subfield_info(SubfieldId id);

class FieldCtx {
public:
    FieldCtx(const Int& p1, const Int& p2);

    // Process-wide context for a pair; the reference stays valid for the
    // lifetime of the process (MQElements keep pointers into it).
    static const FieldCtx& get(const Int& p1, const Int& p2);

    const Int& p1() const { return p1_; }
    const Int& p2() const { return p2_; }
    const Int& radicand(int slot) const { return radicand_[slot]; }
    // slot of a given radicand, -1 when absent
    int slot_of(const Int& d) const;

    // product of basis slots i and j: coefficient * slot
    std::pair<Int, int> basis_mul(int i, int j) const;

    // cached sqrt(radicand) intervals at a precision level
    const std::array<Interval, 8>& roots(mpfr_prec_t prec) const;

private:
    Int p1_, p2_;
    std::array<Int, 8> radicand_;
    Int mul_coeff_[8][8];
    int mul_slot_[8][8];
    mutable std::mutex roots_mutex_;
    mutable std::map<mpfr_prec_t, std::unique_ptr<std::array<Interval, 8>>> roots_;
};

class MQElement {
public:
    explicit MQElement(const FieldCtx& ctx) : ctx_(&ctx) {}
    MQElement(const FieldCtx& ctx, std::array<Rat, 8> coeffs)
        : ctx_(&ctx), c_(std::move(coeffs)) {
        for (auto& q : c_) q.canonicalize();
    }

    const FieldCtx& ctx() const { return *ctx_; }
    const Rat& coeff(int slot) const { return c_[slot]; }
    void set_coeff(int slot, const Rat& q) {
        c_[slot] = q;
        c_[slot].canonicalize();
    }

    bool is_zero() const;
    bool operator==(const MQElement& o) const;
    MQElement operator+(const MQElement& o) const;
    MQElement operator-(const MQElement& o) const;
    MQElement operator*(const MQElement& o) const;
    MQElement operator-() const;
    MQElement inverse() const;  // via product of conjugates / rational norm

    // support is contained in the given slot set
    bool supported_on(const std::array<int, 4>& slots) const;

    static MQElement one(const FieldCtx& ctx);
    static MQElement rational(const FieldCtx& ctx, const Rat& q);

private:
    const FieldCtx* ctx_;
    std::array<Rat, 8> c_{};
};

MQElement apply_galois(GaloisElement g, const MQElement& x);

// x * g(x); asserts the result lies in the subfield fixed by <g>
MQElement rel_norm(const MQElement& x, GaloisElement g);

MQElement embed_quad_unit(const QuadUnit& u, const FieldCtx& ctx);

// real embedding sending sqrt(r) to sigma-signed positive root
Interval embed_real(const MQElement& x, GaloisElement sigma, mpfr_prec_t prec);

// exact square detection in K; returns a verified root (identity-embedding
// positive) or nullopt if no root exists in K
std::optional<MQElement> is_square(const MQElement& x);

// root constrained to the subfield's sub-basis; x must be supported there
std::optional<MQElement> is_square_in_subfield(const MQElement& x, SubfieldId sf);

}  // namespace triq
