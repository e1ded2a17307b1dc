#include "triq/mfield.hpp"

#include <algorithm>

namespace triq {

const SubfieldInfo& subfield_info(SubfieldId id) {
    static const std::array<SubfieldInfo, 7> table = {{
        {SubfieldId::k1, kTau3, {0, 1, 2, 4}, {1, 2, 4}},
        {SubfieldId::k2, kTau2, {0, 1, 3, 5}, {1, 3, 5}},
        {SubfieldId::k3, {kTau2.mask | kTau3.mask}, {0, 1, 6, 7}, {1, 6, 7}},
        {SubfieldId::k4, kTau1, {0, 2, 3, 6}, {2, 3, 6}},
        {SubfieldId::k5, {kTau1.mask | kTau2.mask}, {0, 3, 4, 7}, {3, 4, 7}},
        {SubfieldId::k6, {kTau1.mask | kTau3.mask}, {0, 2, 5, 7}, {2, 5, 7}},
        {SubfieldId::k7, {kTau1.mask | kTau2.mask | kTau3.mask}, {0, 4, 5, 6}, {4, 5, 6}},
    }};
    return table[static_cast<int>(id)];
}

FieldCtx::FieldCtx(const Int& p1, const Int& p2) : p1_(p1), p2_(p2) {
    if (p1 == p2 || !is_prime(p1) || !is_prime(p2) || p1 % 4 != 1 || p2 % 4 != 1)
        throw precondition_error("FieldCtx: need distinct primes = 1 mod 4");
    const Int gens[3] = {2, p1, p2};
    for (int slot = 0; slot < 8; ++slot) {
        Int r = 1;
        for (int b = 0; b < 3; ++b)
            if (kSlotMask[slot] >> b & 1) r *= gens[b];
        radicand_[slot] = r;
    }
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            unsigned mi = kSlotMask[i], mj = kSlotMask[j];
            mul_slot_[i][j] = kMaskSlot[mi ^ mj];
            Int c = 1;
            for (int b = 0; b < 3; ++b)
                if ((mi & mj) >> b & 1) c *= gens[b];
            mul_coeff_[i][j] = c;
        }
}

const FieldCtx& FieldCtx::get(const Int& p1, const Int& p2) {
    static std::mutex mu;
    static std::map<std::pair<Int, Int>, std::unique_ptr<FieldCtx>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(p1, p2);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<FieldCtx>(p1, p2)).first;
    return *it->second;
}

int FieldCtx::slot_of(const Int& d) const {
    for (int i = 0; i < 8; ++i)
        if (radicand_[i] == d) return i;
    return -1;
}

std::pair<Int, int> FieldCtx::basis_mul(int i, int j) const {
    return {mul_coeff_[i][j], mul_slot_[i][j]};
}

const std::array<Interval, 8>& FieldCtx::roots(mpfr_prec_t prec) const {
    std::lock_guard<std::mutex> lk(roots_mutex_);
    auto it = roots_.find(prec);
    if (it == roots_.end()) {
        auto arr = std::make_unique<std::array<Interval, 8>>(std::array<Interval, 8>{
            Interval::sqrt_of_int(radicand_[0], prec), Interval::sqrt_of_int(radicand_[1], prec),
            Interval::sqrt_of_int(radicand_[2], prec), Interval::sqrt_of_int(radicand_[3], prec),
            Interval::sqrt_of_int(radicand_[4], prec), Interval::sqrt_of_int(radicand_[5], prec),
            Interval::sqrt_of_int(radicand_[6], prec), Interval::sqrt_of_int(radicand_[7], prec)});
        it = roots_.emplace(prec, std::move(arr)).first;
    }
    return *it->second;
}

bool MQElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& q) { return q == 0; });
}

bool MQElement::operator==(const MQElement& o) const {
    return ctx_ == o.ctx_ && c_ == o.c_;
}

MQElement MQElement::operator+(const MQElement& o) const {
    if (ctx_ != o.ctx_) throw precondition_error("MQElement: context mismatch");
    MQElement r(*ctx_);
    for (int i = 0; i < 8; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

MQElement MQElement::operator-(const MQElement& o) const {
    if (ctx_ != o.ctx_) throw precondition_error("MQElement: context mismatch");
    MQElement r(*ctx_);
    for (int i = 0; i < 8; ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

MQElement MQElement::operator*(const MQElement& o) const {
    if (ctx_ != o.ctx_) throw precondition_error("MQElement: context mismatch");
    MQElement r(*ctx_);
    for (int i = 0; i < 8; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < 8; ++j) {
            if (o.c_[j] == 0) continue;
            auto [coeff, slot] = ctx_->basis_mul(i, j);
            r.c_[slot] += c_[i] * o.c_[j] * coeff;
        }
    }
    return r;
}

MQElement MQElement::operator-() const {
    MQElement r(*ctx_);
    for (int i = 0; i < 8; ++i) r.c_[i] = -c_[i];
    return r;
}

MQElement MQElement::inverse() const {
    if (is_zero()) throw precondition_error("MQElement: inverse of zero");
    // product of the 7 non-identity conjugates; x * that = N(x) in Q
    MQElement prod = apply_galois(GaloisElement{1}, *this);
    for (unsigned m = 2; m < 8; ++m) prod = prod * apply_galois(GaloisElement{m}, *this);
    MQElement n = *this * prod;
    for (int i = 1; i < 8; ++i)
        if (n.c_[i] != 0) throw inconsistency_error("MQElement: norm not rational");
    if (n.c_[0] == 0) throw inconsistency_error("MQElement: zero divisor");
    Rat inv_n = 1 / n.c_[0];
    for (int i = 0; i < 8; ++i) prod.c_[i] *= inv_n;
    return prod;
}

bool MQElement::supported_on(const std::array<int, 4>& slots) const {
    for (int i = 0; i < 8; ++i) {
        if (c_[i] == 0) continue;
        if (std::find(slots.begin(), slots.end(), i) == slots.end()) return false;
    }
    return true;
}

MQElement MQElement::one(const FieldCtx& ctx) { return rational(ctx, 1); }

MQElement MQElement::rational(const FieldCtx& ctx, const Rat& q) {
    MQElement r(ctx);
    r.c_[0] = q;
    return r;
}

MQElement apply_galois(GaloisElement g, const MQElement& x) {
    MQElement r(x.ctx());
    for (int i = 0; i < 8; ++i) {
        Rat c = x.coeff(i);
        if (g.sign_on_mask(kSlotMask[i]) < 0) c = -c;
        r.set_coeff(i, c);
    }
    return r;
}

MQElement rel_norm(const MQElement& x, GaloisElement g) {
    if (g == kIdentity) throw precondition_error("rel_norm: g must not be the identity");
    MQElement r = x * apply_galois(g, x);
    for (int i = 0; i < 8; ++i)
        if (r.coeff(i) != 0 && g.sign_on_mask(kSlotMask[i]) < 0)
            throw inconsistency_error("rel_norm: result not fixed by g");
    return r;
}

MQElement embed_quad_unit(const QuadUnit& u, const FieldCtx& ctx) {
    int slot = ctx.slot_of(u.d);
    if (slot <= 0) throw precondition_error("embed_quad_unit: d is not a radicand of ctx");
    MQElement r(ctx);
    r.set_coeff(0, Rat(u.a, u.denom));
    r.set_coeff(slot, Rat(u.b, u.denom));
    return r;
}

Interval embed_real(const MQElement& x, GaloisElement sigma, mpfr_prec_t prec) {
    const auto& roots = x.ctx().roots(prec);
    Interval acc(prec);
    for (int i = 0; i < 8; ++i) {
        if (x.coeff(i) == 0) continue;
        Interval term = Interval::from_rat(x.coeff(i), prec) * roots[i];
        if (sigma.sign_on_mask(kSlotMask[i]) < 0) term = term.neg();
        acc = acc + term;
    }
    return acc;
}

namespace {

// max bit size over numerators and denominators of the coefficients
size_t coeff_bits(const MQElement& x) {
    size_t b = 1;
    for (int i = 0; i < 8; ++i) {
        b = std::max(b, mpz_sizeinbase(x.coeff(i).get_num().get_mpz_t(), 2));
        b = std::max(b, mpz_sizeinbase(x.coeff(i).get_den().get_mpz_t(), 2));
    }
    return b;
}

constexpr unsigned kMaxDen = 16;

// Try to reconstruct a rational with denominator <= kMaxDen inside iv.
std::optional<Rat> reconstruct(const Interval& iv) {
    for (unsigned long den = 1; den <= kMaxDen; ++den) {
        Int num = iv.round_scaled_mid(den);
        Rat q(num, den);
        q.canonicalize();
        if (iv.contains(q)) return q;
    }
    return std::nullopt;
}

std::optional<MQElement> is_square_impl(const MQElement& x) {
    if (x.is_zero()) return std::nullopt;
    const FieldCtx& ctx = x.ctx();
    const size_t bits = coeff_bits(x);
    // Sign determination of conjugate embeddings can cancel down to ~1/x_id,
    // so start at ~2*bits and escalate.
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max<size_t>(256, 2 * bits + 160));

    for (int attempt = 0; attempt < 6; ++attempt, prec *= 2) {
        // embeddings ordered by Galois mask 0..7
        std::vector<Interval> emb;
        emb.reserve(8);
        bool undecided = false;
        for (unsigned m = 0; m < 8; ++m) {
            emb.push_back(embed_real(x, GaloisElement{m}, prec));
            if (emb.back().is_negative()) return std::nullopt;  // not totally positive
            if (emb.back().contains_zero()) undecided = true;
        }
        if (undecided) continue;

        std::vector<Interval> t;
        t.reserve(8);
        for (auto& e : emb) t.push_back(e.sqrt());

        const auto& roots = ctx.roots(prec);
        bool precise_enough = true;
        for (unsigned pattern = 0; pattern < 128 && precise_enough; ++pattern) {
            // sign of sqrt under embedding m (identity positive)
            auto sign_of = [&](unsigned m) { return m == 0 ? 1 : ((pattern >> (m - 1) & 1) ? -1 : 1); };
            std::array<Rat, 8> coeffs;
            bool ok = true;
            for (int slot = 0; slot < 8 && ok; ++slot) {
                Interval sum(prec);
                for (unsigned m = 0; m < 8; ++m) {
                    int s = sign_of(m) * GaloisElement{m}.sign_on_mask(kSlotMask[slot]);
                    sum = (s > 0) ? sum + t[m] : sum - t[m];
                }
                // c_slot = sum / (8 * sqrt(radicand))
                Interval c = sum / (Interval::from_int(8, prec) * roots[slot]);
                if (!c.width_below(4 * kMaxDen * kMaxDen)) {
                    precise_enough = false;
                    break;
                }
                auto q = reconstruct(c);
                if (!q) {
                    ok = false;
                    break;
                }
                coeffs[slot] = *q;
            }
            if (!precise_enough || !ok) continue;
            MQElement y(ctx, coeffs);
            if (y * y == x) return y;
        }
        if (precise_enough) {
            // All sign patterns were decided at full precision: any root with
            // denominator <= kMaxDen would have been reconstructed and
            // verified, so none exists.
            return std::nullopt;
        }
    }
    throw inconsistency_error("is_square: precision ladder exhausted");
}

}  // namespace

std::optional<MQElement> is_square(const MQElement& x) { return is_square_impl(x); }

std::optional<MQElement> is_square_in_subfield(const MQElement& x, SubfieldId sf) {
    const auto& info = subfield_info(sf);
    if (!x.supported_on(info.slots))
        throw precondition_error("is_square_in_subfield: coefficient outside sub-basis");
    auto root = is_square(x);
    if (!root) return std::nullopt;
    // roots in a field differ only by sign, so membership of one decides it
    if (!root->supported_on(info.slots)) return std::nullopt;
    return root;
}

}  // namespace triq
