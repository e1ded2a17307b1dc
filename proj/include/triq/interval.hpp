#pragma once

#include <mpfr.h>

#include "triq/arith.hpp"

namespace triq {

// Closed interval [lo, hi] with directed rounding at a fixed precision.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec) : prec_(prec) {
        mpfr_init2(lo_, prec);
        mpfr_init2(hi_, prec);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    Interval(const Interval& o) : Interval(o.prec_) {
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    Interval& operator=(const Interval& o) {
        if (this != &o) {
            mpfr_set_prec(lo_, o.prec_);
            mpfr_set_prec(hi_, o.prec_);
            prec_ = o.prec_;
            mpfr_set(lo_, o.lo_, MPFR_RNDD);
            mpfr_set(hi_, o.hi_, MPFR_RNDU);
        }
        return *this;
    }
    ~Interval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static Interval from_int(const Int& n, mpfr_prec_t prec);
    static Interval from_rat(const Rat& q, mpfr_prec_t prec);
    static Interval sqrt_of_int(const Int& n, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return prec_; }
    const mpfr_t& lo() const { return lo_; }
    const mpfr_t& hi() const { return hi_; }

    Interval operator+(const Interval& o) const;
    Interval operator-(const Interval& o) const;
    Interval operator*(const Interval& o) const;
    Interval operator/(const Interval& o) const;  // o must not contain 0
    Interval neg() const;
    Interval abs() const;
    Interval sqrt() const;  // requires lo >= 0 (clamps tiny negative lo to 0)
    Interval log() const;   // requires strictly positive

    bool contains_zero() const {
        return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
    }
    bool is_positive() const { return mpfr_sgn(lo_) > 0; }
    bool is_negative() const { return mpfr_sgn(hi_) < 0; }
    bool contains(const Rat& q) const {
        return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
    }
    // width < 1/bound ?
    bool width_below(unsigned long bound) const;
    // nearest integer to (lo+hi)/2 * den
    Int round_scaled_mid(unsigned long den) const;
    // unique integer in the interval, if the width certifies one
    std::optional<Int> unique_integer() const;
    double mid_double() const;

private:
    mpfr_t lo_, hi_;
    mpfr_prec_t prec_;
};

}  // namespace triq
