#pragma once
// Thin RAII wrapper over MPFR plus a hand-rolled complex type. Precision is
// carried per-value in bits; binary operations compute at the larger of the
// two operand precisions. Accuracy contract: callers request decimal digits,
// guard digits are added per PrecPolicy, and results are re-checked at a
// higher precision before being returned (see functions.hpp).

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "cfcs/exact.hpp"

namespace cfcs {

struct PrecisionExhausted : Error {
    using Error::Error;
};

inline long digits_to_bits(long digits) {
    return static_cast<long>(digits * 3.3219280948873623) + 16;
}

struct PrecPolicy {
    long target_digits = 40;
    long guard_digits = 0;  // 0 -> default 10 + 10% of target
    int max_retries = 6;

    long guard() const {
        return guard_digits > 0 ? guard_digits : 10 + target_digits / 10;
    }
    long work_bits() const { return digits_to_bits(target_digits + guard()); }
};

class MPReal {
  public:
    explicit MPReal(long prec_bits = 128) { mpfr_init2(v_, prec_bits); mpfr_set_zero(v_, 1); }
    MPReal(const MPReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    MPReal(MPReal&& o) noexcept { mpfr_init2(v_, 53); mpfr_swap(v_, o.v_); }
    MPReal& operator=(const MPReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    MPReal& operator=(MPReal&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~MPReal() { mpfr_clear(v_); }

    static MPReal of(long x, long bits) { MPReal r(bits); mpfr_set_si(r.v_, x, MPFR_RNDN); return r; }
    static MPReal of(const Rational& q, long bits) {
        MPReal r(bits);
        mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static MPReal of(const BigInt& z, long bits) {
        MPReal r(bits);
        mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static MPReal pi(long bits) { MPReal r(bits); mpfr_const_pi(r.v_, MPFR_RNDN); return r; }

    long prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    bool is_nan() const { return mpfr_nan_p(v_); }
    double d() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long exponent() const { return mpfr_get_exp(v_); }  // valid for nonzero

    // Decimal rendering with the given significant digits.
    std::string str(long digits) const;

    MPReal& operator+=(const MPReal& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    MPReal& operator-=(const MPReal& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    MPReal& operator*=(const MPReal& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    MPReal& operator/=(const MPReal& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    MPReal& operator*=(long s) { mpfr_mul_si(v_, v_, s, MPFR_RNDN); return *this; }
    MPReal& operator/=(long s) { mpfr_div_si(v_, v_, s, MPFR_RNDN); return *this; }

    friend MPReal binop(const MPReal& a, const MPReal& b,
                        int (*f)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t)) {
        MPReal r(std::max(a.prec(), b.prec()));
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend MPReal operator+(const MPReal& a, const MPReal& b) { return binop(a, b, mpfr_add); }
    friend MPReal operator-(const MPReal& a, const MPReal& b) { return binop(a, b, mpfr_sub); }
    friend MPReal operator*(const MPReal& a, const MPReal& b) { return binop(a, b, mpfr_mul); }
    friend MPReal operator/(const MPReal& a, const MPReal& b) { return binop(a, b, mpfr_div); }
    friend MPReal operator-(const MPReal& a) {
        MPReal r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend MPReal operator*(const MPReal& a, long s) {
        MPReal r(a);
        r *= s;
        return r;
    }
    friend MPReal operator*(long s, const MPReal& a) { return a * s; }
    friend MPReal operator/(const MPReal& a, long s) {
        MPReal r(a);
        r /= s;
        return r;
    }
    friend MPReal operator+(const MPReal& a, long s) {
        MPReal r(a);
        mpfr_add_si(r.v_, r.v_, s, MPFR_RNDN);
        return r;
    }
    friend MPReal operator-(const MPReal& a, long s) { return a + (-s); }
    friend MPReal operator/(long s, const MPReal& a) {
        MPReal r(a.prec());
        mpfr_si_div(r.v_, s, a.v_, MPFR_RNDN);
        return r;
    }

    friend int cmp(const MPReal& a, const MPReal& b) { return mpfr_cmp(a.v_, b.v_); }
    friend bool operator<(const MPReal& a, const MPReal& b) { return cmp(a, b) < 0; }
    friend bool operator>(const MPReal& a, const MPReal& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const MPReal& a, const MPReal& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const MPReal& a, const MPReal& b) { return cmp(a, b) >= 0; }
    friend bool operator==(const MPReal& a, const MPReal& b) { return mpfr_equal_p(a.v_, b.v_); }

  private:
    mpfr_t v_;
};

#define CFCS_MPFR_FN1(name, mpfr_name)                  \
    inline MPReal name(const MPReal& a) {               \
        MPReal r(a.prec());                             \
        mpfr_name(r.raw(), a.raw(), MPFR_RNDN);         \
        return r;                                       \
    }
CFCS_MPFR_FN1(sqrt, mpfr_sqrt)
CFCS_MPFR_FN1(log, mpfr_log)
CFCS_MPFR_FN1(exp, mpfr_exp)
CFCS_MPFR_FN1(abs, mpfr_abs)
CFCS_MPFR_FN1(sin, mpfr_sin)
CFCS_MPFR_FN1(cos, mpfr_cos)
#undef CFCS_MPFR_FN1

inline MPReal floor(const MPReal& a) {
    MPReal r(a.prec());
    mpfr_rint(r.raw(), a.raw(), MPFR_RNDD);  // mpfr_floor is a macro
    return r;
}

inline MPReal pow(const MPReal& a, const MPReal& b) {
    MPReal r(std::max(a.prec(), b.prec()));
    mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}
inline MPReal atan2(const MPReal& y, const MPReal& x) {
    MPReal r(std::max(y.prec(), x.prec()));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline MPReal log10(const MPReal& a) {
    MPReal r(a.prec());
    mpfr_log10(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
inline MPReal cot(const MPReal& a) {
    MPReal r(a.prec());
    mpfr_cot(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

// |a - b| <= max(|a|,|b|,1e-digits?) — true when a and b agree to `digits`
// significant decimal digits (absolute comparison if a is zero).
bool agrees_to(const MPReal& a, const MPReal& b, long digits);

// Number of agreeing decimal digits, floored at 0 and capped at `cap`.
long agreement_digits(const MPReal& a, const MPReal& b, long cap);

struct MPComplex {
    MPReal re, im;

    MPComplex() = default;
    explicit MPComplex(long bits) : re(bits), im(bits) {}
    MPComplex(MPReal r, MPReal i) : re(std::move(r)), im(std::move(i)) {}
    static MPComplex of(const Rational& x, long bits) {
        return MPComplex(MPReal::of(x, bits), MPReal::of(0, bits));
    }

    long prec() const { return std::max(re.prec(), im.prec()); }

    friend MPComplex operator+(const MPComplex& a, const MPComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend MPComplex operator-(const MPComplex& a, const MPComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend MPComplex operator-(const MPComplex& a) { return {-a.re, -a.im}; }
    friend MPComplex operator*(const MPComplex& a, const MPComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend MPComplex operator*(const MPComplex& a, const MPReal& s) {
        return {a.re * s, a.im * s};
    }
    friend MPComplex operator*(const MPReal& s, const MPComplex& a) { return a * s; }
    friend MPComplex operator/(const MPComplex& a, const MPComplex& b) {
        MPReal n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    friend MPComplex operator/(const MPComplex& a, const MPReal& s) {
        return {a.re / s, a.im / s};
    }

    MPComplex& operator+=(const MPComplex& o) { *this = *this + o; return *this; }
    MPComplex& operator*=(const MPComplex& o) { *this = *this * o; return *this; }
};

MPReal abs(const MPComplex& z);
MPComplex sqrt(const MPComplex& z);                     // principal branch
MPComplex log(const MPComplex& z);                      // principal branch
MPComplex exp(const MPComplex& z);
MPComplex pow(const MPComplex& z, const MPReal& e);     // exp(e log z), principal
MPComplex pow(const MPComplex& z, const Rational& e, long bits);
MPComplex inv(const MPComplex& z);

}  // namespace cfcs
