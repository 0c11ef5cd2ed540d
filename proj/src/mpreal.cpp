#include "cfcs/mpreal.hpp"

#include <cstdlib>
#include <sstream>

namespace cfcs {

std::string str_impl(mpfr_srcptr v, long digits) {
    if (mpfr_nan_p(v)) return "nan";
    if (mpfr_zero_p(v)) return "0";
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, v, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    bool neg = mant[0] == '-';
    std::string dgt = neg ? mant.substr(1) : mant;
    std::ostringstream os;
    if (neg) os << "-";
    // e is the decimal exponent such that value = 0.dgt * 10^e
    if (e >= 1 && e <= static_cast<long>(dgt.size())) {
        os << dgt.substr(0, e);
        if (e < static_cast<long>(dgt.size())) os << "." << dgt.substr(e);
    } else if (e <= 0 && e > -5) {
        os << "0." << std::string(-e, '0') << dgt;
    } else {
        os << dgt.substr(0, 1);
        if (dgt.size() > 1) os << "." << dgt.substr(1);
        os << "e" << (e - 1);
    }
    return os.str();
}

std::string MPReal::str(long digits) const { return str_impl(v_, digits); }

bool agrees_to(const MPReal& a, const MPReal& b, long digits) {
    MPReal diff = abs(a - b);
    if (diff.is_zero()) return true;
    MPReal scale = abs(a);
    if (scale.is_zero()) scale = MPReal::of(1, a.prec());
    MPReal tol = scale * pow(MPReal::of(10, a.prec()),
                             MPReal::of(Rational(-digits), a.prec()));
    return diff <= tol;
}

long agreement_digits(const MPReal& a, const MPReal& b, long cap) {
    MPReal diff = abs(a - b);
    if (diff.is_zero()) return cap;
    MPReal scale = abs(a);
    if (scale.is_zero()) scale = MPReal::of(1, a.prec());
    double d = -log10(diff / scale).d();
    if (d < 0) return 0;
    if (d > static_cast<double>(cap)) return cap;
    return static_cast<long>(d);
}

MPReal abs(const MPComplex& z) {
    MPReal r(z.prec());
    mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
    return r;
}

MPComplex sqrt(const MPComplex& z) {
    long bits = z.prec();
    if (z.im.is_zero()) {
        if (z.re.sign() >= 0) return {sqrt(z.re), MPReal::of(0, bits)};
        return {MPReal::of(0, bits), sqrt(-z.re)};
    }
    // branch on sign(re) so the inner sum never cancels: for re < 0 the naive
    // sqrt((|z|+re)/2) underflows to 0 when |im| << |re|
    MPReal m = abs(z);
    if (z.re.sign() >= 0) {
        MPReal w = sqrt((m + z.re) / 2);
        return {w, z.im / (w * 2)};
    }
    MPReal v = sqrt((m - z.re) / 2);
    MPReal w = abs(z.im) / (v * 2);
    return {w, z.im.sign() >= 0 ? v : -v};
}

MPComplex log(const MPComplex& z) {
    MPReal m = abs(z);
    return {log(m), atan2(z.im, z.re)};
}

MPComplex exp(const MPComplex& z) {
    MPReal m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

MPComplex pow(const MPComplex& z, const MPReal& e) {
    MPComplex l = log(z);
    return exp(MPComplex{l.re * e, l.im * e});
}

MPComplex pow(const MPComplex& z, const Rational& e, long bits) {
    return pow(z, MPReal::of(e, bits));
}

MPComplex inv(const MPComplex& z) {
    MPReal n = z.re * z.re + z.im * z.im;
    return {z.re / n, -z.im / n};
}

}  // namespace cfcs
