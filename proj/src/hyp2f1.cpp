#include <cmath>

#include "cfcs/functions.hpp"

namespace cfcs {

namespace {

bool nonpositive_integer(const Rational& c) {
    return c.get_den() == 1 && c <= 0;
}

MPReal mp_of_double(double x, long wp) {
    MPReal r(wp);
    mpfr_set_d(r.raw(), x, MPFR_RNDN);
    return r;
}

MPReal pow2(long e, long wp) {
    MPReal r(wp);
    mpfr_set_si_2exp(r.raw(), 1, e, MPFR_RNDN);
    return r;
}

// Geometric majorant for the term ratio |t_{m+1}/t_m|, valid for every
// m >= n once n exceeds the parameter sizes:
//   |(a+m)(b+m)/((c+m)(m+1)) z| <= |z| * max(1,(n+|a|)/(n+1)) * (n+|b|)/(n-|c|)
// (both trailing factors are nonincreasing in m for m >= n). Plain doubles
// with a small safety inflation are enough for a stopping rule.
struct TailBound {
    double az, aa, ab, ac;
    long nmin;

    TailBound(const Rational& a, const Rational& b, const Rational& c, double absz) {
        aa = std::fabs(mpq_class(a).get_d());
        ab = std::fabs(mpq_class(b).get_d());
        ac = std::fabs(mpq_class(c).get_d());
        az = absz * (1 + 1e-12);
        nmin = static_cast<long>(2 * std::max({aa, ab, ac, 1.0})) + 2;
    }
    double ratio(long n) const {
        double f1 = std::max(1.0, (n + aa) / (n + 1));
        double f2 = (n + ab) / (n - ac);
        return az * f1 * f2 * (1 + 1e-12);
    }
};

void set_one(MPReal& x, long wp) { x = MPReal::of(1, wp); }
void set_zero(MPReal& x, long wp) { x = MPReal::of(0, wp); }
void set_one(MPComplex& x, long wp) { x = MPComplex(MPReal::of(1, wp), MPReal::of(0, wp)); }
void set_zero(MPComplex& x, long wp) { x = MPComplex(MPReal::of(0, wp), MPReal::of(0, wp)); }
void scale(MPReal& x, const MPReal& s) { x *= s; }
void scale(MPComplex& x, const MPReal& s) { x.re *= s; x.im *= s; }
MPReal div_by(const MPReal& x, const MPReal& z) { return x / z; }
MPComplex div_by(const MPComplex& x, const MPComplex& z) { return x / z; }

template <typename T>
T series_2f1_impl(const Rational& a, const Rational& b, const Rational& c,
                  const T& z, long wp, long stop_digits, bool deriv) {
    if (nonpositive_integer(c)) throw PoleAtC("hyp2f1: c is a nonpositive integer");
    TailBound tb(a, b, c, abs(z).d());
    MPReal eps = exp(log(MPReal::of(10, wp)) *
                     MPReal::of(Rational(-stop_digits), wp));
    MPReal one = MPReal::of(1, wp);
    // F  = sum t_n,  t_0 = 1,  t_{n+1} = t_n * (a+n)(b+n)/((c+n)(n+1)) * z
    // F' = sum (n+1) t_{n+1} / z   (termwise derivative)
    T term(z);
    set_one(term, wp);
    T sum = term;
    T dsum = term;
    set_zero(dsum, wp);
    MPReal an = MPReal::of(a, wp), bn = MPReal::of(b, wp), cn = MPReal::of(c, wp);
    MPReal np1 = one;
    for (long n = 0;; ++n) {
        T next = term;
        scale(next, an * bn / (cn * np1));
        next = next * z;
        if (deriv) {
            T d = next;
            scale(d, np1);
            dsum += div_by(d, z);
        }
        sum += next;
        term = next;
        if (n >= tb.nmin) {
            double rho = tb.ratio(n);
            if (rho < 1) {
                // remainder after t_n is bounded by |t_n| * rho/(1-rho); for
                // the differentiated series the per-term inflation (m+1)/m is
                // absorbed by an extra factor 2(n+2).
                double infl = (deriv ? 2.0 * (n + 2) : 1.0) * rho / (1 - rho);
                MPReal ref = abs(sum);
                if (ref < one) ref = one;
                if (abs(term) * mp_of_double(infl, wp) < eps * ref) break;
            }
        }
        an += one;
        bn += one;
        cn += one;
        np1 += one;
        if (n > 100 * stop_digits + 100000)
            throw SlowConvergence("hyp2f1: series did not meet tail bound");
    }
    return deriv ? dsum : sum;
}

}  // namespace

MPReal hyp2f1(const Rational& a, const Rational& b, const Rational& c,
              const MPReal& z, const PrecPolicy& prec) {
    if (abs(z).d() > 0.98) throw SlowConvergence("hyp2f1: |z| > 0.98");
    return series_2f1_impl<MPReal>(a, b, c, z, prec.work_bits(),
                                   prec.target_digits + prec.guard(), false);
}

MPComplex hyp2f1(const Rational& a, const Rational& b, const Rational& c,
                 const MPComplex& z, const PrecPolicy& prec) {
    if (abs(z).d() > 0.98) throw SlowConvergence("hyp2f1: |z| > 0.98");
    return series_2f1_impl<MPComplex>(a, b, c, z, prec.work_bits(),
                                      prec.target_digits + prec.guard(), false);
}

MPReal hyp2f1_deriv(const Rational& a, const Rational& b, const Rational& c,
                    const MPReal& z, const PrecPolicy& prec) {
    if (abs(z).d() > 0.98) throw SlowConvergence("hyp2f1_deriv: |z| > 0.98");
    long wp = prec.work_bits();
    if (z.is_zero()) return MPReal::of(a * b / c, wp);
    return series_2f1_impl<MPReal>(a, b, c, z, wp,
                                   prec.target_digits + prec.guard(), true);
}

MPComplex hyp2f1_inverse_arg(const Rational& a, const Rational& b,
                             const Rational& c, const MPComplex& z, int side,
                             const PrecPolicy& prec) {
    if (Rational(b - a).get_den() == 1)
        throw Error("hyp2f1_inverse_arg: b - a integral, connection degenerate");
    long wp = prec.work_bits();
    PrecPolicy inner = prec;
    inner.target_digits += 8;
    MPComplex lm(wp);
    if (side == 0) {
        lm = log(-z);
    } else {
        lm = MPComplex(log(abs(z)), MPReal::pi(wp) * side);
    }
    MPComplex iz = inv(z);
    auto g = [&](const Rational& x) { return gamma_rational_any(x, inner); };
    MPReal g1 = g(c) * g(b - a) / (g(b) * g(c - a));
    MPReal g2 = g(c) * g(a - b) / (g(a) * g(c - b));
    MPComplex e1 = exp(MPComplex(lm.re * MPReal::of(-a, wp), lm.im * MPReal::of(-a, wp)));
    MPComplex e2 = exp(MPComplex(lm.re * MPReal::of(-b, wp), lm.im * MPReal::of(-b, wp)));
    long sd = inner.target_digits + inner.guard();
    MPComplex f1 = hyp2f1(a, a - c + 1, a - b + 1, iz, inner);
    MPComplex f2 = hyp2f1(b, b - c + 1, b - a + 1, iz, inner);
    (void)sd;
    return e1 * g1 * f1 + e2 * g2 * f2;
}

EllipticKE elliptic_ke(const MPComplex& m, const PrecPolicy& prec) {
    long wp = prec.work_bits() + 32;
    MPReal tiny = pow2(-(wp - 8), wp);
    MPComplex one(MPReal::of(1, wp), MPReal::of(0, wp));
    MPComplex a = one;
    MPComplex b = sqrt(one - m);
    MPComplex c2sum = m / MPReal::of(2, wp);  // sum of 2^{n-1} c_n^2, n = 0 term
    MPReal p2 = MPReal::of(1, wp);
    for (int n = 1; n < 100000; ++n) {
        MPComplex c = (a - b) / MPReal::of(2, wp);
        MPComplex an = (a + b) / MPReal::of(2, wp);
        b = sqrt(a * b);
        // right-choice rule: |a_{n+1} - b_{n+1}| <= |a_{n+1} + b_{n+1}| keeps
        // the complex AGM convergent when iterates leave the right half-plane
        if (abs(an - b) > abs(an + b)) b = MPComplex(-b.re, -b.im);
        a = an;
        c2sum += (c * c) * p2;
        p2 *= 2;
        if (abs(c) < tiny * abs(a)) break;
    }
    MPComplex K = MPComplex(MPReal::pi(wp), MPReal::of(0, wp)) / (a * MPReal::of(2, wp));
    MPComplex E = K * (one - c2sum);
    return {K, E};
}

MPComplex hyp2f1_half(const MPComplex& z, const PrecPolicy& prec) {
    long wp = prec.work_bits();
    EllipticKE ke = elliptic_ke(z, prec);
    return ke.K * (MPReal::of(2, wp) / MPReal::pi(wp));
}

MPComplex hyp2f1_half_deriv(const MPComplex& z, const PrecPolicy& prec) {
    long wp = prec.work_bits();
    EllipticKE ke = elliptic_ke(z, prec);
    MPComplex one(MPReal::of(1, wp), MPReal::of(0, wp));
    return (ke.E - (one - z) * ke.K) /
           (MPComplex(MPReal::pi(wp), MPReal::of(0, wp)) * z * (one - z));
}

MPComplex hyp2f1_auto(const Rational& a, const Rational& b, const Rational& c,
                      const MPComplex& z, int side, const PrecPolicy& prec) {
    double az = abs(z).d();
    if (az <= 0.98) return hyp2f1(a, b, c, z, prec);
    if (a == Rational(1, 2) && b == Rational(1, 2) && c == 1)
        return hyp2f1_half(z, prec);
    if (az >= 1.0 / 0.995 && Rational(b - a).get_den() != 1)
        return hyp2f1_inverse_arg(a, b, c, z, side, prec);
    throw SlowConvergence("hyp2f1_auto: no evaluation strategy for this argument");
}

}  // namespace cfcs
