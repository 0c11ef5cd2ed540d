#include <mutex>
#include <vector>

#include "cfcs/functions.hpp"

namespace cfcs {

namespace {

// Exact Bernoulli numbers B_0, B_1, ... via the classical recurrence,
// grown on demand and cached.
std::vector<Rational>& bernoulli_cache() {
    static std::vector<Rational> cache{Rational(1), Rational(-1, 2)};
    return cache;
}
std::mutex bernoulli_mutex;

Rational bernoulli(size_t m) {
    std::lock_guard<std::mutex> lock(bernoulli_mutex);
    auto& B = bernoulli_cache();
    while (B.size() <= m) {
        size_t k = B.size();
        if (k % 2 == 1) {
            B.emplace_back(0);
            continue;
        }
        Rational s(0);
        for (size_t j = 0; j < k; ++j)
            s += Rational(binomial(static_cast<long>(k) + 1, static_cast<long>(j))) * B[j];
        Rational b = -s / Rational(static_cast<long>(k) + 1);
        b.canonicalize();
        B.push_back(b);
    }
    return B[m];
}

// ln Gamma(x) for x >= 0.35 * wp bits, by the Stirling series; the error is
// bounded by the first omitted term, which is pushed below 2^-(wp+8).
MPReal lngamma_stirling(const MPReal& x, long wp) {
    MPReal half = MPReal::of(Rational(1, 2), wp);
    MPReal s = (x - half) * log(x) - x +
               log(MPReal::pi(wp) * 2) / 2;
    MPReal inv_x2 = 1 / (x * x);
    MPReal pw = 1 / x;  // x^{-(2k-1)}
    MPReal cutoff = exp(log(MPReal::of(2, wp)) * MPReal::of(-(wp + 8), wp));
    MPReal prev_term(wp);
    for (long k = 1;; ++k) {
        Rational coef = bernoulli(2 * k) / Rational(2 * k * (2 * k - 1));
        MPReal term = MPReal::of(coef, wp) * pw;
        s += term;
        MPReal a = abs(term);
        if (a < cutoff) break;
        if (k > 1 && a > prev_term)
            throw PrecisionExhausted("stirling series diverging before cutoff");
        prev_term = a;
        pw = pw * inv_x2;
        if (k > 4 * wp) throw PrecisionExhausted("stirling series too long");
    }
    return s;
}

MPReal gamma_pos_once(const Rational& x, long wp) {
    long lift_to = static_cast<long>(0.35 * wp) + 1;
    MPReal xr = MPReal::of(x, wp);
    long m = 0;
    Rational xq = x;
    if (xq < lift_to) {
        Rational diff = Rational(lift_to) - xq;
        m = static_cast<long>(
                mpz_class(diff.get_num() / diff.get_den()).get_si()) + 1;
    }
    MPReal prod = MPReal::of(1, wp);
    MPReal t = xr;
    for (long j = 0; j < m; ++j) {
        prod *= t;
        t += MPReal::of(1, wp);
    }
    MPReal lg = lngamma_stirling(xr + MPReal::of(Rational(m), wp), wp);
    return exp(lg) / prod;
}

}  // namespace

MPReal gamma_rational(const Rational& x, const PrecPolicy& prec) {
    if (x <= 0) throw Error("gamma_rational: argument must be positive");
    if (x.get_den() > 10000) throw Error("gamma_rational: denominator too large");
    long guard = prec.guard();
    for (int attempt = 0; attempt <= prec.max_retries; ++attempt) {
        long wp = digits_to_bits(prec.target_digits + guard);
        MPReal r1 = gamma_pos_once(x, wp);
        MPReal r2 = gamma_pos_once(x, wp + 32);
        if (agrees_to(r1, r2, prec.target_digits)) return r2;
        guard *= 2;
    }
    throw PrecisionExhausted("gamma_rational: retries exhausted");
}

MPReal gamma_rational_any(const Rational& x, const PrecPolicy& prec) {
    if (x > 0) return gamma_rational(x, prec);
    if (x.get_den() == 1) throw PoleAtC("gamma at nonpositive integer");
    // reflection: Gamma(x) = pi / (sin(pi x) * Gamma(1 - x))
    PrecPolicy inner = prec;
    inner.target_digits += 5;
    long wp = inner.work_bits();
    MPReal pi = MPReal::pi(wp);
    MPReal s = sin(pi * MPReal::of(x, wp));
    return pi / (s * gamma_rational(Rational(1) - x, inner));
}

MPReal cs_value(const BigInt& D, const PrecPolicy& prec) {
    ClassData cd = class_data(D);  // throws NotFundamental when appropriate
    PrecPolicy inner = prec;
    inner.target_digits += 8;
    long wp = inner.work_bits();
    MPReal logsum(wp);
    long n = static_cast<long>(mpz_class(-D).get_si());
    for (long j = 1; j <= n; ++j) {
        int chi = kronecker(D, j);
        if (chi == 0) continue;
        MPReal lg = log(gamma_rational(Rational(j, n), inner));
        if (chi > 0)
            logsum += lg;
        else
            logsum -= lg;
    }
    Rational expo(cd.w, 2 * cd.h);
    expo.canonicalize();
    return exp(logsum * MPReal::of(expo, wp));
}

}  // namespace cfcs
