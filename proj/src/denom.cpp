#include <cmath>
#include <numeric>

#include "cfcs/denom.hpp"

namespace cfcs {

namespace {

void check_D(long D) {
    if (D != 2 && D != 3 && D != 4 && D != 6)
        throw UnsupportedD("D must be one of 2, 3, 4, 6");
}

std::vector<long> primes_up_to(long n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<long> ps;
    for (long i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        ps.push_back(i);
        for (long j = 2 * i; j <= n; j += i) comp[j] = true;
    }
    return ps;
}

bool is_prime(long p) {
    if (p < 2) return false;
    for (long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

}  // namespace

std::vector<long> excluded_primes(long D, long n, bool relax_extras) {
    check_D(D);
    if (D == 2) return {};
    std::vector<long> out;
    long lo = relax_extras ? 2 : static_cast<long>(std::sqrt(2.0 * D * n));
    for (long p = lo + 1; p <= n; ++p) {
        if (p % D != D - 1) continue;
        if (!is_prime(p)) continue;
        if (!relax_extras) {
            if (p == D - 1) continue;
            if ((n + 1) % p == 0) continue;
            if (static_cast<double>(p) * p <= 2.0 * D * n) continue;  // exact guard
        }
        // {(n+1-1/D)/p} >= 1/D  <=>  (D(n+1)-1) mod Dp >= p
        // {(n+1/D)/p}  < 1-1/D  <=>  (Dn+1)     mod Dp < Dp - p
        long Dp = D * p;
        long r1 = (D * (n + 1) - 1) % Dp;
        long r2 = (D * n + 1) % Dp;
        if (r1 < p) continue;
        if (r2 >= Dp - p) continue;
        out.push_back(p);
    }
    return out;
}

DenomData d_values(long D, long n) {
    check_D(D);
    if (n < 1) throw Error("d_values: n must be >= 1");
    DenomData d;
    d.n = n;
    d.dD = 1;
    for (long j = 1; j <= n; ++j) d.dD = lcm(d.dD, BigInt(D * j + 1));
    d.removedPrimes = excluded_primes(D, n);
    d.dStar = d.dD;
    for (long p : d.removedPrimes) {
        if (d.dStar % p != 0) throw Error("d_values: removed prime does not divide lcm");
        d.dStar /= p;
    }
    return d;
}

namespace {

long valuation(BigInt& x, const BigInt& p) {
    long v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

}  // namespace

IntegralityReport verify_integrality(const FamilyParams& fp, const Rational& v0,
                                     const Rational& v1, long nMax) {
    check_D(fp.D);
    IntegralityReport rep;
    rep.params = fp;
    rep.nMax = nMax;
    Rational AoverK = fp.A / fp.K;
    rep.g = AoverK.get_den();
    rep.part_i = (rep.g == 1);
    std::vector<BigInt> gprimes;
    if (!rep.part_i) {
        // hypotheses of part (ii)
        BigInt g = rep.g;
        for (BigInt p = 2; p * p <= g; p += (p == 2 ? 1 : 2)) {
            if (g % p == 0) {
                gprimes.push_back(p);
                while (g % p == 0) g /= p;
            }
        }
        if (g > 1) gprimes.push_back(g);
        for (const BigInt& p : gprimes) {
            if (BigInt(fp.D) % p != 0)
                throw HypothesisViolated("prime divisor of denom(A/K) does not divide D");
            BigInt gg = rep.g;
            long vg = valuation(gg, p);
            BigInt kabs = abs(fp.K.get_num());
            long vK = valuation(kabs, p);
            long need = (p == 2) ? 2 * vg - 2 : 2 * vg - 1;
            if (vK < need)
                throw HypothesisViolated("valuation of K too small for part (ii)");
        }
    }
    // clear denominators of the initial vector (v_n is linear in (v0, v1))
    BigInt clear = lcm(v0.get_den(), v1.get_den());
    std::vector<Rational> v =
        solve_recurrence(fp, v0 * Rational(clear), v1 * Rational(clear), nMax + 1);
    BigInt dD = 1;
    rep.pass.reserve(nMax);
    for (const BigInt& p : gprimes) rep.slack[static_cast<long>(p.get_si())] = {};
    for (long n = 1; n <= nMax; ++n) {
        dD = lcm(dD, BigInt(fp.D * n + 1));
        BigInt dStar = dD;
        for (long p : excluded_primes(fp.D, n)) dStar /= p;
        Rational x = Rational(dStar) * rational_pow(fp.K, -((n + 1) / 2)) * v[n + 1];
        x.canonicalize();
        BigInt den = x.get_den();
        // part (ii): strip the allowed g-prime slack, recording e_p(n)
        for (const BigInt& p : gprimes) {
            long e = valuation(den, p);
            rep.slack[static_cast<long>(p.get_si())].push_back(e);
        }
        rep.pass.push_back(den == 1);
    }
    return rep;
}

AsymConstants asymptotic_constants(long D, const PrecPolicy& prec) {
    check_D(D);
    Rational mD(0);
    long phi = 0;
    for (long j = 1; j <= D; ++j) {
        if (std::gcd(j, D) != 1) continue;
        ++phi;
        mD += Rational(1, j);
    }
    mD *= Rational(D, phi);
    mD.canonicalize();
    long wp = prec.work_bits();
    MPReal pi = MPReal::pi(wp);
    MPReal cotv = cot(pi / MPReal::of(D, wp));
    MPReal mstar = MPReal::of(mD, wp) -
                   (pi * cotv + MPReal::of(Rational(D, D - 1), wp) - MPReal::of(D, wp)) /
                       MPReal::of(phi, wp);
    return {mD, mstar};
}

MPReal empirical_slope(long D, long n, const PrecPolicy& prec) {
    check_D(D);
    if (n < 100) throw Error("empirical_slope: n must be >= 100");
    long top = D * n + 1;
    std::vector<long> ps = primes_up_to(top);
    long wp = prec.work_bits();
    // log d_D(n) = sum_p max{k : exists j <= n with p^k | Dj+1} log p.
    // For p not dividing D, Dj = -1 (mod p^k) has a unique root mod p^k; the
    // smallest positive j is the root itself, so the exponent is the largest
    // k with root(p^k) <= n and p^k <= Dn+1.
    double logsum = 0;
    for (long p : ps) {
        if (D % p == 0) continue;
        long pk = p;
        long e = 0;
        while (pk <= top) {
            // solve D j = -1 (mod pk)
            BigInt Dinv;
            BigInt Dz(D), pkz(pk);
            if (mpz_invert(Dinv.get_mpz_t(), Dz.get_mpz_t(), pkz.get_mpz_t()) == 0) break;
            BigInt j = ((-Dinv) % pkz + pkz) % pkz;
            if (j == 0 || j > n) break;
            ++e;
            if (pk > top / p) break;
            pk *= p;
        }
        if (e > 0) logsum += e * std::log(static_cast<double>(p));
    }
    for (long p : excluded_primes(D, n)) logsum -= std::log(static_cast<double>(p));
    MPReal r(wp);
    mpfr_set_d(r.raw(), logsum / static_cast<double>(n), MPFR_RNDN);
    return r;
}

std::optional<MPReal> mu_bound(const MPReal& halfLogE, const MPReal& mStar) {
    if (!(halfLogE > mStar)) return std::nullopt;
    long wp = std::max(halfLogE.prec(), mStar.prec());
    MPReal one = MPReal::of(1, wp);
    return one + (halfLogE + mStar) / (halfLogE - mStar);
}

}  // namespace cfcs
