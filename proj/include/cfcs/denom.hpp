#pragma once
// Arithmetic of the denominators d_D(n) = lcm(Dj+1, j<=n): the excluded
// prime set P_n, d*_D(n), the integrality sweep for the cleared convergents,
// the growth constants m_D / m*_D, empirical slopes, and the irrationality
// measure bound.

#include <map>
#include <optional>
#include <vector>

#include "cfcs/exact.hpp"
#include "cfcs/family.hpp"
#include "cfcs/mpreal.hpp"

namespace cfcs {

struct UnsupportedD : Error {
    using Error::Error;
};
struct HypothesisViolated : Error {
    using Error::Error;
};

struct DenomData {
    long n = 0;
    BigInt dD;
    std::vector<long> removedPrimes;  // sorted
    BigInt dStar;                     // dD / prod(removedPrimes)
};

// The excluded-prime set: sqrt(2Dn) < p <= n, p = -1 (mod D), p != D-1,
// p does not divide n+1, {(n+1-1/D)/p} >= 1/D, {(n+1/D)/p} < 1-1/D.
// Empty for D = 2. With relax_extras the conditions p > sqrt(2Dn), p != D-1,
// p | n+1 are dropped (exploration only, non-normative).
std::vector<long> excluded_primes(long D, long n, bool relax_extras = false);

DenomData d_values(long D, long n);

struct IntegralityReport {
    FamilyParams params;
    long nMax = 0;
    BigInt g;  // denominator of A/K
    bool part_i = false;
    std::vector<bool> pass;                    // index n-1 for n = 1..nMax
    std::map<long, std::vector<long>> slack;   // p -> e_p(n) for n = 1..nMax
    bool all_pass() const {
        for (bool b : pass)
            if (!b) return false;
        return !pass.empty();
    }
};

// Exact sweep of d*_D(n) K^{-floor((n+1)/2)} v_{n+1} for n <= nMax, with v
// the normalized-recurrence solution from (v0, v1). Initial vectors with
// denominators are cleared by their lcm first (v_n is linear in them).
IntegralityReport verify_integrality(const FamilyParams& p, const Rational& v0,
                                     const Rational& v1, long nMax);

struct AsymConstants {
    Rational mD;
    MPReal mDstar;
};
AsymConstants asymptotic_constants(long D, const PrecPolicy& prec);

// log(d*_D(n))/n via a prime sieve (no big integers materialized).
MPReal empirical_slope(long D, long n, const PrecPolicy& prec);

// 1 + (halfLogE + mStar)/(halfLogE - mStar) when halfLogE > mStar.
std::optional<MPReal> mu_bound(const MPReal& halfLogE, const MPReal& mStar);

}  // namespace cfcs
