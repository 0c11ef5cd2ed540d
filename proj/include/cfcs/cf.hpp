#pragma once
// Generic continued fractions [[a0,a1,a(n)],[b0,b(n)]] with polynomial tails:
// exact convergents, numeric limits with an error estimate, equivalence
// scaling, the half-shift transform, and text rendering/parsing of the
// bracket notation.

#include <optional>
#include <string>
#include <vector>

#include "cfcs/exact.hpp"
#include "cfcs/mpreal.hpp"

namespace cfcs {

struct ZeroPartialDenominator : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};

struct GeneralCF {
    Rational a0{0};
    Rational a1{0};
    RationalPolynomial aPoly;  // partial denominators, depth n >= 2
    Rational b0{0};
    RationalPolynomial bPoly;  // partial numerators, index n >= 1
    // Extensions needed by two classical constructions; both empty for the
    // main CF family and for everything the bracket notation round-trips.
    std::optional<Rational> b1Override;        // explicit b(1) (Euler CF)
    std::optional<RationalPolynomial> bEven;   // b(n) at even n (Gauss ratio)

    Rational a_at(long n) const;  // n >= 2
    Rational b_at(long n) const;  // n >= 1
};

struct ConvergentSeq {
    std::vector<Rational> p, q;  // index 0..N
};

// Exact convergents under v(n) = a(n) v(n-1) + b(n-1) v(n-2), with
// p(0)=a0, q(0)=1, p(1)=a0*a1+b0, q(1)=a1.
ConvergentSeq convergents(const GeneralCF& cf, long N);

struct LimitResult {
    MPReal value;
    MPReal error_estimate;  // last gap times a safety factor 10
    long iterations = 0;
};

// Numeric limit; throws NoConvergence when the gap sequence fails to show
// sustained geometric contraction.
LimitResult limit(const GeneralCF& cf, const PrecPolicy& prec);

// (A,K) -> (Am, Km^2) equivalence: a1,aPoly scale by m; b0,bPoly by m^2...
// precisely a1 -> m a1, aPoly -> m aPoly, b0 -> m b0, bPoly -> m^2 bPoly.
GeneralCF scale_equivalent(const GeneralCF& cf, const Rational& m);

struct HalfShift {
    RationalPolynomial aPoly, bPoly;
    Rational m;  // equivalence scaling used to clear denominators
};

// Tails n -> n - 1/2, then the smallest positive rational scaling with
// m*a and m^2*b integral (for integral inputs). Head terms are not produced:
// the shifted CF has a different limit and its head is data.
HalfShift half_shift(const RationalPolynomial& aPoly,
                     const RationalPolynomial& bPoly);

std::string to_bracket(const GeneralCF& cf);
GeneralCF parse_bracket(const std::string& text);

std::string rational_str(const Rational& q);

}  // namespace cfcs
