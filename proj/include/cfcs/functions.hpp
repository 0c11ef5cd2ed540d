#pragma once
// Special functions on top of the multiprecision layer: Gamma at rational
// arguments (Stirling series with argument lifting), the Gauss 2F1 series
// with a rigorous geometric tail bound, the analytic-continuation helpers
// needed off |z| < 1 (inverse-argument connection, AGM for the (1/2,1/2;1)
// case), and Chowla-Selberg values CS(D).

#include "cfcs/exact.hpp"
#include "cfcs/mpreal.hpp"

namespace cfcs {

struct SlowConvergence : Error {
    using Error::Error;
};
struct PoleAtC : Error {
    using Error::Error;
};

// Gamma(x) for rational x > 0 (denominator <= 10^4) to prec.target_digits.
MPReal gamma_rational(const Rational& x, const PrecPolicy& prec);

// Internal extension: any rational x that is not a nonpositive integer
// (negative arguments via the reflection formula).
MPReal gamma_rational_any(const Rational& x, const PrecPolicy& prec);

// 2F1(a,b;c;z) by direct series; requires |z| <= 0.98.
MPReal hyp2f1(const Rational& a, const Rational& b, const Rational& c,
              const MPReal& z, const PrecPolicy& prec);
MPComplex hyp2f1(const Rational& a, const Rational& b, const Rational& c,
                 const MPComplex& z, const PrecPolicy& prec);

// d/dz 2F1(a,b;c;z), termwise-differentiated series; |z| <= 0.98.
MPReal hyp2f1_deriv(const Rational& a, const Rational& b, const Rational& c,
                    const MPReal& z, const PrecPolicy& prec);

// Continuation helpers (no |z| < 1 restriction on the *outer* argument):
// 2F1 at z with |1/z| <= 0.98 via the inverse-argument connection formula;
// requires b - a not an integer. `side` selects the branch of log(-z) when z
// lies on the cut [1, +inf): +1 / -1 for log|z| +/- i*pi, 0 for principal.
MPComplex hyp2f1_inverse_arg(const Rational& a, const Rational& b,
                             const Rational& c, const MPComplex& z, int side,
                             const PrecPolicy& prec);

// Complete elliptic integrals K(m), E(m) in the parameter m = k^2, complex,
// by the AGM iteration (principal square roots).
struct EllipticKE {
    MPComplex K, E;
};
EllipticKE elliptic_ke(const MPComplex& m, const PrecPolicy& prec);

// 2F1(1/2,1/2;1;z) and its z-derivative via the AGM route (valid for z off
// the cut [1,inf); on the cut the principal branch is returned).
MPComplex hyp2f1_half(const MPComplex& z, const PrecPolicy& prec);
MPComplex hyp2f1_half_deriv(const MPComplex& z, const PrecPolicy& prec);

// General-purpose complex evaluation dispatching between the plain series,
// the AGM route (a=b=1/2, c=1) and the inverse-argument connection.
MPComplex hyp2f1_auto(const Rational& a, const Rational& b, const Rational& c,
                      const MPComplex& z, int side, const PrecPolicy& prec);

// CS(D) = (prod_j Gamma(j/|D|)^{(D/j)})^{w/(2h)} for fundamental D < 0.
MPReal cs_value(const BigInt& D, const PrecPolicy& prec);

}  // namespace cfcs
