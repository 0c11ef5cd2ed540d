#pragma once
// The CF family [[0,a1,A(n-1)],[b0,-K(Dn-1)(D(n-1)+1)]]: normalized
// recurrence, closed-form convergent polynomials, convergence constants,
// the T_n/U_n solutions of the underlying three-term recursion, the three
// independent limit formulas, and constructors for the classical CFs.

#include <optional>
#include <variant>
#include <vector>

#include "cfcs/cf.hpp"
#include "cfcs/exact.hpp"
#include "cfcs/functions.hpp"

namespace cfcs {

struct InvalidKind : Error {
    using Error::Error;
};
struct SignMismatch : Error {
    using Error::Error;
};

struct FamilyParams {
    Rational a1, b0, A, K;
    long D = 0;

    Rational B() const { return Rational(1, D); }
    Rational Z() const { return A / Rational(D); }
    Rational discriminant() const { return A * A - 4 * K * Rational(D) * Rational(D); }
};

GeneralCF make_cf(const FamilyParams& p);

// (Dn+1) v_{n+1} = A n v_n - K (Dn-1) v_{n-1} for n >= 1, exact.
std::vector<Rational> solve_recurrence(const FamilyParams& p, const Rational& v0,
                                       const Rational& v1, long N);

// f(n) = |K|^{floor(n/2)} prod_{1<=j<=n} (D(j-1)+1).
Rational normalizer(const FamilyParams& p, long n);

struct NormalizedPQ {
    std::vector<Rational> p, q;  // p' = p/f, q' = q/f
};
NormalizedPQ normalized_pq(const FamilyParams& p, long N);

// Closed-form P_n, Q_n with v_{n+1} = (P_n v1 + Q_n v0) / (B+1)_n.
struct PQPair {
    Rational P, Q;
};
PQPair closed_form_PQ(const Rational& B, const Rational& Z, const Rational& K,
                      long n);

struct ConvergenceData {
    MPReal R, E, halfLogE;
};
struct NonConvergent {};
std::variant<ConvergenceData, NonConvergent> convergence_data(
    const FamilyParams& p, const PrecPolicy& prec);

struct TParams {
    Rational a, b;
    MPReal z;  // |1/z| < 1
};

// T_n(a,b;z) = G(a+n)G(b+n)/G(2a+2n) (1/z)^{a+n} 2F1(a+n,b+n;2a+2n;1/z);
// n may be a half-integer (rational with denominator 1 or 2).
MPReal T_value(const TParams& t, const Rational& n, const PrecPolicy& prec);
// U_n(a,b;z) = (-1)^n 2F1(1-a-n, a+n; 1+a-b; z); integer n only.
MPReal U_value(const TParams& t, long n, const PrecPolicy& prec);

// Limit via the T1/T0 ratio. For K > 0 this is the real formula with
// z = 1/2 + A/(4D sqrt(K)); for K < 0 the same formula analytically
// continued with sqrt(K) = i sqrt(|K|) (the imaginary parts cancel in L).
MPReal limit_T(const FamilyParams& p, const PrecPolicy& prec);

// Limit via L = b0 / (a1 + A f_D(4KD^2/A^2)) where
// f_D(z) = z 2F1'(1/(2D),1/(2D)-1/2;1;z) / 2F1(1/(2D),1/(2D)+1/2;1;z);
// arguments z <= -1/2 are routed through the Pfaff transform w = z/(z-1).
MPReal limit_fD(const FamilyParams& p, const PrecPolicy& prec);

// f_D itself (used by the CLI self-tests and the contiguity property).
MPReal f_D(long D, const MPReal& z, const PrecPolicy& prec);

enum class ClassicalKind {
    EulerPower,        // (1+z)^a
    LaguerreSym,       // ((1+z)/(1-z))^a
    LaguerreShift,     // (1+z)^a, shifted variant
    GaussRatio,        // F(a,b;c;z)/F(a,b+1;c+1;z) unit-form CF, cleared
    GaussRatioHalfparam,  // b = a-1/2 specialization with polynomial tails
    FDCF,              // CF for F'(a,a-1/2;1;z)/F(a,a+1/2;1;z), z factored out
};

struct ClassicalParams {
    Rational a, b, c, z;
};

GeneralCF classical_cf(ClassicalKind kind, const ClassicalParams& p);

}  // namespace cfcs
