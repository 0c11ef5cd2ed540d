#pragma once
// Modular forms via q-expansions at CM points: eta (pentagonal series),
// theta, the Eisenstein series E2/E4/E6 and their level-2..4 composites,
// the Hauptmoduls R_1..R_4, numerical verification of the hypergeometric
// evaluations they satisfy, and the CM pipeline that assembles a CF limit
// from modular derivative data alone.

#include "cfcs/exact.hpp"
#include "cfcs/family.hpp"
#include "cfcs/functions.hpp"
#include "cfcs/mpreal.hpp"

namespace cfcs {

struct SlowQ : Error {
    using Error::Error;
};
struct BranchAmbiguity : Error {
    using Error::Error;
};

// tau = x + y*sqrt(d) with d < 0, y > 0 (so Im tau > 0).
struct CMPoint {
    QuadraticSurd tau;
};
MPComplex cm_value(const CMPoint& p, long bits);

enum class FormKind {
    Eta,      // q^{1/24} sum (-1)^k q^{k(3k-1)/2}
    Theta,    // sum_{n in Z} q^{n^2}
    E2, E4, E6,
    E2Star,   // E2 - 3/(pi Im tau)
    EN2,      // (N E2(N tau) - E2(tau)) / (N-1)
    EN4,      // (N^2 E4(N tau) - E4(tau)) / (N^2-1)
    E33,      // E_{3,4} / E_{3,2}^{1/2}
    G42,      // 4 E2(4 tau) - 4 E2(2 tau) + E2(tau)
    F1Plus, F1Minus,  // E6 +- 24 sqrt(-3) eta^12
    F2Plus, F2Minus,  // E_{2,4} +- 16 sqrt(-1) (eta eta_2)^4
    F3Plus, F3Minus,  // E_{3,3} +- 6 sqrt(-3) (eta eta_3)^3
};

struct ModularValue {
    MPComplex value;
    Rational weight;
    long termsUsed = 0;
};

// N is only consulted for the EN2/EN4 kinds.
ModularValue form_value(FormKind kind, long N, const CMPoint& p,
                        const PrecPolicy& prec);

// R_N(tau) for N = 1..4.
MPComplex hauptmodul(long N, const CMPoint& p, const PrecPolicy& prec);

// Checks 2F1(1/2,b_N;1;1/(1-R_N)) against the eta/theta side, with
// b_N = 5/6, 3/4, 2/3, 1/2 for N = 1..4. Fractional powers are principal;
// when the argument falls on the cut [1,inf) both boundary values are
// tried (they are conjugate) and `branch` records the side that matched.
struct ModevalReport {
    MPComplex lhs, rhs;
    MPReal residual;  // |lhs-rhs| / |rhs|
    int branch = 1;
};
ModevalReport verify_modeval(long N, const CMPoint& p, const PrecPolicy& prec);

// The CM evaluation pipeline for one table row: basic period, Hauptmodul,
// q-derivatives by the Ramanujan chain, the contiguous 2F1 value, the
// T1/T0 ratio, and the CF limit b0/(a1 + sigma sqrt(K) Q). `fam` carries
// the published CF parameters (any positive rescaling of the raw family).
struct CMPipelineData {
    MPComplex Omega;     // e^{i pi/4} eta(tau)^2
    MPComplex R;         // Hauptmodul value
    MPComplex t;         // 1/(1-R), the hypergeometric argument
    MPComplex f;         // the weight-1 evaluation 2F1(1/2,b;1;t)
    MPComplex Dt;        // D(t), D = q d/dq
    MPComplex Serre;     // D(f) - (E2/12) f
    MPComplex F1contig;  // 2F1(3/2,b+1;3;t) via the contiguity relation
    MPComplex Q;         // (b/4) t F1contig / f
    int sigma = 1;       // which root of sq the Hauptmodul realizes
    MPReal L;            // the CF limit (real part; imaginary checked small)
};
CMPipelineData cm_pipeline(long N, const CMPoint& p, const FamilyParams& fam,
                           const PrecPolicy& prec);

}  // namespace cfcs
