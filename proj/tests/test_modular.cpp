#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cfcs/modular.hpp"
#include "cfcs/registry.hpp"

using namespace cfcs;

namespace {
MPReal lit(const char* s, long bits = 512) {
    MPReal r(bits);
    mpfr_set_str(r.raw(), s, 10, MPFR_RNDN);
    return r;
}
PrecPolicy dg(long digits) {
    PrecPolicy p;
    p.target_digits = digits;
    return p;
}
CMPoint pt(const char* surd) { return CMPoint{parse_surd(surd)}; }

// reference values computed independently with a Python multiprecision
// library (q-series at 70 digits)
static const char* kEtaI =
    "0.768225422326056659002594179576180644517866914464805014676703";
static const char* kEta2I =
    "0.59238278133241588529036337449199537276152999320577066523429";
static const char* kThetaI =
    "1.00373488548773909104767959506695386620799433244451940825496";
static const char* kE4I =
    "1.45576289226870932246242200359886928743239458552820349571885";
static const char* kGamma13 =
    "2.67893853470774763365569294097467764412868937795730110095043";
static const char* kGamma23 =
    "1.35411793942640041694528802815451378551932726605679369839402";
static const char* kCS3 =
    "7.74316961952139338564840737673033871656089575387998428269442";
}  // namespace

TEST_CASE("cm point evaluation") {
    MPComplex tau = cm_value(pt("(-1+3*sqrt(-3))/2"), 512);
    CHECK(agrees_to(tau.re, MPReal::of(Rational(-1, 2), 512), 70));
    CHECK(agrees_to(tau.im, sqrt(MPReal::of(3, 512)) * MPReal::of(Rational(3, 2), 512),
                    70));
}

TEST_CASE("eta, theta, Eisenstein values at tau = i") {
    PrecPolicy p = dg(55);
    CMPoint i = pt("(0+1*sqrt(-1))/1");
    ModularValue eta = form_value(FormKind::Eta, 1, i, p);
    CHECK(agrees_to(eta.value.re, lit(kEtaI), 54));
    CHECK(abs(eta.value.im) < lit("1e-50"));
    CHECK(eta.weight == Rational(1, 2));

    ModularValue th = form_value(FormKind::Theta, 1, i, p);
    CHECK(agrees_to(th.value.re, lit(kThetaI), 54));

    ModularValue e4 = form_value(FormKind::E4, 1, i, p);
    CHECK(agrees_to(e4.value.re, lit(kE4I), 54));
    CHECK(e4.weight == 4);

    // E6(i) = 0 and E2*(i) = 0 (weight-2 CM vanishing at the fixed point of S)
    ModularValue e6 = form_value(FormKind::E6, 1, i, p);
    CHECK(abs(e6.value.re) < lit("1e-50"));
    ModularValue e2s = form_value(FormKind::E2Star, 1, i, p);
    CHECK(abs(e2s.value.re) < lit("1e-50"));
    // E2(i) = 3/pi
    ModularValue e2 = form_value(FormKind::E2, 1, i, p);
    CHECK(agrees_to(e2.value.re, MPReal::of(3, 512) / MPReal::pi(512), 54));
}

TEST_CASE("eta transformation laws") {
    PrecPolicy p = dg(50);
    long wp = 512;
    // eta(tau+1) = e^{i pi/12} eta(tau) at tau = i
    MPComplex a = form_value(FormKind::Eta, 1, pt("(1+1*sqrt(-1))/1"), p).value;
    MPComplex b = form_value(FormKind::Eta, 1, pt("(0+1*sqrt(-1))/1"), p).value;
    MPReal pi12 = MPReal::pi(wp) / 12;
    MPComplex phase = exp(MPComplex(MPReal::of(0, wp), pi12));
    MPComplex rhs = phase * b;
    CHECK(agrees_to(a.re, rhs.re, 45));
    CHECK(agrees_to(a.im, rhs.im, 45));

    // eta(-1/tau) = sqrt(-i tau) eta(tau) at tau = 2i: eta(i/2) = sqrt(2) eta(2i)
    MPComplex c = form_value(FormKind::Eta, 1, pt("(0+1*sqrt(-1))/2"), p).value;
    MPComplex d = form_value(FormKind::Eta, 1, pt("(0+2*sqrt(-1))/1"), p).value;
    CHECK(agrees_to(c.re, d.re * sqrt(MPReal::of(2, wp)), 45));
    CHECK(agrees_to(d.re, lit(kEta2I), 45));

    // quasi-modularity of E2: E2(i/2) = -4 E2(2i) + 12/pi
    MPComplex e2h = form_value(FormKind::E2, 1, pt("(0+1*sqrt(-1))/2"), p).value;
    MPComplex e22 = form_value(FormKind::E2, 1, pt("(0+2*sqrt(-1))/1"), p).value;
    MPReal rhs2 = MPReal::of(-4, wp) * e22.re + MPReal::of(12, wp) / MPReal::pi(wp);
    CHECK(agrees_to(e2h.re, rhs2, 45));
}

TEST_CASE("q-series refuses tau too close to the real axis") {
    CHECK_THROWS_AS(form_value(FormKind::Eta, 1, pt("(0+1*sqrt(-1))/50"), dg(30)),
                    SlowQ);
}

TEST_CASE("Hauptmodul values against the published rationals") {
    PrecPolicy p = dg(45);
    long wp = 512;
    MPComplex one(MPReal::of(1, wp), MPReal::of(0, wp));
    for (const char* tag : {"1.4", "2.2", "3.2", "4.1"}) {
        const Table1Row& row = table1_row(tag);
        MPComplex R = hauptmodul(row.N, CMPoint{row.tau}, p);
        MPComplex twoRm1 = MPReal::of(2, wp) * R - one;
        MPComplex chk = twoRm1 * twoRm1;
        MPReal target = MPReal::of(row.sq, wp);
        CHECK(agrees_to(chk.re, target, 40));
        CHECK(abs(chk.im) < abs(target) * lit("1e-40"));
    }
    // the worked-example point realizes the other root: R_1 = -125/3, while
    // the table representative gives 128/3 (note R(tau+1) = 1 - R(tau))
    MPComplex R7 = hauptmodul(1, pt("(-3+3*sqrt(-3))/2"), p);
    CHECK(agrees_to(R7.re, MPReal::of(Rational(-125, 3), wp), 40));
    MPComplex R4 = hauptmodul(1, CMPoint{table1_row("1.4").tau}, p);
    CHECK(agrees_to(R4.re, MPReal::of(Rational(128, 3), wp), 40));
}

TEST_CASE("hypergeometric evaluation residuals") {
    PrecPolicy p = dg(40);
    long wp = 512;
    for (const char* tag : {"1.4", "2.2", "3.2", "4.1"}) {
        const Table1Row& row = table1_row(tag);
        ModevalReport rep = verify_modeval(row.N, CMPoint{row.tau}, p);
        CHECK(rep.residual < lit("1e-30"));
    }
    // rows whose argument lands on the cut [1, inf): a branch is selected
    for (const char* tag : {"2.9", "4.7"}) {
        const Table1Row& row = table1_row(tag);
        ModevalReport rep = verify_modeval(row.N, CMPoint{row.tau}, p);
        CHECK(rep.residual < lit("1e-25"));
        CHECK((rep.branch == 1 || rep.branch == -1));
    }
    (void)wp;
}

TEST_CASE("CM pipeline reproduces the CF limit") {
    PrecPolicy p = dg(45);
    const Table1Row& r1 = table1_row("1.4");
    const Table2Row& r2 = table2_row("1.4");
    CMPipelineData pd = cm_pipeline(r1.N, CMPoint{r1.tau}, r2.family(), p);
    CHECK(agrees_to(pd.L, lit(kCS3), 42));
    CHECK((pd.sigma == 1 || pd.sigma == -1));
    // t = 1/(1-R) with R = 128/3: t = -3/125
    CHECK(agrees_to(pd.t.re, MPReal::of(Rational(-3, 125), 512), 40));
}

TEST_CASE("worked-example constants at tau = (-3+3*sqrt(-3))/2") {
    PrecPolicy p = dg(45);
    long wp = 512;
    const Table2Row& r2 = table2_row("1.4");
    CMPoint tau7 = pt("(-3+3*sqrt(-3))/2");
    CMPipelineData pd = cm_pipeline(1, tau7, r2.family(), p);

    // Omega = 3^{-19/12} G(1/3)/G(2/3)^2, real positive
    MPReal om = pow(MPReal::of(3, wp), MPReal::of(Rational(-19, 12), wp)) *
                lit(kGamma13) / (lit(kGamma23) * lit(kGamma23));
    CHECK(agrees_to(pd.Omega.re, om, 30));
    CHECK(abs(pd.Omega.im) < lit("1e-30"));

    // R = -125/3 here, and the limit is still the same constant
    CHECK(agrees_to(pd.R.re, MPReal::of(Rational(-125, 3), wp), 30));
    CHECK(agrees_to(pd.L, lit(kCS3), 40));

    // f = 2F1(1/2,5/6;1;t) = 2^{25/6} 3^{1/12} 5^{-1} Omega
    MPReal fref = pow(MPReal::of(2, wp), MPReal::of(Rational(25, 6), wp)) *
                  pow(MPReal::of(3, wp), MPReal::of(Rational(1, 12), wp)) / 5 * om;
    CHECK(agrees_to(pd.f.re, fref, 28));

    // D(R) = Dt (1-R)^2 = 800 * 3^{-5/6} Omega^2
    MPComplex oneMinusR = MPComplex(MPReal::of(1, wp) - pd.R.re, -pd.R.im);
    MPComplex DR = pd.Dt * oneMinusR * oneMinusR;
    MPReal dref = MPReal::of(800, wp) *
                  pow(MPReal::of(3, wp), MPReal::of(Rational(-5, 6), wp)) * om * om;
    CHECK(agrees_to(DR.re, dref, 28));

    // E2*(tau) = 8 * 3^{1/6} Omega^2
    MPComplex e2s = form_value(FormKind::E2Star, 1, tau7, p).value;
    MPReal e2ref = MPReal::of(8, wp) *
                   pow(MPReal::of(3, wp), MPReal::of(Rational(1, 6), wp)) * om * om;
    CHECK(agrees_to(e2s.re, e2ref, 28));
}

TEST_CASE("pipeline refuses nonconvergent rows") {
    PrecPolicy p = dg(30);
    const Table1Row& r1 = table1_row("2.9");
    FamilyParams fam{Rational(1), Rational(1), r1.A, r1.K, r1.D};
    CHECK_THROWS_AS(cm_pipeline(r1.N, CMPoint{r1.tau}, fam, p), NoConvergence);
}
