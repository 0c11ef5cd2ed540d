// End-to-end acceptance suite: one pass/fail line per criterion.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "cfcs/registry.hpp"

using namespace cfcs;

namespace {

int g_failures = 0;

void report(int num, const char* what, bool ok, const std::string& detail = "") {
    std::printf("criterion %2d [%s] %s%s%s\n", num, ok ? "pass" : "FAIL", what,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

PrecPolicy dg(long digits) {
    PrecPolicy p;
    p.target_digits = digits;
    return p;
}

MPReal lit(const char* s, long bits = 2400) {
    MPReal r(bits);
    mpfr_set_str(r.raw(), s, 10, MPFR_RNDN);
    return r;
}

double now_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

// run fn(i) for i in [0, n) on all hardware threads
void parallel_for(long n, const std::function<void(long)>& fn) {
    std::atomic<long> next{0};
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    auto drain = [&] {
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(drain);
    drain();
    for (std::thread& t : pool) t.join();
}

FamilyParams t1_family(const Table1Row& r) {
    return {Rational(1), Rational(1), r.A, r.K, r.D};
}

// ---------------------------------------------------------------------------

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    std::string bad;
    long nonconv = 0;
    for (const Table1Row& r : table1()) {
        auto data = convergence_data(t1_family(r), dg(30));
        if (std::holds_alternative<NonConvergent>(data)) {
            ++nonconv;
            if (r.halfLogE != "-") bad += r.tag + "(unexpected nonconvergence) ";
            continue;
        }
        if (r.halfLogE == "-") {
            bad += r.tag + "(should not converge) ";
            continue;
        }
        double got = std::get<ConvergenceData>(data).halfLogE.d();
        double tol = r.tag == "4.1" ? 0.005 : 0.001;
        if (std::fabs(got - std::atof(r.halfLogE.c_str())) > tol)
            bad += r.tag + " ";
    }
    double ms = now_ms(t0);
    bool ok = bad.empty() && nonconv == 5 && ms < 1000.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%ld nonconvergent, %.0f ms", nonconv, ms);
    report(1, "convergence constants, all 44 rows", ok, bad.empty() ? buf : bad);
}

void criterion2() {
    std::mutex mu;
    std::string bad;
    const std::vector<Table2Row>& rows = table2();
    parallel_for(static_cast<long>(rows.size()), [&](long i) {
        const Table2Row& r = rows[i];
        std::string local;
        try {
            PrecPolicy p = dg(48);
            long wp = p.work_bits();
            MPReal target = r.multiplier.value(wp) * cs_value(BigInt(r.disc), p);
            MPReal l1 = limit(make_cf(r.family()), p).value;
            MPReal l2 = limit_T(r.family(), p);
            MPReal l3 = limit_fD(r.family(), p);
            if (!agrees_to(l1, target, 40)) local += r.tag + ":cf ";
            if (!agrees_to(l2, target, 40)) local += r.tag + ":T ";
            if (!agrees_to(l3, target, 40)) local += r.tag + ":fD ";
            if (!agrees_to(l1, l2, 30) || !agrees_to(l2, l3, 30) ||
                !agrees_to(l1, l3, 30))
                local += r.tag + ":pairwise ";
        } catch (const std::exception& e) {
            local += r.tag + "(" + e.what() + ") ";
        }
        if (!local.empty()) {
            std::lock_guard<std::mutex> lk(mu);
            bad += local;
        }
    });
    report(2, "limit identities by three routes, 40+ digits, 39 rows", bad.empty(),
           bad);
}

void criterion3() {
    std::string bad;
    long reproduced = 0;
    for (const Table2Row& r : table2()) {
        if (r.mu == "-") continue;
        auto data = convergence_data(r.family(), dg(40));
        if (std::holds_alternative<NonConvergent>(data)) {
            bad += r.tag + "(nonconvergent) ";
            continue;
        }
        MPReal hle = std::get<ConvergenceData>(data).halfLogE;
        MPReal mstar = asymptotic_constants(r.D, dg(40)).mDstar;
        auto mu = mu_bound(hle, mstar);
        if (!mu) {
            bad += r.tag + "(no bound) ";
            continue;
        }
        double tol = r.tag == "3.10" ? 0.5 : 0.001;
        if (std::fabs(mu->d() - std::atof(r.mu.c_str())) > tol)
            bad += r.tag + " ";
        else
            ++reproduced;
    }
    bool ok = bad.empty() && reproduced == 21;
    report(3, "irrationality measures, 21 published rows", ok,
           bad.empty() ? std::to_string(reproduced) + " reproduced" : bad);
}

void criterion4() {
    auto t0 = std::chrono::steady_clock::now();
    std::mutex mu;
    std::string bad;
    const std::vector<Table2Row>& rows = table2();
    parallel_for(static_cast<long>(rows.size()), [&](long i) {
        const Table2Row& r = rows[i];
        FamilyParams fam = r.family();
        Rational B = fam.B(), Z = fam.Z();
        std::vector<Rational> q = solve_recurrence(fam, Rational(1), fam.a1, 201);
        std::vector<Rational> pvec = solve_recurrence(fam, Rational(0), fam.b0, 201);
        Rational poch(1);
        for (long n = 0; n <= 200; ++n) {
            if (n > 0) poch *= B + n;  // (B+1)_n
            PQPair pq = closed_form_PQ(B, Z, fam.K, n);
            if (pq.P * fam.a1 + pq.Q != q[n + 1] * poch ||
                pq.P * fam.b0 != pvec[n + 1] * poch) {
                std::lock_guard<std::mutex> lk(mu);
                bad += r.tag + " ";
                return;
            }
        }
    });
    double ms = now_ms(t0);
    bool ok = bad.empty() && ms < 30000.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f ms", ms);
    report(4, "closed-form convergents equal the recurrence, n <= 200", ok,
           bad.empty() ? buf : bad);
}

void criterion5() {
    std::mutex mu;
    std::string bad;
    std::atomic<long> partI{0}, partII{0};
    const std::vector<Table2Row>& rows = table2();
    parallel_for(static_cast<long>(rows.size()), [&](long i) {
        const Table2Row& r = rows[i];
        std::string local;
        try {
            for (int branch = 0; branch < 2; ++branch) {
                Rational v0 = branch ? Rational(0) : Rational(1);
                Rational v1 = branch ? r.b0 : r.a1;
                IntegralityReport rep = verify_integrality(r.family(), v0, v1, 300);
                if (rep.part_i) {
                    if (branch == 0) ++partI;
                    if (!rep.all_pass()) local += r.tag + ":exact ";
                } else {
                    if (branch == 0) ++partII;
                    // slack exponents must fit c log n + c' (least squares,
                    // residuals bounded)
                    for (const auto& [p, e] : rep.slack) {
                        long n = static_cast<long>(e.size());
                        double sx = 0, sy = 0, sxx = 0, sxy = 0;
                        for (long k = 0; k < n; ++k) {
                            double x = std::log(static_cast<double>(k + 1));
                            double y = static_cast<double>(e[k]);
                            sx += x; sy += y; sxx += x * x; sxy += x * y;
                        }
                        double det = n * sxx - sx * sx;
                        double c = (n * sxy - sx * sy) / det;
                        double c0 = (sy - c * sx) / n;
                        double worst = 0;
                        for (long k = 0; k < n; ++k) {
                            double x = std::log(static_cast<double>(k + 1));
                            double resid = std::fabs(e[k] - (c * x + c0));
                            worst = std::max(worst, resid);
                        }
                        // e_p(n) oscillates between 0 and ~log2(n), so the
                        // pointwise scatter around the log fit is itself of
                        // order log2(nMax); only super-logarithmic growth
                        // (residuals growing past the log2(300) ~ 8 band, or a
                        // runaway slope) indicates a violation
                        if (worst > 9.0)
                            local += r.tag + ":p" + std::to_string(p) + "-residual ";
                        if (c < -0.1 || c > 10.0)
                            local += r.tag + ":p" + std::to_string(p) + "-slope ";
                    }
                }
            }
        } catch (const std::exception& ex) {
            local += r.tag + "(" + ex.what() + ") ";
        }
        if (!local.empty()) {
            std::lock_guard<std::mutex> lk(mu);
            bad += local;
        }
    });
    bool ok = bad.empty() && partI + partII == 39;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%ld exact rows, %ld slack rows",
                  partI.load(), partII.load());
    report(5, "integrality sweep n <= 300, both branches", ok,
           bad.empty() ? buf : bad);
}

void criterion6() {
    auto t0 = std::chrono::steady_clock::now();
    std::string bad;
    for (long D : {2L, 3L, 4L, 6L}) {
        double target = D == 2 ? 2.0 : asymptotic_constants(D, dg(20)).mDstar.d();
        double got = empirical_slope(D, 50000, dg(20)).d();
        double tol = D == 2 ? 0.02 : 0.03;
        if (std::fabs(got - target) / target > tol)
            bad += "D=" + std::to_string(D) + " ";
    }
    double ms = now_ms(t0);
    bool ok = bad.empty() && ms < 30000.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f ms", ms);
    report(6, "denominator slopes at n = 50000", ok, bad.empty() ? buf : bad);
}

void criterion7() {
    std::mutex mu;
    std::string bad;
    const std::vector<Table1Row>& rows = table1();
    parallel_for(static_cast<long>(rows.size()), [&](long i) {
        const Table1Row& r = rows[i];
        std::string local;
        try {
            PrecPolicy p = dg(40);
            long wp = p.work_bits();
            MPComplex R = hauptmodul(r.N, CMPoint{r.tau}, p);
            MPComplex one(MPReal::of(1, wp), MPReal::of(0, wp));
            MPComplex twoRm1 = MPReal::of(2, wp) * R - one;
            MPComplex chk = twoRm1 * twoRm1;
            if (!agrees_to(chk.re, MPReal::of(r.sq, wp), 30))
                local += r.tag + ":sq ";
            ModevalReport mr = verify_modeval(r.N, CMPoint{r.tau}, p);
            if (!(mr.residual < lit("1e-25", 256))) local += r.tag + ":modeval ";
        } catch (const std::exception& e) {
            local += r.tag + "(" + e.what() + ") ";
        }
        if (!local.empty()) {
            std::lock_guard<std::mutex> lk(mu);
            bad += local;
        }
    });
    // worked-example constants
    try {
        PrecPolicy p = dg(40);
        long wp = p.work_bits();
        CMPoint tau7{parse_surd("(-3+3*sqrt(-3))/2")};
        CMPipelineData pd = cm_pipeline(1, tau7, table2_row("1.4").family(), p);
        MPReal om = pow(MPReal::of(3, wp), MPReal::of(Rational(-19, 12), wp)) *
                    gamma_rational(Rational(1, 3), p) /
                    (gamma_rational(Rational(2, 3), p) *
                     gamma_rational(Rational(2, 3), p));
        if (!agrees_to(pd.R.re, MPReal::of(Rational(-125, 3), wp), 25))
            bad += "7.1:R ";
        MPReal fref = pow(MPReal::of(2, wp), MPReal::of(Rational(25, 6), wp)) *
                      pow(MPReal::of(3, wp), MPReal::of(Rational(1, 12), wp)) / 5 *
                      om;
        if (!agrees_to(pd.f.re, fref, 25)) bad += "7.1:f ";
        MPComplex oneMinusR(MPReal::of(1, wp) - pd.R.re, -pd.R.im);
        MPComplex DR = pd.Dt * oneMinusR * oneMinusR;
        MPReal dref = MPReal::of(800, wp) *
                      pow(MPReal::of(3, wp), MPReal::of(Rational(-5, 6), wp)) * om *
                      om;
        if (!agrees_to(DR.re, dref, 25)) bad += "7.1:DR ";
        MPComplex e2s = form_value(FormKind::E2Star, 1, tau7, p).value;
        MPReal e2ref = MPReal::of(8, wp) *
                       pow(MPReal::of(3, wp), MPReal::of(Rational(1, 6), wp)) * om *
                       om;
        if (!agrees_to(e2s.re, e2ref, 25)) bad += "7.1:E2* ";
    } catch (const std::exception& e) {
        bad += std::string("7.1(") + e.what() + ") ";
    }
    report(7, "modular layer: sq to 30 digits, residuals < 1e-25, worked example",
           bad.empty(), bad);
}

void criterion8() {
    std::string bad;
    // shifted-Laguerre tail at (1/3, -3/128), cleared by the equivalence
    // scaling m = 128, must match the published cube-root CF tail
    GeneralCF lf = classical_cf(ClassicalKind::LaguerreShift,
                                ClassicalParams{Rational(1, 3), Rational(0),
                                                Rational(0), Rational(-3, 128)});
    GeneralCF sc = scale_equivalent(lf, Rational(128));
    if (sc.aPoly != RationalPolynomial::parse("506*n-253")) bad += "a-tail ";
    if (sc.bPoly != RationalPolynomial::parse("-9*n^2+1")) bad += "b-tail ";
    // the published cube-root CF with that tail converges to 2^{1/3}
    GeneralCF cubic;
    cubic.a0 = Rational(5, 4);
    cubic.a1 = 252;
    cubic.aPoly = sc.aPoly;
    cubic.b0 = Rational(5, 2);
    cubic.bPoly = sc.bPoly;
    PrecPolicy p = dg(35);
    long wp = p.work_bits();
    MPReal cbrt2 = pow(MPReal::of(2, wp), MPReal::of(Rational(1, 3), wp));
    if (!agrees_to(limit(cubic, p).value, cbrt2, 30)) bad += "limit ";
    // half-shift of the tail gives the gamma-quotient CF tail
    HalfShift h = half_shift(sc.aPoly, sc.bPoly);
    if (h.m != 2) bad += "shift-m ";
    if (h.aPoly != RationalPolynomial::parse("1012*n-1012")) bad += "shift-a ";
    if (h.bPoly != RationalPolynomial::parse("-36*n^2+36*n-5")) bad += "shift-b ";
    report(8, "cube-root CF from the shifted Laguerre CF, and its half-shift",
           bad.empty(), bad);
}

void criterion9() {
    // error-decay slope of the flagship row over n in [100, 200]
    std::string bad;
    const Table2Row& r = table2_row("1.4");
    long N = 200;
    NormalizedPQ pq = normalized_pq(r.family(), N);
    // log q'(200) ~ 1023 and log err(200) ~ -1025, so the product q'(n) CS
    // needs ~2100 nats (~910 digits) before the difference is resolvable
    PrecPolicy p = dg(950);
    long wp = p.work_bits();
    MPReal cs = cs_value(-3, p);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long cnt = 0;
    for (long n = 100; n <= 200; ++n) {
        MPReal err = abs(MPReal::of(pq.q[n], wp) * cs - MPReal::of(pq.p[n], wp));
        double y = log(err).d();
        double x = static_cast<double>(n);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++cnt;
    }
    double det = cnt * sxx - sx * sx;
    double slope = (cnt * sxy - sx * sy) / det;
    double target =
        -5.1278892274589420271285616306938688536582372993135974010796;
    if (std::fabs(slope - target) / std::fabs(target) > 0.01) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "slope %.6f vs %.6f", slope, target);
        bad = buf;
    }
    report(9, "error-decay slope within 1% of the convergence constant",
           bad.empty(), bad);
}

void criterion10() {
    std::string bad;
    PrecPolicy p = dg(40);
    long wp = 2 * p.work_bits();
    MPReal tol = lit("1e-30", 256);
    long sets = 0;
    for (const Table2Row& r : table2()) {
        if (sets >= 5) break;
        if (r.K <= 0) continue;
        MPReal sk = sqrt(MPReal::of(r.K, wp));
        MPReal z = MPReal::of(Rational(1, 2), wp) +
                   MPReal::of(r.A, wp) / (sk * MPReal::of(4 * r.D, wp));
        if (z.d() < 1.2) continue;  // keep both series well inside their discs
        ++sets;
        Rational a(1, 2);
        Rational b = Rational(1) - Rational(1, r.D);
        TParams tp{a, b, z};
        std::vector<MPReal> T;
        for (long n = 0; n <= 21; ++n) T.push_back(T_value(tp, Rational(n), p));
        for (long n = 1; n <= 20; ++n) {
            MPReal res = MPReal::of(2 * a - b + n, wp) * T[n + 1] -
                         (2 * z - 1) * MPReal::of(Rational(2 * n - 1) + 2 * a, wp) *
                             T[n] +
                         MPReal::of(b + (n - 1), wp) * T[n - 1];
            MPReal ref = abs(T[n - 1]) + abs(T[n]) + abs(T[n + 1]);
            if (!(abs(res) < tol * ref)) {
                bad += r.tag + ":T" + std::to_string(n) + " ";
                break;
            }
        }
        // U at the reciprocal argument (its own series domain)
        MPReal zu = 1 / z;
        TParams up{a, b, zu};
        std::vector<MPReal> U;
        for (long n = 0; n <= 21; ++n) U.push_back(U_value(up, n, p));
        for (long n = 1; n <= 20; ++n) {
            MPReal res = MPReal::of(2 * a - b + n, wp) * U[n + 1] -
                         (2 * zu - 1) * MPReal::of(Rational(2 * n - 1) + 2 * a, wp) *
                             U[n] +
                         MPReal::of(b + (n - 1), wp) * U[n - 1];
            MPReal ref = abs(U[n - 1]) + abs(U[n]) + abs(U[n + 1]);
            if (!(abs(res) < tol * ref)) {
                bad += r.tag + ":U" + std::to_string(n) + " ";
                break;
            }
        }
    }
    bool ok = bad.empty() && sets == 5;
    report(10, "three-term recursion residuals for T and U, 5 parameter sets",
           ok, bad.empty() ? std::to_string(sets) + " sets" : bad);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
