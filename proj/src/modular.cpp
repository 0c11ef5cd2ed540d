#include <cmath>

#include "cfcs/cf.hpp"
#include "cfcs/modular.hpp"

namespace cfcs {

namespace {

MPComplex c_one(long wp) { return MPComplex(MPReal::of(1, wp), MPReal::of(0, wp)); }

MPComplex c_long(long v, long wp) { return MPComplex(MPReal::of(v, wp), MPReal::of(0, wp)); }

// i sqrt(3) and i, the principal values of sqrt(-3), sqrt(-1).
MPComplex sqrt_m3(long wp) {
    return MPComplex(MPReal::of(0, wp), sqrt(MPReal::of(3, wp)));
}
MPComplex sqrt_m1(long wp) { return MPComplex(MPReal::of(0, wp), MPReal::of(1, wp)); }

MPComplex cpow_ui(const MPComplex& z, unsigned long e) {
    MPComplex r = c_one(z.prec());
    MPComplex b = z;
    while (e) {
        if (e & 1) r *= b;
        if (e >>= 1) b *= b;
    }
    return r;
}

MPComplex conj(const MPComplex& z) { return MPComplex(z.re, -z.im); }

// q = e^{2 pi i tau}
MPComplex qexp(const MPComplex& tau, long wp) {
    MPReal twopi = MPReal::of(2, wp) * MPReal::pi(wp);
    return exp(MPComplex(-(twopi * tau.im), twopi * tau.re));
}

long q_terms(const MPComplex& q, long digits) {
    double a = abs(q).d();
    if (!(a < 0.7)) throw SlowQ("q-series: |q| > 0.7, tau too close to the real axis");
    if (a <= 0.0) return 1;
    return static_cast<long>(digits * std::log(10.0) / -std::log(a)) + 6;
}

void bump(long* used, long n) {
    if (used && n > *used) *used = n;
}

MPComplex eta_val(const MPComplex& tau, long wp, long digits, long* used = nullptr) {
    MPComplex q = qexp(tau, wp);
    long nmax = q_terms(q, digits);
    MPComplex s = c_one(wp);
    for (long k = 1;; ++k) {
        long e1 = k * (3 * k - 1) / 2;
        if (e1 > nmax) {
            bump(used, e1);
            break;
        }
        long e2 = k * (3 * k + 1) / 2;
        MPComplex term = cpow_ui(q, e1) + cpow_ui(q, e2);
        if (k % 2) s = s - term;
        else s += term;
    }
    MPReal pi12 = MPReal::pi(wp) / 12;
    // q^{1/24} = e^{2 pi i tau / 24}
    MPComplex pref = exp(MPComplex(-(pi12 * tau.im), pi12 * tau.re));
    return pref * s;
}

MPComplex theta_val(const MPComplex& tau, long wp, long digits, long* used = nullptr) {
    MPComplex q = qexp(tau, wp);
    long nmax = q_terms(q, digits);
    MPComplex s = c_one(wp);
    for (long n = 1; n * n <= nmax; ++n) {
        s += MPReal::of(2, wp) * cpow_ui(q, n * n);
        bump(used, n * n);
    }
    return s;
}

// D(theta) = 2 sum n^2 q^{n^2}, D = q d/dq.
MPComplex theta_D(const MPComplex& tau, long wp, long digits) {
    MPComplex q = qexp(tau, wp);
    long nmax = q_terms(q, digits + 6);
    MPComplex s(wp);
    for (long n = 1; n * n <= nmax; ++n)
        s += MPReal::of(2 * n * n, wp) * cpow_ui(q, n * n);
    return s;
}

// 1 + coef * sum_n sigma_{k-1}(n) q^n
MPComplex eis(const MPComplex& tau, int k, long coef, long wp, long digits,
              long* used = nullptr) {
    MPComplex q = qexp(tau, wp);
    long nmax = q_terms(q, digits + 4);
    bump(used, nmax);
    std::vector<BigInt> sig(nmax + 1);
    for (long d = 1; d <= nmax; ++d) {
        BigInt dk;
        mpz_ui_pow_ui(dk.get_mpz_t(), d, k - 1);
        for (long m = d; m <= nmax; m += d) sig[m] += dk;
    }
    MPComplex s = c_one(wp);
    MPComplex qn = c_one(wp);
    for (long n = 1; n <= nmax; ++n) {
        qn *= q;
        s += MPReal::of(BigInt(sig[n] * coef), wp) * qn;
    }
    return s;
}

MPComplex E2v(const MPComplex& tau, long wp, long dg, long* u = nullptr) { return eis(tau, 2, -24, wp, dg, u); }
MPComplex E4v(const MPComplex& tau, long wp, long dg, long* u = nullptr) { return eis(tau, 4, 240, wp, dg, u); }
MPComplex E6v(const MPComplex& tau, long wp, long dg, long* u = nullptr) { return eis(tau, 6, -504, wp, dg, u); }

// Ramanujan derivatives, D = q d/dq.
MPComplex dE2(const MPComplex& e2, const MPComplex& e4, long wp) {
    return (e2 * e2 - e4) / MPReal::of(12, wp);
}
MPComplex dE4(const MPComplex& e2, const MPComplex& e4, const MPComplex& e6, long wp) {
    return (e2 * e4 - e6) / MPReal::of(3, wp);
}
MPComplex dE6(const MPComplex& e2, const MPComplex& e4, const MPComplex& e6, long wp) {
    return (e2 * e6 - e4 * e4) / MPReal::of(2, wp);
}

MPComplex scale_tau(const MPComplex& tau, long N) {
    return MPComplex(tau.re * MPReal::of(N, tau.prec()), tau.im * MPReal::of(N, tau.prec()));
}

// Everything the Hauptmodul / modeval / pipeline needs at one level.
struct LevelData {
    MPComplex R, DR;      // Hauptmodul and its q-derivative
    MPComplex f, Df;      // weight-1 evaluation side and its q-derivative
    MPComplex Fm, Fp;     // the F_{N,-}, F_{N,+} pair (N <= 3)
    MPComplex E2tau;      // E2(tau), for the Serre derivative
};

LevelData level_chain(long N, const MPComplex& tau, long wp, long dg) {
    LevelData L;
    L.E2tau = E2v(tau, wp, dg);
    if (N == 1) {
        MPComplex e2 = L.E2tau, e4 = E4v(tau, wp, dg), e6 = E6v(tau, wp, dg);
        MPComplex eta12 = cpow_ui(eta_val(tau, wp, dg), 12);
        MPComplex c = MPReal::of(24, wp) * sqrt_m3(wp) * eta12;
        L.Fp = e6 + c;
        L.Fm = e6 - c;
        MPComplex de6 = dE6(e2, e4, e6, wp);
        MPComplex dc = c * (e2 / MPReal::of(2, wp));  // D(eta^12) = eta^12 E2/2
        MPComplex den = MPReal::of(2, wp) * c;        // 48 sqrt(-3) eta^12
        L.R = L.Fp / den;
        L.DR = (de6 + dc - L.Fp * (e2 / MPReal::of(2, wp))) / den;
        L.f = pow(L.Fm, Rational(1, 2), wp) * pow(L.Fp, Rational(-1, 3), wp);
        L.Df = L.f * ((de6 - dc) / (MPReal::of(2, wp) * L.Fm) -
                      (de6 + dc) / (MPReal::of(3, wp) * L.Fp));
        return L;
    }
    if (N == 2 || N == 3) {
        MPComplex tauN = scale_tau(tau, N);
        MPComplex e2 = L.E2tau, e4 = E4v(tau, wp, dg), e6 = E6v(tau, wp, dg);
        MPComplex e2N = E2v(tauN, wp, dg), e4N = E4v(tauN, wp, dg), e6N = E6v(tauN, wp, dg);
        // E_{N,4} and its derivative (D[g(N tau)] = N (Dg)(N tau))
        MPReal nn = MPReal::of(N * N - 1, wp);
        MPComplex en4 = (MPReal::of(N * N, wp) * e4N - e4) / nn;
        MPComplex den4 = (MPReal::of(N * N * N, wp) * dE4(e2N, e4N, e6N, wp) -
                          dE4(e2, e4, e6, wp)) / nn;
        MPComplex base, dbase;  // the weight-matching Eisenstein part
        long cmul, pw;
        Rational ex;            // exponent of F_+ in f
        if (N == 2) {
            base = en4;
            dbase = den4;
            cmul = 16;
            pw = 4;
            ex = Rational(1, 4);
        } else {
            // E_{3,3} = E_{3,4} / E_{3,2}^{1/2}
            MPComplex en2 = (MPReal::of(3, wp) * e2N - e2) / MPReal::of(2, wp);
            MPComplex den2 = (MPReal::of(9, wp) * dE2(e2N, e4N, wp) -
                              dE2(e2, e4, wp)) / MPReal::of(2, wp);
            base = en4 / sqrt(en2);
            dbase = base * (den4 / en4 - den2 / (MPReal::of(2, wp) * en2));
            cmul = 6;
            pw = 3;
            ex = Rational(1, 6);
        }
        MPComplex etaprod = cpow_ui(eta_val(tau, wp, dg) * eta_val(tauN, wp, dg), pw);
        MPComplex root = (N == 2) ? sqrt_m1(wp) : sqrt_m3(wp);
        MPComplex c = MPReal::of(cmul, wp) * root * etaprod;
        // D log (eta(tau) eta(N tau))^pw = pw (E2(tau) + N E2(N tau)) / 24
        MPComplex dlogc = MPReal::of(pw, wp) * (e2 + MPReal::of(N, wp) * e2N) /
                          MPReal::of(24, wp);
        L.Fp = base + c;
        L.Fm = base - c;
        MPComplex den = MPReal::of(2, wp) * c;
        L.R = L.Fp / den;
        L.DR = (dbase + c * dlogc - L.Fp * dlogc) / den;
        L.f = pow(L.Fm, Rational(1, 2), wp) * pow(L.Fp, -ex, wp);
        L.Df = L.f * ((dbase - c * dlogc) / (MPReal::of(2, wp) * L.Fm) -
                      MPReal::of(ex, wp) * (dbase + c * dlogc) / L.Fp);
        return L;
    }
    if (N == 4) {
        MPComplex tau2 = scale_tau(tau, 2), tau4 = scale_tau(tau, 4);
        MPComplex e2 = L.E2tau, e4 = E4v(tau, wp, dg);
        MPComplex e22 = E2v(tau2, wp, dg), e42 = E4v(tau2, wp, dg);
        MPComplex e24 = E2v(tau4, wp, dg), e44 = E4v(tau4, wp, dg);
        MPComplex g = MPReal::of(4, wp) * e24 - MPReal::of(4, wp) * e22 + e2;
        MPComplex e = (MPReal::of(4, wp) * e24 - e2) / MPReal::of(3, wp);
        MPComplex Dg = MPReal::of(16, wp) * dE2(e24, e44, wp) -
                       MPReal::of(8, wp) * dE2(e22, e42, wp) + dE2(e2, e4, wp);
        MPComplex De = (MPReal::of(16, wp) * dE2(e24, e44, wp) - dE2(e2, e4, wp)) /
                       MPReal::of(3, wp);
        MPComplex diff = g - e;
        L.R = (g + e) / diff;
        L.DR = MPReal::of(2, wp) * (g * De - e * Dg) / (diff * diff);
        MPComplex th = theta_val(tau, wp, dg);
        L.f = th * th;
        L.Df = MPReal::of(2, wp) * th * theta_D(tau, wp, dg);
        return L;
    }
    throw Error("level_chain: N must be 1..4");
}

Rational modeval_b(long N) {
    switch (N) {
        case 1: return Rational(5, 6);
        case 2: return Rational(3, 4);
        case 3: return Rational(2, 3);
        case 4: return Rational(1, 2);
    }
    throw Error("modeval: N must be 1..4");
}

}  // namespace

MPComplex cm_value(const CMPoint& p, long bits) {
    if (p.tau.d >= 0) throw Error("cm_value: tau must lie in an imaginary quadratic field");
    MPReal im = MPReal::of(p.tau.y, bits) * sqrt(MPReal::of(-p.tau.d, bits));
    if (!(im > MPReal::of(0, bits))) throw Error("cm_value: Im tau must be positive");
    return MPComplex(MPReal::of(p.tau.x, bits), im);
}

ModularValue form_value(FormKind kind, long N, const CMPoint& p,
                        const PrecPolicy& prec) {
    long dg = prec.target_digits + prec.guard() + 8;
    long wp = digits_to_bits(dg);
    MPComplex tau = cm_value(p, wp);
    long used = 0;
    ModularValue out;
    switch (kind) {
        case FormKind::Eta:
            out = {eta_val(tau, wp, dg, &used), Rational(1, 2), 0};
            break;
        case FormKind::Theta:
            out = {theta_val(tau, wp, dg, &used), Rational(1, 2), 0};
            break;
        case FormKind::E2:
            out = {E2v(tau, wp, dg, &used), Rational(2), 0};
            break;
        case FormKind::E4:
            out = {E4v(tau, wp, dg, &used), Rational(4), 0};
            break;
        case FormKind::E6:
            out = {E6v(tau, wp, dg, &used), Rational(6), 0};
            break;
        case FormKind::E2Star: {
            MPComplex e2 = E2v(tau, wp, dg, &used);
            MPReal corr = MPReal::of(3, wp) / (MPReal::pi(wp) * tau.im);
            out = {MPComplex(e2.re - corr, e2.im), Rational(2), 0};
            break;
        }
        case FormKind::EN2: {
            if (N < 2) throw Error("form_value: EN2 needs N >= 2");
            MPComplex v = (MPReal::of(N, wp) * E2v(scale_tau(tau, N), wp, dg, &used) -
                           E2v(tau, wp, dg, &used)) / MPReal::of(N - 1, wp);
            out = {v, Rational(2), 0};
            break;
        }
        case FormKind::EN4: {
            if (N < 2) throw Error("form_value: EN4 needs N >= 2");
            MPComplex v = (MPReal::of(N * N, wp) * E4v(scale_tau(tau, N), wp, dg, &used) -
                           E4v(tau, wp, dg, &used)) / MPReal::of(N * N - 1, wp);
            out = {v, Rational(4), 0};
            break;
        }
        case FormKind::E33: {
            MPComplex en4 = (MPReal::of(9, wp) * E4v(scale_tau(tau, 3), wp, dg, &used) -
                             E4v(tau, wp, dg, &used)) / MPReal::of(8, wp);
            MPComplex en2 = (MPReal::of(3, wp) * E2v(scale_tau(tau, 3), wp, dg, &used) -
                             E2v(tau, wp, dg, &used)) / MPReal::of(2, wp);
            out = {en4 / sqrt(en2), Rational(3), 0};
            break;
        }
        case FormKind::G42: {
            MPComplex v = MPReal::of(4, wp) * E2v(scale_tau(tau, 4), wp, dg, &used) -
                          MPReal::of(4, wp) * E2v(scale_tau(tau, 2), wp, dg, &used) +
                          E2v(tau, wp, dg, &used);
            out = {v, Rational(2), 0};
            break;
        }
        case FormKind::F1Plus:
        case FormKind::F1Minus: {
            LevelData L = level_chain(1, tau, wp, dg);
            out = {kind == FormKind::F1Plus ? L.Fp : L.Fm, Rational(6), 0};
            break;
        }
        case FormKind::F2Plus:
        case FormKind::F2Minus: {
            LevelData L = level_chain(2, tau, wp, dg);
            out = {kind == FormKind::F2Plus ? L.Fp : L.Fm, Rational(4), 0};
            break;
        }
        case FormKind::F3Plus:
        case FormKind::F3Minus: {
            LevelData L = level_chain(3, tau, wp, dg);
            out = {kind == FormKind::F3Plus ? L.Fp : L.Fm, Rational(3), 0};
            break;
        }
    }
    out.termsUsed = used;
    return out;
}

MPComplex hauptmodul(long N, const CMPoint& p, const PrecPolicy& prec) {
    long dg = prec.target_digits + prec.guard() + 8;
    long wp = digits_to_bits(dg);
    MPComplex tau = cm_value(p, wp);
    return level_chain(N, tau, wp, dg).R;
}

ModevalReport verify_modeval(long N, const CMPoint& p, const PrecPolicy& prec) {
    long dg = prec.target_digits + prec.guard() + 8;
    long wp = digits_to_bits(dg);
    MPComplex tau = cm_value(p, wp);
    LevelData L = level_chain(N, tau, wp, dg);
    MPComplex t = inv(c_one(wp) - L.R);

    PrecPolicy inner = prec;
    inner.target_digits = dg;
    // on the cut [1, inf) both boundary values must be considered
    MPReal eps = exp(MPReal::of(-(dg / 2), wp) * log(MPReal::of(10, wp)));
    bool on_cut = t.re >= MPReal::of(1, wp) && abs(t.im) < eps * abs(t.re);
    MPComplex lhs(wp);
    Rational b = modeval_b(N);
    if (N == 4)
        lhs = hyp2f1_half(t, inner);
    else
        lhs = hyp2f1_auto(Rational(1, 2), b, Rational(1), t, on_cut ? 1 : 0, inner);

    MPComplex rhs = L.f;
    MPReal scale = abs(rhs);
    ModevalReport rep;
    rep.rhs = rhs;
    rep.lhs = lhs;
    rep.branch = 1;
    rep.residual = abs(lhs - rhs) / scale;
    if (on_cut) {
        MPReal res2 = abs(conj(lhs) - rhs) / scale;
        if (res2 < rep.residual) {
            rep.lhs = conj(lhs);
            rep.branch = -1;
            rep.residual = res2;
        }
    }
    MPReal tol = exp(MPReal::of(-(prec.target_digits - 5), wp) * log(MPReal::of(10, wp)));
    if (!(rep.residual < tol))
        throw BranchAmbiguity("verify_modeval: no branch met tolerance at N=" +
                              std::to_string(N));
    return rep;
}

CMPipelineData cm_pipeline(long N, const CMPoint& p, const FamilyParams& fam,
                           const PrecPolicy& prec) {
    if (!(fam.discriminant() > 0))
        throw NoConvergence("cm_pipeline: row does not converge (A^2 - 4KD^2 <= 0)");
    long dg = prec.target_digits + prec.guard() + 8;
    long wp = digits_to_bits(dg);
    MPComplex tau = cm_value(p, wp);
    LevelData L = level_chain(N, tau, wp, dg);

    CMPipelineData out;
    {
        MPComplex eta = eta_val(tau, wp, dg);
        MPReal pi4 = MPReal::pi(wp) / 4;
        out.Omega = exp(MPComplex(MPReal::of(0, wp), pi4)) * (eta * eta);
    }
    out.R = L.R;
    out.t = inv(c_one(wp) - L.R);
    out.f = L.f;
    MPComplex one = c_one(wp);
    out.Dt = L.DR / ((one - L.R) * (one - L.R));
    out.Serre = L.Df - (L.E2tau / MPReal::of(12, wp)) * L.f;

    // 2F1'(1/2,b;1;t) = D(f)/D(t), then the contiguity relation at a = 1/2:
    // 2F1(3/2,b+1;3;t) = 4/((1-b)t) F + 8(t-1)/(b(1-b)t) F'
    Rational b = Rational(1) - Rational(1, fam.D);
    MPComplex Fp = L.Df / out.Dt;
    MPReal bb = MPReal::of(b, wp);
    MPReal omb = MPReal::of(1, wp) - bb;
    out.F1contig = MPReal::of(4, wp) * inv(omb * out.t) * L.f +
                   MPReal::of(8, wp) * (out.t - one) / (bb * omb * out.t) * Fp;
    out.Q = (bb / MPReal::of(4, wp)) * out.t * out.F1contig / L.f;

    // which square root of sq = A^2/(4KD^2) the Hauptmodul realizes
    MPComplex sqrtK = sqrt(MPComplex::of(fam.K, wp));
    MPComplex shat = (MPReal::of(2, wp) * L.R - one) *
                     (MPReal::of(2 * fam.D, wp) * sqrtK) / MPReal::of(fam.A, wp);
    out.sigma = shat.re > MPReal::of(0, wp) ? 1 : -1;
    MPReal eps = exp(MPReal::of(-(dg / 2), wp) * log(MPReal::of(10, wp)));
    if (!(abs(shat - c_long(out.sigma, wp)) < eps))
        throw SignMismatch("cm_pipeline: Hauptmodul is not a root of the row's sq");

    MPComplex Lc = MPComplex::of(fam.b0, wp) /
                   (MPComplex::of(fam.a1, wp) +
                    MPReal::of(out.sigma, wp) * sqrtK * out.Q);
    MPReal ref = abs(Lc.re);
    if (ref.is_zero()) ref = MPReal::of(1, wp);
    MPReal tol = exp(MPReal::of(-(prec.target_digits - 5), wp) * log(MPReal::of(10, wp)));
    if (!(abs(Lc.im) < tol * ref))
        throw SignMismatch("cm_pipeline: limit has a non-negligible imaginary part");
    out.L = Lc.re;
    return out;
}

}  // namespace cfcs
