#include "cfcs/family.hpp"

namespace cfcs {

namespace {

RationalPolynomial rpoly(std::vector<Rational> c) {
    return RationalPolynomial(std::move(c));
}

}  // namespace

GeneralCF make_cf(const FamilyParams& p) {
    if (p.A <= 0 || p.K == 0 || p.D < 2) throw Error("make_cf: invalid family parameters");
    GeneralCF cf;
    cf.a0 = 0;
    cf.a1 = p.a1;
    cf.b0 = p.b0;
    cf.aPoly = rpoly({-p.A, p.A});  // A(n-1)
    // -K(Dn-1)(D(n-1)+1) = -K(D^2 n^2 - D^2 n + D - 1)
    Rational D(p.D);
    cf.bPoly = rpoly({-p.K * (D - 1), p.K * D * D, -p.K * D * D});
    return cf;
}

std::vector<Rational> solve_recurrence(const FamilyParams& p, const Rational& v0,
                                       const Rational& v1, long N) {
    std::vector<Rational> v{v0, v1};
    v.reserve(N + 1);
    Rational D(p.D);
    for (long n = 1; n < N; ++n) {
        Rational Dn(p.D * n);
        // (Dn+1) v_{n+1} = A n v_n - K (Dn-1) v_{n-1}
        Rational next = (p.A * Rational(n) * v[n] - p.K * (Dn - 1) * v[n - 1]) / (Dn + 1);
        v.push_back(next);
    }
    return v;
}

Rational normalizer(const FamilyParams& p, long n) {
    Rational f = rational_pow(abs(p.K), n / 2);
    for (long j = 1; j <= n; ++j) f *= Rational(p.D * (j - 1) + 1);
    return f;
}

NormalizedPQ normalized_pq(const FamilyParams& p, long N) {
    ConvergentSeq s = convergents(make_cf(p), N);
    NormalizedPQ out;
    out.p.reserve(N + 1);
    out.q.reserve(N + 1);
    Rational f(1);
    Rational absK = abs(p.K);
    for (long n = 0; n <= N; ++n) {
        if (n > 0) {
            f *= Rational(p.D * (n - 1) + 1);
            if (n % 2 == 0) f *= absK;
        }
        out.p.push_back(s.p[n] / f);
        out.q.push_back(s.q[n] / f);
    }
    return out;
}

PQPair closed_form_PQ(const Rational& B, const Rational& Z, const Rational& K,
                      long n) {
    if (n < 0) throw Error("closed_form_PQ: n must be >= 0");
    // Lambda_i = (B-i)_{2i}, built incrementally:
    // Lambda_i = Lambda_{i-1} (B-i)(B+i-1)
    std::vector<Rational> Lam(n / 2 + 2);
    Lam[0] = 1;
    for (long i = 1; i < static_cast<long>(Lam.size()); ++i)
        Lam[i] = Lam[i - 1] * (B - i) * (B + (i - 1));
    std::vector<Rational> fact(n + 2);
    fact[0] = 1;
    for (long i = 1; i < static_cast<long>(fact.size()); ++i)
        fact[i] = fact[i - 1] * i;

    Rational P(0);
    for (long j = 0; j <= n / 2; ++j) {
        Rational inner(0);
        for (long i = 0; i <= j; ++i) {
            Rational t = fact[n - i] / (fact[i] * fact[i] * fact[j - i]) * Lam[i];
            if (i % 2) t = -t;
            inner += t;
        }
        Rational outer = rational_pow(Z, n - 2 * j) * rational_pow(K, j) *
                         (fact[n - j] / fact[n - 2 * j]) * inner;
        if (j % 2) outer = -outer;
        P += outer;
    }
    Rational Q(0);
    for (long j = 0; 2 * j <= n - 1; ++j) {
        Rational inner(0);
        for (long i = 0; i <= j; ++i) {
            Rational t = fact[n - i] / (fact[i] * fact[i + 1] * fact[j - i]) * Lam[i];
            if (i % 2) t = -t;
            inner += t;
        }
        Rational outer = rational_pow(Z, n - 2 * j - 1) * rational_pow(K, j + 1) *
                         (fact[n - j - 1] / fact[n - 2 * j - 1]) * inner;
        if (j % 2) outer = -outer;
        Q += outer;
    }
    Q *= (B - 1);
    return {P, Q};
}

std::variant<ConvergenceData, NonConvergent> convergence_data(
    const FamilyParams& p, const PrecPolicy& prec) {
    Rational disc = p.discriminant();
    if (disc <= 0) return NonConvergent{};
    long wp = prec.work_bits();
    MPReal R = (MPReal::of(p.A, wp) + sqrt(MPReal::of(disc, wp))) / 2;
    MPReal E = R * R / MPReal::of(p.K * Rational(p.D) * Rational(p.D), wp);
    MPReal hle = log(abs(E)) / 2;
    return ConvergenceData{R, E, hle};
}

MPReal T_value(const TParams& t, const Rational& n, const PrecPolicy& prec) {
    if (n.get_den() != 1 && n.get_den() != 2)
        throw Error("T_value: order must be an integer or half-integer");
    long wp = prec.work_bits();
    MPReal x = 1 / t.z;
    if (abs(x).d() > 0.98) throw SlowConvergence("T_value: |1/z| > 0.98");
    Rational an = t.a + n, bn = t.b + n, cn = 2 * t.a + 2 * n;
    PrecPolicy inner = prec;
    inner.target_digits += 8;
    MPReal pref = gamma_rational_any(an, inner) * gamma_rational_any(bn, inner) /
                  gamma_rational_any(cn, inner);
    MPReal xp = pow(t.z, MPReal::of(-an, wp));
    return pref * xp * hyp2f1(an, bn, cn, x, inner);
}

MPReal U_value(const TParams& t, long n, const PrecPolicy& prec) {
    if (abs(t.z).d() > 0.98) throw SlowConvergence("U_value: |z| > 0.98");
    PrecPolicy inner = prec;
    inner.target_digits += 8;
    MPReal v = hyp2f1(1 - t.a - n, t.a + n, 1 + t.a - t.b, t.z, inner);
    return (n % 2) ? -v : v;
}

namespace {

// Q = T1/T0(1/2, 1-1/D; z) with the gamma prefactors cancelled analytically:
// Q = (b/4) x F(3/2,b+1;3;x) / F(1/2,b;1;x), x = 1/z.
MPComplex t_ratio(long D, const MPComplex& x, const PrecPolicy& prec) {
    Rational b = Rational(1) - Rational(1, D);
    long wp = prec.work_bits();
    MPComplex F0(wp), F1(wp);
    if (D == 2) {
        // a = b = 1/2: AGM for F0 and its derivative, then the contiguity
        // F(3/2,3/2;3;x) = (8/x) F0 + (32(x-1)/x) F0'
        F0 = hyp2f1_half(x, prec);
        MPComplex F0p = hyp2f1_half_deriv(x, prec);
        MPComplex one(MPReal::of(1, wp), MPReal::of(0, wp));
        MPComplex eight(MPReal::of(8, wp), MPReal::of(0, wp));
        MPComplex thirty2(MPReal::of(32, wp), MPReal::of(0, wp));
        F1 = (eight * F0 + thirty2 * (x - one) * F0p) / x;
    } else {
        F0 = hyp2f1_auto(Rational(1, 2), b, Rational(1), x, 0, prec);
        F1 = hyp2f1_auto(Rational(3, 2), b + 1, Rational(3), x, 0, prec);
    }
    return x * (F1 * MPReal::of(b / 4, wp)) / F0;
}

}  // namespace

MPReal limit_T(const FamilyParams& p, const PrecPolicy& prec) {
    if (p.discriminant() <= 0)
        throw NoConvergence("limit_T: CF does not converge (A^2 - 4KD^2 <= 0)");
    long wp = prec.work_bits();
    MPReal L(wp);
    if (p.K > 0) {
        MPReal sk = sqrt(MPReal::of(p.K, wp));
        MPReal z = MPReal::of(Rational(1, 2), wp) +
                   MPReal::of(p.A, wp) / (sk * MPReal::of(Rational(4 * p.D), wp));
        MPComplex x = inv(MPComplex(z, MPReal::of(0, wp)));
        MPComplex Q = t_ratio(p.D, x, prec);
        L = MPReal::of(p.b0, wp) / (MPReal::of(p.a1, wp) - sk * Q.re);
    } else {
        // sqrt(K) = i sqrt(|K|): the T-ratio formula continued off the real
        // axis; the imaginary parts cancel in L.
        MPReal sk = sqrt(MPReal::of(-p.K, wp));
        MPComplex skc(MPReal::of(0, wp), sk);
        MPComplex z(MPReal::of(Rational(1, 2), wp),
                    -MPReal::of(p.A, wp) / (sk * MPReal::of(Rational(4 * p.D), wp)));
        MPComplex x = inv(z);
        MPComplex Q = t_ratio(p.D, x, prec);
        MPComplex Lc = MPComplex(MPReal::of(p.b0, wp), MPReal::of(0, wp)) /
                       (MPComplex(MPReal::of(p.a1, wp), MPReal::of(0, wp)) - skc * Q);
        MPReal ref = abs(Lc);
        if (!(abs(Lc.im) <= ref * MPReal::of(Rational(1, 1000000000), wp)))
            throw SignMismatch("limit_T: imaginary part failed to cancel");
        L = Lc.re;
    }
    // guard against a wrong branch: cross-check against the direct CF value
    PrecPolicy coarse;
    coarse.target_digits = 20;
    LimitResult direct = limit(make_cf(p), coarse);
    if (!agrees_to(direct.value, L, 15))
        throw SignMismatch("limit_T: disagrees with direct CF evaluation");
    return L;
}

MPReal f_D(long D, const MPReal& z, const PrecPolicy& prec) {
    Rational a(1, 2 * D);
    long wp = prec.work_bits();
    PrecPolicy inner = prec;
    inner.target_digits += 8;
    if (z.is_zero()) return MPReal::of(0, wp);
    double zd = z.d();
    if (zd > 0.98 || zd < -1.0000000001)
        throw SlowConvergence("f_D: argument outside (-1, 0.98]");
    MPReal num(wp), den(wp);
    if (zd > -0.5) {
        num = hyp2f1_deriv(a, a - Rational(1, 2), Rational(1), z, inner);
        den = hyp2f1(a, a + Rational(1, 2), Rational(1), z, inner);
    } else {
        // Pfaff transform w = z/(z-1) keeps the series argument small:
        //   F(al,be;1;z) = (1-z)^{-al} F(al, 1-be; 1; w)
        //   F'(al,be;1;z) = al (1-z)^{-al-1} F(al,1-be;1;w)
        //                   - (1-z)^{-al} F_w(al,1-be;1;w) / (1-z)^2
        MPReal one = MPReal::of(1, wp);
        MPReal w = z / (z - one);
        MPReal omz = one - z;
        MPReal Fw = hyp2f1(a, Rational(3, 2) - a, Rational(1), w, inner);
        MPReal Fwp = hyp2f1_deriv(a, Rational(3, 2) - a, Rational(1), w, inner);
        MPReal pa = pow(omz, MPReal::of(-a, wp));
        num = MPReal::of(a, wp) * pa / omz * Fw - pa * Fwp / (omz * omz);
        den = pa * hyp2f1(a, Rational(1, 2) - a, Rational(1), w, inner);
    }
    return z * num / den;
}

MPReal limit_fD(const FamilyParams& p, const PrecPolicy& prec) {
    if (p.discriminant() <= 0)
        throw NoConvergence("limit_fD: CF does not converge (A^2 - 4KD^2 <= 0)");
    Rational zq = 4 * p.K * Rational(p.D) * Rational(p.D) / (p.A * p.A);
    long wp = prec.work_bits();
    MPReal f = f_D(p.D, MPReal::of(zq, wp), prec);
    return MPReal::of(p.b0, wp) /
           (MPReal::of(p.a1, wp) + MPReal::of(p.A, wp) * f);
}

GeneralCF classical_cf(ClassicalKind kind, const ClassicalParams& p) {
    GeneralCF cf;
    const Rational& a = p.a;
    const Rational& z = p.z;
    switch (kind) {
        case ClassicalKind::EulerPower: {
            // (1+z)^a = [[0,1,(n-1)-(n-2-a)z],[1,-az,(n-1)(n-1-a)z]]
            cf.a0 = 0;
            cf.a1 = 1;
            cf.aPoly = RationalPolynomial({-1 + (a + 2) * z, 1 - z});
            cf.b0 = 1;
            cf.b1Override = -a * z;
            // (n-1)(n-1-a)z = z(n^2 - (a+2)n + (a+1))
            cf.bPoly = RationalPolynomial({(a + 1) * z, -(a + 2) * z, z});
            break;
        }
        case ClassicalKind::LaguerreSym: {
            // ((1+z)/(1-z))^a = [[1,1-az,2n-1],[2az,-z^2(n^2-a^2)]]
            cf.a0 = 1;
            cf.a1 = 1 - a * z;
            cf.aPoly = RationalPolynomial({Rational(-1), Rational(2)});
            cf.b0 = 2 * a * z;
            cf.bPoly = RationalPolynomial({z * z * a * a, Rational(0), -z * z});
            break;
        }
        case ClassicalKind::LaguerreShift: {
            // (1+z)^a = [[1,z(1-a)+2,(z+2)(2n-1)],[2az,-z^2(n^2-a^2)]]
            cf.a0 = 1;
            cf.a1 = z * (1 - a) + 2;
            cf.aPoly = RationalPolynomial({-(z + 2), 2 * (z + 2)});
            cf.b0 = 2 * a * z;
            cf.bPoly = RationalPolynomial({z * z * a * a, Rational(0), -z * z});
            break;
        }
        case ClassicalKind::GaussRatio: {
            // F(a,b;c;z)/F(a,b+1;c+1;z), unit form cleared by m_k = 2(c+k):
            // a(n) = 2(n+c), b0 = -2a(c-b)z/c, and parity-split numerators
            // b_odd(n) = -z(n+2b+1)(n+2(c-a)+1), b_even(n) = -z(n+2a)(n+2(c-b)).
            const Rational& b = p.b;
            const Rational& c = p.c;
            if (c == 0) throw InvalidKind("gauss-ratio: c must be nonzero");
            cf.a0 = 1;
            cf.a1 = 2 * (c + 1);
            cf.aPoly = RationalPolynomial({2 * c, Rational(2)});
            cf.b0 = -2 * a * (c - b) * z / c;
            Rational r1 = 2 * b + 1, s1 = 2 * (c - a) + 1;
            cf.bPoly = RationalPolynomial({-z * r1 * s1, -z * (r1 + s1), -z});
            Rational r2 = 2 * a, s2 = 2 * (c - b);
            cf.bEven = RationalPolynomial({-z * r2 * s2, -z * (r2 + s2), -z});
            break;
        }
        case ClassicalKind::GaussRatioHalfparam: {
            // b = a - 1/2: the two numerator formulas coincide.
            const Rational& c = p.c;
            if (c == 0) throw InvalidKind("gauss-ratio-halfparam: c must be nonzero");
            cf.a0 = 1;
            cf.a1 = 2 * (c + 1);
            cf.aPoly = RationalPolynomial({2 * c, Rational(2)});
            cf.b0 = -(a / c) * (2 * (c - a) + 1) * z;
            Rational r = 2 * a, s = 2 * (c - a) + 1;
            cf.bPoly = RationalPolynomial({-z * r * s, -z * (r + s), -z});
            break;
        }
        case ClassicalKind::FDCF: {
            // F'(a,a-1/2;1;z)/F(a,a+1/2;1;z) = [[0,2n],[a(2a-1),-z(n+2a)(n-2a+1)]]
            cf.a0 = 0;
            cf.a1 = 2;
            cf.aPoly = RationalPolynomial({Rational(0), Rational(2)});
            cf.b0 = a * (2 * a - 1);
            Rational r = 2 * a, s = 1 - 2 * a;
            cf.bPoly = RationalPolynomial({-z * r * s, -z * (r + s), -z});
            break;
        }
        default:
            throw InvalidKind("classical_cf: unknown kind");
    }
    return cf;
}

}  // namespace cfcs
