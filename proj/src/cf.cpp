#include <sstream>

#include "cfcs/cf.hpp"

namespace cfcs {

Rational GeneralCF::a_at(long n) const { return aPoly(Rational(n)); }

Rational GeneralCF::b_at(long n) const {
    if (n == 1 && b1Override) return *b1Override;
    if (bEven && n % 2 == 0) return (*bEven)(Rational(n));
    return bPoly(Rational(n));
}

ConvergentSeq convergents(const GeneralCF& cf, long N) {
    if (N < 1) throw Error("convergents: N must be >= 1");
    ConvergentSeq s;
    s.p.reserve(N + 1);
    s.q.reserve(N + 1);
    s.p.push_back(cf.a0);
    s.q.push_back(Rational(1));
    s.p.push_back(cf.a0 * cf.a1 + cf.b0);
    s.q.push_back(cf.a1);
    for (long n = 2; n <= N; ++n) {
        Rational a = cf.a_at(n);
        if (a == 0)
            throw ZeroPartialDenominator("convergents: a(n) = 0 at n = " + std::to_string(n));
        Rational b = cf.b_at(n - 1);
        s.p.push_back(a * s.p[n - 1] + b * s.p[n - 2]);
        s.q.push_back(a * s.q[n - 1] + b * s.q[n - 2]);
    }
    return s;
}

LimitResult limit(const GeneralCF& cf, const PrecPolicy& prec) {
    long digits = prec.target_digits + prec.guard();
    long wp = digits_to_bits(digits + 15);
    MPReal p0 = MPReal::of(cf.a0, wp), q0 = MPReal::of(1, wp);
    MPReal p1 = MPReal::of(cf.a0 * cf.a1 + cf.b0, wp), q1 = MPReal::of(cf.a1, wp);
    MPReal tol = exp(log(MPReal::of(10, wp)) * MPReal::of(Rational(-digits), wp));
    MPReal h_prev = q1.is_zero() ? MPReal::of(0, wp) : p1 / q1;
    MPReal gap_prev(wp);
    bool have_gap = false;
    int run = 0;
    bool contracting = false;
    const long probe_limit = 600;
    const long maxit = 400000;
    for (long n = 2; n <= maxit; ++n) {
        MPReal a = MPReal::of(cf.a_at(n), wp);
        if (a.is_zero())
            throw ZeroPartialDenominator("limit: a(n) = 0 at n = " + std::to_string(n));
        MPReal b = MPReal::of(cf.b_at(n - 1), wp);
        MPReal p2 = a * p1 + b * p0;
        MPReal q2 = a * q1 + b * q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (q1.is_zero()) { have_gap = false; run = 0; continue; }
        MPReal h = p1 / q1;
        MPReal gap = abs(h - h_prev);
        h_prev = h;
        if (gap.is_zero()) {
            return {h, gap * 10, n};
        }
        if (have_gap) {
            // contraction probe: 8 consecutive gaps each down by >= 1.01
            if (gap * MPReal::of(Rational(101, 100), wp) <= gap_prev) {
                if (++run >= 8) contracting = true;
            } else {
                run = 0;
            }
        }
        gap_prev = gap;
        have_gap = true;
        MPReal ref = abs(h);
        if (ref.is_zero()) ref = MPReal::of(1, wp);
        if (contracting && gap < tol * ref) {
            return {h, gap * 10, n};
        }
        if (!contracting && n >= probe_limit)
            throw NoConvergence("limit: no sustained contraction in probe window");
    }
    throw NoConvergence("limit: iteration cap reached before target accuracy");
}

GeneralCF scale_equivalent(const GeneralCF& cf, const Rational& m) {
    if (m <= 0) throw Error("scale_equivalent: m must be positive");
    GeneralCF r = cf;
    r.a1 = cf.a1 * m;
    r.aPoly = cf.aPoly * m;
    Rational m2 = m * m;
    r.b0 = cf.b0 * m;
    r.bPoly = cf.bPoly * m2;
    if (cf.b1Override) r.b1Override = *cf.b1Override * m2;
    if (cf.bEven) r.bEven = *cf.bEven * m2;
    return r;
}

namespace {

// v_p valuations of small integers, to pick the minimal clearing scale.
long valuation(BigInt n, const BigInt& p) {
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

}  // namespace

HalfShift half_shift(const RationalPolynomial& aPoly,
                     const RationalPolynomial& bPoly) {
    RationalPolynomial ah = aPoly.shifted(Rational(-1, 2));
    RationalPolynomial bh = bPoly.shifted(Rational(-1, 2));
    BigInt da = ah.denominator_lcm();
    BigInt db = bh.denominator_lcm();
    // smallest positive integer m with da | m and db | m^2:
    // v_p(m) = max(v_p(da), ceil(v_p(db)/2)) over primes p | da*db
    BigInt m = 1;
    BigInt rest = da * db;
    for (BigInt p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        long va = valuation(da, p), vb = valuation(db, p);
        long vm = std::max(va, (vb + 1) / 2);
        for (long i = 0; i < vm; ++i) m *= p;
        while (rest % p == 0) rest /= p;
    }
    if (rest > 1) {
        long va = valuation(da, rest), vb = valuation(db, rest);
        long vm = std::max(va, (vb + 1) / 2);
        for (long i = 0; i < vm; ++i) m *= rest;
    }
    Rational mq(m);
    return {ah * mq, bh * (mq * mq), mq};
}

std::string rational_str(const Rational& q) {
    return q.get_str();  // "p/q" or "p"
}

std::string to_bracket(const GeneralCF& cf) {
    std::ostringstream os;
    os << "[[" << rational_str(cf.a0) << "," << rational_str(cf.a1) << ","
       << cf.aPoly.to_string() << "],[" << rational_str(cf.b0) << ","
       << cf.bPoly.to_string() << "]]";
    return os.str();
}

GeneralCF parse_bracket(const std::string& text) {
    // [[a0,a1,aPoly],[b0,bPoly]] — split on top-level commas
    auto fail = [&] { throw Error("parse_bracket: bad CF text '" + text + "'"); };
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    if (s.size() < 8 || s.substr(0, 2) != "[[" || s.substr(s.size() - 2) != "]]") fail();
    size_t mid = s.find("],[");
    if (mid == std::string::npos) fail();
    std::string first = s.substr(2, mid - 2);
    std::string second = s.substr(mid + 3, s.size() - 2 - (mid + 3));
    auto split = [&](const std::string& part) {
        std::vector<std::string> out;
        std::string cur;
        int depth = 0;
        for (char c : part) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == ',' && depth == 0) {
                out.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        out.push_back(cur);
        return out;
    };
    auto fields1 = split(first);
    auto fields2 = split(second);
    if (fields1.size() != 3 || fields2.size() != 2) fail();
    GeneralCF cf;
    cf.a0 = Rational(fields1[0]);
    cf.a0.canonicalize();
    cf.a1 = Rational(fields1[1]);
    cf.a1.canonicalize();
    cf.aPoly = RationalPolynomial::parse(fields1[2]);
    cf.b0 = Rational(fields2[0]);
    cf.b0.canonicalize();
    cf.bPoly = RationalPolynomial::parse(fields2[1]);
    return cf;
}

}  // namespace cfcs
