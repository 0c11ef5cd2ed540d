#include "cfcs/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cstring>
#include <sstream>

namespace cfcs {

int kronecker(const BigInt& D, const BigInt& j) {
    mpz_class r = D % 4;
    if (r < 0) r += 4;
    if (r != 0 && r != 1) throw Error("kronecker: D must be 0 or 1 mod 4");
    return mpz_kronecker(D.get_mpz_t(), j.get_mpz_t());
}

static bool squarefree(BigInt m) {
    m = abs(m);
    if (m == 0) return false;
    for (BigInt p = 2; p * p <= m; ++p) {
        if (m % (p * p) == 0) return false;
    }
    return true;
}

bool is_fundamental(const BigInt& D) {
    if (D == 1 || D == 0) return false;
    mpz_class r = D % 4;
    if (r < 0) r += 4;
    if (r == 1) return squarefree(D);
    if (r != 0) return false;
    BigInt m = D / 4;
    mpz_class rm = m % 4;
    if (rm < 0) rm += 4;
    return (rm == 2 || rm == 3) && squarefree(m);
}

ClassData class_data(const BigInt& D) {
    if (D >= 0 || !is_fundamental(D))
        throw NotFundamental("class_data: not a negative fundamental discriminant");
    if (-D > 1000000) throw Error("class_data: |D| > 10^6 unsupported");
    long h = 0;
    // reduced forms: |b| <= a <= c, b^2 - 4ac = D, b >= 0 if |b| = a or a = c
    for (BigInt a = 1; 3 * a * a <= -D; ++a) {
        for (BigInt b = -a + 1; b <= a; ++b) {
            BigInt c4 = b * b - D;
            if (c4 % (4 * a) != 0) continue;
            BigInt c = c4 / (4 * a);
            if (c < a) continue;
            if (b < 0 && (-b == a || a == c)) continue;
            ++h;
        }
    }
    int w = D == -3 ? 6 : (D == -4 ? 4 : 2);
    return ClassData{D, h, w};
}

std::string to_string(const QuadraticSurd& s) {
    BigInt den = lcm(s.x.get_den(), s.y.get_den());
    BigInt px = s.x.get_num() * (den / s.x.get_den());
    BigInt py = s.y.get_num() * (den / s.y.get_den());
    std::ostringstream os;
    os << "(" << px.get_str() << (py >= 0 ? "+" : "-")
       << BigInt(abs(py)).get_str() << "*sqrt(" << s.d << "))/" << den.get_str();
    return os.str();
}

QuadraticSurd parse_surd(const std::string& text) {
    // "(px+py*sqrt(d))/den" with integer px, py, d, den
    const char* p = text.c_str();
    auto fail = [&] { throw Error("parse_surd: bad surd '" + text + "'"); };
    auto skip = [&](char c) { if (*p != c) fail(); ++p; };
    auto read_int = [&]() -> BigInt {
        const char* s = p;
        if (*p == '+' || *p == '-') ++p;
        while (std::isdigit(static_cast<unsigned char>(*p))) ++p;
        if (p == s || (p == s + 1 && !std::isdigit(static_cast<unsigned char>(s[0])))) fail();
        if (*s == '+') ++s;  // mpz rejects an explicit leading plus
        return BigInt(std::string(s, p));
    };
    skip('(');
    BigInt px = read_int();
    BigInt py = read_int();  // signed, e.g. "+3" or "-3"
    if (std::string(p, p + 6) != "*sqrt(") fail();
    p += 6;
    BigInt d = read_int();
    skip(')');
    skip(')');
    skip('/');
    BigInt den = read_int();
    if (*p != '\0' || den <= 0) fail();
    QuadraticSurd s;
    s.x = Rational(px, den);
    s.x.canonicalize();
    s.y = Rational(py, den);
    s.y.canonicalize();
    s.d = static_cast<long>(d.get_si());
    return s;
}

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs)
    : c_(std::move(coeffs)) {
    for (auto& c : c_) c.canonicalize();
    trim();
}

RationalPolynomial RationalPolynomial::constant(const Rational& c) {
    return RationalPolynomial(std::vector<Rational>{c});
}

void RationalPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

long RationalPolynomial::degree() const {
    return static_cast<long>(c_.size()) - 1;
}

const Rational& RationalPolynomial::coeff(long k) const {
    static const Rational zero(0);
    if (k < 0 || k >= static_cast<long>(c_.size())) return zero;
    return c_[k];
}

Rational RationalPolynomial::operator()(const Rational& n) const {
    Rational v(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * n + *it;
    return v;
}

RationalPolynomial RationalPolynomial::operator+(const RationalPolynomial& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return RationalPolynomial(std::move(r));
}

RationalPolynomial RationalPolynomial::operator-(const RationalPolynomial& o) const {
    return *this + o * Rational(-1);
}

RationalPolynomial RationalPolynomial::operator*(const RationalPolynomial& o) const {
    if (is_zero() || o.is_zero()) return RationalPolynomial();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return RationalPolynomial(std::move(r));
}

RationalPolynomial RationalPolynomial::operator*(const Rational& s) const {
    std::vector<Rational> r(c_);
    for (auto& c : r) c *= s;
    return RationalPolynomial(std::move(r));
}

RationalPolynomial RationalPolynomial::shifted(const Rational& s) const {
    // p(n+s) by Horner in (n+s)
    RationalPolynomial res;
    RationalPolynomial lin(std::vector<Rational>{s, Rational(1)});  // n + s
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        res = res * lin + RationalPolynomial::constant(*it);
    return res;
}

BigInt RationalPolynomial::denominator_lcm() const {
    BigInt l = 1;
    for (const auto& c : c_) l = lcm(l, c.get_den());
    return l;
}

std::string RationalPolynomial::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long k = degree(); k >= 0; --k) {
        const Rational& c = coeff(k);
        if (c == 0) continue;
        Rational a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? "-" : "+");
        }
        bool unit = (a == 1);
        if (!unit || k == 0) os << a.get_str();
        if (k > 0) {
            if (!unit) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

RationalPolynomial RationalPolynomial::parse(const std::string& text,
                                             const std::string& var) {
    const char* p = text.c_str();
    auto fail = [&] { throw Error("polynomial parse: bad input '" + text + "'"); };
    auto skip_ws = [&] { while (*p == ' ') ++p; };
    std::vector<Rational> coeffs;
    auto add = [&](long k, const Rational& c) {
        if (k >= static_cast<long>(coeffs.size())) coeffs.resize(k + 1, Rational(0));
        coeffs[k] += c;
    };
    skip_ws();
    while (*p) {
        int sign = 1;
        if (*p == '+' || *p == '-') {
            if (*p == '-') sign = -1;
            ++p;
            skip_ws();
        }
        // optional coefficient p or p/q
        bool have_coeff = false;
        Rational c(1);
        if (std::isdigit(static_cast<unsigned char>(*p))) {
            const char* s = p;
            while (std::isdigit(static_cast<unsigned char>(*p))) ++p;
            BigInt num{std::string(s, p)};
            BigInt den = 1;
            if (*p == '/') {
                ++p;
                const char* t = p;
                while (std::isdigit(static_cast<unsigned char>(*p))) ++p;
                if (t == p) fail();
                den = BigInt(std::string(t, p));
            }
            c = Rational(num, den);
            c.canonicalize();
            have_coeff = true;
            skip_ws();
            if (*p == '*') {
                ++p;
                skip_ws();
            }
        }
        long k = 0;
        if (std::strncmp(p, var.c_str(), var.size()) == 0) {
            p += var.size();
            k = 1;
            skip_ws();
            if (*p == '^') {
                ++p;
                skip_ws();
                const char* s = p;
                while (std::isdigit(static_cast<unsigned char>(*p))) ++p;
                if (s == p) fail();
                k = std::strtol(std::string(s, p).c_str(), nullptr, 10);
            }
        } else if (!have_coeff) {
            fail();
        }
        add(k, c * sign);
        skip_ws();
    }
    if (coeffs.empty()) fail();
    return RationalPolynomial(std::move(coeffs));
}

RationalPolynomial poly(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs) c.emplace_back(v);
    return RationalPolynomial(std::move(c));
}

Rational rational_pow(const Rational& x, long e) {
    if (e == 0) return Rational(1);
    bool inv = e < 0;
    unsigned long n = static_cast<unsigned long>(inv ? -e : e);
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), x.get_num().get_mpz_t(), n);
    mpz_pow_ui(r.get_den_mpz_t(), x.get_den().get_mpz_t(), n);
    if (inv) {
        if (x == 0) throw Error("rational_pow: 0^negative");
        r = 1 / r;
    }
    r.canonicalize();
    return r;
}

Rational pochhammer(const Rational& a, long n) {
    Rational r(1);
    Rational t(a);
    for (long i = 0; i < n; ++i, t += 1) r *= t;
    return r;
}

BigInt binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigInt factorial(long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

}  // namespace cfcs
