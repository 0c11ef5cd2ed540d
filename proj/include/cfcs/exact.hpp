#pragma once
// Exact arithmetic layer: big integers and rationals (GMP-backed), quadratic
// surds for CM points, rational-coefficient polynomials, and the quadratic
// class-field data (Kronecker symbol, class number, unit count).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfcs {

using BigInt = mpz_class;
using Rational = mpq_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotFundamental : Error {
    using Error::Error;
};

// Kronecker symbol (D/j). Requires D = 0 or 1 (mod 4).
int kronecker(const BigInt& D, const BigInt& j);

// Fundamental discriminant test: D = 1 (mod 4) squarefree, or D = 4m with
// m = 2,3 (mod 4) squarefree.
bool is_fundamental(const BigInt& D);

struct ClassData {
    BigInt D;  // negative fundamental discriminant
    long h;    // class number
    int w;     // roots of unity: 6 for D=-3, 4 for D=-4, else 2
};

// Class number by exhaustive count of reduced forms (a,b,c), b^2-4ac = D,
// |b| <= a <= c, with b >= 0 when |b| = a or a = c.
ClassData class_data(const BigInt& D);

// x + y*sqrt(d), d squarefree (d < 0 with y > 0 for CM points).
struct QuadraticSurd {
    Rational x;
    Rational y;
    long d;
};

std::string to_string(const QuadraticSurd& s);  // "(x+y*sqrt(d))/den" form
QuadraticSurd parse_surd(const std::string& text);

// Dense polynomial with rational coefficients, index = power of n.
class RationalPolynomial {
  public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<Rational> coeffs);
    static RationalPolynomial constant(const Rational& c);

    long degree() const;  // -1 for the zero polynomial
    bool is_zero() const { return c_.empty(); }
    const Rational& coeff(long k) const;  // 0 beyond degree
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational operator()(const Rational& n) const;

    RationalPolynomial operator+(const RationalPolynomial& o) const;
    RationalPolynomial operator-(const RationalPolynomial& o) const;
    RationalPolynomial operator*(const RationalPolynomial& o) const;
    RationalPolynomial operator*(const Rational& s) const;

    // Compose n -> n + s.
    RationalPolynomial shifted(const Rational& s) const;

    // lcm of coefficient denominators (1 for the zero polynomial).
    BigInt denominator_lcm() const;

    bool operator==(const RationalPolynomial& o) const { return c_ == o.c_; }

    // Expanded integer/rational-coefficient text, e.g. "1012*n-1012".
    std::string to_string(const std::string& var = "n") const;
    static RationalPolynomial parse(const std::string& text,
                                    const std::string& var = "n");

  private:
    std::vector<Rational> c_;  // normalized: no trailing zero coefficients
    void trim();
};

// Convenience: polynomial from integer coefficients, constant first.
RationalPolynomial poly(std::initializer_list<long> coeffs);

Rational rational_pow(const Rational& x, long e);

// Rising factorial (a)_n.
Rational pochhammer(const Rational& a, long n);

BigInt binomial(long n, long k);
BigInt factorial(long n);

}  // namespace cfcs
