#pragma once

#include <compare>
#include <map>
#include <string>

#include "branched/rational.hpp"

namespace branched {

/// Exponent pair of a bivariate monomial x^a y^b.
struct Monomial {
    int x = 0;
    int y = 0;
    int total() const { return x + y; }
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Bivariate polynomial with exact rational coefficients.
///
/// Coefficients are stored sparsely; zero coefficients are never kept, so
/// is_zero() and operator== are exact structural tests.
class Poly2 {
public:
    Poly2() = default;

    static Poly2 constant(const Rational& c);
    static Poly2 monomial(int a, int b, const Rational& c = Rational(1));

    /// Sets the coefficient of x^a y^b, erasing the term when c == 0.
    void set(int a, int b, const Rational& c);
    void add_term(int a, int b, const Rational& c);
    Rational coeff(int a, int b) const;

    bool is_zero() const { return terms_.empty(); }
    /// Total degree; -1 for the zero polynomial.
    int total_degree() const;

    const std::map<Monomial, Rational>& terms() const { return terms_; }

    Poly2 operator+(const Poly2& rhs) const;
    Poly2 operator-(const Poly2& rhs) const;
    Poly2 operator*(const Poly2& rhs) const;
    Poly2 operator*(const Rational& s) const;
    Poly2 operator-() const;
    Poly2 pow(int e) const;

    bool operator==(const Poly2& rhs) const { return terms_ == rhs.terms_; }

    Rational eval(const Rational& x, const Rational& y) const;
    double eval(double x, double y) const;

    /// Debug rendering, e.g. "3*x^2*y - 1/2".
    std::string str() const;

private:
    std::map<Monomial, Rational> terms_;
};

}  // namespace branched
