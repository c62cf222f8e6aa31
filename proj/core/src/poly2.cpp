#include "branched/poly2.hpp"

#include <sstream>
#include <stdexcept>

namespace branched {

Poly2 Poly2::constant(const Rational& c) { return monomial(0, 0, c); }

Poly2 Poly2::monomial(int a, int b, const Rational& c) {
    if (a < 0 || b < 0) throw std::invalid_argument("Poly2: negative exponent");
    Poly2 p;
    p.set(a, b, c);
    return p;
}

void Poly2::set(int a, int b, const Rational& c) {
    if (a < 0 || b < 0) throw std::invalid_argument("Poly2: negative exponent");
    if (c == 0) {
        terms_.erase(Monomial{a, b});
    } else {
        terms_[Monomial{a, b}] = c;
    }
}

void Poly2::add_term(int a, int b, const Rational& c) {
    if (c == 0) return;
    Monomial m{a, b};
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational Poly2::coeff(int a, int b) const {
    auto it = terms_.find(Monomial{a, b});
    return it == terms_.end() ? Rational(0) : it->second;
}

int Poly2::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total());
    return d;
}

Poly2 Poly2::operator+(const Poly2& rhs) const {
    Poly2 out = *this;
    for (const auto& [m, c] : rhs.terms_) out.add_term(m.x, m.y, c);
    return out;
}

Poly2 Poly2::operator-(const Poly2& rhs) const {
    Poly2 out = *this;
    for (const auto& [m, c] : rhs.terms_) out.add_term(m.x, m.y, -c);
    return out;
}

Poly2 Poly2::operator*(const Poly2& rhs) const {
    Poly2 out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : rhs.terms_)
            out.add_term(ma.x + mb.x, ma.y + mb.y, ca * cb);
    return out;
}

Poly2 Poly2::operator*(const Rational& s) const {
    Poly2 out;
    if (s == 0) return out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * s);
    return out;
}

Poly2 Poly2::operator-() const { return *this * Rational(-1); }

Poly2 Poly2::pow(int e) const {
    if (e < 0) throw std::invalid_argument("Poly2::pow: negative exponent");
    Poly2 out = constant(1);
    Poly2 base = *this;
    while (e > 0) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

namespace {
template <class T>
T pow_scalar(T base, int e) {
    T out(1);
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}
}  // namespace

Rational Poly2::eval(const Rational& x, const Rational& y) const {
    Rational out(0);
    for (const auto& [m, c] : terms_) out += c * pow_scalar(x, m.x) * pow_scalar(y, m.y);
    return out;
}

double Poly2::eval(double x, double y) const {
    double out = 0.0;
    for (const auto& [m, c] : terms_) out += to_double(c) * pow_scalar(x, m.x) * pow_scalar(y, m.y);
    return out;
}

std::string Poly2::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Rational a = abs(c);
        bool has_var = m.x > 0 || m.y > 0;
        if (a != 1 || !has_var) os << a.str();
        if (a != 1 && has_var) os << "*";
        if (m.x > 0) os << "x" << (m.x > 1 ? "^" + std::to_string(m.x) : "");
        if (m.x > 0 && m.y > 0) os << "*";
        if (m.y > 0) os << "y" << (m.y > 1 ? "^" + std::to_string(m.y) : "");
    }
    return os.str();
}

}  // namespace branched
