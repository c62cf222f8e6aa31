#include "branched/analyzer.hpp"

#include <ostream>
#include <stdexcept>

#include "branched/exact_linalg.hpp"

namespace branched {

LinearForm::LinearForm(Rational a, Rational b) : alpha(std::move(a)), beta(std::move(b)) {
    if (alpha == 0 && beta == 0) throw std::invalid_argument("LinearForm: zero form");
    if (alpha != 0) {
        beta /= alpha;
        alpha = 1;
    } else {
        beta = 1;
    }
}

Poly2 LinearForm::to_poly() const {
    Poly2 p;
    p.set(1, 0, alpha);
    p.set(0, 1, beta);
    return p;
}

void ConformalityProblem::validate() const {
    if (forms.size() < 2) throw std::invalid_argument("ConformalityProblem: needs N >= 2 forms");
    if (degree < 0 || smoothness < 0)
        throw std::invalid_argument("ConformalityProblem: degree and smoothness must be >= 0");
    for (size_t i = 0; i < forms.size(); ++i)
        for (size_t j = i + 1; j < forms.size(); ++j)
            if (forms[i].same_slope(forms[j]))
                throw std::invalid_argument("ConformalityProblem: duplicate slopes");
}

namespace {

/// q(s,t) = p(A(s,t), B(s,t)).
Poly2 compose(const Poly2& p, const Poly2& a, const Poly2& b) {
    Poly2 out;
    for (const auto& [m, c] : p.terms()) {
        out = out + a.pow(m.x) * b.pow(m.y) * c;
    }
    return out;
}

/// Exact division of p by l^k; returns (true, quotient) iff the remainder
/// vanishes identically.
std::pair<bool, Poly2> divide_by_form_power(const Poly2& p, const LinearForm& l, int k) {
    if (k == 0) return {true, p};
    if (p.is_zero()) return {true, Poly2()};

    // Pick the substitution that maps l to a single coordinate.
    // alpha == 1: u = x + beta*y, v = y. alpha == 0 (form y): u = y, v = x.
    const bool vertical = (l.alpha == 0);
    Poly2 in_u;  // p rewritten in (u, v)
    if (vertical) {
        in_u = compose(p, Poly2::monomial(0, 1), Poly2::monomial(1, 0));
    } else {
        Poly2 x_of_uv = Poly2::monomial(1, 0) - Poly2::monomial(0, 1, l.beta);  // x = u - beta v
        in_u = compose(p, x_of_uv, Poly2::monomial(0, 1));
    }

    Poly2 shifted;
    for (const auto& [m, c] : in_u.terms()) {
        if (m.x < k) return {false, Poly2()};
        shifted.add_term(m.x - k, m.y, c);
    }

    Poly2 quotient;
    if (vertical) {
        quotient = compose(shifted, Poly2::monomial(0, 1), Poly2::monomial(1, 0));
    } else {
        Poly2 u_of_xy = Poly2::monomial(1, 0) + Poly2::monomial(0, 1, l.beta);  // u = x + beta y
        quotient = compose(shifted, u_of_xy, Poly2::monomial(0, 1));
    }
    return {true, quotient};
}

/// Monomials of total degree <= bound in a fixed deterministic order.
std::vector<Monomial> monomials_up_to(int bound) {
    std::vector<Monomial> out;
    for (int t = 0; t <= bound; ++t)
        for (int a = t; a >= 0; --a) out.push_back({a, t - a});
    return out;
}

}  // namespace

CofactorResult check_smooth_cofactor(const Poly2& p_i, const Poly2& p_j, const LinearForm& l,
                                     int smoothness) {
    if (smoothness < 0) throw std::invalid_argument("check_smooth_cofactor: smoothness must be >= 0");
    auto [ok, q] = divide_by_form_power(p_i - p_j, l, smoothness + 1);
    return CofactorResult{ok, std::move(q)};
}

bool verify_conformality(const std::vector<LinearForm>& forms, const std::vector<Poly2>& cofactors,
                         int smoothness) {
    if (forms.size() != cofactors.size())
        throw std::invalid_argument("verify_conformality: forms/cofactors length mismatch");
    Poly2 sum;
    for (size_t i = 0; i < forms.size(); ++i) {
        sum = sum + forms[i].to_poly().pow(smoothness + 1) * cofactors[i];
    }
    return sum.is_zero();
}

NullityResult conformality_nullity(const ConformalityProblem& prob) {
    prob.validate();
    const int N = static_cast<int>(prob.forms.size());
    const int n = prob.degree;
    const int r = prob.smoothness;
    const int q_degree = n - r - 1;

    NullityResult out;
    if (q_degree < 0) return out;  // cofactor space empty

    const auto q_monos = monomials_up_to(q_degree);
    const auto eq_monos = monomials_up_to(n);
    const int cols_per_form = static_cast<int>(q_monos.size());

    // Row (A,B): coefficient of x^A y^B in sum_l l^{r+1} q_l, expanded in
    // the unknown q-coefficients.
    RationalMatrix m(static_cast<int>(eq_monos.size()), N * cols_per_form);
    for (int l = 0; l < N; ++l) {
        const Poly2 lp = prob.forms[l].to_poly().pow(r + 1);
        for (int qc = 0; qc < cols_per_form; ++qc) {
            const Monomial qm = q_monos[qc];
            for (const auto& [lm, c] : lp.terms()) {
                const Monomial target{lm.x + qm.x, lm.y + qm.y};
                for (size_t row = 0; row < eq_monos.size(); ++row) {
                    if (eq_monos[row] == target) {
                        m.at(static_cast<int>(row), l * cols_per_form + qc) += c;
                        break;
                    }
                }
            }
        }
    }

    NullSpace ns = rational_null_space(m);
    out.dimension = static_cast<int>(ns.basis.size());
    for (const auto& vec : ns.basis) {
        std::vector<Poly2> cofactors(N);
        for (int l = 0; l < N; ++l)
            for (int qc = 0; qc < cols_per_form; ++qc)
                cofactors[l].add_term(q_monos[qc].x, q_monos[qc].y, vec[l * cols_per_form + qc]);
        out.basis.push_back(std::move(cofactors));
    }
    return out;
}

long long conformality_dimension_formula(int N, int n, int r, FormulaVariant variant) {
    if (N < 2 || n < 0 || r < 0)
        throw std::invalid_argument("conformality_dimension_formula: N >= 2, n >= 0, r >= 0");
    const long long d = (r + 1) / (N - 1);
    const long long d2 = variant == FormulaVariant::A ? d : (r + 1) / (N + 1);
    const long long first = n - r - d;
    if (first <= 0) return 0;
    const long long second =
        static_cast<long long>(N - 1) * n - static_cast<long long>(N + 1) * r + (N - 3) +
        (N - 1) * d2;
    const long long product = first * second;
    return product <= 0 ? 0 : product / 2;
}

std::vector<LinearForm> default_slopes(int N) {
    std::vector<LinearForm> forms;
    forms.reserve(N);
    for (int l = 1; l <= N; ++l) forms.emplace_back(Rational(1), Rational(l - 1));
    return forms;
}

std::vector<SweepRow> conformality_sweep(int forms_lo, int forms_hi, int degree_lo, int degree_hi,
                                         int smooth_lo, int smooth_hi) {
    std::vector<SweepRow> rows;
    for (int N = forms_lo; N <= forms_hi; ++N) {
        for (int n = degree_lo; n <= degree_hi; ++n) {
            for (int r = smooth_lo; r <= smooth_hi; ++r) {
                SweepRow row;
                row.N = N;
                row.n = n;
                row.r = r;
                row.oracle_dim =
                    conformality_nullity({default_slopes(N), n, r}).dimension;
                row.formula_a = conformality_dimension_formula(N, n, r, FormulaVariant::A);
                row.formula_b = conformality_dimension_formula(N, n, r, FormulaVariant::B);
                row.agree_a = row.formula_a == row.oracle_dim;
                row.agree_b = row.formula_b == row.oracle_dim;
                rows.push_back(row);
            }
        }
    }
    return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "N,n,r,oracle_dim,formula_A,formula_B,agree_A,agree_B\n";
    for (const auto& row : rows) {
        os << row.N << ',' << row.n << ',' << row.r << ',' << row.oracle_dim << ','
           << row.formula_a << ',' << row.formula_b << ',' << (row.agree_a ? 1 : 0) << ','
           << (row.agree_b ? 1 : 0) << '\n';
    }
}

}  // namespace branched
