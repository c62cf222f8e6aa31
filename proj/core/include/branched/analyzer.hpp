#pragma once

#include <iosfwd>
#include <vector>

#include "branched/poly2.hpp"

namespace branched {

/// Homogeneous linear form alpha*x + beta*y, normalized so the first
/// nonzero of (alpha, beta) is 1. Throws if both coefficients are zero.
struct LinearForm {
    Rational alpha;
    Rational beta;

    LinearForm(Rational a, Rational b);

    Poly2 to_poly() const;
    bool same_slope(const LinearForm& rhs) const { return alpha * rhs.beta == rhs.alpha * beta; }
};

/// Single-vertex conformality problem: N linear forms with pairwise
/// distinct slopes, polynomial degree n, smoothness order r.
struct ConformalityProblem {
    std::vector<LinearForm> forms;
    int degree = 0;      // n
    int smoothness = 0;  // r

    /// Throws std::invalid_argument on N < 2, duplicate slopes, or
    /// negative degree/smoothness.
    void validate() const;
};

struct CofactorResult {
    bool divides = false;
    Poly2 quotient;  // p_i - p_j == l^{r+1} * quotient when divides
};

/// Exact divisibility test of p_i - p_j by l^{r+1}; a smooth cofactor
/// exists iff the pieces join with order-r smoothness across l.
CofactorResult check_smooth_cofactor(const Poly2& p_i, const Poly2& p_j, const LinearForm& l,
                                     int smoothness);

/// True iff sum_l l^{r+1} q_l is identically zero in exact arithmetic.
bool verify_conformality(const std::vector<LinearForm>& forms, const std::vector<Poly2>& cofactors,
                         int smoothness);

struct NullityResult {
    int dimension = 0;
    /// One cofactor tuple (q_1..q_N) per null-space basis vector.
    std::vector<std::vector<Poly2>> basis;
};

/// Exact dimension and basis of the conformality solution space with q_l
/// ranging over full polynomials of total degree <= n - r - 1. This is the
/// independent oracle the closed-form dimension count is checked against.
NullityResult conformality_nullity(const ConformalityProblem& prob);

/// The two readings of the closed-form dimension count. Variant A uses
/// floor((r+1)/(N-1)) in both occurrences; variant B keeps the second
/// occurrence as floor((r+1)/(N+1)). Negative products clamp to 0; odd
/// products round down.
enum class FormulaVariant { A, B };

long long conformality_dimension_formula(int N, int n, int r, FormulaVariant variant);

/// Default slope set for sweeps: alpha_l x + beta_l y with
/// (alpha, beta) = (1, l-1) for l = 1..N.
std::vector<LinearForm> default_slopes(int N);

struct SweepRow {
    int N = 0, n = 0, r = 0;
    int oracle_dim = 0;
    long long formula_a = 0, formula_b = 0;
    bool agree_a = false, agree_b = false;
};

/// Oracle-vs-formula sweep over inclusive ranges (Cartesian product of
/// form count N, degree n, smoothness r).
std::vector<SweepRow> conformality_sweep(int forms_lo, int forms_hi, int degree_lo, int degree_hi,
                                         int smooth_lo, int smooth_hi);

/// CSV with columns N,n,r,oracle_dim,formula_A,formula_B,agree_A,agree_B.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace branched
