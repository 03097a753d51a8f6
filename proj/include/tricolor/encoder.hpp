#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "tricolor/graph.hpp"
#include "tricolor/lmi.hpp"

namespace tricolor {

/// Builds the primal matrix program for g: a (3n+1)-sided LMI whose
/// blocks are the vertex diagonal blocks (6 free entries each), adjacent
/// blocks (9 free entries), non-adjacent blocks (rank-one all-ones
/// multiplier plus 9 nonpositive perturbations), borders and corner.
/// Objective coefficients: 2 on diagonal-block traces, 2 on the six
/// off-diagonal entries of each adjacent block, 12 per non-adjacent
/// multiplier, 4 per border entry, 6 on the corner, 0 on perturbations.
LmiProblem build_primal(const Graph& g, double lower_bound = -100.0);

/// A strictly feasible point for build_primal output: identity pattern
/// on the diagonal blocks and corner, perturbations at -1.
Assignment primal_interior_point(const LmiProblem& prob);

/// A proper or improper base coloring together with its six
/// color-permutation variants and their 0/1 indicator row vectors of
/// length 3n+1 (one indicator triple per vertex, trailing 1).
struct PermutedColoring {
    Coloring base;
    std::array<Coloring, 6> variants;
    std::array<Eigen::RowVectorXd, 6> vectors;
};

PermutedColoring permuted(const Coloring& c, int n);

/// Left side: sum of the six quadratic forms X^(k) M X^(k)^T with M
/// assembled from the given values on the d-slots (perturbations zero).
/// Right side: the objective restricted to the same values. Equality of
/// the pair is the tested identity; requires a proper base coloring.
std::pair<double, double> identity_sum(const LmiProblem& prob, const Graph& g,
                                       const Assignment& d_assignment,
                                       const PermutedColoring& pc);

/// The dual certificate matrix: fixed template (diagonal blocks 2I,
/// adjacent blocks ones-minus-identity, borders [2,2,2], corner 6) plus
/// one nonnegative 3x3 block per non-adjacent pair, each summing to 6.
struct DualCertificate {
    int n = 0;
    std::map<std::pair<int, int>, Eigen::Matrix3d> free_blocks;

    Eigen::MatrixXd assemble(const Graph& g) const;
};

struct DualBuildResult {
    DualCertificate certificate;
    Eigen::MatrixXd Z;
};

/// Z = sum of the six outer products of the permuted coloring vectors;
/// positive semidefinite by construction and template-feasible exactly.
DualBuildResult coloring_to_dual(const PermutedColoring& pc, const Graph& g);

/// Per-constraint validation of a dual certificate candidate.
struct DualValidation {
    bool symmetric = false;
    bool diagonal_blocks = false;     // vertex blocks equal 2I
    bool border_corner = false;       // borders [2,2,2], corner 6
    bool adjacent_blocks = false;     // zero diagonal, ones elsewhere
    bool block_sums = false;          // every vertex-pair block sums to 6
    bool nonneg_free = false;         // non-adjacent entries >= 0
    bool psd = false;                 // eigenvalue floor >= -tol
    double min_eig = 0.0;
    double worst_block_sum_dev = 0.0;
    double worst_negative_entry = 0.0;
    double worst_template_dev = 0.0;

    bool all() const {
        return symmetric && diagonal_blocks && border_corner && adjacent_blocks && block_sums &&
               nonneg_free && psd;
    }
};

DualValidation validate_dual(const Eigen::MatrixXd& Z, const Graph& g, double tol);

/// Auxiliary program deciding dual feasibility: minimize tau subject to
/// Z(z) + tau I being PSD, z >= 0, and per-block sums of 6 (the ninth
/// entry of each block is eliminated; its nonnegativity becomes a slack
/// diagonal entry appended after the leading 3n+1 rows). Dual
/// feasibility holds iff the optimum is <= 0.
LmiProblem build_dual_feasibility(const Graph& g);

/// Strictly interior start for build_dual_feasibility output.
Assignment dual_feasibility_interior_point(const LmiProblem& prob, const Graph& g);

/// Fixed matrices of the copositive program pair for g.
struct ConeMatrices {
    int n = 0;
    double t = 1.0;
    /// One matrix per edge (i<j): the dual template with block (i,j)
    /// replaced by 2I. Non-edges map to the zero matrix.
    std::map<std::pair<int, int>, Eigen::MatrixXd> E;

    int s_template_var_count = 0;  // 6n + 9m + 3n + 1
    int b_template_var_count = 0;  // 9 per non-adjacent pair

    const Eigen::MatrixXd& edge_matrix(int i, int j) const;

    Eigen::MatrixXd zero_;  // returned for non-edges
};

ConeMatrices build_cone_matrices(const Graph& g, double t);

/// Checks that S fits the copositive-side template: symmetric, side
/// 3n+1, zero on every non-adjacent block. Throws InputError otherwise.
void check_s_template(const Graph& g, const Eigen::MatrixXd& S);

/// Objective of the copositive program at S: the trace/off-diagonal
/// functional plus t times the per-edge penalty terms.
double evaluate_k_objective(const Graph& g, const Eigen::MatrixXd& S, double t);

/// Closed-form predicted objective for build_s2 output: 6(mb + m(a+(m-1)b)t).
double predicted_k_objective(const Graph& g, double a, double b, double t);

/// Symmetric matrix of the quadratic form
///   sum over edges (i,j) of a(x_i x_j + y_i y_j + z_i z_j)
///                         + b(cross-color products)
///   + c3 sum_i (x_i + y_i + z_i - 1)^2
///   + c4 sum_i (x_i y_i + x_i z_i + y_i z_i)
/// in variables (x_1,y_1,z_1,...,x_n,y_n,z_n,1); off-diagonal quadratic
/// coefficients are split evenly across the two mirrored entries.
/// Requires b <= 0, a + (m-1)b >= 0, c3 >= 0, c4 >= 0.
Eigen::MatrixXd build_s2(const Graph& g, double a, double b, double c3, double c4);

/// L = sum of outer products of the six permuted indicator vectors,
/// returned with its explicit 6 x (3n+1) nonnegative factor.
struct DColoringMatrix {
    Eigen::MatrixXd L;
    Eigen::MatrixXd factor;
};

DColoringMatrix dcoloring_matrix(const PermutedColoring& pc);

/// Samples vectors [Q_1,Q_1,Q_1, ..., Q_n,Q_n,Q_n, x_0] with
/// sum Q + x_0 = 0 and reports the largest |Z v| component seen.
struct KernelReport {
    double max_residual = 0.0;
    int samples = 0;
};

KernelReport kernel_check(const Eigen::MatrixXd& Z, int n, int samples = 100,
                          std::uint64_t seed = 12345);

}  // namespace tricolor
