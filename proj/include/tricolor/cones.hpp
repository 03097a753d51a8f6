#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "tricolor/graph.hpp"

namespace tricolor {

struct CopositivityVerdict {
    enum class Kind { Copositive, NotCopositive, Unknown };

    Kind kind = Kind::Unknown;
    int depth = 0;            // deepest subdivision level examined
    Eigen::VectorXd witness;  // NotCopositive only: nonnegative, |.|_1 = 1
    double value = 0.0;       // witness' quadratic form value (< 0)
};

/// 12 for side <= 6, 4 for side <= 16, 3 beyond.
int default_subdivision_depth(int side);

/// Simplex-subdivision search on the standard simplex. A simplex is
/// certified when the form's matrix in its vertex basis has no negative
/// entry; otherwise the longest uncertified edge is bisected, up to
/// max_depth. Any evaluated point with a negative form value
/// short-circuits to NotCopositive (the witness is re-verified before
/// returning). Exhausting the depth budget yields Unknown, never a
/// claim.
CopositivityVerdict is_copositive(const Eigen::MatrixXd& A, int max_depth = -1);

struct CpFactorResult {
    bool found = false;
    Eigen::MatrixXd factor;  // rank_budget x side, entrywise >= 0
    double residual = 0.0;   // ||factor^T factor - A||_F
};

/// Multiplicative-update nonnegative factorization attempt A ~ C^T C.
/// Success means residual <= 1e-6 (1 + ||A||_F); anything else is
/// Inconclusive (found = false) -- absence of a factor is never claimed.
/// Requires symmetric A with nonnegative diagonal.
CpFactorResult cp_factor_attempt(const Eigen::MatrixXd& A, int rank_budget = -1, int iters = 2000,
                                 const Eigen::MatrixXd* init = nullptr, std::uint64_t seed = 1);

/// Builds the penalized edge quadratic form for a D-graph, runs the
/// copositivity search on it, and compares the cone program objective
/// against its closed-form prediction. The prediction is a recorded
/// experimental quantity, not an assertion.
struct DGraphProbeReport {
    CopositivityVerdict verdict;
    double objective = 0.0;
    double predicted = 0.0;
    double residual = 0.0;
    double a = 0.0, b = 0.0, c3 = 0.0, c4 = 0.0, t = 0.0;
    int max_depth = 0;
};

DGraphProbeReport probe_dgraph(const Graph& g, double a, double b, double c3, double c4, double t,
                               int max_depth = -1);

}  // namespace tricolor
