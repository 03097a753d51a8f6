#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "tricolor/lmi.hpp"

namespace tricolor {

/// Block-diagonal canonical form consumed by the solver:
///   minimize objective . x  s.t.  constant_b + sum_v x_v A_{b,v} PSD per block.
struct BlockLmi {
    struct Term {
        int var;
        SymMat a;
    };
    struct Block {
        int side = 0;
        SymMat constant;
        std::vector<Term> terms;
    };

    std::vector<Block> blocks;
    std::vector<double> objective;
    std::vector<VarId> vars;  // diagnostic names, parallel to objective

    int var_count() const { return static_cast<int>(objective.size()); }
    int total_dim() const;
    void validate() const;
};

/// Main PSD block from the coefficient matrices, one 1x1 block per
/// signed variable (-x >= 0 for nonpositive, x >= 0 for nonnegative),
/// and one 1x1 block encoding objective - lower_bound >= 0.
BlockLmi canonicalize(const LmiProblem& prob);

struct SolveOptions {
    double feas_tol = 1e-8;
    double gap_tol = 1e-7;
    int max_iter = 200;
    double step_fraction = 0.98;
    std::ostream* log = nullptr;  // one line per iteration when set
};

enum class SolveStatus { Converged, IterationLimit, NumericalFailure };

std::string to_string(SolveStatus s);

struct SolveReport {
    SolveStatus status = SolveStatus::NumericalFailure;
    double objective = 0.0;
    Assignment x;
    double duality_gap = 0.0;  // complementarity over max(1, |objective|) at exit
    double min_eig = 0.0;      // smallest eigenvalue across assembled blocks
    int iterations = 0;
    double wall_time = 0.0;  // seconds
    std::vector<double> gap_history;
    std::string note;
};

/// Primal-dual path-following with Nesterov-Todd scaling and damped
/// Newton steps; dense linear algebra throughout. When no initial point
/// is supplied (or the supplied one is not strictly feasible) a phase-1
/// augmentation searches for one and failure to find it is reported as
/// NumericalFailure, never as a verdict.
SolveReport solve(const BlockLmi& blmi, const SolveOptions& opts = {},
                  const Assignment* initial = nullptr);

/// Smallest eigenvalue of a symmetric matrix (tridiagonalization + QL
/// implicit shifts under the hood). Throws InputError on asymmetric input.
double min_eigenvalue(const Eigen::MatrixXd& M);

}  // namespace tricolor
