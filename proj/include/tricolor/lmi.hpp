#pragma once

#include <Eigen/Dense>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace tricolor {

/// Identifier of one scalar variable in the matrix program.
///
/// The first six kinds are the slots of the primal encoding: the six
/// distinct entries of each vertex diagonal block, the nine entries of
/// each adjacent block, the single multiplier of a non-adjacent block's
/// all-ones pattern, the three border entries per vertex, the corner,
/// and the nine nonpositive perturbation entries per non-adjacent block.
/// DualZ/Tau serve the dual feasibility program; Aux is for ad-hoc
/// problems (unit tests, phase-1 augmentation).
enum class VarKind : std::uint8_t {
    DiagD,     // (i, k in 1..6)
    AdjD,      // (i, j, k in 1..9), i < j adjacent
    NonAdjD,   // (i, j), i < j non-adjacent
    BorderD,   // (i, k in 1..3)
    CornerD,   // ()
    NonAdjP,   // (i, j, k in 1..9), i < j non-adjacent
    DualZ,     // (i, j, k in 1..8), eliminated 9th entry
    Tau,       // ()
    Aux,       // (k)
};

struct VarId {
    VarKind kind = VarKind::Aux;
    int i = 0, j = 0, k = 0;

    auto operator<=>(const VarId&) const = default;
};

std::string to_string(const VarId& v);

inline VarId diag_d(int i, int k) { return {VarKind::DiagD, i, 0, k}; }
inline VarId adj_d(int i, int j, int k) { return {VarKind::AdjD, i, j, k}; }
inline VarId nonadj_d(int i, int j) { return {VarKind::NonAdjD, i, j, 0}; }
inline VarId border_d(int i, int k) { return {VarKind::BorderD, i, 0, k}; }
inline VarId corner_d() { return {VarKind::CornerD, 0, 0, 0}; }
inline VarId nonadj_p(int i, int j, int k) { return {VarKind::NonAdjP, i, j, k}; }
inline VarId dual_z(int i, int j, int k) { return {VarKind::DualZ, i, j, k}; }
inline VarId tau_var() { return {VarKind::Tau, 0, 0, 0}; }
inline VarId aux_var(int k) { return {VarKind::Aux, 0, 0, k}; }

/// Sparse symmetric matrix; each entry stored once with r <= c and
/// mirrored on assembly, so assembled matrices are exactly symmetric.
struct SymMat {
    struct Entry {
        int r, c;
        double v;
    };

    int side = 0;
    std::vector<Entry> entries;

    SymMat() = default;
    explicit SymMat(int s) : side(s) {}

    void add(int r, int c, double v);
    bool empty() const { return entries.empty(); }

    Eigen::MatrixXd dense() const;
    void add_to(Eigen::MatrixXd& M, double scale = 1.0) const;
    /// <A, X> over the full symmetric matrix (off-diagonal entries count twice).
    double inner(const Eigen::MatrixXd& X) const;
};

enum class VarSign : std::uint8_t { Free, Nonpositive, Nonnegative };

using Assignment = std::vector<double>;

/// An affinely parametrized symmetric-matrix program:
///   minimize objective . x
///   s.t.     constant + sum_v x_v coeff_v  is PSD,
///            sign constraints per variable,
///            objective . x >= lower_bound        (when present).
///
/// Variables are kept sorted by VarId; assignments are vectors in that
/// order. The constant term is zero for the primal encoding and carries
/// the fixed dual template for the dual feasibility program.
struct LmiProblem {
    int dim = 0;
    std::vector<VarId> vars;
    std::vector<SymMat> coeff;
    std::vector<double> objective;
    std::vector<VarSign> sign;
    SymMat constant;
    double lower_bound = -100.0;
    bool has_lower_bound = true;

    std::size_t var_count() const { return vars.size(); }
    int index_of(const VarId& v) const;  // throws std::out_of_range if absent

    /// Appends a variable; caller must keep VarId insertion order sorted.
    int add_var(const VarId& v, double obj_coeff, VarSign s);
};

double objective_value(const LmiProblem& prob, const Assignment& x);
Eigen::MatrixXd assemble_matrix(const LmiProblem& prob, const Assignment& x);

}  // namespace tricolor
