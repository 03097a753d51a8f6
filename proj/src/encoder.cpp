#include "tricolor/encoder.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace tricolor {

namespace {

// zero-based position of the k-th distinct entry (k in 1..6) of a
// symmetric 3x3 diagonal block: diagonal first, then upper triangle
constexpr int kDiagPos[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};

int vrow(int i) { return 3 * (i - 1); }  // first row of vertex i's triple

Eigen::Matrix3d ones_minus_identity() {
    return Eigen::Matrix3d::Ones() - Eigen::Matrix3d::Identity();
}

const std::array<std::array<int, 3>, 6> kColorPerms = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

}  // namespace

LmiProblem build_primal(const Graph& g, double lower_bound) {
    const int n = g.order();
    LmiProblem prob;
    prob.dim = 3 * n + 1;
    prob.constant = SymMat(prob.dim);
    prob.lower_bound = lower_bound;
    prob.has_lower_bound = true;

    for (int i = 1; i <= n; ++i) {
        for (int k = 1; k <= 6; ++k) {
            int v = prob.add_var(diag_d(i, k), k <= 3 ? 2.0 : 0.0, VarSign::Free);
            prob.coeff[v].add(vrow(i) + kDiagPos[k - 1][0], vrow(i) + kDiagPos[k - 1][1], 1.0);
        }
    }
    for (auto [i, j] : g.edges()) {
        for (int k = 1; k <= 9; ++k) {
            bool off_diagonal = k != 1 && k != 5 && k != 9;
            int v = prob.add_var(adj_d(i, j, k), off_diagonal ? 2.0 : 0.0, VarSign::Free);
            prob.coeff[v].add(vrow(i) + (k - 1) / 3, vrow(j) + (k - 1) % 3, 1.0);
        }
    }
    for (auto [i, j] : g.non_adjacent_pairs()) {
        int v = prob.add_var(nonadj_d(i, j), 12.0, VarSign::Free);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) prob.coeff[v].add(vrow(i) + r, vrow(j) + c, 1.0);
    }
    for (int i = 1; i <= n; ++i) {
        for (int k = 1; k <= 3; ++k) {
            int v = prob.add_var(border_d(i, k), 4.0, VarSign::Free);
            prob.coeff[v].add(vrow(i) + k - 1, 3 * n, 1.0);
        }
    }
    {
        int v = prob.add_var(corner_d(), 6.0, VarSign::Free);
        prob.coeff[v].add(3 * n, 3 * n, 1.0);
    }
    for (auto [i, j] : g.non_adjacent_pairs()) {
        for (int k = 1; k <= 9; ++k) {
            int v = prob.add_var(nonadj_p(i, j, k), 0.0, VarSign::Nonpositive);
            prob.coeff[v].add(vrow(i) + (k - 1) / 3, vrow(j) + (k - 1) % 3, 1.0);
        }
    }
    return prob;
}

Assignment primal_interior_point(const LmiProblem& prob) {
    Assignment x(prob.var_count(), 0.0);
    for (std::size_t v = 0; v < prob.vars.size(); ++v) {
        const VarId& id = prob.vars[v];
        if (id.kind == VarKind::DiagD && id.k <= 3) x[v] = 1.0;
        if (id.kind == VarKind::CornerD) x[v] = 1.0;
        if (id.kind == VarKind::NonAdjP) x[v] = -1.0;
    }
    return x;
}

PermutedColoring permuted(const Coloring& c, int n) {
    if (c.size() != n) throw InputError("coloring length does not match n");
    for (int v : c.assignment)
        if (v < 0 || v > 2) throw InputError("coloring values must be in {0,1,2}");
    PermutedColoring pc;
    pc.base = c;
    for (int k = 0; k < 6; ++k) {
        Coloring variant;
        variant.assignment.resize(static_cast<std::size_t>(n));
        Eigen::RowVectorXd vec = Eigen::RowVectorXd::Zero(3 * n + 1);
        for (int v = 0; v < n; ++v) {
            int color = kColorPerms[static_cast<std::size_t>(k)]
                                   [static_cast<std::size_t>(c.assignment[static_cast<std::size_t>(v)])];
            variant.assignment[static_cast<std::size_t>(v)] = color;
            vec(3 * v + color) = 1.0;
        }
        vec(3 * n) = 1.0;
        pc.variants[static_cast<std::size_t>(k)] = std::move(variant);
        pc.vectors[static_cast<std::size_t>(k)] = std::move(vec);
    }
    return pc;
}

std::pair<double, double> identity_sum(const LmiProblem& prob, const Graph& g,
                                       const Assignment& d_assignment, const PermutedColoring& pc) {
    if (!pc.base.proper(g)) throw InputError("identity requires a proper base coloring");
    Assignment x = d_assignment;
    if (x.size() != prob.var_count()) throw InputError("assignment size mismatch");
    for (std::size_t v = 0; v < prob.vars.size(); ++v)
        if (prob.vars[v].kind == VarKind::NonAdjP) x[v] = 0.0;

    Eigen::MatrixXd M = assemble_matrix(prob, x);
    double lhs = 0.0;
    for (const auto& vec : pc.vectors) lhs += vec * M * vec.transpose();
    return {lhs, objective_value(prob, x)};
}

Eigen::MatrixXd DualCertificate::assemble(const Graph& g) const {
    const int dim = 3 * n + 1;
    Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 1; i <= n; ++i) {
        Z.block<3, 3>(vrow(i), vrow(i)) = 2.0 * Eigen::Matrix3d::Identity();
        Z.block<3, 1>(vrow(i), 3 * n).setConstant(2.0);
        Z.block<1, 3>(3 * n, vrow(i)).setConstant(2.0);
    }
    Z(3 * n, 3 * n) = 6.0;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            Eigen::Matrix3d B;
            if (g.adjacent(i, j)) {
                B = ones_minus_identity();
            } else {
                auto it = free_blocks.find({i, j});
                B = it == free_blocks.end() ? Eigen::Matrix3d::Zero() : it->second;
            }
            Z.block<3, 3>(vrow(i), vrow(j)) = B;
            Z.block<3, 3>(vrow(j), vrow(i)) = B.transpose();
        }
    return Z;
}

DualBuildResult coloring_to_dual(const PermutedColoring& pc, const Graph& g) {
    if (!pc.base.proper(g)) throw InputError("dual certificate requires a proper coloring");
    const int n = g.order();
    const int dim = 3 * n + 1;
    Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& vec : pc.vectors) Z += vec.transpose() * vec;

    DualCertificate cert;
    cert.n = n;
    for (auto [i, j] : g.non_adjacent_pairs()) cert.free_blocks[{i, j}] = Z.block<3, 3>(vrow(i), vrow(j));

    // sanity: the outer-product sum must land exactly on the template
    DualValidation v = validate_dual(Z, g, 0.0);
    if (!(v.symmetric && v.diagonal_blocks && v.border_corner && v.adjacent_blocks && v.block_sums &&
          v.nonneg_free))
        throw std::logic_error("constructed dual certificate violates its template");
    return DualBuildResult{std::move(cert), std::move(Z)};
}

DualValidation validate_dual(const Eigen::MatrixXd& Z, const Graph& g, double tol) {
    const int n = g.order();
    const int dim = 3 * n + 1;
    if (Z.rows() != dim || Z.cols() != dim)
        throw InputError("dual matrix side " + std::to_string(Z.rows()) + " does not match 3n+1=" +
                         std::to_string(dim));
    DualValidation rep;
    rep.symmetric = (Z - Z.transpose()).cwiseAbs().maxCoeff() <= tol;

    double template_dev = 0.0;
    for (int i = 1; i <= n; ++i) {
        template_dev = std::max(
            template_dev,
            (Z.block<3, 3>(vrow(i), vrow(i)) - 2.0 * Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff());
    }
    rep.diagonal_blocks = template_dev <= tol;
    rep.worst_template_dev = template_dev;

    double border_dev = std::abs(Z(3 * n, 3 * n) - 6.0);
    for (int i = 1; i <= n; ++i)
        border_dev = std::max(border_dev,
                              (Z.block<3, 1>(vrow(i), 3 * n).array() - 2.0).abs().maxCoeff());
    rep.border_corner = border_dev <= tol;
    rep.worst_template_dev = std::max(rep.worst_template_dev, border_dev);

    double adj_dev = 0.0;
    for (auto [i, j] : g.edges())
        adj_dev = std::max(adj_dev,
                           (Z.block<3, 3>(vrow(i), vrow(j)) - ones_minus_identity()).cwiseAbs().maxCoeff());
    rep.adjacent_blocks = adj_dev <= tol;
    rep.worst_template_dev = std::max(rep.worst_template_dev, adj_dev);

    double sum_dev = 0.0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            sum_dev = std::max(sum_dev, std::abs(Z.block<3, 3>(vrow(i), vrow(j)).sum() - 6.0));
    rep.block_sums = sum_dev <= tol;
    rep.worst_block_sum_dev = sum_dev;

    double worst_neg = 0.0;
    for (auto [i, j] : g.non_adjacent_pairs())
        worst_neg = std::min(worst_neg, Z.block<3, 3>(vrow(i), vrow(j)).minCoeff());
    rep.nonneg_free = worst_neg >= -tol;
    rep.worst_negative_entry = worst_neg;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (Z + Z.transpose()),
                                                      Eigen::EigenvaluesOnly);
    rep.min_eig = es.eigenvalues().minCoeff();
    rep.psd = rep.min_eig >= -tol;
    return rep;
}

LmiProblem build_dual_feasibility(const Graph& g) {
    const int n = g.order();
    const int lead = 3 * n + 1;
    const auto nonadj = g.non_adjacent_pairs();
    LmiProblem prob;
    prob.dim = lead + static_cast<int>(nonadj.size());
    prob.constant = SymMat(prob.dim);
    prob.lower_bound = -100.0;
    prob.has_lower_bound = true;

    // fixed dual template
    for (int i = 1; i <= n; ++i) {
        for (int d = 0; d < 3; ++d) prob.constant.add(vrow(i) + d, vrow(i) + d, 2.0);
        for (int d = 0; d < 3; ++d) prob.constant.add(vrow(i) + d, 3 * n, 2.0);
    }
    prob.constant.add(3 * n, 3 * n, 6.0);
    for (auto [i, j] : g.edges())
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                if (r != c) prob.constant.add(vrow(i) + r, vrow(j) + c, 1.0);

    // free blocks: 8 entries per non-adjacent pair, the 9th eliminated by
    // the block-sum equality; its nonnegativity is a slack diagonal entry
    for (std::size_t b = 0; b < nonadj.size(); ++b) {
        auto [i, j] = nonadj[b];
        int elim_r = vrow(i) + 2, elim_c = vrow(j) + 2;
        int slack = lead + static_cast<int>(b);
        prob.constant.add(elim_r, elim_c, 6.0);
        prob.constant.add(slack, slack, 6.0);
        for (int k = 1; k <= 8; ++k) {
            int v = prob.add_var(dual_z(i, j, k), 0.0, VarSign::Nonnegative);
            prob.coeff[v].add(vrow(i) + (k - 1) / 3, vrow(j) + (k - 1) % 3, 1.0);
            prob.coeff[v].add(elim_r, elim_c, -1.0);
            prob.coeff[v].add(slack, slack, -1.0);
        }
    }
    {
        int v = prob.add_var(tau_var(), 1.0, VarSign::Free);
        for (int d = 0; d < lead; ++d) prob.coeff[v].add(d, d, 1.0);
    }
    return prob;
}

Assignment dual_feasibility_interior_point(const LmiProblem& prob, const Graph& g) {
    Assignment x(prob.var_count(), 0.0);
    for (std::size_t v = 0; v < prob.vars.size(); ++v)
        if (prob.vars[v].kind == VarKind::DualZ) x[v] = 2.0 / 3.0;
    Eigen::MatrixXd M = assemble_matrix(prob, x);
    const int lead = 3 * g.order() + 1;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M.topLeftCorner(lead, lead),
                                                      Eigen::EigenvaluesOnly);
    x[static_cast<std::size_t>(prob.index_of(tau_var()))] =
        std::max(1.0, 1.0 - es.eigenvalues().minCoeff());
    return x;
}

const Eigen::MatrixXd& ConeMatrices::edge_matrix(int i, int j) const {
    if (i > j) std::swap(i, j);
    auto it = E.find({i, j});
    return it != E.end() ? it->second : zero_;
}

ConeMatrices build_cone_matrices(const Graph& g, double t) {
    if (!(t > 0.0)) throw InputError("cone parameter t must be positive");
    const int n = g.order();
    const int dim = 3 * n + 1;
    ConeMatrices cm;
    cm.n = n;
    cm.t = t;
    cm.s_template_var_count = 6 * n + 9 * g.size() + 3 * n + 1;
    cm.b_template_var_count = 9 * static_cast<int>(g.non_adjacent_pairs().size());
    cm.zero_ = Eigen::MatrixXd::Zero(dim, dim);

    for (auto [ei, ej] : g.edges()) {
        Eigen::MatrixXd E = Eigen::MatrixXd::Zero(dim, dim);
        for (int i = 1; i <= n; ++i) {
            E.block<3, 3>(vrow(i), vrow(i)) = 2.0 * Eigen::Matrix3d::Identity();
            E.block<3, 1>(vrow(i), 3 * n).setConstant(2.0);
            E.block<1, 3>(3 * n, vrow(i)).setConstant(2.0);
        }
        E(3 * n, 3 * n) = 6.0;
        for (auto [k, l] : g.edges()) {
            Eigen::Matrix3d B = (k == ei && l == ej) ? Eigen::Matrix3d(2.0 * Eigen::Matrix3d::Identity())
                                                     : Eigen::Matrix3d(ones_minus_identity());
            E.block<3, 3>(vrow(k), vrow(l)) = B;
            E.block<3, 3>(vrow(l), vrow(k)) = B.transpose();
        }
        cm.E[{ei, ej}] = std::move(E);
    }
    return cm;
}

void check_s_template(const Graph& g, const Eigen::MatrixXd& S) {
    const int n = g.order();
    const int dim = 3 * n + 1;
    if (S.rows() != dim || S.cols() != dim)
        throw InputError("matrix side does not match 3n+1 = " + std::to_string(dim));
    double scale = 1.0 + S.cwiseAbs().maxCoeff();
    if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InputError("matrix is not symmetric");
    for (auto [i, j] : g.non_adjacent_pairs())
        if (S.block<3, 3>(vrow(i), vrow(j)).cwiseAbs().maxCoeff() > 1e-14 * scale)
            throw InputError("non-adjacent block (" + std::to_string(i) + "," + std::to_string(j) +
                             ") must be zero");
}

double evaluate_k_objective(const Graph& g, const Eigen::MatrixXd& S, double t) {
    check_s_template(g, S);
    const int n = g.order();
    auto off_diagonal_sum = [&](int i, int j) {
        const auto B = S.block<3, 3>(vrow(i), vrow(j));
        return B.sum() - B.trace();
    };
    double base = 0.0;
    for (int i = 1; i <= n; ++i) base += 2.0 * S.block<3, 3>(vrow(i), vrow(i)).trace();
    for (auto [i, j] : g.edges()) base += 2.0 * off_diagonal_sum(i, j);
    for (int i = 1; i <= n; ++i) base += 4.0 * S.block<3, 1>(vrow(i), 3 * n).sum();
    base += 6.0 * S(3 * n, 3 * n);

    double penalty = 0.0;
    for (auto [i, j] : g.edges())
        penalty += base - 2.0 * off_diagonal_sum(i, j) + 4.0 * S.block<3, 3>(vrow(i), vrow(j)).trace();
    return base + t * penalty;
}

double predicted_k_objective(const Graph& g, double a, double b, double t) {
    const double m = g.size();
    return 6.0 * (m * b + m * (a + (m - 1.0) * b) * t);
}

Eigen::MatrixXd build_s2(const Graph& g, double a, double b, double c3, double c4) {
    const double m = g.size();
    if (b > 0.0) throw InputError("edge same-color weight b must be <= 0");
    if (a + (m - 1.0) * b < 0.0) throw InputError("need a + (m-1) b >= 0");
    if (c3 < 0.0 || c4 < 0.0) throw InputError("penalty weights must be nonnegative");

    const int n = g.order();
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(3 * n + 1, 3 * n + 1);
    for (auto [i, j] : g.edges()) {
        Eigen::Matrix3d B = 0.5 * a * Eigen::Matrix3d::Identity() + 0.5 * b * ones_minus_identity();
        S.block<3, 3>(vrow(i), vrow(j)) = B;
        S.block<3, 3>(vrow(j), vrow(i)) = B.transpose();
    }
    for (int i = 1; i <= n; ++i) {
        S.block<3, 3>(vrow(i), vrow(i)) =
            c3 * Eigen::Matrix3d::Ones() + 0.5 * c4 * ones_minus_identity();
        S.block<3, 1>(vrow(i), 3 * n).setConstant(-c3);
        S.block<1, 3>(3 * n, vrow(i)).setConstant(-c3);
    }
    S(3 * n, 3 * n) = c3 * n;
    return S;
}

DColoringMatrix dcoloring_matrix(const PermutedColoring& pc) {
    const int dim = static_cast<int>(pc.vectors[0].size());
    DColoringMatrix out;
    out.factor = Eigen::MatrixXd(6, dim);
    for (int k = 0; k < 6; ++k) out.factor.row(k) = pc.vectors[static_cast<std::size_t>(k)];
    out.L = out.factor.transpose() * out.factor;
    return out;
}

KernelReport kernel_check(const Eigen::MatrixXd& Z, int n, int samples, std::uint64_t seed) {
    if (Z.rows() != 3 * n + 1 || Z.cols() != 3 * n + 1)
        throw InputError("matrix side does not match 3n+1");
    std::mt19937_64 gen(seed);
    auto uniform = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0; };
    KernelReport rep;
    rep.samples = samples;
    Eigen::VectorXd v(3 * n + 1);
    for (int s = 0; s < samples; ++s) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double q = uniform();
            total += q;
            v.segment<3>(3 * i).setConstant(q);
        }
        v(3 * n) = -total;
        rep.max_residual = std::max(rep.max_residual, (Z * v).cwiseAbs().maxCoeff());
    }
    return rep;
}

}  // namespace tricolor
