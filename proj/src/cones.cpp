#include "tricolor/cones.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "tricolor/encoder.hpp"

namespace tricolor {

int default_subdivision_depth(int side) {
    if (side <= 6) return 12;
    if (side <= 16) return 4;
    return 3;
}

namespace {

void check_symmetric(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols()) throw InputError("matrix must be square");
    double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InputError("matrix is not symmetric");
}

struct Simplex {
    Eigen::MatrixXd V;  // columns are vertices on the standard simplex
    int depth;
};

bool certify_witness(const Eigen::MatrixXd& A, Eigen::VectorXd w, CopositivityVerdict& out,
                     int depth) {
    double l1 = w.sum();  // entries are nonnegative by construction
    if (!(l1 > 0.0)) return false;
    w /= l1;
    double value = w.dot(A * w);
    if (!(value < 0.0)) return false;
    out.kind = CopositivityVerdict::Kind::NotCopositive;
    out.witness = std::move(w);
    out.value = value;
    out.depth = depth;
    return true;
}

}  // namespace

CopositivityVerdict is_copositive(const Eigen::MatrixXd& A, int max_depth) {
    check_symmetric(A);
    const int d = static_cast<int>(A.rows());
    if (max_depth < 0) max_depth = default_subdivision_depth(d);

    CopositivityVerdict out;
    std::vector<Simplex> stack;
    stack.push_back(Simplex{Eigen::MatrixXd::Identity(d, d), 0});
    bool exhausted = false;
    int deepest = 0;

    while (!stack.empty()) {
        Simplex s = std::move(stack.back());
        stack.pop_back();
        deepest = std::max(deepest, s.depth);

        Eigen::MatrixXd Q = s.V.transpose() * A * s.V;
        for (int k = 0; k < d; ++k)
            if (Q(k, k) < 0.0 && certify_witness(A, s.V.col(k), out, s.depth)) return out;

        // longest edge among pairs whose basis entry is still negative
        int bi = -1, bj = -1;
        double best_len = -1.0;
        bool nonneg = true;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                if (Q(i, j) >= 0.0) continue;
                nonneg = false;
                double len = (s.V.col(i) - s.V.col(j)).squaredNorm();
                if (len > best_len) {
                    best_len = len;
                    bi = i;
                    bj = j;
                }
            }
        if (nonneg) continue;  // certified nonnegative on this simplex
        if (s.depth >= max_depth) {
            exhausted = true;
            continue;
        }

        Eigen::VectorXd mid = 0.5 * (s.V.col(bi) + s.V.col(bj));
        if (mid.dot(A * mid) < 0.0 && certify_witness(A, mid, out, s.depth + 1)) return out;
        Simplex left{s.V, s.depth + 1};
        left.V.col(bi) = mid;
        Simplex right{std::move(s.V), s.depth + 1};
        right.V.col(bj) = mid;
        stack.push_back(std::move(left));
        stack.push_back(std::move(right));
    }

    out.kind = exhausted ? CopositivityVerdict::Kind::Unknown : CopositivityVerdict::Kind::Copositive;
    out.depth = exhausted ? max_depth : deepest;
    return out;
}

CpFactorResult cp_factor_attempt(const Eigen::MatrixXd& A, int rank_budget, int iters,
                                 const Eigen::MatrixXd* init, std::uint64_t seed) {
    check_symmetric(A);
    const int n = static_cast<int>(A.rows());
    if (A.diagonal().minCoeff() < 0.0) throw InputError("diagonal must be nonnegative");
    if (rank_budget <= 0) rank_budget = 2 * n;

    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(rank_budget, n);
    if (init) {
        if (init->cols() != n || init->rows() > rank_budget)
            throw InputError("initial factor shape does not fit the rank budget");
        C.topRows(init->rows()) = init->cwiseMax(0.0);
    } else {
        Eigen::LLT<Eigen::MatrixXd> llt(A);
        if (llt.info() == Eigen::Success) {
            C.topRows(n) = Eigen::MatrixXd(llt.matrixU()).cwiseAbs();
        } else {
            std::mt19937_64 gen(seed);
            double scale = std::sqrt(std::max(A.diagonal().maxCoeff(), 1e-12) / rank_budget);
            for (int r = 0; r < rank_budget; ++r)
                for (int c = 0; c < n; ++c)
                    C(r, c) = scale * static_cast<double>(gen() >> 11) * 0x1.0p-53;
        }
    }

    const Eigen::MatrixXd Apos = A.cwiseMax(0.0);
    const Eigen::MatrixXd Aneg = (-A).cwiseMax(0.0);
    const double fnorm = A.norm();
    const double target = 1e-6 * (1.0 + fnorm);
    const double eps = 1e-12;

    CpFactorResult res;
    for (int it = 0; it <= iters; ++it) {
        res.residual = (C.transpose() * C - A).norm();
        if (res.residual <= target) {
            res.found = true;
            break;
        }
        if (it == iters) break;
        Eigen::MatrixXd numer = C * Apos;
        Eigen::MatrixXd denom = C * Aneg + C * (C.transpose() * C);
        // damped multiplicative update; preserves nonnegativity
        C = C.cwiseProduct(0.5 * Eigen::MatrixXd::Ones(rank_budget, n) +
                           0.5 * numer.cwiseQuotient(denom.array().max(eps).matrix()));
    }
    res.factor = std::move(C);
    return res;
}

DGraphProbeReport probe_dgraph(const Graph& g, double a, double b, double c3, double c4, double t,
                               int max_depth) {
    if (!(t > 0.0)) throw InputError("cone parameter t must be positive");
    if (!is_d_graph(g))
        throw InputError("probe requires a D-graph (not 3-colorable, every single edge deletion "
                         "3-colorable)");
    Eigen::MatrixXd S2 = build_s2(g, a, b, c3, c4);
    DGraphProbeReport rep;
    rep.max_depth = max_depth < 0 ? default_subdivision_depth(static_cast<int>(S2.rows())) : max_depth;
    rep.verdict = is_copositive(S2, rep.max_depth);
    rep.objective = evaluate_k_objective(g, S2, t);
    rep.predicted = predicted_k_objective(g, a, b, t);
    rep.residual = std::abs(rep.objective - rep.predicted);
    rep.a = a;
    rep.b = b;
    rep.c3 = c3;
    rep.c4 = c4;
    rep.t = t;
    return rep;
}

}  // namespace tricolor
