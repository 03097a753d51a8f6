#include "tricolor/solver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "tricolor/graph.hpp"  // InputError

namespace tricolor {

int BlockLmi::total_dim() const {
    int d = 0;
    for (const auto& b : blocks) d += b.side;
    return d;
}

void BlockLmi::validate() const {
    for (const auto& b : blocks) {
        if (b.side < 1) throw std::invalid_argument("block side must be >= 1");
        for (const auto& t : b.terms) {
            if (t.var < 0 || t.var >= var_count())
                throw std::invalid_argument("term references unknown variable index " +
                                            std::to_string(t.var));
            if (t.a.side != b.side) throw std::invalid_argument("coefficient side mismatch");
        }
        if (!b.constant.empty() && b.constant.side != b.side)
            throw std::invalid_argument("constant side mismatch");
    }
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "Converged";
        case SolveStatus::IterationLimit: return "IterationLimit";
        case SolveStatus::NumericalFailure: return "NumericalFailure";
    }
    return "?";
}

BlockLmi canonicalize(const LmiProblem& prob) {
    BlockLmi out;
    out.vars = prob.vars;
    out.objective = prob.objective;

    BlockLmi::Block main;
    main.side = prob.dim;
    main.constant = prob.constant;
    for (std::size_t v = 0; v < prob.var_count(); ++v)
        if (!prob.coeff[v].empty())
            main.terms.push_back(BlockLmi::Term{static_cast<int>(v), prob.coeff[v]});
    out.blocks.push_back(std::move(main));

    for (std::size_t v = 0; v < prob.var_count(); ++v) {
        if (prob.sign[v] == VarSign::Free) continue;
        BlockLmi::Block sign_block;
        sign_block.side = 1;
        sign_block.constant = SymMat(1);
        SymMat a(1);
        a.add(0, 0, prob.sign[v] == VarSign::Nonpositive ? -1.0 : 1.0);
        sign_block.terms.push_back(BlockLmi::Term{static_cast<int>(v), std::move(a)});
        out.blocks.push_back(std::move(sign_block));
    }

    if (prob.has_lower_bound) {
        BlockLmi::Block bound;
        bound.side = 1;
        bound.constant = SymMat(1);
        bound.constant.add(0, 0, -prob.lower_bound);
        for (std::size_t v = 0; v < prob.var_count(); ++v) {
            if (prob.objective[v] == 0.0) continue;
            SymMat a(1);
            a.add(0, 0, prob.objective[v]);
            bound.terms.push_back(BlockLmi::Term{static_cast<int>(v), std::move(a)});
        }
        out.blocks.push_back(std::move(bound));
    }
    out.validate();
    return out;
}

double min_eigenvalue(const Eigen::MatrixXd& M) {
    if (M.rows() != M.cols()) throw InputError("matrix must be square");
    double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InputError("matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

void assemble_blocks(const BlockLmi& p, const Vec& x, std::vector<Mat>& S) {
    S.resize(p.blocks.size());
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
        const auto& blk = p.blocks[b];
        S[b] = Mat::Zero(blk.side, blk.side);
        blk.constant.add_to(S[b]);
        for (const auto& t : blk.terms)
            if (x[t.var] != 0.0) t.a.add_to(S[b], x[t.var]);
    }
}

bool all_pd(const std::vector<Mat>& S) {
    for (const auto& M : S) {
        if (M.rows() == 1) {
            if (!(M(0, 0) > 0.0)) return false;
            continue;
        }
        Eigen::LLT<Mat> llt(M);
        if (llt.info() != Eigen::Success) return false;
    }
    return true;
}

void sqrt_pair(const Mat& A, Mat& half, Mat& inv_half) {
    Eigen::SelfAdjointEigenSolver<Mat> es(A);
    double floor = std::max(es.eigenvalues().maxCoeff(), 1e-300) * 1e-14;
    Vec lam = es.eigenvalues().cwiseMax(floor);
    Vec sq = lam.cwiseSqrt();
    half = es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().transpose();
    inv_half = es.eigenvectors() * sq.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
}

// Nesterov-Todd scaling point: the W > 0 with W S W = X.
Mat nt_scaling(const Mat& S, const Mat& X) {
    Mat xhalf, xhalf_inv;
    sqrt_pair(X, xhalf, xhalf_inv);
    Mat G = xhalf * S * xhalf;
    Mat ghalf, ghalf_inv;
    sqrt_pair(G, ghalf, ghalf_inv);
    Mat W = xhalf * ghalf_inv * xhalf;
    return 0.5 * (W + W.transpose());
}

Mat waw(const Mat& W, const SymMat& A) {
    Mat out = Mat::Zero(W.rows(), W.cols());
    for (const auto& e : A.entries) {
        out.noalias() += e.v * W.col(e.r) * W.row(e.c);
        if (e.r != e.c) out.noalias() += e.v * W.col(e.c) * W.row(e.r);
    }
    return out;
}

// exact distance to the cone boundary: sup { a : S + a dS PD for all blocks }
double boundary_step(const std::vector<Mat>& S, const std::vector<Mat>& dS) {
    double amax = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < S.size(); ++b) {
        if (S[b].rows() == 1) {
            if (dS[b](0, 0) < 0.0) amax = std::min(amax, S[b](0, 0) / -dS[b](0, 0));
            continue;
        }
        Eigen::LLT<Mat> llt(S[b]);
        if (llt.info() != Eigen::Success) return 0.0;
        Mat C = llt.matrixL().solve(dS[b]);
        Mat B = llt.matrixL().solve(C.transpose());
        B = 0.5 * (B + B.transpose());
        Eigen::SelfAdjointEigenSolver<Mat> es(B, Eigen::EigenvaluesOnly);
        double lmin = es.eigenvalues().minCoeff();  // S + a dS singular at a = -1/lmin
        if (lmin < 0.0) amax = std::min(amax, -1.0 / lmin);
    }
    return amax;
}

double damped_step(const std::vector<Mat>& S, const std::vector<Mat>& dS, double fraction) {
    return std::min(1.0, fraction * boundary_step(S, dS));
}

double inner_all(const std::vector<Mat>& A, const std::vector<Mat>& B) {
    double s = 0.0;
    for (std::size_t b = 0; b < A.size(); ++b) s += (A[b].array() * B[b].array()).sum();
    return s;
}

struct LoopResult {
    SolveStatus status = SolveStatus::IterationLimit;
    Vec x;
    std::vector<Mat> S, X;
    double gap_rel = 0.0;
    int iterations = 0;
    std::vector<double> gap_history;
    std::string note;
};

// Infeasible-start NT path-following with a step-length-based centering
// heuristic. early_exit_var, when >= 0, stops the loop as soon as that
// variable drops below early_exit_threshold (phase-1 use).
LoopResult ipm_loop(const BlockLmi& p, const SolveOptions& opts, Vec x, int early_exit_var = -1,
                    double early_exit_threshold = 0.0) {
    const int nvars = p.var_count();
    const double totdim = p.total_dim();
    const Vec c = Eigen::Map<const Vec>(p.objective.data(), static_cast<Eigen::Index>(nvars));

    LoopResult res;
    std::vector<Mat> S, X(p.blocks.size());
    assemble_blocks(p, x, S);
    if (!all_pd(S)) {
        res.status = SolveStatus::NumericalFailure;
        res.note = "initial point is not strictly feasible";
        res.x = std::move(x);
        res.S = std::move(S);
        res.X = std::move(X);
        return res;
    }
    const double eta = std::max(1.0, nvars == 0 ? 0.0 : c.cwiseAbs().maxCoeff());
    const double feas_scale = 1.0 + (nvars == 0 ? 0.0 : c.cwiseAbs().maxCoeff());
    for (std::size_t b = 0; b < p.blocks.size(); ++b)
        X[b] = eta * Mat::Identity(p.blocks[b].side, p.blocks[b].side);

    std::vector<Mat> Sinv(p.blocks.size()), W(p.blocks.size()), dS(p.blocks.size()),
        dX(p.blocks.size());
    Mat M(nvars, nvars);
    Vec r(nvars), tr_sinv(nvars), dx(nvars);
    int steps = 0;

    // Gram matrix of the coefficient matrices; constant across iterations
    // and well conditioned independently of the barrier parameter. Dual
    // directions are projected with it so every X step keeps the
    // linearized feasibility equations satisfied to solve precision.
    Mat gram = Mat::Zero(nvars, nvars);
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
        const auto& terms = p.blocks[b].terms;
        const Mat eye = Mat::Identity(p.blocks[b].side, p.blocks[b].side);
        for (const auto& tv : terms) {
            const Mat U = waw(eye, tv.a);
            for (const auto& tu : terms) {
                if (tu.var > tv.var) continue;
                gram(tu.var, tv.var) += tu.a.inner(U);
            }
        }
    }
    for (int i = 0; i < nvars; ++i)
        for (int j = 0; j < i; ++j) gram(i, j) = gram(j, i);
    Eigen::LDLT<Mat> gram_ldlt(gram);
    const bool gram_ok = nvars > 0 && gram_ldlt.info() == Eigen::Success;

    while (true) {
        res.iterations = steps;
        const double gap = inner_all(S, X);
        const double obj = c.dot(x);
        for (int v = 0; v < nvars; ++v) r[v] = c[v];
        for (std::size_t b = 0; b < p.blocks.size(); ++b)
            for (const auto& t : p.blocks[b].terms) r[t.var] -= t.a.inner(X[b]);
        const double rinf = nvars == 0 ? 0.0 : r.cwiseAbs().maxCoeff();
        const double gap_rel = gap / std::max(1.0, std::abs(obj));
        res.gap_history.push_back(gap_rel);
        res.gap_rel = gap_rel;

        if (!std::isfinite(gap) || !std::isfinite(obj) || !std::isfinite(rinf)) {
            res.status = SolveStatus::NumericalFailure;
            res.note = "non-finite iterate";
            break;
        }
        if (opts.log) {
            double me = std::numeric_limits<double>::infinity();
            for (const auto& Sb : S) {
                Eigen::SelfAdjointEigenSolver<Mat> es(Sb, Eigen::EigenvaluesOnly);
                me = std::min(me, es.eigenvalues().minCoeff());
            }
            (*opts.log) << "iter " << steps << "  gap " << gap_rel << "  resid " << rinf
                        << "  min_eig " << me << '\n';
        }
        if (early_exit_var >= 0 && x[early_exit_var] < early_exit_threshold) {
            res.status = SolveStatus::Converged;
            break;
        }
        if (gap_rel <= opts.gap_tol && rinf <= opts.feas_tol * feas_scale) {
            res.status = SolveStatus::Converged;
            break;
        }
        if (steps >= opts.max_iter) {
            res.status = SolveStatus::IterationLimit;
            break;
        }

        const double mu = gap / totdim;
        bool factor_ok = true;
        for (std::size_t b = 0; b < p.blocks.size(); ++b) {
            if (p.blocks[b].side == 1) {
                Sinv[b] = Mat::Constant(1, 1, 1.0 / S[b](0, 0));
                W[b] = Mat::Constant(1, 1, std::sqrt(X[b](0, 0) / S[b](0, 0)));
                continue;
            }
            Eigen::LLT<Mat> llt(S[b]);
            if (llt.info() != Eigen::Success) {
                factor_ok = false;
                break;
            }
            Sinv[b] = llt.solve(Mat::Identity(p.blocks[b].side, p.blocks[b].side));
            Sinv[b] = 0.5 * (Sinv[b] + Sinv[b].transpose());
            W[b] = nt_scaling(S[b], X[b]);
        }
        if (!factor_ok) {
            res.status = SolveStatus::NumericalFailure;
            res.note = "slack factorization failed";
            break;
        }

        // Schur complement M_uv = sum_b <A_u, W A_v W>
        M.setZero();
        for (std::size_t b = 0; b < p.blocks.size(); ++b) {
            const auto& terms = p.blocks[b].terms;
            for (const auto& tv : terms) {
                const Mat U = waw(W[b], tv.a);
                for (const auto& tu : terms) {
                    if (tu.var > tv.var) continue;
                    M(tu.var, tv.var) += tu.a.inner(U);
                }
            }
        }
        for (int i = 0; i < nvars; ++i)
            for (int j = 0; j < i; ++j) M(i, j) = M(j, i);

        tr_sinv.setZero();
        for (std::size_t b = 0; b < p.blocks.size(); ++b)
            for (const auto& t : p.blocks[b].terms) tr_sinv[t.var] += t.a.inner(Sinv[b]);

        // Jacobi equilibration, static regularization, and extended-precision
        // iterative refinement keep the Newton system usable once the
        // iterate nears a degenerate optimum.
        Vec scale = M.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
        Mat Ms = scale.asDiagonal() * M * scale.asDiagonal();
        Mat Mreg = Ms;
        Mreg.diagonal().array() += 1e-10;
        Eigen::LDLT<Mat> mldlt(Mreg);
        if (mldlt.info() != Eigen::Success) {
            Mreg.diagonal().array() += 1e-7;
            mldlt.compute(Mreg);
            if (mldlt.info() != Eigen::Success) {
                res.status = SolveStatus::NumericalFailure;
                res.note = "Schur complement factorization failed";
                break;
            }
        }
        using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
        using VecL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
        const MatL Msl = Ms.cast<long double>();
        auto schur_solve = [&](const Vec& rhs) {
            // refine against the unregularized matrix with long double residuals
            VecL rs = (scale.asDiagonal() * rhs).cast<long double>();
            Vec y = mldlt.solve(rs.cast<double>());
            Vec best = y;
            long double best_res = std::numeric_limits<long double>::max();
            for (int round = 0; round < 6; ++round) {
                VecL resid = rs - Msl * y.cast<long double>();
                long double rnorm = resid.cwiseAbs().maxCoeff();
                if (rnorm < best_res) {
                    best_res = rnorm;
                    best = y;
                } else {
                    break;  // refinement stalled or diverged
                }
                y += mldlt.solve(resid.cast<double>());
            }
            return Vec(scale.asDiagonal() * best);
        };

        auto compute_direction = [&](double sigma_mu) {
            dx = schur_solve(sigma_mu * tr_sinv - c);
            for (std::size_t b = 0; b < p.blocks.size(); ++b) {
                const auto& blk = p.blocks[b];
                dS[b] = Mat::Zero(blk.side, blk.side);
                for (const auto& t : blk.terms)
                    if (dx[t.var] != 0.0) t.a.add_to(dS[b], dx[t.var]);
                // X and W dS W nearly cancel near convergence; sum them in
                // extended precision before rounding once
                MatL acc = static_cast<long double>(sigma_mu) * Sinv[b].cast<long double>() -
                           X[b].cast<long double>() -
                           W[b].cast<long double>() * dS[b].cast<long double>() *
                               W[b].cast<long double>();
                dX[b] = acc.cast<double>();
                dX[b] = 0.5 * (dX[b] + dX[b].transpose());
            }
        };

        // predictor probes how far the pure Newton direction gets
        compute_direction(0.0);
        const double ap_aff = damped_step(S, dS, opts.step_fraction);
        const double ad_aff = damped_step(X, dX, opts.step_fraction);
        double gap_aff = 0.0;
        for (std::size_t b = 0; b < p.blocks.size(); ++b)
            gap_aff += ((S[b] + ap_aff * dS[b]).array() * (X[b] + ad_aff * dX[b]).array()).sum();
        gap_aff = std::max(gap_aff, 0.0);
        const double sigma = std::clamp(std::pow(gap_aff / gap, 3.0), 1e-6, 0.9);

        compute_direction(sigma * mu);
        const double ap = damped_step(S, dS, opts.step_fraction);
        const double ad = damped_step(X, dX, opts.step_fraction);
        if (ap < 1e-10 && ad < 1e-10) {
            res.status = SolveStatus::NumericalFailure;
            res.note = "step length collapsed";
            break;
        }

        x += ap * dx;
        for (std::size_t b = 0; b < p.blocks.size(); ++b) {
            X[b] += ad * dX[b];
            X[b] = 0.5 * (X[b] + X[b].transpose());
        }
        assemble_blocks(p, x, S);
        if (!all_pd(S)) {
            // re-assembly differs from S + ap*dS only by rounding; back off once
            x -= 0.5 * ap * dx;
            assemble_blocks(p, x, S);
            if (!all_pd(S)) {
                res.status = SolveStatus::NumericalFailure;
                res.note = "lost strict feasibility";
                break;
            }
        }
        ++steps;
    }

    res.x = std::move(x);
    res.S = std::move(S);
    res.X = std::move(X);
    return res;
}

// Appends a ridge variable lambda to every block and searches for
// lambda < -margin, yielding a strictly feasible point for the original.
bool phase1(const BlockLmi& p, const SolveOptions& opts, Vec& x_out, std::string& note) {
    const int nvars = p.var_count();
    BlockLmi aug;
    aug.objective.assign(static_cast<std::size_t>(nvars) + 1, 0.0);
    aug.objective.back() = 1.0;
    aug.blocks = p.blocks;
    for (auto& blk : aug.blocks) {
        SymMat eye(blk.side);
        for (int d = 0; d < blk.side; ++d) eye.add(d, d, 1.0);
        blk.terms.push_back(BlockLmi::Term{nvars, std::move(eye)});
    }
    BlockLmi::Block lower;  // lambda >= -1 keeps phase-1 bounded
    lower.side = 1;
    lower.constant = SymMat(1);
    lower.constant.add(0, 0, 1.0);
    SymMat a(1);
    a.add(0, 0, 1.0);
    lower.terms.push_back(BlockLmi::Term{nvars, std::move(a)});
    aug.blocks.push_back(std::move(lower));

    Vec x0 = Vec::Zero(nvars + 1);
    std::vector<Mat> S0;
    assemble_blocks(p, x0.head(nvars), S0);
    double lam0 = 1.0;
    for (const auto& Sb : S0) {
        Eigen::SelfAdjointEigenSolver<Mat> es(Sb, Eigen::EigenvaluesOnly);
        lam0 = std::max(lam0, 1.0 - es.eigenvalues().minCoeff());
    }
    x0[nvars] = lam0;

    SolveOptions p1opts = opts;
    p1opts.log = nullptr;
    const double margin = 1e-3;
    LoopResult r = ipm_loop(aug, p1opts, x0, nvars, -margin);
    if (r.status == SolveStatus::Converged && r.x[nvars] < -margin / 2) {
        x_out = r.x.head(nvars);
        return true;
    }
    note = "phase-1 found no strictly feasible point (best ridge " + std::to_string(r.x[nvars]) +
           ")";
    return false;
}

}  // namespace

SolveReport solve(const BlockLmi& blmi, const SolveOptions& opts, const Assignment* initial) {
    blmi.validate();
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport rep;

    Vec x0;
    bool have_start = false;
    if (initial) {
        if (static_cast<int>(initial->size()) != blmi.var_count())
            throw std::invalid_argument("initial point size mismatch");
        x0 = Eigen::Map<const Vec>(initial->data(), static_cast<Eigen::Index>(initial->size()));
        std::vector<Mat> S;
        assemble_blocks(blmi, x0, S);
        have_start = all_pd(S);
    }
    if (!have_start) {
        std::string note;
        x0 = Vec::Zero(blmi.var_count());
        std::vector<Mat> S;
        assemble_blocks(blmi, x0, S);
        have_start = all_pd(S);
        if (!have_start) have_start = phase1(blmi, opts, x0, note);
        if (!have_start) {
            rep.status = SolveStatus::NumericalFailure;
            rep.note = note;
            rep.x.assign(static_cast<std::size_t>(blmi.var_count()), 0.0);
            rep.wall_time =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return rep;
        }
    }

    LoopResult r = ipm_loop(blmi, opts, x0);
    rep.status = r.status;
    rep.iterations = r.iterations;
    rep.gap_history = std::move(r.gap_history);
    rep.duality_gap = r.gap_rel;
    rep.note = std::move(r.note);
    rep.x.assign(r.x.data(), r.x.data() + r.x.size());
    rep.objective = 0.0;
    for (std::size_t v = 0; v < rep.x.size(); ++v) rep.objective += blmi.objective[v] * rep.x[v];
    rep.min_eig = std::numeric_limits<double>::infinity();
    for (const auto& Sb : r.S) {
        Eigen::SelfAdjointEigenSolver<Mat> es(Sb, Eigen::EigenvaluesOnly);
        rep.min_eig = std::min(rep.min_eig, es.eigenvalues().minCoeff());
    }
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace tricolor
