#include "tricolor/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "tricolor/encoder.hpp"

namespace tricolor {

std::string to_string(Decision d) {
    switch (d) {
        case Decision::ThreeColorable: return "ThreeColorable";
        case Decision::NotThreeColorable: return "NotThreeColorable";
        case Decision::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::string to_string(Agreement a) {
    switch (a) {
        case Agreement::Agree: return "Agree";
        case Agreement::Disagree: return "Disagree";
        case Agreement::Unknown: return "Unknown";
    }
    return "?";
}

Decision decision_from_string(const std::string& s) {
    if (s == "ThreeColorable") return Decision::ThreeColorable;
    if (s == "NotThreeColorable") return Decision::NotThreeColorable;
    if (s == "Inconclusive") return Decision::Inconclusive;
    throw InputError("unknown decision '" + s + "'");
}

Agreement agreement_from_string(const std::string& s) {
    if (s == "Agree") return Agreement::Agree;
    if (s == "Disagree") return Agreement::Disagree;
    if (s == "Unknown") return Agreement::Unknown;
    throw InputError("unknown agreement '" + s + "'");
}

SolveStatus solve_status_from_string(const std::string& s) {
    if (s == "Converged") return SolveStatus::Converged;
    if (s == "IterationLimit") return SolveStatus::IterationLimit;
    if (s == "NumericalFailure") return SolveStatus::NumericalFailure;
    throw InputError("unknown solver status '" + s + "'");
}

Verdict decide(const Graph& g, const DecideOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;

    LmiProblem prob = build_primal(g, opts.bound);
    BlockLmi blmi = canonicalize(prob);
    Assignment start = primal_interior_point(prob);
    SolveOptions sopts;
    sopts.feas_tol = opts.feas_tol;
    sopts.gap_tol = opts.gap_tol;
    sopts.max_iter = opts.max_iter;
    sopts.step_fraction = opts.step_fraction;
    sopts.log = opts.log;
    SolveReport rep = solve(blmi, sopts, &start);

    v.objective = rep.objective;
    v.solver_status = rep.status;
    v.duality_gap = rep.duality_gap;
    v.min_eig = rep.min_eig;
    v.iterations = rep.iterations;
    if (rep.status != SolveStatus::Converged) {
        v.decision = Decision::Inconclusive;
    } else if (std::abs(rep.objective) <= opts.colorable_tol) {
        v.decision = Decision::ThreeColorable;
    } else if (rep.objective <= opts.bound_threshold) {
        v.decision = Decision::NotThreeColorable;
    } else {
        v.decision = Decision::Inconclusive;
    }

    if (g.order() <= opts.oracle_cutoff) v.oracle = oracle_3color(g);

    if (!v.oracle || v.decision == Decision::Inconclusive) {
        v.agree = Agreement::Unknown;
    } else {
        bool decided_colorable = v.decision == Decision::ThreeColorable;
        v.agree = decided_colorable == v.oracle->colorable ? Agreement::Agree : Agreement::Disagree;
    }
    v.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return v;
}

bool SweepRow::same_outcome(const SweepRow& other) const {
    return graph_id == other.graph_id && n == other.n && m == other.m &&
           edge_bitmask == other.edge_bitmask && oracle_colorable == other.oracle_colorable &&
           objective == other.objective && decision == other.decision && agree == other.agree &&
           solver_status == other.solver_status && iterations == other.iterations;
}

SweepResult sweep(int n_max, const DecideOptions& opts, int jobs, bool dedup) {
    const std::vector<GraphKey> keys = enumerate_graph_keys(n_max, dedup);
    SweepResult out;
    out.rows.resize(keys.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < keys.size();) {
            const GraphKey& key = keys[i];
            Graph g = graph_from_mask(key.n, key.mask);
            Verdict v = decide(g, opts);
            SweepRow row;
            row.graph_id = "g" + std::to_string(key.n) + "-" + std::to_string(key.mask);
            row.n = key.n;
            row.m = g.size();
            row.edge_bitmask = key.mask;
            row.oracle_colorable = v.oracle && v.oracle->colorable;
            row.objective = v.objective;
            row.decision = v.decision;
            row.agree = v.agree;
            row.solver_status = v.solver_status;
            row.iterations = v.iterations;
            row.wall_time = v.wall_time;
            out.rows[i] = std::move(row);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    SweepSummary& s = out.summary;
    s.rows = static_cast<long long>(out.rows.size());
    for (const auto& row : out.rows) {
        (row.oracle_colorable ? s.oracle_colorable : s.oracle_not_colorable)++;
        if (row.agree == Agreement::Agree) ++s.agree;
        if (row.agree == Agreement::Disagree) ++s.disagree;
        if (row.decision == Decision::Inconclusive) ++s.inconclusive;
        if (row.solver_status == SolveStatus::NumericalFailure) ++s.numerical_failures;
    }
    return out;
}

namespace {

double u01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

}  // namespace

IdentityReport run_identities(int trials, std::uint64_t seed) {
    IdentityReport rep;
    rep.trials = trials;
    rep.min_dual_eig = trials > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    std::mt19937_64 gen(seed);

    for (int trial = 0; trial < trials; ++trial) {
        // random 3-colorable graph on 1..8 vertices
        Graph g = path_graph(1);
        bool found = false;
        for (int attempt = 0; attempt < 64 && !found; ++attempt) {
            int n = 1 + static_cast<int>(gen() % 8);
            double p = 0.15 + 0.6 * u01(gen);
            Graph candidate = random_graph(n, p, gen());
            if (three_colorable(candidate)) {
                g = std::move(candidate);
                found = true;
            }
        }

        auto colorings = all_proper_colorings(g);
        const Coloring& pick = colorings[gen() % colorings.size()];
        PermutedColoring pc = permuted(pick, g.order());

        LmiProblem prob = build_primal(g);
        Assignment x(prob.var_count(), 0.0);
        for (std::size_t v = 0; v < x.size(); ++v)
            if (prob.vars[v].kind != VarKind::NonAdjP) x[v] = 2.0 * u01(gen) - 1.0;
        auto [lhs, rhs] = identity_sum(prob, g, x, pc);
        rep.max_identity_residual = std::max(rep.max_identity_residual, std::abs(lhs - rhs));

        DualBuildResult dual = coloring_to_dual(pc, g);
        DualValidation val = validate_dual(dual.Z, g, 1e-9);
        rep.dual_all_valid = rep.dual_all_valid && val.all();
        rep.max_dual_template_dev = std::max(rep.max_dual_template_dev, val.worst_template_dev);
        rep.max_dual_block_sum_dev = std::max(rep.max_dual_block_sum_dev, val.worst_block_sum_dev);
        rep.min_dual_eig = std::min(rep.min_dual_eig, val.min_eig);
        KernelReport kz = kernel_check(dual.Z, g.order(), 20, gen());
        rep.max_kernel_residual = std::max(rep.max_kernel_residual, kz.max_residual);

        // indicator-factor matrix of an arbitrary (possibly improper) coloring
        Coloring any;
        any.assignment.resize(static_cast<std::size_t>(g.order()));
        for (auto& c : any.assignment) c = static_cast<int>(gen() % 3);
        DColoringMatrix dc = dcoloring_matrix(permuted(any, g.order()));
        rep.max_factor_residual = std::max(
            rep.max_factor_residual, (dc.factor.transpose() * dc.factor - dc.L).norm());
        KernelReport kl = kernel_check(dc.L, g.order(), 20, gen());
        rep.max_kernel_residual = std::max(rep.max_kernel_residual, kl.max_residual);
    }
    return rep;
}

DualReport run_dual(const Graph& g, const DecideOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    DualReport rep;

    LmiProblem prob = build_dual_feasibility(g);
    BlockLmi blmi = canonicalize(prob);
    Assignment start = dual_feasibility_interior_point(prob, g);
    SolveOptions sopts;
    sopts.feas_tol = opts.feas_tol;
    sopts.gap_tol = std::min(opts.gap_tol, 1e-9);
    sopts.max_iter = std::max(opts.max_iter, 300);
    sopts.step_fraction = opts.step_fraction;
    sopts.log = opts.log;
    SolveReport srep = solve(blmi, sopts, &start);
    rep.status = srep.status;
    rep.iterations = srep.iterations;
    rep.tau_star = srep.x[static_cast<std::size_t>(prob.index_of(tau_var()))];

    if (g.order() <= opts.oracle_cutoff) {
        OracleResult oracle = oracle_3color(g);
        rep.oracle_ran = true;
        rep.oracle_colorable = oracle.colorable;
        if (oracle.colorable) {
            PermutedColoring pc = permuted(*oracle.witness, g.order());
            DualBuildResult dual = coloring_to_dual(pc, g);
            DualValidation val = validate_dual(dual.Z, g, 1e-9);
            rep.certificate_checked = true;
            rep.certificate_valid = val.all();
            rep.certificate_min_eig = val.min_eig;
        }
    }
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_json(const std::vector<SweepRow>& rows, std::ostream& os) {
    os << "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SweepRow& r = rows[i];
        os << (i == 0 ? "\n" : ",\n");
        os << "  {\"graph_id\":\"" << r.graph_id << "\","
           << "\"n\":" << r.n << ","
           << "\"m\":" << r.m << ","
           << "\"edge_bitmask\":" << r.edge_bitmask << ","
           << "\"oracle_colorable\":" << (r.oracle_colorable ? "true" : "false") << ","
           << "\"objective\":" << fmt_double(r.objective) << ","
           << "\"decision\":\"" << to_string(r.decision) << "\","
           << "\"agree\":\"" << to_string(r.agree) << "\","
           << "\"solver_status\":\"" << to_string(r.solver_status) << "\","
           << "\"iterations\":" << r.iterations << ","
           << "\"wall_time\":" << fmt_double(r.wall_time) << "}";
    }
    os << (rows.empty() ? "]" : "\n]") << "\n";
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
    os << "graph_id,n,m,edge_bitmask,oracle_colorable,objective,decision,agree,solver_status,"
          "iterations,wall_time\r\n";
    for (const SweepRow& r : rows) {
        os << csv_quote(r.graph_id) << ',' << r.n << ',' << r.m << ',' << r.edge_bitmask << ','
           << (r.oracle_colorable ? "true" : "false") << ',' << fmt_double(r.objective) << ','
           << to_string(r.decision) << ',' << to_string(r.agree) << ',' << to_string(r.solver_status)
           << ',' << r.iterations << ',' << fmt_double(r.wall_time) << "\r\n";
    }
}

}  // namespace

void report_write(const std::vector<SweepRow>& rows, ReportFormat format, std::ostream& os) {
    if (format == ReportFormat::Json)
        write_json(rows, os);
    else
        write_csv(rows, os);
}

void report_write(const std::vector<SweepRow>& rows, ReportFormat format, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw InputError("cannot open '" + path + "' for writing");
    report_write(rows, format, os);
    os.flush();
    if (!os) throw InputError("write to '" + path + "' failed");
}

std::vector<SweepRow> report_read_json(std::istream& in) {
    nlohmann::json doc = nlohmann::json::parse(in);
    std::vector<SweepRow> rows;
    for (const auto& item : doc) {
        SweepRow r;
        r.graph_id = item.at("graph_id").get<std::string>();
        r.n = item.at("n").get<int>();
        r.m = item.at("m").get<int>();
        r.edge_bitmask = item.at("edge_bitmask").get<std::uint64_t>();
        r.oracle_colorable = item.at("oracle_colorable").get<bool>();
        r.objective = item.at("objective").get<double>();
        r.decision = decision_from_string(item.at("decision").get<std::string>());
        r.agree = agreement_from_string(item.at("agree").get<std::string>());
        r.solver_status = solve_status_from_string(item.at("solver_status").get<std::string>());
        r.iterations = item.at("iterations").get<int>();
        r.wall_time = item.at("wall_time").get<double>();
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace tricolor
