// Command-line front end: decide single graphs, sweep enumerated
// families against the exact oracle, exercise the dual and cone
// programs, and emit JSON/CSV reports.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "tricolor/cones.hpp"
#include "tricolor/encoder.hpp"
#include "tricolor/harness.hpp"

using namespace tricolor;

namespace {

struct GlobalOpts {
    double tol_feas = 1e-8;
    double tol_gap = 1e-7;
    double bound = -100.0;
    std::string out;
    std::string format = "json";
    int jobs = 1;
    bool verbose = false;
};

DecideOptions decide_options(const GlobalOpts& g) {
    DecideOptions o;
    o.feas_tol = g.tol_feas;
    o.gap_tol = g.tol_gap;
    o.bound = g.bound;
    o.log = g.verbose ? &std::cerr : nullptr;
    return o;
}

ReportFormat parse_format(const std::string& f) {
    if (f == "json") return ReportFormat::Json;
    if (f == "csv") return ReportFormat::Csv;
    throw InputError("unknown format '" + f + "' (expected json or csv)");
}

Graph load_graph(const std::string& spec) {
    // named families for convenience, otherwise a DIMACS .col path
    if (spec.size() >= 2 && (spec[0] == 'k' || spec[0] == 'c' || spec[0] == 'p') &&
        spec.find_first_not_of("0123456789", 1) == std::string::npos) {
        int k = std::stoi(spec.substr(1));
        if (spec[0] == 'k') return complete_graph(k);
        if (spec[0] == 'c') return cycle_graph(k);
        return path_graph(k);
    }
    if (spec == "petersen") {
        return Graph(10, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1},
                          {6, 8}, {8, 10}, {10, 7}, {7, 9}, {9, 6},
                          {1, 6}, {2, 7}, {3, 8}, {4, 9}, {5, 10}});
    }
    return parse_dimacs_file(spec);
}

void emit_rows(const std::vector<SweepRow>& rows, const GlobalOpts& g) {
    ReportFormat fmt = parse_format(g.format);
    if (g.out.empty())
        report_write(rows, fmt, std::cout);
    else
        report_write(rows, fmt, g.out);
}

SweepRow verdict_row(const std::string& id, const Graph& graph, const Verdict& v) {
    SweepRow row;
    row.graph_id = id;
    row.n = graph.order();
    row.m = graph.size();
    row.edge_bitmask = graph.order() <= 11 ? graph.edge_bitmask() : 0;
    row.oracle_colorable = v.oracle && v.oracle->colorable;
    row.objective = v.objective;
    row.decision = v.decision;
    row.agree = v.agree;
    row.solver_status = v.solver_status;
    row.iterations = v.iterations;
    row.wall_time = v.wall_time;
    return row;
}

void print_verdict(const Graph& g, const Verdict& v) {
    std::cout << "n=" << g.order() << " m=" << g.size() << "\n"
              << "decision:      " << to_string(v.decision) << "\n"
              << "objective:     " << v.objective << "\n"
              << "solver:        " << to_string(v.solver_status) << " (" << v.iterations
              << " iterations, gap " << v.duality_gap << ", min eig " << v.min_eig << ")\n";
    if (v.oracle)
        std::cout << "oracle:        " << (v.oracle->colorable ? "3-colorable" : "not 3-colorable")
                  << " (" << v.oracle->count << " proper colorings)\n";
    else
        std::cout << "oracle:        skipped (n above cutoff)\n";
    std::cout << "agreement:     " << to_string(v.agree) << "\n";
    if (v.agree == Agreement::Disagree)
        std::cout << "** FINDING: the program's verdict disagrees with the exact oracle **\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"3-colorability via a semidefinite encoding, cross-checked against exact search"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    GlobalOpts g;
    app.add_option("--tol-feas", g.tol_feas, "solver feasibility tolerance");
    app.add_option("--tol-gap", g.tol_gap, "solver duality gap tolerance");
    app.add_option("--bound", g.bound, "objective lower bound in the primal program");
    app.add_option("--out", g.out, "write report to this path instead of stdout");
    app.add_option("--format", g.format, "report format: json or csv");
    app.add_option("--jobs", g.jobs, "worker threads for sweep");
    app.add_flag("--verbose", g.verbose, "iteration log on stderr");

    std::string graph_arg;
    auto* cmd_decide = app.add_subcommand("decide", "decide one graph and cross-check the oracle");
    cmd_decide->add_option("graph", graph_arg, "DIMACS .col file or named graph (k4, c5, petersen)")
        ->required();

    auto* cmd_oracle = app.add_subcommand("oracle", "exact 3-coloring count");
    cmd_oracle->add_option("graph", graph_arg)->required();

    auto* cmd_dual = app.add_subcommand("dual", "dual feasibility program");
    cmd_dual->add_option("graph", graph_arg)->required();

    int n_max = 5;
    bool dedup = false;
    auto* cmd_sweep = app.add_subcommand("sweep", "decide every small connected graph");
    cmd_sweep->add_option("--n-max", n_max, "largest vertex count (<= 7)")->required();
    cmd_sweep->add_flag("--dedup", dedup, "keep one representative per isomorphism class");

    int trials = 1000;
    std::uint64_t seed = 7;
    auto* cmd_ident = app.add_subcommand("identities", "randomized identity families");
    cmd_ident->add_option("--trials", trials);
    cmd_ident->add_option("--seed", seed);

    std::string gen_kind;
    int gen_k = 4, gen_n = 8;
    double gen_p = 0.3;
    std::uint64_t gen_seed = 1;
    auto* cmd_gen = app.add_subcommand("gen", "write a generated graph as DIMACS");
    cmd_gen->add_option("--kind", gen_kind, "complete | cycle | path | random")->required();
    cmd_gen->add_option("--k", gen_k, "order for complete/cycle/path");
    cmd_gen->add_option("--n", gen_n, "order for random");
    cmd_gen->add_option("--p", gen_p, "edge probability for random");
    cmd_gen->add_option("--seed", gen_seed, "seed for random");

    auto* cmd_cones = app.add_subcommand("cones", "copositivity experiments");
    std::string probe_graph = "k4";
    double pa = -1.0, pb = -0.5, pc3 = 10.0, pc4 = 10.0, pt = 1.0;
    bool pa_set = false;
    int probe_depth = -1;
    auto* cmd_probe = cmd_cones->add_subcommand(
        "probe", "penalized edge form of a D-graph: copositivity and objective check");
    cmd_probe->add_option("--graph", probe_graph, "D-graph (k4 or a .col file)");
    cmd_probe->add_option("--a", pa, "edge same-color weight (default m)")->each([&](const std::string&) {
        pa_set = true;
    });
    cmd_probe->add_option("--b", pb, "edge cross-color weight");
    cmd_probe->add_option("--c3", pc3, "affine penalty weight");
    cmd_probe->add_option("--c4", pc4, "same-vertex product penalty weight");
    cmd_probe->add_option("--t", pt, "penalty multiplier");
    cmd_probe->add_option("--max-depth", probe_depth, "subdivision depth budget");
    cmd_cones->require_subcommand(1);

    for (CLI::App* sub : {cmd_decide, cmd_oracle, cmd_dual, cmd_sweep, cmd_ident, cmd_gen,
                          cmd_cones, cmd_probe})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_decide) {
            Graph graph = load_graph(graph_arg);
            Verdict v = decide(graph, decide_options(g));
            print_verdict(graph, v);
            if (!g.out.empty())
                report_write({verdict_row(graph_arg, graph, v)}, parse_format(g.format), g.out);
            return v.solver_status == SolveStatus::NumericalFailure ? 3 : 0;
        }
        if (*cmd_oracle) {
            Graph graph = load_graph(graph_arg);
            OracleResult res = oracle_3color(graph);
            std::cout << "colorable: " << (res.colorable ? "yes" : "no") << "\n"
                      << "count:     " << res.count << "\n";
            if (res.witness) {
                std::cout << "witness:  ";
                for (int c : res.witness->assignment) std::cout << ' ' << c;
                std::cout << "\n";
            }
            return 0;
        }
        if (*cmd_dual) {
            Graph graph = load_graph(graph_arg);
            DualReport rep = run_dual(graph, decide_options(g));
            std::cout << "tau*:          " << rep.tau_star << "\n"
                      << "solver:        " << to_string(rep.status) << " (" << rep.iterations
                      << " iterations)\n"
                      << "feasible dual: " << (rep.tau_star <= 1e-7 ? "yes" : "no") << "\n";
            if (rep.oracle_ran)
                std::cout << "oracle:        "
                          << (rep.oracle_colorable ? "3-colorable" : "not 3-colorable") << "\n";
            if (rep.certificate_checked)
                std::cout << "certificate:   " << (rep.certificate_valid ? "valid" : "INVALID")
                          << " (min eig " << rep.certificate_min_eig << ")\n";
            return rep.status == SolveStatus::NumericalFailure ? 3 : 0;
        }
        if (*cmd_sweep) {
            SweepResult res = sweep(n_max, decide_options(g), g.jobs, dedup);
            emit_rows(res.rows, g);
            const SweepSummary& s = res.summary;
            std::cerr << "rows: " << s.rows << "  oracle-colorable: " << s.oracle_colorable
                      << "  oracle-not-colorable: " << s.oracle_not_colorable
                      << "  agree: " << s.agree << "  disagree: " << s.disagree
                      << "  inconclusive: " << s.inconclusive
                      << "  numerical-failures: " << s.numerical_failures << "\n";
            if (s.disagree > 0)
                std::cerr << "** " << s.disagree
                          << " FINDING(S): verdicts disagree with the exact oracle **\n";
            return 0;
        }
        if (*cmd_ident) {
            IdentityReport rep = run_identities(trials, seed);
            std::cout << "trials:                  " << rep.trials << "\n"
                      << "max identity residual:   " << rep.max_identity_residual << "\n"
                      << "max template deviation:  " << rep.max_dual_template_dev << "\n"
                      << "max block-sum deviation: " << rep.max_dual_block_sum_dev << "\n"
                      << "min certificate eig:     " << rep.min_dual_eig << "\n"
                      << "max factor residual:     " << rep.max_factor_residual << "\n"
                      << "max kernel residual:     " << rep.max_kernel_residual << "\n"
                      << "certificates valid:      " << (rep.dual_all_valid ? "yes" : "no") << "\n";
            return 0;
        }
        if (*cmd_gen) {
            Graph graph = [&] {
                if (gen_kind == "complete") return complete_graph(gen_k);
                if (gen_kind == "cycle") return cycle_graph(gen_k);
                if (gen_kind == "path") return path_graph(gen_k);
                if (gen_kind == "random") return random_graph(gen_n, gen_p, gen_seed);
                throw InputError("unknown kind '" + gen_kind + "'");
            }();
            if (g.out.empty()) {
                std::cout << graph.to_dimacs();
            } else {
                std::ofstream os(g.out);
                if (!os) throw InputError("cannot open '" + g.out + "' for writing");
                os << graph.to_dimacs();
            }
            return 0;
        }
        if (*cmd_probe) {
            Graph graph = load_graph(probe_graph);
            double a = pa_set ? pa : static_cast<double>(graph.size());
            DGraphProbeReport rep = probe_dgraph(graph, a, pb, pc3, pc4, pt, probe_depth);
            const char* kind = rep.verdict.kind == CopositivityVerdict::Kind::Copositive
                                   ? "Copositive"
                                   : rep.verdict.kind == CopositivityVerdict::Kind::NotCopositive
                                         ? "NotCopositive"
                                         : "Unknown";
            std::cout << "params:     a=" << rep.a << " b=" << rep.b << " c3=" << rep.c3
                      << " c4=" << rep.c4 << " t=" << rep.t << "\n"
                      << "verdict:    " << kind << " (depth " << rep.verdict.depth << ")\n";
            if (rep.verdict.kind == CopositivityVerdict::Kind::NotCopositive)
                std::cout << "witness value: " << rep.verdict.value << "\n";
            std::cout << "objective:  " << rep.objective << "\n"
                      << "predicted:  " << rep.predicted << "\n"
                      << "residual:   " << rep.residual << "\n";
            return 0;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
