#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tricolor/graph.hpp"
#include "tricolor/solver.hpp"

namespace tricolor {

struct DecideOptions {
    double bound = -100.0;
    double feas_tol = 1e-8;
    double gap_tol = 1e-7;
    int max_iter = 200;
    double step_fraction = 0.98;
    double colorable_tol = 1e-5;     // |objective| below -> ThreeColorable
    double bound_threshold = -50.0;  // objective below -> NotThreeColorable
    int oracle_cutoff = 12;          // run the exact oracle when n <= cutoff
    std::ostream* log = nullptr;
};

enum class Decision { ThreeColorable, NotThreeColorable, Inconclusive };
enum class Agreement { Agree, Disagree, Unknown };

std::string to_string(Decision d);
std::string to_string(Agreement a);
Decision decision_from_string(const std::string& s);
Agreement agreement_from_string(const std::string& s);
SolveStatus solve_status_from_string(const std::string& s);

/// Outcome of the bounded decision procedure on one graph, with the
/// exact oracle's verdict alongside. A disagreement is a reportable
/// finding, never an error.
struct Verdict {
    Decision decision = Decision::Inconclusive;
    double objective = 0.0;
    std::optional<OracleResult> oracle;
    Agreement agree = Agreement::Unknown;
    SolveStatus solver_status = SolveStatus::NumericalFailure;
    double duality_gap = 0.0;
    double min_eig = 0.0;
    int iterations = 0;
    double wall_time = 0.0;  // seconds, build + solve + oracle
};

Verdict decide(const Graph& g, const DecideOptions& opts = {});

struct SweepRow {
    std::string graph_id;
    int n = 0;
    int m = 0;
    std::uint64_t edge_bitmask = 0;
    bool oracle_colorable = false;
    double objective = 0.0;
    Decision decision = Decision::Inconclusive;
    Agreement agree = Agreement::Unknown;
    SolveStatus solver_status = SolveStatus::NumericalFailure;
    int iterations = 0;
    double wall_time = 0.0;

    bool same_outcome(const SweepRow& other) const;  // field equality ignoring wall_time
};

struct SweepSummary {
    long long rows = 0;
    long long oracle_colorable = 0;
    long long oracle_not_colorable = 0;
    long long agree = 0;
    long long disagree = 0;
    long long inconclusive = 0;
    long long numerical_failures = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    SweepSummary summary;
};

/// Decides every labeled connected max-degree-4 graph on 2..n_max
/// vertices, in enumeration order. Independent rows may be computed by
/// a worker pool; the output order never depends on scheduling.
SweepResult sweep(int n_max, const DecideOptions& opts = {}, int jobs = 1, bool dedup = false);

struct IdentityReport {
    int trials = 0;
    double max_identity_residual = 0.0;   // |six-permutation sum - objective|
    double max_dual_template_dev = 0.0;   // constructed certificates vs template
    double max_dual_block_sum_dev = 0.0;
    double min_dual_eig = 0.0;
    double max_factor_residual = 0.0;     // ||factor^T factor - L||_F
    double max_kernel_residual = 0.0;
    bool dual_all_valid = true;
};

/// Randomized identity families: six-permutation objective identity,
/// coloring-built dual certificates, indicator-factor matrices and
/// their kernel property. Deterministic for a fixed seed.
IdentityReport run_identities(int trials, std::uint64_t seed);

struct DualReport {
    double tau_star = 0.0;
    SolveStatus status = SolveStatus::NumericalFailure;
    int iterations = 0;
    bool oracle_ran = false;
    bool oracle_colorable = false;
    bool certificate_checked = false;  // oracle-colorable path only
    bool certificate_valid = false;
    double certificate_min_eig = 0.0;
    double wall_time = 0.0;
};

/// Solves the dual feasibility program (tau* <= 0 iff the dual template
/// admits a feasible completion) and, when the oracle certifies the
/// graph 3-colorable, cross-checks the constructive certificate.
DualReport run_dual(const Graph& g, const DecideOptions& opts = {});

enum class ReportFormat { Json, Csv };

/// JSON: array of row objects, field names as in SweepRow; CSV:
/// RFC-4180 with a header row. Floats carry 12 significant digits.
void report_write(const std::vector<SweepRow>& rows, ReportFormat format, std::ostream& os);
void report_write(const std::vector<SweepRow>& rows, ReportFormat format, const std::string& path);
std::vector<SweepRow> report_read_json(std::istream& in);

}  // namespace tricolor
