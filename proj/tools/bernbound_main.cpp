// bernbound: tail bounds for Bernoulli log-likelihood statistics.
//
// Subcommands compose the library into reproducible reports:
//   bounds    comparison table (new / hoeffding / classical_bernstein) as CSV
//   verify    exact enumeration vs. every applicable bound, pass/fail
//   mgf-scan  G(p, lambda) vs. the parameter-free envelope as CSV
//   moments   moment-condition report / single-order moment profile
//   simulate  seeded Monte Carlo tail or MGF estimate as JSON
//   chernoff  numeric Chernoff optimizer vs. the closed form as JSON
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "bernbound/bounds.hpp"
#include "bernbound/ensembles.hpp"
#include "bernbound/grids.hpp"
#include "bernbound/io.hpp"
#include "bernbound/mgf.hpp"
#include "bernbound/montecarlo.hpp"
#include "bernbound/oracle.hpp"
#include "bernbound/philox.hpp"

namespace {

using namespace bernbound;

constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

// Slack on the exact/bound ratio check: the inequalities hold with real
// arithmetic; this absorbs double rounding in the enumeration sums.
constexpr double kVerifyRatioSlack = 1e-12;

std::vector<double> parse_double_list(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(item, &pos);
            if (pos != item.size()) {
                throw std::invalid_argument("trailing characters");
            }
            out.push_back(v);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(flag) + ": cannot parse '" + item + "' as a number");
        }
    }
    if (out.empty()) {
        throw std::invalid_argument(std::string(flag) + ": empty list");
    }
    return out;
}

// "lo:hi:count" with lo/hi as base-10 exponents, e.g. -12:-1:100.
std::vector<double> parse_log_grid(const std::string& text) {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
    char sep1 = 0;
    char sep2 = 0;
    std::istringstream ss(text);
    if (!(ss >> lo >> sep1 >> hi >> sep2 >> count) || sep1 != ':' || sep2 != ':' || !ss.eof() ||
        count < 1) {
        throw std::invalid_argument("--p-grid-log expects lo:hi:count with base-10 exponents");
    }
    return log10_spaced(lo, hi, count);
}

// ---------------------------------------------------------------------------
// Shared ensemble input flags
// ---------------------------------------------------------------------------

struct EnsembleFlags {
    std::string probs;
    double probs_const = std::numeric_limits<double>::quiet_NaN();
    double probs_log_const = std::numeric_limits<double>::quiet_NaN();
    std::int64_t n = 0;
    std::string input_path;
    std::string grouped_json;
    std::string multinoulli_json;
};

void attach_ensemble_flags(CLI::App* sub, EnsembleFlags& flags, bool structured) {
    sub->add_option("--probs", flags.probs, "Comma-separated success probabilities, e.g. 0.2,0.8");
    sub->add_option("--probs-const", flags.probs_const, "Constant probability, repeated --n times");
    sub->add_option("--probs-log-const", flags.probs_log_const,
                    "Constant probability given as log p (p = e^L), repeated --n times");
    sub->add_option("--n", flags.n, "Ensemble size for the constant-probability forms");
    sub->add_option("--input", flags.input_path,
                    "Ensemble JSON file: {\"bernoulli\": [...]} | {\"multinoulli\": [[...]]} | "
                    "{\"grouped\": [[...]]}");
    if (structured) {
        sub->add_option("--grouped", flags.grouped_json, "Inline grouped ensemble JSON, e.g. [[0.2,0.8]]");
        sub->add_option("--multinoulli", flags.multinoulli_json,
                        "Inline multinoulli ensemble JSON, e.g. [[0.2,0.3,0.5]]");
    }
}

EnsembleVariant build_ensemble(const EnsembleFlags& flags) {
    int sources = 0;
    sources += !flags.probs.empty();
    sources += !std::isnan(flags.probs_const);
    sources += !std::isnan(flags.probs_log_const);
    sources += !flags.input_path.empty();
    sources += !flags.grouped_json.empty();
    sources += !flags.multinoulli_json.empty();
    if (sources != 1) {
        throw std::invalid_argument(
            "specify exactly one ensemble source (--probs, --probs-const, --probs-log-const, "
            "--input, --grouped, --multinoulli)");
    }
    if (!flags.probs.empty()) {
        return EnsembleVariant{BernoulliEnsemble(parse_double_list(flags.probs, "--probs"))};
    }
    if (!std::isnan(flags.probs_const) || !std::isnan(flags.probs_log_const)) {
        if (flags.n < 1) {
            throw std::invalid_argument("--n must be >= 1 with --probs-const / --probs-log-const");
        }
        const double p =
            std::isnan(flags.probs_const) ? std::exp(flags.probs_log_const) : flags.probs_const;
        return EnsembleVariant{
            BernoulliEnsemble(std::vector<double>(static_cast<std::size_t>(flags.n), p))};
    }
    if (!flags.grouped_json.empty()) {
        return load_ensemble_json("{\"grouped\":" + flags.grouped_json + "}");
    }
    if (!flags.multinoulli_json.empty()) {
        return load_ensemble_json("{\"multinoulli\":" + flags.multinoulli_json + "}");
    }
    return load_ensemble_file(flags.input_path);
}

std::string_view ensemble_kind(const EnsembleVariant& ensemble) {
    if (std::holds_alternative<BernoulliEnsemble>(ensemble)) return "bernoulli";
    if (std::holds_alternative<GroupedEnsemble>(ensemble)) return "grouped";
    return "multinoulli";
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

int cmd_bounds(const EnsembleFlags& flags, const std::string& t_text, bool as_json) {
    const EnsembleVariant variant = build_ensemble(flags);
    const auto* bern = std::get_if<BernoulliEnsemble>(&variant);
    if (bern == nullptr) {
        throw std::invalid_argument("bounds requires a Bernoulli ensemble");
    }
    const std::vector<double> t_list = parse_double_list(t_text, "--t");
    const std::vector<TailBoundReport> reports = compare(*bern, t_list);
    if (as_json) {
        std::string out = "[";
        for (std::size_t i = 0; i < reports.size(); ++i) {
            if (i != 0) out += ',';
            out += report_to_json(reports[i]);
        }
        out += "]";
        std::cout << out << "\n";
    } else {
        std::cout << reports_to_csv(reports);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct CaseOutcome {
    bool pass = true;
    double max_ratio = 0.0;
    std::string worst_method = "none";
    double worst_t = 0.0;
};

void consider_ratio(CaseOutcome& outcome, const TailBoundReport& report, double exact) {
    double ratio = 0.0;
    if (exact > 0.0) {
        ratio = (report.bound > 0.0) ? exact / report.bound
                                     : std::numeric_limits<double>::infinity();
    }
    if (ratio > outcome.max_ratio) {
        outcome.max_ratio = ratio;
        outcome.worst_method = std::string(method_name(report.method));
        outcome.worst_t = report.t;
    }
    if (!(ratio <= 1.0 + kVerifyRatioSlack)) {
        outcome.pass = false;
    }
}

CaseOutcome verify_case(const EnsembleVariant& variant) {
    CaseOutcome outcome;
    if (const auto* bern = std::get_if<BernoulliEnsemble>(&variant)) {
        const ExactDistribution dist = exact_distribution(*bern);
        for (double t : verify_t_grid(dist.support_radius())) {
            const double exact = dist.tail_probability(t);
            consider_ratio(outcome, new_tail_bound(bern->size(), t), exact);
            consider_ratio(outcome, hoeffding_bound(*bern, t), exact);
            consider_ratio(outcome, classical_bernstein_bound(*bern, t), exact);
        }
        return outcome;
    }
    if (const auto* grouped = std::get_if<GroupedEnsemble>(&variant)) {
        const ExactDistribution dist = exact_grouped_distribution(*grouped);
        for (double t : verify_t_grid(dist.support_radius())) {
            consider_ratio(outcome, grouped_tail_bound(grouped->total_size(), t),
                           dist.tail_probability(t));
        }
        return outcome;
    }
    const auto& multi = std::get<MultinoulliEnsemble>(variant);
    const ExactDistribution dist = exact_multinoulli_distribution(multi);
    const std::int64_t n = multi.row_count();
    for (double t : verify_t_grid(dist.support_radius())) {
        // The bound is stated per mean deviation, so epsilon = t / n makes it
        // cover P(|S| >= t) through the per-category union bound.
        const double epsilon = t / static_cast<double>(n);
        consider_ratio(outcome, multinoulli_bound(n, multi.category_count(), epsilon),
                       dist.tail_probability(t));
    }
    return outcome;
}

// Random test ensembles for `verify --random`, generated through the same
// counter-based scheme as the simulator so runs are portable across
// platforms and worker layouts. Entries are log-uniform in
// [e^-30, 1 - e^-5] with a 10% chance of an exact 0/1 entry.
constexpr double kRandomLogLo = -30.0;
const double kRandomLogHi = std::log(1.0 - std::exp(-5.0));

double random_entry(std::uint64_t seed, std::uint64_t case_index, std::uint64_t& draw) {
    const double choose = uniform01(seed, case_index, draw++);
    const double u = uniform01(seed, case_index, draw++);
    if (choose < 0.05) return 0.0;
    if (choose < 0.10) return 1.0;
    return std::exp(kRandomLogLo + u * (kRandomLogHi - kRandomLogLo));
}

std::int64_t random_size(std::uint64_t seed, std::uint64_t case_index, std::uint64_t& draw,
                         std::int64_t max_n) {
    const double u = uniform01(seed, case_index, draw++);
    return std::min<std::int64_t>(max_n, 1 + static_cast<std::int64_t>(u * static_cast<double>(max_n)));
}

EnsembleVariant random_case(std::uint64_t seed, std::uint64_t case_index, std::int64_t max_n,
                            const std::string& type) {
    std::uint64_t draw = 0;
    std::string kind = type;
    if (kind == "mixed") {
        const double u = uniform01(seed, case_index, draw++);
        kind = (u < 1.0 / 3.0) ? "bernoulli" : (u < 2.0 / 3.0) ? "grouped" : "multinoulli";
    }
    if (kind == "bernoulli") {
        const std::int64_t n = random_size(seed, case_index, draw, std::min<std::int64_t>(max_n, 24));
        std::vector<double> probs;
        probs.reserve(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i) {
            probs.push_back(random_entry(seed, case_index, draw));
        }
        return EnsembleVariant{BernoulliEnsemble(std::move(probs))};
    }
    if (kind == "grouped") {
        std::int64_t remaining = random_size(seed, case_index, draw, std::min<std::int64_t>(max_n, 24));
        std::vector<std::vector<double>> groups;
        while (remaining > 0) {
            const std::int64_t size = random_size(seed, case_index, draw, std::min<std::int64_t>(remaining, 4));
            std::vector<double> group;
            group.reserve(static_cast<std::size_t>(size));
            for (std::int64_t j = 0; j < size; ++j) {
                group.push_back(random_entry(seed, case_index, draw));
            }
            groups.push_back(std::move(group));
            remaining -= size;
        }
        return EnsembleVariant{GroupedEnsemble(std::move(groups))};
    }
    if (kind == "multinoulli") {
        const int categories = (uniform01(seed, case_index, draw++) < 0.5) ? 2 : 3;
        const std::int64_t cap = (categories == 2) ? 24 : 15;  // keeps K^n enumerable
        const std::int64_t rows = random_size(seed, case_index, draw, std::min<std::int64_t>(max_n, cap));
        std::vector<std::vector<double>> matrix;
        matrix.reserve(static_cast<std::size_t>(rows));
        for (std::int64_t i = 0; i < rows; ++i) {
            std::vector<double> row(static_cast<std::size_t>(categories));
            double sum = 0.0;
            for (auto& cell : row) {
                cell = 1e-6 + uniform01(seed, case_index, draw++);
                sum += cell;
            }
            double partial = 0.0;
            for (std::size_t k = 0; k + 1 < row.size(); ++k) {
                row[k] /= sum;
                partial += row[k];
            }
            row.back() = 1.0 - partial;  // exact unit row sum
            matrix.push_back(std::move(row));
        }
        return EnsembleVariant{MultinoulliEnsemble(std::move(matrix))};
    }
    throw std::invalid_argument("--type must be bernoulli, grouped, multinoulli, or mixed");
}

int cmd_verify(const EnsembleFlags& flags, std::int64_t random_count, std::int64_t max_n,
               std::uint64_t seed, const std::string& type) {
    std::vector<std::pair<std::string, EnsembleVariant>> cases;
    if (random_count > 0) {
        if (max_n < 1) {
            throw std::invalid_argument("--max-n must be >= 1 with --random");
        }
        for (std::int64_t c = 0; c < random_count; ++c) {
            EnsembleVariant variant = random_case(seed, static_cast<std::uint64_t>(c), max_n, type);
            cases.emplace_back(std::string(ensemble_kind(variant)), std::move(variant));
        }
    } else {
        EnsembleVariant variant = build_ensemble(flags);
        cases.emplace_back(std::string(ensemble_kind(variant)), std::move(variant));
    }

    std::int64_t passed = 0;
    double worst = 0.0;
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const auto& [kind, variant] = cases[c];
        const CaseOutcome outcome = verify_case(variant);
        worst = std::max(worst, outcome.max_ratio);
        passed += outcome.pass ? 1 : 0;
        std::cout << "case " << (c + 1) << " " << kind << " n=" << ensemble_size(variant)
                  << ": max ratio " << format_double(outcome.max_ratio) << " ("
                  << outcome.worst_method << " at t=" << format_double(outcome.worst_t) << ") "
                  << (outcome.pass ? "PASS" : "FAIL") << "\n";
    }
    std::cout << "verify: " << passed << "/" << cases.size() << " passed, worst ratio "
              << format_double(worst) << "\n";
    return passed == static_cast<std::int64_t>(cases.size()) ? 0 : kExitVerifyFail;
}

// ---------------------------------------------------------------------------
// mgf-scan
// ---------------------------------------------------------------------------

int cmd_mgf_scan(double lambda, const std::string& grid_log, const std::string& grid_list,
                 bool boundary) {
    std::vector<double> grid;
    if (!grid_log.empty() && !grid_list.empty()) {
        throw std::invalid_argument("give at most one of --p-grid-log and --p-grid");
    }
    if (!grid_log.empty()) {
        grid = parse_log_grid(grid_log);
    } else if (!grid_list.empty()) {
        grid = parse_double_list(grid_list, "--p-grid");
    } else {
        grid = log_symmetric_grid(1e-12, 400);
    }

    if (boundary) {
        std::sort(grid.begin(), grid.end(), std::greater<double>());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        const BoundaryScan scan = mgf_boundary_scan(lambda, grid);
        const MgfEvaluation& last = scan.values.back();
        std::cout << "{\"lambda\":" << format_double(lambda) << ",\"points\":" << scan.values.size()
                  << ",\"final_p\":" << format_double(grid.back())
                  << ",\"final_g_value\":" << (std::isfinite(last.value) ? format_double(last.value) : "null")
                  << ",\"final_log_g_value\":" << format_double(last.log_value)
                  << ",\"verdict\":\"" << to_string(scan.verdict) << "\"}\n";
        return 0;
    }

    std::string out = "p,lambda,g_value,log_g_value,envelope,log_envelope\n";
    for (double p : grid) {
        const MgfEvaluation eval = mgf(p, lambda);
        out += format_double(p);
        out += ',';
        out += format_double(lambda);
        out += ',';
        out += format_double(eval.value);
        out += ',';
        out += format_double(eval.log_value);
        out += ',';
        if (eval.envelope) out += format_double(*eval.envelope);
        out += ',';
        if (eval.log_envelope) out += format_double(*eval.log_envelope);
        out += '\n';
    }
    std::cout << out;
    return 0;
}

// ---------------------------------------------------------------------------
// moments
// ---------------------------------------------------------------------------

int cmd_moments(int m_max, int grid_size, int profile_m) {
    if (grid_size < 2 || grid_size % 2 != 0) {
        throw std::invalid_argument("--grid must be an even count >= 2");
    }
    const std::vector<double> grid = log_symmetric_grid(1e-12, grid_size);
    if (profile_m > 0) {
        const MomentScan scan = moment_scan(profile_m, grid);
        std::string out = "p,m,abs_moment,log_abs_moment,abs_a1,log_abs_a1,a1_majorant,log_a1_majorant\n";
        for (const MomentScanEntry& e : scan.entries) {
            out += format_double(e.p);
            out += ',';
            out += std::to_string(profile_m);
            out += ',';
            out += format_double(e.abs_moment);
            out += ',';
            out += format_double(e.log_abs_moment);
            out += ',';
            out += format_double(e.abs_a1);
            out += ',';
            out += format_double(e.log_abs_a1);
            out += ',';
            out += format_double(e.a1_majorant);
            out += ',';
            out += format_double(e.log_a1_majorant);
            out += '\n';
        }
        std::cout << out;
        std::cerr << "argmax |E[Y^m]| at p=" << format_double(scan.entries[scan.argmax_index].p)
                  << "; argmax p|log p|^m at p="
                  << format_double(scan.entries[scan.argmax_majorant_index].p)
                  << " (e^-m = " << format_double(std::exp(-profile_m)) << ")\n";
        return 0;
    }
    const BernsteinConditionReport report = check_bernstein_condition(m_max, grid);
    std::cout << "{\"sigma2\":" << format_double(report.sigma2) << ",\"b\":" << format_double(report.b)
              << ",\"m_max\":" << m_max << ",\"grid_size\":" << grid_size
              << ",\"max_violation\":" << format_double(report.max_violation)
              << ",\"argmax_m\":" << report.argmax_m
              << ",\"argmax_p\":" << format_double(report.argmax_p)
              << ",\"holds\":" << (report.max_violation <= 0.0 ? "true" : "false") << "}\n";
    return report.max_violation <= 0.0 ? 0 : kExitVerifyFail;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

int cmd_simulate(const EnsembleFlags& flags, std::optional<double> t, std::uint64_t replicates,
                 std::uint64_t seed, double confidence, unsigned workers, bool mgf_mode,
                 double lambda) {
    const EnsembleVariant variant = build_ensemble(flags);
    if (mgf_mode) {
        const auto* bern = std::get_if<BernoulliEnsemble>(&variant);
        if (bern == nullptr) {
            throw std::invalid_argument("--mgf requires a Bernoulli ensemble");
        }
        const MgfEstimate est = simulate_mgf(*bern, lambda, replicates, seed, workers);
        std::cout << "{\"command\":\"simulate-mgf\",\"n\":" << bern->size()
                  << ",\"lambda\":" << format_double(lambda) << ",\"replicates\":" << est.replicates
                  << ",\"seed\":" << est.seed << ",\"workers\":" << workers
                  << ",\"mean\":" << format_double(est.mean)
                  << ",\"std_error\":" << format_double(est.std_error) << "}\n";
        return 0;
    }
    if (!t) {
        throw std::invalid_argument("--t is required (or pass --mgf with --lambda)");
    }
    const MonteCarloEstimate est = simulate_tail(variant, *t, replicates, seed, confidence, workers);
    std::cout << "{\"command\":\"simulate\",\"statistic\":\"" << ensemble_kind(variant)
              << "\",\"n\":" << ensemble_size(variant) << ",\"t\":" << format_double(*t)
              << ",\"replicates\":" << est.replicates << ",\"seed\":" << est.seed
              << ",\"confidence\":" << format_double(est.confidence) << ",\"workers\":" << workers
              << ",\"hits\":" << est.hits << ",\"point\":" << format_double(est.point)
              << ",\"ci_low\":" << format_double(est.ci_low)
              << ",\"ci_high\":" << format_double(est.ci_high) << "}\n";
    return 0;
}

// ---------------------------------------------------------------------------
// chernoff
// ---------------------------------------------------------------------------

int cmd_chernoff(std::int64_t n, double t, const std::string& side_text) {
    TailSide side;
    if (side_text == "left") {
        side = TailSide::kLeft;
    } else if (side_text == "right") {
        side = TailSide::kRight;
    } else {
        throw std::invalid_argument("--side must be left or right");
    }
    const ChernoffSolution sol = chernoff_optimize(n, t, side);
    std::cout << "{\"n\":" << n << ",\"t\":" << format_double(t) << ",\"side\":\"" << side_text
              << "\",\"lambda_star\":" << format_double(sol.lambda_star)
              << ",\"closed_form_lambda\":" << format_double(sol.closed_form_lambda)
              << ",\"objective_value\":" << format_double(sol.objective_value)
              << ",\"one_sided_bound\":" << format_double(std::exp(sol.objective_value)) << "}\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tail bounds, exact oracles, and seeded simulation for Bernoulli "
                 "log-likelihood statistics"};
    app.require_subcommand(1);

    // bounds ---------------------------------------------------------------
    EnsembleFlags bounds_flags;
    std::string bounds_t;
    bool bounds_json = false;
    CLI::App* bounds_cmd = app.add_subcommand("bounds", "Comparison table of tail bounds (CSV)");
    attach_ensemble_flags(bounds_cmd, bounds_flags, /*structured=*/false);
    bounds_cmd->add_option("--t", bounds_t, "Comma-separated thresholds")->required();
    bounds_cmd->add_flag("--json", bounds_json, "Emit a JSON array instead of CSV");

    // verify ---------------------------------------------------------------
    EnsembleFlags verify_flags;
    std::int64_t verify_random = 0;
    std::int64_t verify_max_n = 10;
    std::uint64_t verify_seed = 0;
    std::string verify_type = "bernoulli";
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Exact enumeration vs. every applicable bound");
    attach_ensemble_flags(verify_cmd, verify_flags, /*structured=*/true);
    verify_cmd->add_option("--random", verify_random, "Generate this many random test ensembles");
    verify_cmd->add_option("--max-n", verify_max_n, "Largest ensemble size for --random");
    verify_cmd->add_option("--seed", verify_seed, "Seed for --random generation");
    verify_cmd->add_option("--type", verify_type,
                           "Random ensemble type: bernoulli | grouped | multinoulli | mixed");

    // mgf-scan ---------------------------------------------------------------
    double scan_lambda = 0.0;
    std::string scan_grid_log;
    std::string scan_grid_list;
    bool scan_boundary = false;
    CLI::App* scan_cmd = app.add_subcommand("mgf-scan", "G(p, lambda) vs. the envelope (CSV)");
    scan_cmd->add_option("--lambda", scan_lambda, "MGF argument")->required();
    scan_cmd->add_option("--p-grid-log", scan_grid_log, "Probability grid lo:hi:count (base-10 exponents)");
    scan_cmd->add_option("--p-grid", scan_grid_list, "Explicit comma-separated probability grid");
    scan_cmd->add_flag("--boundary", scan_boundary,
                       "Run the p -> 0 divergence diagnostic and emit a JSON verdict");

    // moments ----------------------------------------------------------------
    int moments_m_max = 170;
    int moments_grid = 400;
    int moments_profile = 0;
    CLI::App* moments_cmd =
        app.add_subcommand("moments", "Moment-condition report (JSON) or one-order profile (CSV)");
    moments_cmd->add_option("--m-max", moments_m_max, "Largest moment order to check");
    moments_cmd->add_option("--grid", moments_grid, "Probability grid size (even)");
    moments_cmd->add_option("--profile", moments_profile, "Emit the |E[Y^m]| profile for this order");

    // simulate ---------------------------------------------------------------
    EnsembleFlags sim_flags;
    std::optional<double> sim_t;
    std::uint64_t sim_replicates = 100000;
    std::uint64_t sim_seed = 0;
    double sim_confidence = 0.99;
    unsigned sim_workers = 1;
    bool sim_mgf = false;
    double sim_lambda = 0.0;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "Seeded Monte Carlo estimate (JSON)");
    attach_ensemble_flags(sim_cmd, sim_flags, /*structured=*/true);
    sim_cmd->add_option("--t", sim_t, "Tail threshold |S| >= t");
    sim_cmd->add_option("--replicates", sim_replicates, "Replicate count");
    sim_cmd->add_option("--seed", sim_seed, "Reproducibility seed");
    sim_cmd->add_option("--confidence", sim_confidence, "Confidence level for the exact interval");
    sim_cmd->add_option("--workers", sim_workers, "Worker threads (results are split-invariant)");
    sim_cmd->add_flag("--mgf", sim_mgf, "Estimate E[exp(lambda S)] instead of a tail");
    sim_cmd->add_option("--lambda", sim_lambda, "MGF argument for --mgf");

    // chernoff ---------------------------------------------------------------
    std::int64_t chernoff_n = 0;
    double chernoff_t = 0.0;
    std::string chernoff_side = "left";
    CLI::App* chernoff_cmd =
        app.add_subcommand("chernoff", "Numeric Chernoff optimizer vs. closed form (JSON)");
    chernoff_cmd->add_option("--n", chernoff_n, "Ensemble size")->required();
    chernoff_cmd->add_option("--t", chernoff_t, "Tail threshold")->required();
    chernoff_cmd->add_option("--side", chernoff_side, "left | right");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (bounds_cmd->parsed()) {
            return cmd_bounds(bounds_flags, bounds_t, bounds_json);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(verify_flags, verify_random, verify_max_n, verify_seed, verify_type);
        }
        if (scan_cmd->parsed()) {
            return cmd_mgf_scan(scan_lambda, scan_grid_log, scan_grid_list, scan_boundary);
        }
        if (moments_cmd->parsed()) {
            return cmd_moments(moments_m_max, moments_grid, moments_profile);
        }
        if (sim_cmd->parsed()) {
            return cmd_simulate(sim_flags, sim_t, sim_replicates, sim_seed, sim_confidence,
                                sim_workers, sim_mgf, sim_lambda);
        }
        if (chernoff_cmd->parsed()) {
            return cmd_chernoff(chernoff_n, chernoff_t, chernoff_side);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::cerr << "error: no subcommand\n";
    return kExitUsage;
}
