// qrw: run two-walker quantum walks, parameter sweeps and maximal-entanglement
// searches from the command line. All data goes out as CSV with a '#' header.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_support.hpp"
#include "qrw/verify.hpp"

namespace {

using namespace qrw;
using namespace qrw::cli;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// Coin and shift flags shared by several subcommands. Values are kept as
/// text so that aliases like `r2inv` and `pi/2` can be resolved later.
struct WalkFlags {
    std::string coin = "hadamard";
    std::string rho = "0.5";
    std::string theta = "pi/2";
    std::string eta = "pi/2";
    std::string phi = "0";
    std::string alpha = "r2inv";
    std::string beta_arg = "0";
    int p = 1;
    int q = -1;

    void add_coin(CLI::App* app) {
        app->add_option("--coin", coin, "hadamard | kempe | z | general")->capture_default_str();
        app->add_option("--rho", rho, "general coin: rho in [0,1]")->capture_default_str();
        app->add_option("--theta", theta, "general coin: theta in [0,pi]")->capture_default_str();
        app->add_option("--eta", eta, "general coin: eta in [0,pi]")->capture_default_str();
    }
    void add_shift(CLI::App* app) {
        app->add_option("--alpha", alpha, "shift alpha in [0,1]; r2inv = 1/sqrt2")->capture_default_str();
        app->add_option("--beta-arg", beta_arg, "arg(beta) in [0,2pi); accepts pi/2, 3pi/2, ...")
            ->capture_default_str();
    }

    CoinFamily family() const {
        try {
            return parse_coin_family(coin);
        } catch (const std::invalid_argument& e) {
            throw UsageError("coin", std::string("invalid coin: ") + e.what());
        }
    }

    CoinOperator make_coin() const {
        switch (family()) {
            case CoinFamily::Hadamard: return coin_hadamard();
            case CoinFamily::Kempe: return coin_kempe();
            case CoinFamily::Z: return coin_z();
            case CoinFamily::General: break;
        }
        return CoinOperator(parse_real("rho", rho), parse_real("theta", theta), parse_real("eta", eta),
                            parse_real("phi", phi));
    }

    ShiftOperator make_shift() const { return ShiftOperator(parse_real("alpha", alpha), parse_real("beta-arg", beta_arg), p, q); }

    ParamPoint point() const {
        ParamPoint pt;
        pt.rho = parse_real("rho", rho);
        pt.theta = parse_real("theta", theta);
        pt.eta = parse_real("eta", eta);
        pt.alpha = parse_real("alpha", alpha);
        pt.beta_arg = parse_real("beta-arg", beta_arg);
        return pt;
    }
};

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw UsageError("output", "cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

  private:
    std::unique_ptr<std::ofstream> file_;
};

int workers_or_default(int requested) { return requested > 0 ? requested : 0; }

// --- evolve ----------------------------------------------------------------

struct EvolveArgs {
    WalkFlags walk;
    int steps = 10;
    std::string outcome = "both";
    std::string output;
};

int run_evolve(const EvolveArgs& a) {
    if (a.steps < 1) throw UsageError("steps", "invalid steps: must be >= 1");
    const auto coin = a.walk.make_coin();
    const auto shift = a.walk.make_shift();
    const auto outcomes = parse_outcomes(a.outcome);
    const auto both = walk_entanglement_series_both(coin, shift, a.steps);

    Output out(a.output);
    auto& os = out.stream();
    write_meta(os, {{"command", "evolve"},
                    {"coin", std::string(to_string(a.walk.family()))},
                    {"rho", fmt_real(coin.rho())},
                    {"theta", fmt_real(coin.theta())},
                    {"eta", fmt_real(coin.eta())},
                    {"phi", fmt_real(coin.phi())},
                    {"alpha", fmt_real(shift.alpha())},
                    {"beta_arg", fmt_real(shift.beta_arg())},
                    {"p", std::to_string(shift.p())},
                    {"q", std::to_string(shift.q())},
                    {"steps", std::to_string(a.steps)},
                    {"outcomes", join_outcomes(outcomes)}});
    write_record_header(os);
    for (int k = 0; k < a.steps; ++k)
        for (Spin s : outcomes) write_record(os, both[s][static_cast<std::size_t>(k)]);
    return 0;
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
    WalkFlags walk;
    std::string figure;
    std::string param = "alpha";
    std::string from = "0";
    std::string to = "1";
    std::string step = "0.005";
    int steps = 200;
    std::string outcome = "both";
    std::string mode = "averaged";
    std::string output;
    int workers = 0;
};

int run_sweep(const SweepArgs& a) {
    FigurePreset fp;
    if (!a.figure.empty()) {
        fp = figure_preset(a.figure);
    } else {
        SweepSpec s;
        s.coin_family = a.walk.family();
        s.fixed = a.walk.point();
        try {
            s.swept = parse_param(a.param);
        } catch (const std::invalid_argument& e) {
            throw UsageError("param", std::string("invalid param: ") + e.what());
        }
        s.axis = Axis{parse_real("from", a.from), parse_real("to", a.to), parse_real("step", a.step), {}};
        s.n_steps = a.steps;
        s.outcomes = parse_outcomes(a.outcome);
        if (a.mode == "averaged")
            s.mode = SweepMode::Averaged;
        else if (a.mode == "per-step")
            s.mode = SweepMode::PerStep;
        else
            throw UsageError("mode", "invalid mode: '" + a.mode + "' (expected averaged or per-step)");
        fp.tag = "custom";
        fp.description = "custom sweep";
        fp.specs = {s};
    }

    std::vector<std::vector<SweepRow>> results;
    for (const auto& s : fp.specs) {
        try {
            results.push_back(sweep_1d(s, workers_or_default(a.workers)));
        } catch (const SpecError& e) {
            throw UsageError("sweep", std::string("invalid sweep: ") + e.what());
        }
    }

    Output out(a.output);
    auto& os = out.stream();
    std::vector<std::pair<std::string, std::string>> meta = {{"command", "sweep"},
                                                             {"figure", fp.tag},
                                                             {"description", fp.description}};
    for (std::size_t i = 0; i < fp.specs.size(); ++i)
        meta.emplace_back("spec[" + std::to_string(i) + "]", describe(fp.specs[i]));
    write_meta(os, meta);
    write_sweep(os, fp.specs, fp.labels, results);
    return 0;
}

// --- search ----------------------------------------------------------------

struct SearchArgs {
    std::string mode = "isolated";
    std::string coin = "general";
    std::optional<double> grid;
    std::optional<int> steps;
    double p_min = 0.15;
    double avg_min = 0.99;
    bool full_scale = false;
    std::string output;
    int workers = 0;
};

int run_search(const SearchArgs& a) {
    CoinFamily family;
    try {
        family = parse_coin_family(a.coin);
    } catch (const std::invalid_argument& e) {
        throw UsageError("coin", std::string("invalid coin: ") + e.what());
    }
    SearchOptions opt;
    double grid = 0.0;
    if (a.mode == "isolated") {
        opt.criterion = SearchCriterion::IsolatedMax;
        opt.n_steps = 10;
        grid = family == CoinFamily::General ? 0.1 : 0.05;
        if (a.full_scale) grid = 0.05;
    } else if (a.mode == "averaged") {
        opt.criterion = SearchCriterion::AveragedHigh;
        opt.n_steps = 50;
        grid = 0.2;
        if (a.full_scale) {
            grid = 0.05;
            opt.n_steps = 200;
        }
    } else {
        throw UsageError("mode", "invalid mode: '" + a.mode + "' (expected isolated or averaged)");
    }
    if (a.grid) grid = *a.grid;
    if (a.steps) opt.n_steps = *a.steps;
    opt.p_threshold = a.p_min;
    opt.averaged_threshold = a.avg_min;
    if (!(grid > 0.0)) throw UsageError("grid", "invalid grid: must be positive");
    if (opt.n_steps < (opt.criterion == SearchCriterion::AveragedHigh ? 2 : 1))
        throw UsageError("steps", "invalid steps: too small for this mode");
    if (!(opt.p_threshold >= 0.0 && opt.p_threshold < 1.0)) throw UsageError("p-min", "invalid p-min: must lie in [0,1)");

    // Named coins get the special points alpha = 1/sqrt2 and quarter-turn phases.
    const ParamGrid pgrid = family == CoinFamily::General ? uniform_grid(family, grid) : case_grid(family, grid);

    Output out(a.output);
    auto& os = out.stream();
    write_meta(os, {{"command", "search"},
                    {"mode", a.mode},
                    {"coin", a.coin},
                    {"grid", fmt_real(grid)},
                    {"steps", std::to_string(opt.n_steps)},
                    {"p_min", fmt_real(opt.p_threshold)},
                    {"avg_min", fmt_real(opt.averaged_threshold)},
                    {"points", std::to_string(pgrid.size())}});
    write_hit_header(os);
    const auto summary =
        scan_grid(family, pgrid, opt, workers_or_default(a.workers), [&](const MaxEntanglementHit& h) { write_hit(os, h); });
    std::cerr << "search: " << summary.points << " parameter points, " << summary.hits << " hits\n";
    return 0;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
    std::string suite = "all";
    int samples = 1000;
    int steps = 1000;
    std::uint64_t seed = 20240601;
};

int run_verify(const VerifyArgs& a) {
    std::vector<verify::SuiteResult> results;
    const bool all = a.suite == "all";
    bool known = all;
    if (all || a.suite == "unitarity") {
        known = true;
        results.push_back(verify::unitarity_suite(a.samples, a.seed));
    }
    if (all || a.suite == "oracle") {
        known = true;
        results.push_back(verify::oracle_suite(a.samples, a.seed + 1));
    }
    if (all || a.suite == "special-points") {
        known = true;
        results.push_back(verify::special_points_suite(a.steps));
    }
    if (all || a.suite == "invariants") {
        known = true;
        results.push_back(verify::invariants_suite(std::max(1, a.samples / 10), a.steps, a.seed + 2));
    }
    if (!known) throw UsageError("suite", "invalid suite: '" + a.suite + "'");

    bool ok = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "  worst=" << fmt_real(r.worst) << "  " << r.detail
                  << '\n';
        ok = ok && r.passed;
    }
    return ok ? 0 : kExitFailure;
}

void add_common(CLI::App* sub, std::string& output, int* workers) {
    sub->add_option("-o,--output", output, "CSV output path (default: stdout)");
    if (workers) sub->add_option("--workers", *workers, "worker threads (default: all cores)")->envname("QRW_WORKERS");
    sub->set_config("--config", "", "flat key = value file; command-line flags take precedence");
    sub->allow_config_extras(CLI::config_extras_mode::error);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-walker quantum random walk: entanglement after coin measurement"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    EvolveArgs ev;
    auto* evolve_cmd = app.add_subcommand("evolve", "per-step entanglement of one walk");
    ev.walk.add_coin(evolve_cmd);
    ev.walk.add_shift(evolve_cmd);
    evolve_cmd->add_option("--phi", ev.walk.phi, "general coin: global phase in [0,2pi)")->capture_default_str();
    evolve_cmd->add_option("--p", ev.walk.p, "up-spin displacement")->capture_default_str();
    evolve_cmd->add_option("--q", ev.walk.q, "down-spin displacement")->capture_default_str();
    evolve_cmd->add_option("--steps", ev.steps, "number of steps")->capture_default_str();
    evolve_cmd->add_option("--outcome", ev.outcome, "up | down | both")->capture_default_str();
    add_common(evolve_cmd, ev.output, nullptr);

    SweepArgs sw;
    auto* sweep_cmd = app.add_subcommand("sweep", "one-parameter sweep of averaged or per-step entanglement");
    auto* fig = sweep_cmd->add_option("--figure", sw.figure, "preset: fig1 .. fig6");
    std::vector<CLI::Option*> manual;
    manual.push_back(sweep_cmd->add_option("--coin", sw.walk.coin, "hadamard | kempe | z | general"));
    manual.push_back(sweep_cmd->add_option("--rho", sw.walk.rho));
    manual.push_back(sweep_cmd->add_option("--theta", sw.walk.theta));
    manual.push_back(sweep_cmd->add_option("--eta", sw.walk.eta));
    manual.push_back(sweep_cmd->add_option("--alpha", sw.walk.alpha));
    manual.push_back(sweep_cmd->add_option("--beta-arg", sw.walk.beta_arg));
    manual.push_back(sweep_cmd->add_option("--param", sw.param, "swept parameter")->capture_default_str());
    manual.push_back(sweep_cmd->add_option("--from", sw.from)->capture_default_str());
    manual.push_back(sweep_cmd->add_option("--to", sw.to)->capture_default_str());
    manual.push_back(sweep_cmd->add_option("--step", sw.step, "grid spacing")->capture_default_str());
    manual.push_back(sweep_cmd->add_option("--steps", sw.steps, "walk length")->capture_default_str());
    manual.push_back(sweep_cmd->add_option("--outcome", sw.outcome, "up | down | both")->capture_default_str());
    manual.push_back(sweep_cmd->add_option("--mode", sw.mode, "averaged | per-step")->capture_default_str());
    for (auto* o : manual) fig->excludes(o);
    add_common(sweep_cmd, sw.output, &sw.workers);

    SearchArgs se;
    auto* search_cmd = app.add_subcommand("search", "grid search for maximal entanglement");
    search_cmd->add_option("--mode", se.mode, "isolated | averaged")->capture_default_str();
    search_cmd->add_option("--coin", se.coin, "hadamard | kempe | z | general")->capture_default_str();
    search_cmd->add_option("--grid", se.grid, "grid spacing (isolated: 0.1, averaged: 0.2)");
    search_cmd->add_option("--steps", se.steps, "walk length (isolated: 10, averaged: 50)");
    search_cmd->add_option("--p-min", se.p_min, "probability threshold")->capture_default_str();
    search_cmd->add_option("--avg-min", se.avg_min, "averaged-entanglement threshold")->capture_default_str();
    search_cmd->add_flag("--full-scale", se.full_scale, "full 0.05 grid (and 200 steps in averaged mode)");
    add_common(search_cmd, se.output, &se.workers);

    VerifyArgs ve;
    auto* verify_cmd = app.add_subcommand("verify", "run the built-in correctness suites");
    verify_cmd->add_option("--suite", ve.suite, "all | unitarity | oracle | special-points | invariants")
        ->capture_default_str();
    verify_cmd->add_option("--samples", ve.samples, "random parameter tuples")->capture_default_str();
    verify_cmd->add_option("--steps", ve.steps, "walk length for chain and invariant checks")->capture_default_str();
    verify_cmd->add_option("--seed", ve.seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*evolve_cmd) return run_evolve(ev);
        if (*sweep_cmd) return run_sweep(sw);
        if (*search_cmd) return run_search(se);
        if (*verify_cmd) return run_verify(ve);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParameterError& e) {
        std::cerr << "error: invalid " << e.field() << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
