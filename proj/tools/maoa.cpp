#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "maoa/algorithms.hpp"
#include "maoa/circulant.hpp"
#include "maoa/csv.hpp"
#include "maoa/distribution.hpp"
#include "maoa/error.hpp"
#include "maoa/grover.hpp"
#include "maoa/harness.hpp"
#include "maoa/kv_config.hpp"
#include "maoa/problems.hpp"
#include "maoa/reduced_graph.hpp"
#include "maoa/svg_plot.hpp"

#ifndef MAOA_GIT_DESCRIBE
#define MAOA_GIT_DESCRIBE "unknown"
#endif

namespace fs = std::filesystem;
using namespace maoa;

namespace {

constexpr int kUsageError = 2;
constexpr int kValidationError = 3;

// Options shared by every subcommand.
struct Common
{
    std::string out = ".";
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string config;
    bool full_budget = false;
};

// Where a subcommand reads its quality distribution from.
struct DistSource
{
    bool normal = false;
    std::string path;
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--out", c.out, "Output directory");
    sub->add_option("--seed", c.seed, "Master seed (drawn from entropy when absent)");
    sub->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--config", c.config, "key = value file; command-line flags win");
}

void add_dist(CLI::App* sub, DistSource& d)
{
    sub->add_flag("--normal", d.normal, "Standard normal qualities (large-problem limit)");
    sub->add_option("--dist", d.path, "Distribution file written by gen-cvrp or gen-portfolio");
}

std::shared_ptr<const QualityDistribution> load_dist(const DistSource& d)
{
    if (d.normal == !d.path.empty())
        throw ValidationError("give exactly one of --normal and --dist");
    if (d.normal)
        return std::make_shared<QualityDistribution>(NormalDistribution{});
    if (!fs::exists(d.path))
        throw ValidationError("missing distribution file: " + d.path);
    return std::make_shared<QualityDistribution>(load(fs::path(d.path)));
}

std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot read input file: " + path);
    return in;
}

std::ofstream open_output(const fs::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot write " + path.string());
    return out;
}

std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join(const std::vector<std::string>& parts, char sep)
{
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i)
        s += (i ? std::string(1, sep) : "") + parts[i];
    return s;
}

// Appends `--key=value` for every config entry whose flag is not already on
// the command line. Keys the manifest writes for bookkeeping are skipped.
std::vector<std::string> merge_config(std::vector<std::string> args)
{
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (path.empty())
        return args;
    if (!fs::exists(path))
        throw ValidationError("missing config file: " + path);
    const KeyValues kv = KeyValues::parse_file(path);
    static const std::set<std::string> skip{"command", "version", "config"};
    for (const auto& [key, value] : kv.entries()) {
        if (skip.count(key))
            continue;
        const std::string flag = "--" + key;
        const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (!given)
            args.push_back(flag + "=" + value);
    }
    return args;
}

// Writes every option of the subcommand (given or default) so that
// `<command> --config manifest.txt` replays the run.
void write_manifest(const CLI::App* sub, const Common& c, const fs::path& dir)
{
    KeyValues kv;
    kv.set("command", sub->get_name());
    kv.set("version", MAOA_GIT_DESCRIBE);
    for (const CLI::Option* opt : sub->get_options()) {
        const std::string name = opt->get_single_name();
        if (name.empty() || name == "help" || name == "config")
            continue;
        std::string value;
        if (name == "seed")
            value = std::to_string(c.seed);
        else if (opt->count() > 0)
            value = join(opt->results(), ',');
        else
            value = opt->get_default_str();
        if (value.empty())
            continue;
        kv.set(name, value);
    }
    auto out = open_output(dir / "manifest.txt");
    kv.write(out);
}

fs::path prepare_out(const Common& c)
{
    fs::path dir(c.out);
    fs::create_directories(dir);
    return dir;
}

// ---------------------------------------------------------------------------
// Commands

void cmd_gen_cvrp(const Common& c, int locations, const std::string& instance_path,
                  const fs::path& dir)
{
    CvrpInstance inst;
    if (!instance_path.empty()) {
        auto in = open_input(instance_path);
        inst = read_cvrp(in);
    } else {
        if (locations < 1 || locations > 11)
            throw ValidationError("--l must be in [1, 11] for enumeration");
        inst = generate_cvrp(locations, c.seed);
    }
    const FiniteDistribution dist = cvrp_enumerate(inst, c.workers);
    {
        auto out = open_output(dir / "cvrp_instance.txt");
        write_cvrp(inst, out);
    }
    save(dist, dir / "distribution.bin");
    auto csv = open_output(dir / "distribution.csv");
    export_csv(dist, csv);
    std::cout << "solutions " << dist.size() << ", distinct costs " << dist.runs().size()
              << ", optimum " << dist.min() << " x" << dist.runs().front().count << '\n';
}

struct PortfolioArgs
{
    int n = 12;
    int net = 3;
    int days = 500;
    std::string instance;
    double risk_fraction = 0.10;
    bool full_space = false;
};

void cmd_gen_portfolio(const Common& c, const PortfolioArgs& a, const fs::path& dir)
{
    PortfolioInstance inst;
    if (!a.instance.empty()) {
        auto in = open_input(a.instance);
        inst = read_portfolio(in);
    } else {
        if (a.n < 1 || a.n > 16)
            throw ValidationError("--n must be in [1, 16] for enumeration");
        inst = generate_portfolio(a.n, a.net, c.seed, a.days);
    }
    const auto table = portfolio_enumerate(inst);
    FiniteDistribution dist = [&] {
        if (a.full_space) {
            std::vector<double> neg;
            for (const auto& p : table)
                neg.push_back(-p.ret);
            return FiniteDistribution::from_values(std::move(neg));
        }
        return low_risk_return_distribution(table, a.risk_fraction);
    }();
    {
        auto out = open_output(dir / "portfolio.txt");
        write_portfolio(inst, out);
    }
    {
        auto out = open_output(dir / "portfolio_table.csv");
        out << "risk,return\n";
        for (const auto& p : table)
            out << fmt_double(p.risk) << ',' << fmt_double(p.ret) << '\n';
    }
    save(dist, dir / "distribution.bin");
    auto csv = open_output(dir / "distribution.csv");
    export_csv(dist, csv);
    std::cout << "portfolios " << table.size() << ", in distribution " << dist.size()
              << ", best return " << -dist.min() << '\n';
}

void cmd_ingest(const std::string& prices, int net, const fs::path& dir)
{
    auto in = open_input(prices);
    const PortfolioInstance inst = ingest_prices(in, net);
    auto out = open_output(dir / "portfolio.txt");
    write_portfolio(inst, out);
    std::cout << "assets " << inst.size() << ", portfolios "
              << to_string(portfolio_cardinality(inst.size(), net)) << '\n';
}

void cmd_dist_stats(const QualityDistribution& dist, const std::vector<double>& quantiles,
                    const fs::path& dir)
{
    KeyValues kv;
    if (dist.is_finite()) {
        const auto& f = dist.finite();
        kv.set("size", std::to_string(f.size()));
        kv.set("distinct", std::to_string(f.runs().size()));
        kv.set("optimum_multiplicity", std::to_string(f.runs().front().count));
        kv.set("r_c_single_optimum",
               std::to_string(complete_convergence_rotations(1.0 / static_cast<double>(f.size())).nearest));
    } else {
        kv.set("size", "inf");
    }
    kv.set("min", fmt_double(dist.min()));
    kv.set("max", fmt_double(dist.max()));
    kv.set("mean", fmt_double(dist.mean()));
    for (double p : quantiles)
        kv.set("quantile." + fmt_double(p), fmt_double(dist.quantile(p)));
    auto out = open_output(dir / "stats.txt");
    kv.write(out);
    kv.write(std::cout);
}

struct CurveArgs
{
    std::uint32_t r = 128;
    std::optional<double> lo;
    std::optional<double> hi;
    int points = 2001;
};

std::pair<double, double> curve_range(const QualityDistribution& dist, const CurveArgs& a)
{
    const double lo = a.lo.value_or(dist.is_finite() ? dist.min() : -6.0);
    const double hi = a.hi.value_or(dist.is_finite() ? dist.max() : 0.0);
    if (!(lo < hi))
        throw ValidationError("--lo must be below --hi");
    return {lo, hi};
}

void cmd_response(const QualityDistribution& dist, const CurveArgs& a, const fs::path& dir)
{
    const auto [lo, hi] = curve_range(dist, a);
    const auto grid = response_grid(dist, a.r, lo, hi);
    const auto curve = threshold_response_curve(dist, a.r, grid);
    auto out = open_output(dir / "response.csv");
    write_response_csv(curve, out);
    std::vector<double> marked_side;
    for (const auto& p : curve)
        if (p.rho <= 0.5)
            marked_side.push_back(p.probability);
    const auto ext = count_extrema(marked_side);
    std::cout << "points " << curve.size() << ", maxima " << ext.maxima << ", minima "
              << ext.minima << '\n';
}

void cmd_expectation(const QualityDistribution& dist, const CurveArgs& a, const fs::path& dir)
{
    if (a.points < 2)
        throw ValidationError("--points must be at least 2");
    const auto [lo, hi] = curve_range(dist, a);
    auto out = open_output(dir / "expectation.csv");
    out << "threshold,rho,expected,envelope\n";
    for (int i = 0; i < a.points; ++i) {
        const double t = lo + (hi - lo) * i / (a.points - 1);
        const auto e = expectation_response(dist, a.r, t);
        out << fmt_double(t) << ',' << fmt_double(dist.marked_ratio(t)) << ','
            << fmt_double(e.expected) << ',' << fmt_double(e.envelope) << '\n';
    }
}

struct RunArgs
{
    std::string algo = "maoa";
    std::uint32_t r = 64;
    std::optional<double> mu;
    std::optional<double> cutoff;
    bool optimum = false;
    std::uint64_t runs = 10'000;
    std::uint64_t effort_cap = kDefaultEffortCap;
    std::uint64_t events = 0;
    double lambda = 1.34;
    std::uint32_t gas_r_max = 0;
    std::optional<double> sampling_threshold;
    bool exact = false;
};

ExperimentSpec make_spec(const Common& c, const RunArgs& a,
                         std::shared_ptr<const QualityDistribution> dist)
{
    ExperimentSpec spec;
    spec.dist = std::move(dist);
    spec.algorithm = parse_algorithm(a.algo);
    spec.maoa.final_rotations = a.r;
    spec.gas = {a.lambda, a.gas_r_max};
    spec.sampling_threshold = a.sampling_threshold;
    const int targets = (a.mu ? 1 : 0) + (a.cutoff ? 1 : 0) + (a.optimum ? 1 : 0);
    if (targets > 1)
        throw ValidationError("give at most one of --mu, --cutoff and --optimum");
    if (a.cutoff)
        spec.target = {TargetSpec::Kind::cutoff, *a.cutoff, {}};
    else if (a.optimum)
        spec.target = {TargetSpec::Kind::optimum, 0.0, {}};
    else
        spec.target = {TargetSpec::Kind::ratio, a.mu.value_or(1e-6), {}};
    spec.runs = a.runs;
    spec.effort_cap = a.effort_cap;
    spec.master_seed = c.seed;
    spec.workers = c.workers;
    spec.event_runs = a.events;
    spec.fast_forward = !a.exact;
    spec.validate();
    return spec;
}

double median_effort(const ExperimentResult& r)
{
    auto e = success_efforts(r);
    std::sort(e.begin(), e.end());
    const auto v = e[(e.size() - 1) / 2];
    return v == kNever ? std::nan("") : static_cast<double>(v);
}

void cmd_run(const Common& c, const RunArgs& a, std::shared_ptr<const QualityDistribution> dist,
             const fs::path& dir)
{
    const ExperimentSpec spec = make_spec(c, a, std::move(dist));
    const ExperimentResult res = run_experiment(spec);
    {
        auto out = open_output(dir / "curve.csv");
        write_curve_csv(res.curve, out);
    }
    {
        auto out = open_output(dir / "runs.csv");
        write_runs_csv(res.runs, out);
    }
    for (std::size_t i = 0; i < res.events.size(); ++i) {
        auto out = open_output(dir / ("events_" + std::to_string(i) + ".csv"));
        write_events_csv(res.events[i], out);
    }
    std::cout << "target ratio " << fmt_double(res.target_ratio);
    if (res.unreachable)
        std::cout << " (unreachable)";
    std::cout << ", median success effort " << median_effort(res) << '\n';
}

struct SweepArgs
{
    RunArgs base;
    std::vector<std::string> algos{"maoa", "rgas", "classical"};
    std::vector<std::uint32_t> rs{64};
    std::vector<double> mus{1e-6, 1e-7, 1e-8, 1e-9, 1e-10};
};

void cmd_sweep(const Common& c, const SweepArgs& a,
               std::shared_ptr<const QualityDistribution> dist, const fs::path& dir)
{
    auto summary = open_output(dir / "summary.csv");
    summary << "algo,r,mu,target_ratio,median_effort,speedup,speedup_lo,speedup_hi,"
               "analytic_speedup\n";
    for (double mu : a.mus) {
        RunArgs classical_args = a.base;
        classical_args.algo = "classical";
        classical_args.mu = mu;
        std::optional<std::vector<std::uint64_t>> classical;
        const bool want_classical =
            std::find(a.algos.begin(), a.algos.end(), "classical") != a.algos.end();
        if (want_classical) {
            const auto res = run_experiment(make_spec(c, classical_args, dist));
            auto out = open_output(dir / ("curve_classical_mu" + fmt_double(mu) + ".csv"));
            write_curve_csv(res.curve, out);
            classical = success_efforts(res);
            summary << "classical,0," << fmt_double(mu) << ',' << fmt_double(res.target_ratio)
                    << ',' << median_effort(res) << ",,,,\n";
        }
        for (const auto& algo : a.algos) {
            if (algo == "classical")
                continue;
            for (std::uint32_t r : a.rs) {
                RunArgs ra = a.base;
                ra.algo = algo;
                ra.r = r;
                ra.mu = mu;
                const auto res = run_experiment(make_spec(c, ra, dist));
                auto out = open_output(dir / ("curve_" + algo + "_r" + std::to_string(r) + "_mu" +
                                              fmt_double(mu) + ".csv"));
                write_curve_csv(res.curve, out);
                summary << algo << ',' << r << ',' << fmt_double(mu) << ','
                        << fmt_double(res.target_ratio) << ',' << median_effort(res) << ',';
                if (classical) {
                    const auto s = speedup_estimate(*classical, success_efforts(res));
                    summary << fmt_double(s.value) << ',' << fmt_double(s.lo) << ','
                            << fmt_double(s.hi) << ',';
                } else {
                    summary << ",,,";
                }
                summary << fmt_double(analytic_speedup(res.target_ratio, r)) << '\n';
            }
        }
    }
}

struct ReducedArgs
{
    int fixtures = 100;
    int max_n = 12;
    std::vector<int> partitions;
    std::uint32_t r_lo = 1;
    std::uint32_t r_hi = 10;
    PartitionOptions partition;
};

void cmd_verify_reduced(const Common& c, ReducedArgs a, const fs::path& dir)
{
    Rng rng(derive_seed(c.seed, 0));
    auto out = open_output(dir / "contraction.csv");
    out << "fixture,n,groups,iterations,max_abs_diff\n";
    double worst = 0.0;
    for (int f = 0; f < a.fixtures; ++f) {
        const int n = 2 + static_cast<int>(rng.index(static_cast<std::uint64_t>(a.max_n - 1)));
        const int levels = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(n)));
        std::vector<double> q(static_cast<std::size_t>(n));
        for (double& v : q)
            v = static_cast<double>(rng.index(static_cast<std::uint64_t>(levels)));
        const std::size_t iters = 1 + rng.index(4);
        QwoaParams p;
        for (std::size_t i = 0; i < iters; ++i) {
            p.gamma.push_back(rng.uniform(0.0, 2.0 * std::numbers::pi));
            p.t.push_back(rng.uniform(0.0, 2.0 * std::numbers::pi));
        }
        const auto full = evolve_complete_graph(q, p);
        const auto con = contract_complete_graph(q);
        const auto reduced = con.graph.group_probabilities(p);
        std::vector<double> summed(reduced.size(), 0.0);
        for (std::size_t v = 0; v < full.size(); ++v)
            summed[con.group_of[v]] += full[v];
        double diff = 0.0;
        for (std::size_t g = 0; g < summed.size(); ++g)
            diff = std::max(diff, std::abs(summed[g] - reduced[g]));
        worst = std::max(worst, diff);
        out << f << ',' << n << ',' << reduced.size() << ',' << iters << ',' << fmt_double(diff)
            << '\n';
    }
    std::cout << "fixtures " << a.fixtures << ", worst group deviation " << worst << '\n';

    if (a.partitions.empty())
        return;
    if (c.full_budget)
        a.partition.use_full_budget();
    a.partition.seed = c.seed;
    std::vector<PartitionRow> rows;
    for (int p : a.partitions) {
        const auto part = partition_experiment(p, a.r_lo, a.r_hi, a.partition);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    auto pout = open_output(dir / "partition.csv");
    write_partition_csv(rows, pout);
}

void cmd_appendix(const Common& c, AppendixConfig cfg, const std::vector<std::string>& studies,
                  const fs::path& dir)
{
    if (c.full_budget)
        cfg.use_full_budget();
    cfg.seed = c.seed;
    cfg.workers = c.workers;
    const auto res = run_appendix_suite(cfg, studies);
    {
        auto out = open_output(dir / "suite.csv");
        write_suite_csv(res.rows, out);
    }
    if (res.landscape_binary.size() > 0) {
        const double t_max = 2.0 * std::numbers::pi / (cfg.n - 1);
        auto b = open_output(dir / "landscape_binary.csv");
        write_landscape_csv(res.landscape_binary, 2.0 * std::numbers::pi, t_max, b);
        auto g = open_output(dir / "landscape_graded.csv");
        write_landscape_csv(res.landscape_graded, 2.0 * std::numbers::pi, t_max, g);
        std::cout << "K" << cfg.n << " repeated-pair grid maxima: binary "
                  << res.landscape_binary.maxCoeff() << ", graded "
                  << res.landscape_graded.maxCoeff() << '\n';
    }
    std::cout << "suite rows " << res.rows.size() << '\n';
}

void cmd_plot(const std::string& csv_path, const PlotOptions& opts, std::string name,
              const fs::path& dir)
{
    auto in = open_input(csv_path);
    const CsvTable table = read_csv(in);
    if (name.empty())
        name = fs::path(csv_path).stem().string() + ".svg";
    auto out = open_output(dir / name);
    out << plot_svg(table, opts);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Threshold-based amplified search simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", MAOA_GIT_DESCRIBE);

    Common c;
    DistSource d;

    auto* gen_cvrp = app.add_subcommand("gen-cvrp", "Random CVRP instance and its cost distribution");
    int cvrp_l = 7;
    std::string cvrp_instance;
    gen_cvrp->add_option("--l", cvrp_l, "Number of locations");
    gen_cvrp->add_option("--instance", cvrp_instance, "Read an instance instead of generating one");

    auto* gen_pf = app.add_subcommand("gen-portfolio", "Portfolio table and return distribution");
    PortfolioArgs pf;
    gen_pf->add_option("--n", pf.n, "Number of assets");
    gen_pf->add_option("--I", pf.net, "Net position");
    gen_pf->add_option("--days", pf.days, "Synthetic trading days");
    gen_pf->add_option("--instance", pf.instance, "Portfolio file from ingest-prices");
    gen_pf->add_option("--risk-fraction", pf.risk_fraction, "Low-risk subset fraction");
    gen_pf->add_flag("--full-space", pf.full_space, "Use every portfolio, ignoring risk");

    auto* ingest = app.add_subcommand("ingest-prices", "Estimate returns and covariance from prices");
    std::string prices;
    int ingest_net = 3;
    ingest->add_option("--prices", prices, "Price CSV")->required();
    ingest->add_option("--I", ingest_net, "Net position");

    auto* stats = app.add_subcommand("dist-stats", "Summary of a quality distribution");
    std::vector<double> quantiles;
    stats->add_option("--quantiles", quantiles, "Lower-tail fractions")->delimiter(',');

    CurveArgs curve;
    auto add_curve = [&](CLI::App* sub) {
        sub->add_option("--r", curve.r, "Rotation count");
        sub->add_option("--lo", curve.lo, "Lowest threshold");
        sub->add_option("--hi", curve.hi, "Highest threshold");
    };
    auto* response = app.add_subcommand("response-curve", "P(r, rho(T)) against T");
    add_curve(response);
    auto* expectation = app.add_subcommand("expectation-curve", "Expected measured quality against T");
    add_curve(expectation);
    expectation->add_option("--points", curve.points, "Grid points");

    RunArgs run_args;
    auto add_run = [&](CLI::App* sub, RunArgs& a, bool with_algo) {
        if (with_algo)
            sub->add_option("--algo", a.algo, "maoa, maoa-sampling, gas, rgas or classical");
        if (with_algo)
            sub->add_option("--r", a.r, "Final / maximum rotation count");
        if (with_algo)
            sub->add_option("--mu", a.mu, "Target ratio");
        sub->add_option("--cutoff", a.cutoff, "Target: qualities strictly below this");
        sub->add_flag("--optimum", a.optimum, "Target: the best solution(s)");
        sub->add_option("--runs", a.runs, "Independent runs");
        sub->add_option("--effort-cap", a.effort_cap, "Per-run effort budget");
        sub->add_option("--events", a.events, "Keep every measurement of the first K runs");
        sub->add_option("--lambda", a.lambda, "GAS growth factor");
        sub->add_option("--gas-rmax", a.gas_r_max, "GAS rotation cap (0: from N)");
        sub->add_option("--sampling-threshold", a.sampling_threshold,
                        "Fixed threshold for maoa-sampling");
        sub->add_flag("--exact", a.exact, "Simulate every measurement instead of skipping ahead");
    };
    auto* run = app.add_subcommand("run", "Success-probability curve for one algorithm");
    add_run(run, run_args, true);

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Curves over algorithms, rotation counts and targets");
    add_run(sweep, sweep_args.base, false);
    sweep->add_option("--algos", sweep_args.algos, "Algorithms")->delimiter(',');
    sweep->add_option("--r", sweep_args.rs, "Rotation counts")->delimiter(',');
    sweep->add_option("--mu", sweep_args.mus, "Target ratios")->delimiter(',');

    ReducedArgs reduced;
    auto* verify = app.add_subcommand("verify-reduced", "Contracted vs full complete-graph walks");
    verify->add_option("--fixtures", reduced.fixtures, "Random fixtures")->check(CLI::PositiveNumber);
    verify->add_option("--max-n", reduced.max_n, "Largest fixture size")->check(CLI::Range(2, 64));
    verify->add_option("--partitions", reduced.partitions, "Partition counts to optimise")
        ->delimiter(',');
    verify->add_option("--r-lo", reduced.r_lo, "Smallest iteration count");
    verify->add_option("--r-hi", reduced.r_hi, "Largest iteration count");
    verify->add_option("--total", reduced.partition.total, "Solution space size");
    verify->add_option("--marked", reduced.partition.marked, "Marked solutions");
    verify->add_option("--starts", reduced.partition.starts, "Random starts");
    verify->add_option("--refine", reduced.partition.refine, "Starts refined");
    verify->add_option("--repeats", reduced.partition.repeats, "Independent repeats");

    AppendixConfig appendix;
    std::vector<std::string> studies;
    auto* suite = app.add_subcommand("appendix-suite", "Circulant-graph amplification studies");
    suite->add_option("--n", appendix.n, "Vertices")->check(CLI::Range(5, 41));
    suite->add_option("--r", appendix.r, "Iterations");
    suite->add_option("--studies", studies,
                      "replicates, degree, spectral, degeneracy, landscape, repeated_pair, grids")
        ->delimiter(',');
    suite->add_option("--draws", appendix.draws, "Quality draws per graph");
    suite->add_option("--starts", appendix.starts, "Random starts per optimisation");
    suite->add_option("--refine", appendix.refine, "Starts refined");
    suite->add_option("--grid-points", appendix.grid_points, "Landscape grid size");

    auto* plot = app.add_subcommand("plot", "Render a CSV as an SVG line chart");
    std::string plot_csv, plot_name;
    PlotOptions plot_opts;
    plot->add_option("--csv", plot_csv, "Input CSV")->required();
    plot->add_option("--x", plot_opts.x_column, "x column");
    plot->add_option("--y", plot_opts.y_columns, "y columns")->delimiter(',');
    plot->add_flag("--log-x", plot_opts.log_x, "Logarithmic x axis");
    plot->add_flag("--log-y", plot_opts.log_y, "Logarithmic y axis");
    plot->add_option("--title", plot_opts.title, "Chart title");
    plot->add_option("--name", plot_name, "Output file name");

    for (CLI::App* sub : app.get_subcommands({})) {
        add_common(sub, c);
        if (sub == stats || sub == response || sub == expectation || sub == run || sub == sweep)
            add_dist(sub, d);
        if (sub == verify || sub == suite)
            sub->add_flag("--full-budget", c.full_budget, "Use the full optimisation budget");
        for (CLI::Option* opt : sub->get_options())
            opt->capture_default_str();
    }

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = merge_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidationError;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        if (sub->count("--seed") == 0)
            c.seed = std::random_device{}() * 0x100000000ULL + std::random_device{}();
        const fs::path dir = prepare_out(c);
        write_manifest(sub, c, dir);
        if (sub == gen_cvrp)
            cmd_gen_cvrp(c, cvrp_l, cvrp_instance, dir);
        else if (sub == gen_pf)
            cmd_gen_portfolio(c, pf, dir);
        else if (sub == ingest)
            cmd_ingest(prices, ingest_net, dir);
        else if (sub == stats)
            cmd_dist_stats(*load_dist(d), quantiles, dir);
        else if (sub == response)
            cmd_response(*load_dist(d), curve, dir);
        else if (sub == expectation)
            cmd_expectation(*load_dist(d), curve, dir);
        else if (sub == run)
            cmd_run(c, run_args, load_dist(d), dir);
        else if (sub == sweep)
            cmd_sweep(c, sweep_args, load_dist(d), dir);
        else if (sub == verify)
            cmd_verify_reduced(c, reduced, dir);
        else if (sub == suite)
            cmd_appendix(c, appendix, studies, dir);
        else if (sub == plot)
            cmd_plot(plot_csv, plot_opts, plot_name, dir);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kValidationError;
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << '\n';
        return kValidationError;
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kValidationError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
