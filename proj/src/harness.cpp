#include "maoa/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include "maoa/error.hpp"
#include "maoa/grover.hpp"

namespace maoa {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct AlgorithmName
{
    Algorithm algo;
    std::string_view name;
};

constexpr AlgorithmName kAlgorithmNames[] = {
    {Algorithm::maoa, "maoa"},
    {Algorithm::maoa_sampling, "maoa-sampling"},
    {Algorithm::gas, "gas"},
    {Algorithm::rgas, "rgas"},
    {Algorithm::classical, "classical"},
};

double space_size(const QualityDistribution& dist)
{
    return dist.is_finite() ? static_cast<double>(dist.finite().size())
                            : std::numeric_limits<double>::infinity();
}

}  // namespace

std::string_view to_string(Algorithm algo)
{
    for (const auto& a : kAlgorithmNames)
        if (a.algo == algo)
            return a.name;
    return "?";
}

Algorithm parse_algorithm(std::string_view name)
{
    for (const auto& a : kAlgorithmNames)
        if (a.name == name)
            return a.algo;
    throw ValidationError("unknown algorithm '" + std::string(name) + "'");
}

void ExperimentSpec::validate() const
{
    if (!dist)
        throw ValidationError("experiment has no distribution");
    if (runs < 1)
        throw ValidationError("run count must be at least 1");
    if (target.kind == TargetSpec::Kind::ratio && !(target.value > 0.0 && target.value < 1.0))
        throw ValidationError("target ratio must lie in (0, 1)");
    if (target.kind == TargetSpec::Kind::ids && !dist->is_finite())
        throw ValidationError("solution-id targets need a finite distribution");
    if (target.kind == TargetSpec::Kind::optimum && !dist->is_finite())
        throw ValidationError("optimum targets need a finite distribution");
    if (effort_cap < 1)
        throw ValidationError("effort cap must be positive");
    if (algorithm == Algorithm::gas && !dist->is_finite() && gas.r_max == 0)
        throw ValidationError("GAS on the normal needs an explicit rotation cap");
    maoa.validate();
}

ResolvedTarget resolve_target(const QualityDistribution& dist, const TargetSpec& target)
{
    switch (target.kind) {
    case TargetSpec::Kind::ratio: {
        const double cutoff = dist.quantile(target.value);
        return {TargetSet::below(cutoff), dist.marked_ratio(cutoff)};
    }
    case TargetSpec::Kind::cutoff:
        return {TargetSet::below(target.value), dist.marked_ratio(target.value)};
    case TargetSpec::Kind::optimum: {
        const double cutoff = std::nextafter(dist.min(), std::numeric_limits<double>::infinity());
        return {TargetSet::below(cutoff), dist.marked_ratio(cutoff)};
    }
    case TargetSpec::Kind::ids: {
        const auto n = dist.finite().size();
        std::vector<std::uint64_t> ids;
        for (auto id : target.ids)
            if (id < n)
                ids.push_back(id);
        TargetSet set = TargetSet::ids(std::move(ids));
        const double ratio = static_cast<double>(set.id_list().size()) / static_cast<double>(n);
        return {std::move(set), ratio};
    }
    }
    throw ValidationError("bad target kind");
}

std::vector<double> log_effort_grid(double lo, double hi, int per_decade)
{
    if (!(lo > 0.0) || !(hi >= lo) || per_decade < 1)
        throw ValidationError("log grid needs 0 < lo <= hi");
    std::vector<double> grid;
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    const auto steps = static_cast<long>(std::ceil((b - a) * per_decade - 1e-9));
    for (long i = 0; i <= steps; ++i)
        grid.push_back(std::min(hi, std::pow(10.0, a + static_cast<double>(i) / per_decade)));
    return grid;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z)
{
    if (n == 0)
        return {0.0, 1.0};
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double centre = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double dkw_epsilon(std::uint64_t n, double alpha)
{
    return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

double analytic_classical(double effort, double mu)
{
    if (effort <= 0.0)
        return 0.0;
    if (mu >= 1.0)
        return 1.0;
    return -std::expm1(effort * std::log1p(-mu));
}

AnalyticMaoa analytic_maoa(double effort, double mu, std::uint32_t r)
{
    const double k = 2.0 * r + 1.0;
    double q = mu * k * k;
    const bool clamped = q > 1.0;
    if (clamped)
        q = 1.0;
    if (effort <= 0.0)
        return {0.0, clamped};
    if (q >= 1.0)
        return {effort >= k ? 1.0 : 0.0, clamped};
    return {-std::expm1(effort / k * std::log1p(-q)), clamped};
}

double analytic_speedup(double mu, std::uint32_t r)
{
    const double k = 2.0 * r + 1.0;
    return std::log1p(-mu * k * k) / (k * std::log1p(-mu));
}

SuccessCurve success_curve(std::span<const std::uint64_t> efforts, std::span<const double> grid,
                           const std::function<double(double)>& analytic)
{
    std::vector<std::uint64_t> sorted(efforts.begin(), efforts.end());
    std::sort(sorted.begin(), sorted.end());
    SuccessCurve curve;
    curve.runs = sorted.size();
    for (double e : grid) {
        const auto cutoff = static_cast<std::uint64_t>(std::floor(std::max(0.0, e)));
        const auto hits = static_cast<std::uint64_t>(
            std::upper_bound(sorted.begin(), sorted.end(), cutoff) - sorted.begin());
        const Interval w = wilson_interval(hits, curve.runs);
        const double p = curve.runs ? static_cast<double>(hits) / static_cast<double>(curve.runs)
                                    : 0.0;
        curve.points.push_back({e, p, w.lo, w.hi, analytic ? analytic(e) : kNaN});
    }
    return curve;
}

namespace {

double order_statistic(const std::vector<double>& sorted, double rank)
{
    if (rank < 0.0)
        return 0.0;
    const auto i = static_cast<std::size_t>(rank);
    if (i >= sorted.size())
        return std::numeric_limits<double>::infinity();
    return sorted[i];
}

std::vector<double> sorted_times(std::span<const std::uint64_t> efforts)
{
    std::vector<double> out;
    out.reserve(efforts.size());
    for (auto e : efforts)
        out.push_back(e == kNever ? std::numeric_limits<double>::infinity()
                                  : static_cast<double>(e));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

SpeedupEstimate speedup_estimate(std::span<const std::uint64_t> classical,
                                 std::span<const std::uint64_t> quantum, double level, double z)
{
    if (classical.empty() || quantum.empty() || !(level > 0.0 && level < 1.0))
        throw ValidationError("speedup_estimate needs runs on both sides and 0 < level < 1");
    auto bounds = [&](const std::vector<double>& s) {
        const double n = static_cast<double>(s.size());
        const double centre = std::ceil(level * n) - 1.0;
        const double spread = z * std::sqrt(n * level * (1.0 - level));
        return std::array<double, 3>{order_statistic(s, std::floor(centre - spread)),
                                     order_statistic(s, centre),
                                     order_statistic(s, std::ceil(centre + spread))};
    };
    const auto c = bounds(sorted_times(classical));
    const auto q = bounds(sorted_times(quantum));
    return {c[1] / q[1], c[0] / q[2], c[2] / q[0], c[1], q[1]};
}

std::vector<std::uint64_t> success_efforts(const ExperimentResult& result)
{
    std::vector<std::uint64_t> out;
    out.reserve(result.runs.size());
    for (const auto& r : result.runs)
        out.push_back(r.success_effort);
    return out;
}

ExperimentResult run_experiment(const ExperimentSpec& spec)
{
    spec.validate();
    const QualityDistribution& dist = *spec.dist;
    const ResolvedTarget target = resolve_target(dist, spec.target);

    ExperimentResult result;
    result.target_ratio = target.ratio;
    result.unreachable = !(target.ratio > 0.0);
    result.runs.assign(spec.runs, RunRecord{kNever, 0, 0, kNaN, kNaN, false});
    result.events.resize(std::min(spec.event_runs, spec.runs));

    const std::uint32_t rf = spec.maoa.final_rotations;
    double sampling_threshold = kNaN;
    if (spec.algorithm == Algorithm::maoa_sampling) {
        const double k = 2.0 * rf + 1.0;
        sampling_threshold = spec.sampling_threshold.value_or(dist.quantile(1.0 / (40.0 * k * k)));
    }
    GasConfig gas = spec.gas;
    if (gas.r_max == 0 && spec.algorithm == Algorithm::rgas)
        gas.r_max = rf;
    if (gas.r_max == 0 && spec.algorithm == Algorithm::gas)
        gas.r_max = gas_default_r_max(space_size(dist));

    auto one_run = [&](std::uint64_t i) {
        Rng rng(derive_seed(spec.master_seed, i));
        const bool keep_events = i < result.events.size();
        EffortLedger ledger(spec.effort_cap, keep_events);
        ledger.set_target(target.set);
        RunRecord& rec = result.runs[i];
        switch (spec.algorithm) {
        case Algorithm::maoa: {
            const auto out = maoa_run(dist, spec.maoa, rng, ledger, {spec.fast_forward, 0});
            rec.threshold_effort = out.threshold.effort;
            rec.final_threshold = out.threshold.threshold;
            break;
        }
        case Algorithm::maoa_sampling:
            maoa_sample_phase(dist, rf, sampling_threshold, rng, ledger, {spec.fast_forward, 0});
            rec.final_threshold = sampling_threshold;
            break;
        case Algorithm::gas:
        case Algorithm::rgas:
            gas_run(dist, gas, rng, ledger);
            break;
        case Algorithm::classical:
            classical_run(dist, rng, ledger, {spec.fast_forward});
            break;
        }
        rec.success_effort = ledger.success_effort();
        rec.total_effort = ledger.calls();
        rec.truncated = ledger.truncated() && !ledger.success();
        rec.best = ledger.best();
        if (keep_events)
            result.events[i] = ledger.events();
    };

    if (!result.unreachable) {
        const unsigned workers =
            static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(spec.workers, spec.runs)));
        std::atomic<std::uint64_t> next{0};
        auto work = [&] {
            for (std::uint64_t i = next++; i < spec.runs; i = next++)
                one_run(i);
        };
        if (workers == 1) {
            work();
        } else {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back(work);
        }
    }

    const std::vector<double> grid =
        spec.effort_grid.empty() ? log_effort_grid(1.0, static_cast<double>(spec.effort_cap))
                                 : spec.effort_grid;
    std::function<double(double)> analytic;
    const double mu = target.ratio;
    switch (spec.algorithm) {
    case Algorithm::classical:
        analytic = [mu](double e) { return analytic_classical(e, mu); };
        break;
    case Algorithm::maoa:
    case Algorithm::maoa_sampling:
        analytic = [mu, rf](double e) { return analytic_maoa(e, mu, rf).p; };
        break;
    default:
        break;
    }
    result.curve = success_curve(success_efforts(result), grid, analytic);
    return result;
}

namespace {

void put(std::ostream& out, double v)
{
    char buf[40];
    if (std::isnan(v))
        return;
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

}  // namespace

void write_curve_csv(const SuccessCurve& curve, std::ostream& out)
{
    out << "effort,empirical_p,wilson_lo,wilson_hi,analytic_p\n";
    for (const auto& p : curve.points) {
        put(out, p.effort);
        out << ',';
        put(out, p.p);
        out << ',';
        put(out, p.lo);
        out << ',';
        put(out, p.hi);
        out << ',';
        put(out, p.analytic);
        out << '\n';
    }
}

void write_runs_csv(std::span<const RunRecord> runs, std::ostream& out)
{
    out << "run,success_effort,total_effort,threshold_effort,final_threshold,best,truncated\n";
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& r = runs[i];
        out << i << ',';
        if (r.success_effort != kNever)
            out << r.success_effort;
        out << ',' << r.total_effort << ',' << r.threshold_effort << ',';
        put(out, r.final_threshold);
        out << ',';
        put(out, r.best);
        out << ',' << (r.truncated ? 1 : 0) << '\n';
    }
}

void write_events_csv(std::span<const EffortEvent> events, std::ostream& out)
{
    out << "effort,best_quality,r_used,marked\n";
    for (const auto& e : events) {
        out << e.effort << ',';
        put(out, e.best_quality);
        out << ',' << e.r << ',' << (e.marked ? 1 : 0) << '\n';
    }
}

}  // namespace maoa
