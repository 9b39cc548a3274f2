#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "maoa/algorithms.hpp"
#include "maoa/distribution.hpp"
#include "maoa/effort.hpp"

namespace maoa {

enum class Algorithm { maoa, maoa_sampling, gas, rgas, classical };

std::string_view to_string(Algorithm algo);
/// Throws ValidationError on an unknown name.
Algorithm parse_algorithm(std::string_view name);

struct TargetSpec
{
    enum class Kind { ratio, cutoff, ids, optimum };
    Kind kind = Kind::ratio;
    double value = 1e-6;  // mu for ratio, quality for cutoff
    std::vector<std::uint64_t> ids;
};

struct ExperimentSpec
{
    std::shared_ptr<const QualityDistribution> dist;
    Algorithm algorithm = Algorithm::classical;
    MaoaConfig maoa;
    GasConfig gas{1.34, 0};  // r_max 0: derive from N (GAS) or use maoa r_f (RGAS)
    /// Sampling-phase threshold for maoa_sampling. Default: the quality
    /// marking 1/(40 (2r_f+1)^2) of the space.
    std::optional<double> sampling_threshold;
    TargetSpec target;
    std::uint64_t runs = 10'000;
    std::vector<double> effort_grid;  // empty: 64 points per decade up to the cap
    std::uint64_t effort_cap = kDefaultEffortCap;
    std::uint64_t master_seed = 0;
    unsigned workers = 1;
    std::uint64_t event_runs = 0;  // keep every measurement for the first K runs
    bool fast_forward = true;

    void validate() const;
};

struct RunRecord
{
    std::uint64_t success_effort = kNever;
    std::uint64_t total_effort = 0;
    std::uint64_t threshold_effort = 0;
    double final_threshold;
    double best;
    bool truncated = false;
};

struct CurvePoint
{
    double effort;
    double p;
    double lo;
    double hi;
    double analytic;  // NaN when there is no closed form
};

struct SuccessCurve
{
    std::vector<CurvePoint> points;
    std::uint64_t runs = 0;
};

struct ExperimentResult
{
    SuccessCurve curve;
    std::vector<RunRecord> runs;
    std::vector<std::vector<EffortEvent>> events;
    double target_ratio = 0.0;
    bool unreachable = false;
};

ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Quality cutoff and exact marked fraction realised by a target spec.
struct ResolvedTarget
{
    TargetSet set;
    double ratio;
};
ResolvedTarget resolve_target(const QualityDistribution& dist, const TargetSpec& target);

std::vector<double> log_effort_grid(double lo, double hi, int per_decade = 64);

struct Interval
{
    double lo;
    double hi;
};

Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z = 1.959963984540054);

/// Half-width of the simultaneous Dvoretzky-Kiefer-Wolfowitz band for an
/// empirical CDF of n samples at confidence 1 - alpha.
double dkw_epsilon(std::uint64_t n, double alpha);

/// 1 - (1 - mu)^e.
double analytic_classical(double effort, double mu);

struct AnalyticMaoa
{
    double p;
    bool clamped;  // mu (2r+1)^2 > 1 was clamped to 1
};

/// 1 - (1 - mu (2r+1)^2)^(e / (2r+1)).
AnalyticMaoa analytic_maoa(double effort, double mu, std::uint32_t r);

/// Empirical CDF of success efforts (kNever = no success) on a grid.
SuccessCurve success_curve(std::span<const std::uint64_t> success_efforts,
                           std::span<const double> grid,
                           const std::function<double(double)>& analytic = {});

struct SpeedupEstimate
{
    double value;
    double lo;
    double hi;
    double classical_effort;
    double quantum_effort;
};

/// Ratio of the effort each method needs to reach success probability
/// `level`, with an order-statistic confidence interval.
SpeedupEstimate speedup_estimate(std::span<const std::uint64_t> classical,
                                 std::span<const std::uint64_t> quantum, double level = 0.5,
                                 double z = 1.959963984540054);

/// Closed-form limit ln(1 - mu (2r+1)^2) / ((2r+1) ln(1 - mu)).
double analytic_speedup(double mu, std::uint32_t r);

std::vector<std::uint64_t> success_efforts(const ExperimentResult& result);

void write_curve_csv(const SuccessCurve& curve, std::ostream& out);
void write_runs_csv(std::span<const RunRecord> runs, std::ostream& out);
void write_events_csv(std::span<const EffortEvent> events, std::ostream& out);

}  // namespace maoa
