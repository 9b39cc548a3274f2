#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "maoa/rng.hpp"

namespace maoa {

enum class Sense { minimise, maximise };

/// Binary marking predicate. Minimise marks q < threshold, maximise marks
/// q > threshold; ties are never marked. `second_threshold` is only consulted
/// by two-dimensional tables (see PortfolioTable).
struct MarkingSpec
{
    double threshold = 0.0;
    Sense sense = Sense::minimise;
    std::optional<double> second_threshold;

    bool marks(double quality) const
    {
        return sense == Sense::minimise ? quality < threshold : quality > threshold;
    }
};

inline constexpr std::uint64_t kNoSolutionId = std::numeric_limits<std::uint64_t>::max();

/// A single drawn solution. `id` is the rank in the sorted distribution for
/// finite spaces and kNoSolutionId for the analytic normal.
struct Sample
{
    double quality;
    std::uint64_t id;
};

/// Sorted multiset of qualities stored as (value, multiplicity) runs.
class FiniteDistribution
{
  public:
    struct Run
    {
        double value;
        std::uint64_t count;
        bool operator==(const Run&) const = default;
    };

    /// Sorts and compresses. Throws ValidationError on empty input or NaN.
    static FiniteDistribution from_values(std::vector<double> values);

    /// Runs must have strictly increasing finite values and positive counts.
    static FiniteDistribution from_runs(std::vector<Run> runs);

    std::span<const Run> runs() const { return runs_; }
    std::uint64_t size() const { return total_; }
    double min() const { return runs_.front().value; }
    double max() const { return runs_.back().value; }
    double mean() const;

    /// Number of solutions with quality strictly below / above t.
    std::uint64_t count_below(double t) const;
    std::uint64_t count_above(double t) const;

    /// Quality at a rank in [0, size()).
    double value_at(std::uint64_t rank) const;

    /// Sum of qualities over ranks [0, rank).
    long double prefix_sum(std::uint64_t rank) const;

    std::vector<double> expand() const;

    bool operator==(const FiniteDistribution& other) const { return runs_ == other.runs_; }

  private:
    FiniteDistribution() = default;
    void build_index();

    std::vector<Run> runs_;
    std::vector<std::uint64_t> cumulative_;  // exclusive prefix of counts
    std::vector<long double> prefix_sums_;   // exclusive prefix of value*count
    std::uint64_t total_ = 0;
};

/// Standard normal quality distribution in the large-problem limit.
struct NormalDistribution
{
};

/// Either a precomputed finite distribution or the analytic standard normal.
/// Immutable; safe to share across threads.
class QualityDistribution
{
  public:
    QualityDistribution(FiniteDistribution finite) : impl_(std::move(finite)) {}
    QualityDistribution(NormalDistribution normal) : impl_(normal) {}

    bool is_finite() const { return std::holds_alternative<FiniteDistribution>(impl_); }
    const FiniteDistribution& finite() const { return std::get<FiniteDistribution>(impl_); }

    /// Fraction of the space marked by `mark` (second threshold ignored).
    double marked_ratio(const MarkingSpec& mark) const;
    double marked_ratio(double threshold) const { return marked_ratio(MarkingSpec{threshold}); }

    /// Minimise-sense threshold T with marked_ratio(T) ~= p. Finite: the
    /// smallest threshold marking at least ceil(p N) solutions.
    double quantile(double p) const;

    Sample sample_uniform(Rng& rng) const;

    /// Uniform draw from the marked (or unmarked) side of `mark`.
    /// Precondition: the requested side is non-empty.
    Sample sample_marked(const MarkingSpec& mark, Rng& rng) const;
    Sample sample_unmarked(const MarkingSpec& mark, Rng& rng) const;

    /// Uniform draw from lo <= q < hi. Precondition: non-empty range.
    Sample sample_between(double lo, double hi, Rng& rng) const;

    /// Probability mass of lo <= q < hi.
    double mass_between(double lo, double hi) const;

    double mean() const;

    /// Mean quality below / at-or-above t; nullopt when that side is empty.
    std::optional<double> mean_below(double t) const;
    std::optional<double> mean_at_or_above(double t) const;

    double min() const;
    double max() const;

  private:
    std::variant<FiniteDistribution, NormalDistribution> impl_;
};

double marked_ratio(const QualityDistribution& dist, const MarkingSpec& mark);
double quantile(const QualityDistribution& dist, double p);
Sample sample_uniform(const QualityDistribution& dist, Rng& rng);

/// Binary file: "MAOADIST" magic, version byte, u64 run count, then
/// little-endian (f64 value, u64 multiplicity) runs with strictly increasing
/// values.
void save(const FiniteDistribution& dist, const std::filesystem::path& path);
void save(const FiniteDistribution& dist, std::ostream& out);
FiniteDistribution load(const std::filesystem::path& path);
FiniteDistribution load(std::istream& in);

/// "value,multiplicity" CSV for inspection.
void export_csv(const FiniteDistribution& dist, std::ostream& out);

}  // namespace maoa
