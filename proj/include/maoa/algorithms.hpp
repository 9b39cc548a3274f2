#pragma once

#include <cstdint>
#include <vector>

#include "maoa/distribution.hpp"
#include "maoa/effort.hpp"
#include "maoa/grover.hpp"
#include "maoa/rng.hpp"

namespace maoa {

// ---------------------------------------------------------------------------
// Measurement sources

/// What the threshold search needs from the problem: classical samples and
/// measurements of amplified states marked by q < T. Implementations must not
/// charge the ledger; the algorithms do that.
class MeasurementSource
{
  public:
    virtual ~MeasurementSource() = default;
    virtual Sample sample(Rng& rng) = 0;
    virtual Measurement measure(std::uint32_t r, double threshold, Rng& rng) = 0;
};

/// The truncated-Grover model over a quality distribution.
class GroverSource final : public MeasurementSource
{
  public:
    explicit GroverSource(const QualityDistribution& dist) : dist_(&dist) {}
    Sample sample(Rng& rng) override { return dist_->sample_uniform(rng); }
    Measurement measure(std::uint32_t r, double threshold, Rng& rng) override;

  private:
    const QualityDistribution* dist_;
};

// ---------------------------------------------------------------------------
// MAOA

struct MaoaConfig
{
    std::uint32_t final_rotations = 64;  // r_f, a power of two
    std::uint32_t initial_sample = 200;
    std::uint32_t streak_target = 20;
    std::uint32_t steps_per_peak_scan = 20;
    double stepsize_divisor = 10.0;
    std::uint32_t as_success_cap = 40;
    int weight_power = 4;

    /// Throws ValidationError.
    void validate() const;
};

struct FindPeakResult
{
    double threshold;
    bool streak = false;        // returned early on a full streak
    bool zero_weight = false;   // no marked measurement at any scanned threshold
};

FindPeakResult find_peak(MeasurementSource& source, std::uint32_t r, double start,
                         double stepsize, const MaoaConfig& cfg, Rng& rng, EffortLedger& ledger);

/// Lowest quality measured while scanning down from `start`, or `start`.
double threshold_for_as(MeasurementSource& source, std::uint32_t r, double start,
                        double stepsize, const MaoaConfig& cfg, Rng& rng, EffortLedger& ledger);

/// Lowers T to every improving measurement until one takes at least
/// as_success_cap measurements to find.
double adaptive_search(MeasurementSource& source, std::uint32_t r, double threshold,
                       const MaoaConfig& cfg, Rng& rng, EffortLedger& ledger);

struct PeakRecord
{
    std::uint32_t r;
    double threshold;
    bool zero_weight;
};

struct ThresholdResult
{
    double threshold;
    std::vector<PeakRecord> peaks;
    double sample_median = 0.0;
    double sample_q1 = 0.0;
    bool warning = false;    // some FindPeak hit the zero-weight path
    bool truncated = false;  // ledger ran out before AdaptiveSearch finished
    std::uint64_t effort = 0;
};

ThresholdResult maoa_final_threshold(MeasurementSource& source, const MaoaConfig& cfg, Rng& rng,
                                     EffortLedger& ledger);

struct SamplePhaseOptions
{
    /// Skip over measurements that cannot change the run's outcome by drawing
    /// the gap to the next marked or target hit geometrically. Same law as the
    /// one-at-a-time loop; used only for cutoff targets.
    bool fast_forward = true;

    /// Stop after this many measurements (0 = until the ledger stops).
    std::uint64_t max_measurements = 0;
};

struct SamplePhaseResult
{
    std::uint64_t measurements = 0;
    std::uint64_t marked = 0;  // fast-forward counts only marked draws that improved the best
};

/// Repeatedly prepares and measures the r-rotation state marked by q < T
/// until the ledger reports success or truncation, or the measurement limit.
SamplePhaseResult maoa_sample_phase(const QualityDistribution& dist, std::uint32_t r,
                                    double threshold, Rng& rng, EffortLedger& ledger,
                                    const SamplePhaseOptions& opts = {});

struct MaoaRunResult
{
    ThresholdResult threshold;
    SamplePhaseResult sampling;
};

/// Threshold phase followed by the sampling phase at r_f.
MaoaRunResult maoa_run(const QualityDistribution& dist, const MaoaConfig& cfg, Rng& rng,
                       EffortLedger& ledger, const SamplePhaseOptions& opts = {});

// ---------------------------------------------------------------------------
// Grover adaptive search

struct GasConfig
{
    double lambda = 1.34;
    std::uint32_t r_max = 1;

    void validate() const;
};

/// Rotation cap for unrestricted GAS: the nearest complete-convergence count
/// for a single marked solution among N.
std::uint32_t gas_default_r_max(double space_size);

struct GasResult
{
    std::uint64_t measurements = 0;
    std::uint64_t improvements = 0;
};

GasResult gas_run(const QualityDistribution& dist, const GasConfig& cfg, Rng& rng,
                  EffortLedger& ledger);

/// GAS with a user-chosen rotation cap.
GasResult rgas_run(const QualityDistribution& dist, std::uint32_t r_max, double lambda, Rng& rng,
                   EffortLedger& ledger);

// ---------------------------------------------------------------------------
// Classical random sampling

struct ClassicalOptions
{
    /// Draw the wait until the next improving sample geometrically instead of
    /// one sample at a time. Same law; cutoff or no target only.
    bool fast_forward = true;
};

std::uint64_t classical_run(const QualityDistribution& dist, Rng& rng, EffortLedger& ledger,
                            const ClassicalOptions& opts = {});

}  // namespace maoa
