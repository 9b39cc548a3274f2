#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include "maoa/algorithms.hpp"
#include "maoa/error.hpp"

namespace maoa {

Measurement GroverSource::measure(std::uint32_t r, double threshold, Rng& rng)
{
    return AmplifiedState(*dist_, r, MarkingSpec{threshold}).sample(rng);
}

void MaoaConfig::validate() const
{
    if (final_rotations == 0 || !std::has_single_bit(final_rotations))
        throw ValidationError("final rotation count must be a power of two");
    if (initial_sample < 2 || streak_target == 0 || steps_per_peak_scan == 0 ||
        as_success_cap == 0 || weight_power < 0)
        throw ValidationError("MAOA counts must be positive");
    if (!(stepsize_divisor > 0.0))
        throw ValidationError("stepsize divisor must be positive");
}

namespace {

// Measures once if the budget allows; false when the run must stop.
bool take(MeasurementSource& source, std::uint32_t r, double threshold, Rng& rng,
          EffortLedger& ledger, Measurement& out)
{
    if (ledger.should_stop())
        return false;
    if (!ledger.can_afford(r)) {
        ledger.exhaust(r);
        return false;
    }
    out = source.measure(r, threshold, rng);
    ledger.charge(r, out);
    return true;
}

// Linear-interpolation quantile of sorted data.
double sorted_quantile(const std::vector<double>& v, double p)
{
    const double h = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

FindPeakResult find_peak(MeasurementSource& source, std::uint32_t r, double start,
                         double stepsize, const MaoaConfig& cfg, Rng& rng, EffortLedger& ledger)
{
    double t = start;
    double sum = 0.0;
    double weights = 0.0;
    Measurement m{};
    for (std::uint32_t i = 0; i < cfg.steps_per_peak_scan; ++i) {
        t -= stepsize;
        std::uint32_t count = 0;
        while (count < cfg.streak_target) {
            if (!take(source, r, t, rng, ledger, m))
                return {t};
            if (m.quality < t) {
                ++count;
            } else {
                const double w = std::pow(static_cast<double>(count), cfg.weight_power);
                sum += t * w;
                weights += w;
                break;
            }
        }
        if (count == cfg.streak_target)
            return {t, true, false};
    }
    if (weights == 0.0)
        return {start - cfg.steps_per_peak_scan * stepsize, false, true};
    return {sum / weights};
}

double threshold_for_as(MeasurementSource& source, std::uint32_t r, double start,
                        double stepsize, const MaoaConfig& cfg, Rng& rng, EffortLedger& ledger)
{
    double t = start;
    double best = start;
    Measurement m{};
    for (std::uint32_t i = 0; i < cfg.steps_per_peak_scan; ++i) {
        t -= stepsize;
        if (!take(source, r, t, rng, ledger, m))
            break;
        best = std::min(best, m.quality);
    }
    return best;
}

double adaptive_search(MeasurementSource& source, std::uint32_t r, double threshold,
                       const MaoaConfig& cfg, Rng& rng, EffortLedger& ledger)
{
    std::uint64_t count = 0;
    Measurement m{};
    while (count < cfg.as_success_cap) {
        count = 0;
        while (true) {
            if (!take(source, r, threshold, rng, ledger, m))
                return threshold;
            ++count;
            if (m.quality < threshold) {
                threshold = m.quality;
                break;
            }
        }
    }
    return threshold;
}

ThresholdResult maoa_final_threshold(MeasurementSource& source, const MaoaConfig& cfg, Rng& rng,
                                     EffortLedger& ledger)
{
    cfg.validate();
    const std::uint64_t effort_start = ledger.calls();
    ThresholdResult out{};
    auto finish = [&](double t) {
        out.threshold = t;
        out.truncated = ledger.truncated();
        out.effort = ledger.calls() - effort_start;
        return out;
    };

    std::vector<double> qualities;
    qualities.reserve(cfg.initial_sample);
    for (std::uint32_t i = 0; i < cfg.initial_sample; ++i) {
        if (ledger.should_stop())
            break;
        if (!ledger.can_afford(0)) {
            ledger.exhaust(0);
            break;
        }
        const Sample s = source.sample(rng);
        ledger.charge(0, {s.quality, s.id, false});
        qualities.push_back(s.quality);
    }
    if (qualities.size() < cfg.initial_sample)
        return finish(qualities.empty() ? std::numeric_limits<double>::infinity()
                                        : *std::min_element(qualities.begin(), qualities.end()));

    std::sort(qualities.begin(), qualities.end());
    out.sample_median = sorted_quantile(qualities, 0.5);
    out.sample_q1 = sorted_quantile(qualities, 0.25);

    // A stepsize that is zero or negative would stall or reverse the scan;
    // keep the last usable one instead.
    double stepsize = (out.sample_median - out.sample_q1) / cfg.stepsize_divisor;
    if (!(stepsize > 0.0))
        stepsize = (out.sample_median - qualities.front()) / cfg.stepsize_divisor;
    if (!(stepsize > 0.0))
        stepsize = 1e-9 * std::max(1.0, std::abs(out.sample_median));
    auto next_step = [&](double upper, double lower) {
        const double s = (upper - lower) / cfg.stepsize_divisor;
        if (s > 0.0 && std::isfinite(s))
            stepsize = s;
        return stepsize;
    };

    // peak[k] is the threshold found at r = 2^k.
    std::vector<double> peak;
    auto scan = [&](std::uint32_t r, double from) {
        const FindPeakResult fp = find_peak(source, r, from, stepsize, cfg, rng, ledger);
        out.peaks.push_back({r, fp.threshold, fp.zero_weight});
        out.warning = out.warning || fp.zero_weight;
        peak.push_back(fp.threshold);
        return fp.threshold;
    };

    const std::uint32_t rf = cfg.final_rotations;
    scan(1, out.sample_median);
    if (ledger.should_stop())
        return finish(peak.back());
    if (rf == 1)
        return finish(adaptive_search(source, 1, peak[0], cfg, rng, ledger));
    scan(2, peak[0]);
    if (ledger.should_stop())
        return finish(peak.back());
    if (rf == 2)
        return finish(adaptive_search(source, 2, peak[1], cfg, rng, ledger));

    std::uint32_t r = 4;
    std::size_t k = 2;  // log2(r)
    while (r < rf) {
        next_step(peak[k - 2], peak[k - 1]);
        scan(r, peak[k - 1]);
        if (ledger.should_stop())
            return finish(peak.back());
        r *= 2;
        ++k;
    }
    next_step(peak[k - 2], peak[k - 1]);
    const double t = threshold_for_as(source, r, peak[k - 1], stepsize, cfg, rng, ledger);
    return finish(adaptive_search(source, r, t, cfg, rng, ledger));
}

SamplePhaseResult maoa_sample_phase(const QualityDistribution& dist, std::uint32_t r,
                                    double threshold, Rng& rng, EffortLedger& ledger,
                                    const SamplePhaseOptions& opts)
{
    SamplePhaseResult out;
    const AmplifiedState state(dist, r, MarkingSpec{threshold});
    const auto& target = ledger.target();
    const bool fast = opts.fast_forward && opts.max_measurements == 0 && !ledger.records_all() &&
                      target && target->cutoff();

    if (!fast) {
        while (!ledger.should_stop() &&
               (opts.max_measurements == 0 || out.measurements < opts.max_measurements)) {
            if (!ledger.can_afford(r)) {
                ledger.exhaust(r);
                break;
            }
            const Measurement m = state.measure(rng, ledger);
            ++out.measurements;
            out.marked += m.marked;
        }
        return out;
    }

    // Only measurements landing below the current best can improve it or hit
    // the cutoff target (success stops the run, so best >= cutoff throughout).
    // Jump straight to the next such measurement.
    const double p = state.success_probability();
    const double rho = state.marked_ratio();
    while (!ledger.should_stop()) {
        const double best = ledger.best();
        const double marked_top = std::min(threshold, best);
        const double a = rho > 0.0 ? p * (dist.marked_ratio(marked_top) / rho) : 0.0;
        const double b =
            rho < 1.0 && best > threshold ? (1.0 - p) * dist.mass_between(threshold, best) / (1.0 - rho)
                                          : 0.0;
        const double event = a + b;
        if (!(event > 0.0)) {
            ledger.exhaust(r);
            break;
        }
        const std::uint64_t k = rng.geometric_trials(std::min(1.0, event));
        if (!ledger.can_afford(r, k)) {
            const std::uint64_t before = ledger.measurements();
            ledger.charge_misses(r, k);
            out.measurements += ledger.measurements() - before;
            break;
        }
        ledger.charge_misses(r, k - 1);
        const bool marked = rng.uniform() * event < a;
        const Sample s = marked ? dist.sample_marked(MarkingSpec{marked_top}, rng)
                                : dist.sample_between(threshold, best, rng);
        ledger.charge(r, {s.quality, s.id, marked});
        out.measurements += k;
        out.marked += marked;
    }
    return out;
}

MaoaRunResult maoa_run(const QualityDistribution& dist, const MaoaConfig& cfg, Rng& rng,
                       EffortLedger& ledger, const SamplePhaseOptions& opts)
{
    MaoaRunResult out;
    GroverSource source(dist);
    out.threshold = maoa_final_threshold(source, cfg, rng, ledger);
    if (!ledger.should_stop())
        out.sampling =
            maoa_sample_phase(dist, cfg.final_rotations, out.threshold.threshold, rng, ledger, opts);
    return out;
}

}  // namespace maoa
