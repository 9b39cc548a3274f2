#include "maoa/grover.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace maoa {

double grover_probability(std::uint64_t r, double rho)
{
    if (rho <= 0.0)
        return 0.0;
    if (rho >= 1.0)
        rho = 1.0;
    const double s = std::sin((2.0 * static_cast<double>(r) + 1.0) * std::asin(std::sqrt(rho)));
    return std::clamp(s * s, 0.0, 1.0);
}

double low_convergence_probability(std::uint64_t r, double rho)
{
    const double k = 2.0 * static_cast<double>(r) + 1.0;
    return rho * k * k;
}

ConvergenceRotations complete_convergence_rotations(double rho)
{
    if (!(rho > 0.0) || rho > 1.0)
        throw std::domain_error("complete_convergence_rotations: need 0 < rho <= 1");
    const double exact = std::numbers::pi / (4.0 * std::asin(std::sqrt(rho))) - 0.5;
    return {exact, static_cast<std::uint64_t>(std::llround(std::max(0.0, exact)))};
}

std::string_view to_string(Regime regime)
{
    switch (regime) {
    case Regime::low_convergence:
        return "low";
    case Regime::high_convergence:
        return "high";
    case Regime::chaotic:
        return "chaotic";
    }
    return "?";
}

Regime classify_regime(std::uint64_t r, double rho)
{
    if (rho <= 0.0)
        return Regime::low_convergence;
    const double rc = complete_convergence_rotations(std::min(rho, 1.0)).exact;
    const auto rr = static_cast<double>(r);
    if (rr < 0.1 * rc && grover_probability(r, rho) < 1.0 / 40.0)
        return Regime::low_convergence;
    if (rr < 2.0 * rc)
        return Regime::high_convergence;
    return Regime::chaotic;
}

AmplifiedState::AmplifiedState(const QualityDistribution& dist, std::uint32_t r, MarkingSpec mark)
    : dist_(&dist), r_(r), mark_(mark)
{
    rho_ = dist.marked_ratio(mark);
    if (rho_ <= 0.0)
        p_ = 0.0;
    else if (rho_ >= 1.0)
        p_ = 1.0;
    else
        p_ = grover_probability(r, rho_);
}

Measurement AmplifiedState::sample(Rng& rng) const
{
    const bool marked = p_ >= 1.0 || (p_ > 0.0 && rng.bernoulli(p_));
    const Sample s = marked ? dist_->sample_marked(mark_, rng) : dist_->sample_unmarked(mark_, rng);
    return {s.quality, s.id, marked};
}

Measurement AmplifiedState::measure(Rng& rng, EffortLedger& ledger) const
{
    const Measurement m = sample(rng);
    ledger.charge(r_, m);
    return m;
}

std::vector<ResponsePoint> threshold_response_curve(const QualityDistribution& dist,
                                                    std::uint64_t r,
                                                    std::span<const double> grid)
{
    if (grid.empty())
        throw std::invalid_argument("threshold_response_curve: empty grid");
    std::vector<ResponsePoint> out;
    out.reserve(grid.size());
    for (double t : grid) {
        const double rho = dist.marked_ratio(t);
        out.push_back({t, rho, grover_probability(r, rho), classify_regime(r, rho)});
    }
    return out;
}

std::vector<double> response_grid(const QualityDistribution& dist, std::uint64_t r, double lo,
                                  double hi)
{
    if (!(hi > lo))
        throw std::invalid_argument("response_grid: need lo < hi");
    // Peaks sit where (2r+1) asin(sqrt(rho)) = (k + 1/2) pi.
    const double k2 = 2.0 * static_cast<double>(r) + 1.0;
    std::vector<double> peaks;
    for (std::uint64_t k = 0; k <= r; ++k) {
        const double s = std::sin((static_cast<double>(k) + 0.5) * std::numbers::pi / k2);
        const double rho = std::min(1.0, s * s);
        if (rho >= 1.0)
            break;
        const double t = dist.quantile(rho);
        if (std::isfinite(t) && t >= lo && t <= hi)
            peaks.push_back(t);
    }
    double spacing = hi - lo;
    for (std::size_t i = 1; i < peaks.size(); ++i)
        if (peaks[i] > peaks[i - 1])
            spacing = std::min(spacing, peaks[i] - peaks[i - 1]);
    constexpr double kMaxPoints = 4e6;
    const double step = std::max(spacing / 8.0, (hi - lo) / kMaxPoints);
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
    std::vector<double> grid(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    return grid;
}

ExtremaCount count_extrema(std::span<const double> values)
{
    ExtremaCount c{0, 0};
    int last = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double d = values[i] - values[i - 1];
        const int sign = (d > 0) - (d < 0);
        if (sign == 0)
            continue;
        if (last > 0 && sign < 0)
            ++c.maxima;
        else if (last < 0 && sign > 0)
            ++c.minima;
        last = sign;
    }
    return c;
}

ExpectationValue expectation_response(const QualityDistribution& dist, std::uint64_t r,
                                      double threshold)
{
    const double rho = dist.marked_ratio(threshold);
    const auto below = dist.mean_below(threshold);
    const auto above = dist.mean_at_or_above(threshold);
    if (!below)
        return {*above, *above};
    if (!above)
        return {*below, *below};
    const double p = rho >= 1.0 ? 1.0 : grover_probability(r, rho);
    const double angle = (2.0 * static_cast<double>(r) + 1.0) * std::asin(std::sqrt(rho));
    const double s = std::sin(std::min(angle, std::numbers::pi / 2));
    const double p_env = std::min(1.0, s * s);
    return {p * *below + (1.0 - p) * *above, p_env * *below + (1.0 - p_env) * *above};
}

void write_response_csv(std::span<const ResponsePoint> curve, std::ostream& out)
{
    out << "threshold,rho,probability,regime\n";
    char buf[128];
    for (const auto& p : curve) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,", p.threshold, p.rho, p.probability);
        out << buf << to_string(p.regime) << '\n';
    }
}

}  // namespace maoa
