#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "maoa/distribution.hpp"
#include "maoa/effort.hpp"
#include "maoa/rng.hpp"

namespace maoa {

/// sin^2((2r+1) asin(sqrt(rho))).
double grover_probability(std::uint64_t r, double rho);

/// rho (2r+1)^2, the small-r, small-rho form of grover_probability.
double low_convergence_probability(std::uint64_t r, double rho);

struct ConvergenceRotations
{
    double exact;
    std::uint64_t nearest;
};

/// pi / (4 asin(sqrt(rho))) - 1/2. Throws std::domain_error for rho <= 0.
ConvergenceRotations complete_convergence_rotations(double rho);

enum class Regime { low_convergence, high_convergence, chaotic };

std::string_view to_string(Regime regime);

/// low when P < 1/40 and r < 0.1 r_c; otherwise high when r < 2 r_c;
/// otherwise chaotic. rho = 0 counts as low convergence.
Regime classify_regime(std::uint64_t r, double rho);

/// A truncated-Grover state over `dist`, amplified for the marked set of
/// `mark`. Measuring it yields a uniform marked solution with probability
/// P(r, rho) and a uniform unmarked one otherwise.
class AmplifiedState
{
  public:
    AmplifiedState(const QualityDistribution& dist, std::uint32_t r, MarkingSpec mark);

    std::uint32_t rotations() const { return r_; }
    double marked_ratio() const { return rho_; }
    double success_probability() const { return p_; }
    const MarkingSpec& mark() const { return mark_; }

    /// Draws one outcome without charging anything.
    Measurement sample(Rng& rng) const;

    /// Draws one outcome and charges 2r+1 to the ledger.
    Measurement measure(Rng& rng, EffortLedger& ledger) const;

  private:
    const QualityDistribution* dist_;
    std::uint32_t r_;
    MarkingSpec mark_;
    double rho_;
    double p_;
};

struct ResponsePoint
{
    double threshold;
    double rho;
    double probability;
    Regime regime;
};

/// P(r, rho(T)) over a grid of minimise-sense thresholds.
std::vector<ResponsePoint> threshold_response_curve(const QualityDistribution& dist,
                                                    std::uint64_t r,
                                                    std::span<const double> grid);

/// Uniform grid over [lo, hi] fine enough to resolve every peak of the
/// response curve: the step is an eighth of the smallest distance between
/// adjacent peaks in T for the given r.
std::vector<double> response_grid(const QualityDistribution& dist, std::uint64_t r, double lo,
                                  double hi);

struct ExtremaCount
{
    std::size_t maxima;
    std::size_t minima;
};

/// Strict sign changes of the finite differences of `values`.
ExtremaCount count_extrema(std::span<const double> values);

struct ExpectationValue
{
    double expected;  // using P(r, rho)
    double envelope;  // using sin^2 of the angle clamped at pi/2
};

/// Expected measured quality of the amplified state at threshold T.
ExpectationValue expectation_response(const QualityDistribution& dist, std::uint64_t r,
                                      double threshold);

/// CSV "threshold,rho,probability,regime", 17 significant digits.
void write_response_csv(std::span<const ResponsePoint> curve, std::ostream& out);

}  // namespace maoa
