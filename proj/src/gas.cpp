#include <algorithm>
#include <cmath>

#include "maoa/algorithms.hpp"
#include "maoa/error.hpp"

namespace maoa {

void GasConfig::validate() const
{
    if (!(lambda > 1.0))
        throw ValidationError("GAS growth factor must exceed 1");
    if (r_max < 1)
        throw ValidationError("GAS rotation cap must be at least 1");
}

std::uint32_t gas_default_r_max(double space_size)
{
    if (!(space_size >= 1.0))
        throw ValidationError("GAS needs a non-empty solution space");
    const auto rc = complete_convergence_rotations(1.0 / space_size).nearest;
    return static_cast<std::uint32_t>(std::max<std::uint64_t>(1, rc));
}

GasResult gas_run(const QualityDistribution& dist, const GasConfig& cfg, Rng& rng,
                  EffortLedger& ledger)
{
    cfg.validate();
    GasResult out;
    if (!ledger.can_afford(0)) {
        ledger.exhaust(0);
        return out;
    }
    const Sample first = dist.sample_uniform(rng);
    ledger.charge(0, {first.quality, first.id, false});
    double best = first.quality;
    double m = 1.0;
    // r is drawn from [0, ceil(m)), so capping m at r_max + 1 allows r_max.
    const double cap = static_cast<double>(cfg.r_max) + 1.0;

    while (!ledger.should_stop()) {
        const auto span = static_cast<std::uint64_t>(std::ceil(m));
        const auto r = static_cast<std::uint32_t>(rng.index(span));
        if (!ledger.can_afford(r)) {
            ledger.exhaust(r);
            break;
        }
        const AmplifiedState state(dist, r, MarkingSpec{best});
        const Measurement x = state.measure(rng, ledger);
        ++out.measurements;
        if (x.quality < best) {
            best = x.quality;
            m = 1.0;
            ++out.improvements;
        } else {
            m = std::min(cfg.lambda * m, cap);
        }
    }
    return out;
}

GasResult rgas_run(const QualityDistribution& dist, std::uint32_t r_max, double lambda, Rng& rng,
                   EffortLedger& ledger)
{
    return gas_run(dist, GasConfig{lambda, r_max}, rng, ledger);
}

}  // namespace maoa
