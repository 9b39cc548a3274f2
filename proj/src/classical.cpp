#include "maoa/algorithms.hpp"

namespace maoa {

std::uint64_t classical_run(const QualityDistribution& dist, Rng& rng, EffortLedger& ledger,
                            const ClassicalOptions& opts)
{
    const std::uint64_t start = ledger.measurements();
    const auto& target = ledger.target();
    const bool fast = opts.fast_forward && !ledger.records_all() && (!target || target->cutoff());

    if (!fast) {
        while (!ledger.should_stop()) {
            if (!ledger.can_afford(0)) {
                ledger.exhaust(0);
                break;
            }
            const Sample s = dist.sample_uniform(rng);
            ledger.charge(0, {s.quality, s.id, false});
        }
        return ledger.measurements() - start;
    }

    // Records process: only a sample below the current best can improve it or
    // reach the cutoff target, so wait for one geometrically.
    while (!ledger.should_stop()) {
        const double best = ledger.best();
        const double p = dist.marked_ratio(best);
        if (!(p > 0.0)) {
            ledger.exhaust(0);
            break;
        }
        const std::uint64_t k = rng.geometric_trials(p);
        if (!ledger.can_afford(0, k)) {
            ledger.charge_misses(0, k);
            break;
        }
        ledger.charge_misses(0, k - 1);
        const Sample s = dist.sample_marked(MarkingSpec{best}, rng);
        ledger.charge(0, {s.quality, s.id, false});
    }
    return ledger.measurements() - start;
}

}  // namespace maoa
