#include "maoa/effort.hpp"

#include <algorithm>

namespace maoa {

TargetSet TargetSet::below(double cutoff)
{
    TargetSet t;
    t.cutoff_ = cutoff;
    return t;
}

TargetSet TargetSet::ids(std::vector<std::uint64_t> ids)
{
    TargetSet t;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    t.ids_ = std::move(ids);
    return t;
}

bool TargetSet::hit(double quality, std::uint64_t id) const
{
    if (cutoff_)
        return quality < *cutoff_;
    return std::binary_search(ids_.begin(), ids_.end(), id);
}

EffortLedger::EffortLedger(std::uint64_t cap, bool record_all) : cap_(cap), record_all_(record_all)
{
}

void EffortLedger::set_target(TargetSet target, bool stop_on_success)
{
    target_ = std::move(target);
    stop_on_success_ = stop_on_success;
}

bool EffortLedger::can_afford(std::uint32_t r, std::uint64_t count) const
{
    const std::uint64_t unit = cost(r);
    const std::uint64_t left = cap_ - std::min(cap_, calls_);
    return count <= left / unit;
}

void EffortLedger::charge(std::uint32_t r, const Measurement& m)
{
    calls_ += cost(r);
    ++measurements_;
    const bool improved = m.quality < best_;
    if (improved)
        best_ = m.quality;
    if (!success() && target_ && target_->hit(m.quality, m.id))
        success_effort_ = calls_;
    if (record_all_ || improved)
        events_.push_back({calls_, best_, r, m.marked});
}

void EffortLedger::charge_misses(std::uint32_t r, std::uint64_t count)
{
    const std::uint64_t unit = cost(r);
    const std::uint64_t left = cap_ - std::min(cap_, calls_);
    if (count > left / unit) {
        count = left / unit;
        truncated_ = true;
    }
    if (record_all_) {
        for (std::uint64_t i = 0; i < count; ++i) {
            calls_ += unit;
            events_.push_back({calls_, best_, r, false});
        }
    } else {
        calls_ += count * unit;
    }
    measurements_ += count;
}

void EffortLedger::exhaust(std::uint32_t r)
{
    const std::uint64_t left = cap_ - std::min(cap_, calls_);
    charge_misses(r, left / cost(r));
    truncated_ = true;
}

}  // namespace maoa
