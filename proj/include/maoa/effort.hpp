#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace maoa {

inline constexpr std::uint64_t kDefaultEffortCap = 100'000'000;
inline constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

/// One prepared-and-measured state (or classical sample when r = 0).
struct Measurement
{
    double quality;
    std::uint64_t id;
    bool marked;
};

/// The solutions that count as "found". Either every quality strictly below
/// a cutoff, or an explicit list of solution ids (ranks).
class TargetSet
{
  public:
    static TargetSet below(double cutoff);
    static TargetSet ids(std::vector<std::uint64_t> ids);

    bool hit(double quality, std::uint64_t id) const;
    std::optional<double> cutoff() const { return cutoff_; }
    const std::vector<std::uint64_t>& id_list() const { return ids_; }

  private:
    std::optional<double> cutoff_;
    std::vector<std::uint64_t> ids_;  // sorted
};

struct EffortEvent
{
    std::uint64_t effort;  // total calls after this entry
    double best_quality;
    std::uint32_t r;
    bool marked;
};

/// Running count of quality-function calls for one run. A measurement of an
/// r-rotation state costs 2r+1 calls; a classical sample is the r = 0 case.
///
/// The event log holds every improvement of the best quality, or every
/// measurement when `record_all` is set, so that the total is replayable as
/// the sum of 2r+1 over the log.
class EffortLedger
{
  public:
    explicit EffortLedger(std::uint64_t cap = kDefaultEffortCap, bool record_all = false);

    void set_target(TargetSet target, bool stop_on_success = true);
    const std::optional<TargetSet>& target() const { return target_; }

    static constexpr std::uint64_t cost(std::uint32_t r) { return 2ULL * r + 1; }

    bool can_afford(std::uint32_t r, std::uint64_t count = 1) const;

    /// Charges one measurement and records it.
    void charge(std::uint32_t r, const Measurement& m);

    /// Charges `count` measurements that neither improved the best quality
    /// nor hit the target. Truncates at the cap.
    void charge_misses(std::uint32_t r, std::uint64_t count);

    /// Spends whatever budget is left on misses at rotation count r and marks
    /// the run truncated.
    void exhaust(std::uint32_t r);

    void mark_truncated() { truncated_ = true; }

    std::uint64_t calls() const { return calls_; }
    std::uint64_t cap() const { return cap_; }
    bool records_all() const { return record_all_; }
    std::uint64_t measurements() const { return measurements_; }
    double best() const { return best_; }
    bool truncated() const { return truncated_; }
    bool success() const { return success_effort_ != kNever; }
    std::uint64_t success_effort() const { return success_effort_; }
    bool should_stop() const { return truncated_ || (success() && stop_on_success_); }

    const std::vector<EffortEvent>& events() const { return events_; }

  private:
    std::uint64_t cap_;
    bool record_all_;
    std::uint64_t calls_ = 0;
    std::uint64_t measurements_ = 0;
    double best_ = std::numeric_limits<double>::infinity();
    bool truncated_ = false;
    std::optional<TargetSet> target_;
    bool stop_on_success_ = true;
    std::uint64_t success_effort_ = kNever;
    std::vector<EffortEvent> events_;
};

}  // namespace maoa
