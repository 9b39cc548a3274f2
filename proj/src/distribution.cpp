#include "maoa/distribution.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "maoa/error.hpp"
#include "maoa/normal.hpp"

namespace maoa {

// ---------------------------------------------------------------------------
// FiniteDistribution

FiniteDistribution FiniteDistribution::from_values(std::vector<double> values)
{
    if (values.empty())
        throw ValidationError("distribution must contain at least one solution");
    for (double v : values)
        if (!std::isfinite(v))
            throw ValidationError("distribution qualities must be finite");
    std::sort(values.begin(), values.end());

    std::vector<Run> runs;
    for (double v : values) {
        if (!runs.empty() && runs.back().value == v)
            ++runs.back().count;
        else
            runs.push_back({v, 1});
    }
    FiniteDistribution out;
    out.runs_ = std::move(runs);
    out.build_index();
    return out;
}

FiniteDistribution FiniteDistribution::from_runs(std::vector<Run> runs)
{
    if (runs.empty())
        throw ValidationError("distribution must contain at least one run");
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (!std::isfinite(runs[i].value))
            throw ValidationError("distribution qualities must be finite");
        if (runs[i].count == 0)
            throw ValidationError("run multiplicity must be positive");
        if (i > 0 && !(runs[i - 1].value < runs[i].value))
            throw ValidationError("run values must be strictly increasing");
    }
    FiniteDistribution out;
    out.runs_ = std::move(runs);
    out.build_index();
    return out;
}

void FiniteDistribution::build_index()
{
    cumulative_.resize(runs_.size() + 1);
    prefix_sums_.resize(runs_.size() + 1);
    cumulative_[0] = 0;
    prefix_sums_[0] = 0;
    for (std::size_t i = 0; i < runs_.size(); ++i) {
        cumulative_[i + 1] = cumulative_[i] + runs_[i].count;
        prefix_sums_[i + 1] =
            prefix_sums_[i] + static_cast<long double>(runs_[i].value) * runs_[i].count;
    }
    total_ = cumulative_.back();
}

double FiniteDistribution::mean() const
{
    return static_cast<double>(prefix_sums_.back() / total_);
}

std::uint64_t FiniteDistribution::count_below(double t) const
{
    auto it = std::lower_bound(runs_.begin(), runs_.end(), t,
                               [](const Run& r, double v) { return r.value < v; });
    return cumulative_[static_cast<std::size_t>(it - runs_.begin())];
}

std::uint64_t FiniteDistribution::count_above(double t) const
{
    auto it = std::upper_bound(runs_.begin(), runs_.end(), t,
                               [](double v, const Run& r) { return v < r.value; });
    return total_ - cumulative_[static_cast<std::size_t>(it - runs_.begin())];
}

double FiniteDistribution::value_at(std::uint64_t rank) const
{
    auto it = std::upper_bound(cumulative_.begin() + 1, cumulative_.end(), rank);
    return runs_[static_cast<std::size_t>(it - cumulative_.begin() - 1)].value;
}

long double FiniteDistribution::prefix_sum(std::uint64_t rank) const
{
    if (rank >= total_)
        return prefix_sums_.back();
    auto it = std::upper_bound(cumulative_.begin() + 1, cumulative_.end(), rank);
    const auto j = static_cast<std::size_t>(it - cumulative_.begin() - 1);
    return prefix_sums_[j] + static_cast<long double>(runs_[j].value) * (rank - cumulative_[j]);
}

std::vector<double> FiniteDistribution::expand() const
{
    std::vector<double> out;
    out.reserve(total_);
    for (const Run& r : runs_)
        out.insert(out.end(), r.count, r.value);
    return out;
}

// ---------------------------------------------------------------------------
// QualityDistribution

namespace {

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Sample finite_rank_sample(const FiniteDistribution& d, std::uint64_t lo, std::uint64_t hi,
                          Rng& rng)
{
    const std::uint64_t rank = lo + rng.index(hi - lo);
    return {d.value_at(rank), rank};
}

// Normal draw with lo <= q < hi using whichever tail keeps precision.
double normal_between(double lo, double hi, Rng& rng)
{
    const double u = rng.uniform_open();
    if (lo >= 0.0) {
        const double s_hi = normal::sf(hi);
        const double s_lo = normal::sf(lo);
        return normal::upper_quantile(s_hi + u * (s_lo - s_hi));
    }
    const double c_lo = normal::cdf(lo);
    const double c_hi = normal::cdf(hi);
    return normal::quantile(c_lo + u * (c_hi - c_lo));
}

}  // namespace

double QualityDistribution::marked_ratio(const MarkingSpec& mark) const
{
    return std::visit(
        overloaded{[&](const FiniteDistribution& d) {
                       const std::uint64_t m = mark.sense == Sense::minimise
                                                   ? d.count_below(mark.threshold)
                                                   : d.count_above(mark.threshold);
                       return static_cast<double>(m) / static_cast<double>(d.size());
                   },
                   [&](const NormalDistribution&) {
                       return mark.sense == Sense::minimise ? normal::cdf(mark.threshold)
                                                            : normal::sf(mark.threshold);
                   }},
        impl_);
}

double QualityDistribution::quantile(double p) const
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("quantile: probability outside [0, 1]");
    return std::visit(
        overloaded{[&](const FiniteDistribution& d) {
                       const double n = static_cast<double>(d.size());
                       const double k = std::ceil(p * n - 1e-9);
                       if (k <= 0.0)
                           return d.min();
                       // Next distinct value above rank k-1, so ties at the
                       // boundary are marked together.
                       const double v = d.value_at(static_cast<std::uint64_t>(std::min(k, n) - 1.0));
                       const std::uint64_t at_or_below = d.size() - d.count_above(v);
                       if (at_or_below >= d.size())
                           return std::nextafter(d.max(), std::numeric_limits<double>::infinity());
                       return d.value_at(at_or_below);
                   },
                   [&](const NormalDistribution&) { return normal::quantile(p); }},
        impl_);
}

Sample QualityDistribution::sample_uniform(Rng& rng) const
{
    return std::visit(
        overloaded{[&](const FiniteDistribution& d) { return finite_rank_sample(d, 0, d.size(), rng); },
                   [&](const NormalDistribution&) {
                       return Sample{normal::quantile(rng.uniform_open()), kNoSolutionId};
                   }},
        impl_);
}

Sample QualityDistribution::sample_marked(const MarkingSpec& mark, Rng& rng) const
{
    return std::visit(
        overloaded{[&](const FiniteDistribution& d) {
                       if (mark.sense == Sense::minimise)
                           return finite_rank_sample(d, 0, d.count_below(mark.threshold), rng);
                       return finite_rank_sample(d, d.size() - d.count_above(mark.threshold),
                                                 d.size(), rng);
                   },
                   [&](const NormalDistribution&) {
                       const double u = rng.uniform_open();
                       const double q =
                           mark.sense == Sense::minimise
                               ? normal::quantile(u * normal::cdf(mark.threshold))
                               : normal::upper_quantile(u * normal::sf(mark.threshold));
                       return Sample{q, kNoSolutionId};
                   }},
        impl_);
}

Sample QualityDistribution::sample_unmarked(const MarkingSpec& mark, Rng& rng) const
{
    return std::visit(
        overloaded{[&](const FiniteDistribution& d) {
                       if (mark.sense == Sense::minimise)
                           return finite_rank_sample(d, d.count_below(mark.threshold), d.size(),
                                                     rng);
                       return finite_rank_sample(d, 0, d.size() - d.count_above(mark.threshold),
                                                 rng);
                   },
                   [&](const NormalDistribution&) {
                       const double u = rng.uniform_open();
                       const double q =
                           mark.sense == Sense::minimise
                               ? normal::upper_quantile(u * normal::sf(mark.threshold))
                               : normal::quantile(u * normal::cdf(mark.threshold));
                       return Sample{q, kNoSolutionId};
                   }},
        impl_);
}

Sample QualityDistribution::sample_between(double lo, double hi, Rng& rng) const
{
    return std::visit(
        overloaded{[&](const FiniteDistribution& d) {
                       return finite_rank_sample(d, d.count_below(lo), d.count_below(hi), rng);
                   },
                   [&](const NormalDistribution&) {
                       return Sample{normal_between(lo, hi, rng), kNoSolutionId};
                   }},
        impl_);
}

double QualityDistribution::mass_between(double lo, double hi) const
{
    if (!(lo < hi))
        return 0.0;
    return std::visit(
        overloaded{[&](const FiniteDistribution& d) {
                       return static_cast<double>(d.count_below(hi) - d.count_below(lo)) /
                              static_cast<double>(d.size());
                   },
                   [&](const NormalDistribution&) {
                       if (lo >= 0.0)
                           return normal::sf(lo) - normal::sf(hi);
                       return normal::cdf(hi) - normal::cdf(lo);
                   }},
        impl_);
}

double QualityDistribution::mean() const
{
    return is_finite() ? finite().mean() : 0.0;
}

std::optional<double> QualityDistribution::mean_below(double t) const
{
    return std::visit(
        overloaded{[&](const FiniteDistribution& d) -> std::optional<double> {
                       const std::uint64_t m = d.count_below(t);
                       if (m == 0)
                           return std::nullopt;
                       return static_cast<double>(d.prefix_sum(m) / m);
                   },
                   [&](const NormalDistribution&) -> std::optional<double> {
                       const double mass = normal::cdf(t);
                       if (mass <= 0.0)
                           return std::nullopt;
                       return -normal::pdf(t) / mass;
                   }},
        impl_);
}

std::optional<double> QualityDistribution::mean_at_or_above(double t) const
{
    return std::visit(
        overloaded{[&](const FiniteDistribution& d) -> std::optional<double> {
                       const std::uint64_t m = d.count_below(t);
                       if (m == d.size())
                           return std::nullopt;
                       return static_cast<double>((d.prefix_sum(d.size()) - d.prefix_sum(m)) /
                                                  (d.size() - m));
                   },
                   [&](const NormalDistribution&) -> std::optional<double> {
                       const double mass = normal::sf(t);
                       if (mass <= 0.0)
                           return std::nullopt;
                       return normal::pdf(t) / mass;
                   }},
        impl_);
}

double QualityDistribution::min() const
{
    return is_finite() ? finite().min() : -std::numeric_limits<double>::infinity();
}

double QualityDistribution::max() const
{
    return is_finite() ? finite().max() : std::numeric_limits<double>::infinity();
}

double marked_ratio(const QualityDistribution& dist, const MarkingSpec& mark)
{
    return dist.marked_ratio(mark);
}

double quantile(const QualityDistribution& dist, double p)
{
    return dist.quantile(p);
}

Sample sample_uniform(const QualityDistribution& dist, Rng& rng)
{
    return dist.sample_uniform(rng);
}

// ---------------------------------------------------------------------------
// Binary persistence

namespace {

constexpr std::array<char, 8> kMagic = {'M', 'A', 'O', 'A', 'D', 'I', 'S', 'T'};
constexpr std::uint8_t kVersion = 1;

void put_u64(std::ostream& out, std::uint64_t v)
{
    std::array<char, 8> bytes;
    for (int i = 0; i < 8; ++i)
        bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(bytes.data(), bytes.size());
}

std::uint64_t get_u64(std::istream& in, const char* what)
{
    std::array<unsigned char, 8> bytes;
    if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size()))
        throw FormatError(std::string("truncated distribution file while reading ") + what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    return v;
}

}  // namespace

void save(const FiniteDistribution& dist, std::ostream& out)
{
    out.write(kMagic.data(), kMagic.size());
    out.put(static_cast<char>(kVersion));
    put_u64(out, dist.runs().size());
    for (const auto& run : dist.runs()) {
        put_u64(out, std::bit_cast<std::uint64_t>(run.value));
        put_u64(out, run.count);
    }
    if (!out)
        throw std::runtime_error("failed writing distribution");
}

void save(const FiniteDistribution& dist, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    save(dist, out);
}

FiniteDistribution load(std::istream& in)
{
    std::array<char, 8> magic{};
    if (!in.read(magic.data(), magic.size()))
        throw FormatError("truncated distribution header");
    if (magic != kMagic)
        throw FormatError("not a distribution file (magic mismatch)");
    const int version = in.get();
    if (version == std::char_traits<char>::eof())
        throw FormatError("truncated distribution header");
    if (version != kVersion)
        throw FormatError("unsupported distribution file version " + std::to_string(version));

    const std::uint64_t count = get_u64(in, "run count");
    if (count == 0)
        throw ValidationError("distribution file contains no runs");
    std::vector<FiniteDistribution::Run> runs;
    runs.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1u << 20)));
    for (std::uint64_t i = 0; i < count; ++i) {
        const double value = std::bit_cast<double>(get_u64(in, "run value"));
        const std::uint64_t mult = get_u64(in, "run multiplicity");
        runs.push_back({value, mult});
    }
    if (in.peek() != std::char_traits<char>::eof())
        throw FormatError("trailing bytes after distribution payload");
    return FiniteDistribution::from_runs(std::move(runs));
}

FiniteDistribution load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    return load(in);
}

void export_csv(const FiniteDistribution& dist, std::ostream& out)
{
    out << "value,multiplicity\n";
    char buf[64];
    for (const auto& run : dist.runs()) {
        std::snprintf(buf, sizeof buf, "%.17g", run.value);
        out << buf << ',' << run.count << '\n';
    }
}

}  // namespace maoa
