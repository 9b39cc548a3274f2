#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace maoa {

/// SplitMix64 finaliser. Bijective, so distinct inputs give distinct outputs.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for an independent stream, a pure function of (master, stream).
/// Used for per-run seeds so results do not depend on scheduling order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept
{
    return mix64(master ^ mix64(stream ^ 0x6a09e667f3bcc909ULL));
}

/// Random source handed to every stochastic routine. Wraps mt19937_64 with
/// bit-exact (library-independent) conversions to doubles and bounded ints.
class Rng
{
  public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on the open interval (0, 1).
    double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer on [0, n). n must be positive.
    std::uint64_t index(std::uint64_t n)
    {
        // Lemire's multiply-shift with rejection.
        unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(engine_()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Number of Bernoulli(p) trials up to and including the first success.
    /// Saturates at UINT64_MAX when p is zero or the draw overflows.
    std::uint64_t geometric_trials(double p)
    {
        if (p >= 1.0)
            return 1;
        constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
        if (p <= 0.0)
            return kMax;
        const double k = std::floor(std::log(uniform_open()) / std::log1p(-p));
        if (!(k < 1.8e19))
            return kMax;
        return static_cast<std::uint64_t>(k) + 1;
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace maoa
