#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "maoa/grover.hpp"
#include "maoa/normal.hpp"

using namespace maoa;

namespace {

// Grover iteration as explicit reflections on (marked, unmarked) amplitudes.
double grover_by_reflection(std::uint64_t r, double rho)
{
    double a = std::sqrt(rho);
    double b = std::sqrt(1.0 - rho);
    const double sa = std::sqrt(rho);
    const double sb = std::sqrt(1.0 - rho);
    for (std::uint64_t i = 0; i < r; ++i) {
        a = -a;  // oracle
        const double overlap = a * sa + b * sb;
        a = 2.0 * overlap * sa - a;  // diffusion
        b = 2.0 * overlap * sb - b;
    }
    return a * a;
}

}  // namespace

TEST_CASE("success probability matches reflection oracle")
{
    for (double rho : {1e-6, 1e-4, 0.01, 0.1, 0.3, 0.5, 0.9}) {
        for (std::uint64_t r : {0ull, 1ull, 2ull, 5ull, 17ull, 64ull}) {
            CAPTURE(rho);
            CAPTURE(r);
            CHECK(grover_probability(r, rho) ==
                  doctest::Approx(grover_by_reflection(r, rho)).epsilon(1e-10).scale(1e-12));
        }
    }
}

TEST_CASE("edge values")
{
    CHECK(grover_probability(5, 0.0) == 0.0);
    CHECK(grover_probability(5, 1.0) == doctest::Approx(1.0));
    CHECK(grover_probability(0, 0.2) == doctest::Approx(0.2));
    // Quarter of the space marked: one rotation lands exactly on it.
    CHECK(grover_probability(1, 0.25) == doctest::Approx(1.0));
    CHECK(low_convergence_probability(3, 1e-4) == doctest::Approx(49e-4));
}

TEST_CASE("property: probability stays in [0, 1]")
{
    for (double rho = 0.0; rho <= 1.0; rho += 0.0137)
        for (std::uint64_t r = 0; r < 300; r += 7) {
            const double p = grover_probability(r, rho);
            CHECK((p >= 0.0 && p <= 1.0));
        }
}

TEST_CASE("low-convergence form within 1% below 1/40")
{
    for (std::uint64_t r = 1; r <= 256; r *= 2)
        for (double rho = 1e-12; rho < 1e-2; rho *= 1.7) {
            const double p = grover_probability(r, rho);
            if (p < 1.0 / 40.0 && low_convergence_probability(r, rho) < 1.0 / 40.0) {
                CAPTURE(r);
                CAPTURE(rho);
                CHECK(std::abs(low_convergence_probability(r, rho) / p - 1.0) < 0.01);
            }
        }
}

TEST_CASE("complete-convergence rotation counts")
{
    CHECK(complete_convergence_rotations(1.0 / 58941091.0).nearest == 6029);
    CHECK(complete_convergence_rotations(1.0 / 61757600.0).nearest == 6172);
    CHECK(complete_convergence_rotations(1.0).exact == doctest::Approx(0.0));
    CHECK(complete_convergence_rotations(0.25).exact == doctest::Approx(1.0));
    CHECK_THROWS_AS(complete_convergence_rotations(0.0), std::domain_error);
    CHECK_THROWS_AS(complete_convergence_rotations(1.5), std::domain_error);
    // At r_c the marked state is (nearly) certain.
    for (double rho : {1e-3, 1e-5, 1e-7}) {
        const double rc = complete_convergence_rotations(rho).exact;
        const double frac = rc - std::floor(rc);
        if (frac < 1e-9)
            CHECK(grover_probability(static_cast<std::uint64_t>(rc), rho) == doctest::Approx(1.0));
        CHECK(grover_probability(complete_convergence_rotations(rho).nearest, rho) > 0.99);
    }
}

TEST_CASE("regime classification follows its definitions")
{
    CHECK(classify_regime(10, 0.0) == Regime::low_convergence);
    CHECK(classify_regime(1, 1e-8) == Regime::low_convergence);
    CHECK(classify_regime(64, 0.5) == Regime::chaotic);
    CHECK(to_string(Regime::high_convergence) == "high");
    for (double rho = 1e-9; rho < 1.0; rho *= 1.9) {
        for (std::uint64_t r : {1ull, 8ull, 64ull, 512ull}) {
            const double rc = complete_convergence_rotations(rho).exact;
            const auto g = classify_regime(r, rho);
            const double rr = static_cast<double>(r);
            if (rr < 0.1 * rc && grover_probability(r, rho) < 1.0 / 40)
                CHECK(g == Regime::low_convergence);
            else if (rr < 2.0 * rc)
                CHECK(g == Regime::high_convergence);
            else
                CHECK(g == Regime::chaotic);
        }
    }
}

TEST_CASE("response curve for r=128 on the standard normal has 64 peaks and 64 troughs")
{
    const QualityDistribution normal(NormalDistribution{});
    const auto grid = response_grid(normal, 128, -6.0, 0.0);
    const auto curve = threshold_response_curve(normal, 128, grid);
    std::vector<double> p;
    for (const auto& pt : curve)
        p.push_back(pt.probability);
    const auto ext = count_extrema(p);
    CHECK(ext.maxima == 64);
    CHECK(ext.minima == 64);
    CHECK_THROWS(threshold_response_curve(normal, 1, std::span<const double>{}));
}

TEST_CASE("count_extrema ignores flat steps")
{
    const double v[] = {0, 1, 1, 0, 0, 2, 3, 1};
    const auto e = count_extrema(v);
    CHECK(e.maxima == 2);
    CHECK(e.minima == 1);
}

TEST_CASE("amplified state statistics")
{
    const QualityDistribution normal(NormalDistribution{});
    const MarkingSpec mark{normal::quantile(1e-3)};
    const AmplifiedState st(normal, 8, mark);
    CHECK(st.success_probability() == doctest::Approx(grover_probability(8, 1e-3)));
    Rng rng(1);
    EffortLedger ledger;
    int marked = 0;
    const int n = 40'000;
    for (int i = 0; i < n; ++i) {
        const auto m = st.measure(rng, ledger);
        CHECK(m.marked == (m.quality < mark.threshold));
        marked += m.marked;
    }
    const double p = st.success_probability();
    CHECK(std::abs(marked - n * p) < 4.0 * std::sqrt(n * p * (1 - p)));
    CHECK(ledger.calls() == static_cast<std::uint64_t>(n) * 17);
}

TEST_CASE("expectation response: both forms agree in the low-convergence regime")
{
    const QualityDistribution normal(NormalDistribution{});
    const auto e = expectation_response(normal, 4, -4.0);
    CHECK(e.expected == doctest::Approx(e.envelope));
    CHECK(e.expected < normal.mean());
    const auto deep = expectation_response(normal, 4, -40.0);
    CHECK(deep.expected == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("response CSV format")
{
    const QualityDistribution normal(NormalDistribution{});
    const double grid[] = {-1.0};
    std::ostringstream out;
    write_response_csv(threshold_response_curve(normal, 1, grid), out);
    CHECK(out.str().rfind("threshold,rho,probability,regime\n-1,", 0) == 0);
}
