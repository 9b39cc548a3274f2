#include <doctest.h>

#include <cmath>

#include "maoa/nelder_mead.hpp"

using namespace maoa;

TEST_CASE("Nelder-Mead minimises the Rosenbrock function")
{
    auto rosen = [](const std::vector<double>& x) {
        return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
    };
    NelderMeadOptions opts;
    opts.tolerance = 1e-14;
    const auto res = nelder_mead(rosen, {-1.2, 1.0}, {}, opts);
    CHECK(res.converged);
    CHECK(res.x[0] == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(res.x[1] == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(res.value < 1e-8);
    CHECK(res.evaluations <= opts.max_evaluations);
}

TEST_CASE("evaluation budget is respected")
{
    auto sphere = [](const std::vector<double>& x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2]; };
    NelderMeadOptions opts;
    opts.max_evaluations = 30;
    const auto res = nelder_mead(sphere, {3.0, -2.0, 1.0}, {}, opts);
    CHECK_FALSE(res.converged);
    // One iteration may overrun by at most a shrink step.
    CHECK(res.evaluations <= 30 + 3 + 2);
}

TEST_CASE("multistart finds the global basin of a double well")
{
    auto well = [](const std::vector<double>& x) {
        return std::pow(x[0] * x[0] - 1.0, 2) + 0.3 * x[0];
    };
    Rng rng(4);
    MultistartOptions opts;
    opts.starts = 50;
    opts.refine = 3;
    const auto res = multistart_minimise(
        well, [](Rng& r) { return std::vector<double>{r.uniform(-2.0, 2.0)}; }, {0.2}, rng, opts);
    CHECK(res.refined.size() == 3);
    CHECK(res.best.x[0] < -1.0);
    for (const auto& r : res.refined)
        CHECK(res.best.value <= r.value);
}
