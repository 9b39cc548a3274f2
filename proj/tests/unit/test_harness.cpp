#include <doctest.h>

#include <cmath>
#include <memory>
#include <sstream>
#include <vector>

#include "maoa/error.hpp"
#include "maoa/harness.hpp"

using namespace maoa;

namespace {

std::shared_ptr<const QualityDistribution> small_space()
{
    std::vector<double> v;
    for (int i = 0; i < 3000; ++i)
        v.push_back(std::sin(i * 0.7) * 100.0 + i * 1e-3);
    return std::make_shared<QualityDistribution>(FiniteDistribution::from_values(v));
}

std::string curve_text(const ExperimentResult& r)
{
    std::ostringstream out;
    write_curve_csv(r.curve, out);
    write_runs_csv(r.runs, out);
    return out.str();
}

}  // namespace

TEST_CASE("algorithm names round trip")
{
    for (auto a : {Algorithm::maoa, Algorithm::maoa_sampling, Algorithm::gas, Algorithm::rgas,
                   Algorithm::classical})
        CHECK(parse_algorithm(to_string(a)) == a);
    CHECK_THROWS_AS(parse_algorithm("bogo"), ValidationError);
}

// Reference intervals from statsmodels' Wilson method.
TEST_CASE("Wilson interval")
{
    auto w = wilson_interval(5, 10);
    CHECK(w.lo == doctest::Approx(0.23659309051256394).epsilon(1e-12));
    CHECK(w.hi == doctest::Approx(0.7634069094874361).epsilon(1e-12));
    w = wilson_interval(0, 10);
    CHECK(w.lo == doctest::Approx(0.0).scale(1.0));
    CHECK(w.hi == doctest::Approx(0.27753279986288926).epsilon(1e-12));
    w = wilson_interval(10, 10);
    CHECK(w.lo == doctest::Approx(0.7224672001371106).epsilon(1e-12));
    w = wilson_interval(37, 1000);
    CHECK(w.lo == doctest::Approx(0.026961180875554734).epsilon(1e-12));
    CHECK(w.hi == doctest::Approx(0.05058239748206931).epsilon(1e-12));
}

TEST_CASE("DKW band half-width")
{
    CHECK(dkw_epsilon(10'000, 0.01) == doctest::Approx(0.016276236307187292).epsilon(1e-12));
}

TEST_CASE("analytic curves")
{
    CHECK(analytic_classical(0.0, 0.1) == 0.0);
    CHECK(analytic_classical(2.0, 0.5) == doctest::Approx(0.75));
    CHECK(analytic_maoa(3.0, 0.01, 1).p == doctest::Approx(0.09));
    CHECK(analytic_maoa(6.0, 0.01, 1).p == doctest::Approx(1 - 0.91 * 0.91));
    CHECK(analytic_maoa(10.0, 0.5, 1).clamped);
    // Small-target limit of the speedup is 2r+1.
    CHECK(analytic_speedup(1e-10, 64) == doctest::Approx(129.0).epsilon(1e-4));
    CHECK(analytic_speedup(1e-6, 64) > 129.0);
}

TEST_CASE("log effort grid")
{
    const auto g = log_effort_grid(1.0, 1e4);
    CHECK(g.size() == 4 * 64 + 1);
    CHECK(g.front() == 1.0);
    CHECK(g.back() == doctest::Approx(1e4));
    CHECK(g[64] == doctest::Approx(10.0));
    CHECK_THROWS_AS(log_effort_grid(0.0, 10.0), ValidationError);
}

TEST_CASE("success curve is the empirical CDF of success efforts")
{
    const std::vector<std::uint64_t> e{1, 5, 5, kNever};
    const std::vector<double> grid{0.5, 1.0, 4.9, 5.0, 1e9};
    const auto c = success_curve(e, grid, [](double) { return 0.25; });
    REQUIRE(c.points.size() == 5);
    CHECK(c.points[0].p == 0.0);
    CHECK(c.points[1].p == 0.25);
    CHECK(c.points[2].p == 0.25);
    CHECK(c.points[3].p == 0.75);
    CHECK(c.points[4].p == 0.75);
    CHECK(c.points[4].analytic == 0.25);
    for (const auto& p : c.points)
        CHECK((p.lo <= p.p && p.p <= p.hi));
}

TEST_CASE("speedup estimate on scaled efforts")
{
    std::vector<std::uint64_t> q, c;
    for (std::uint64_t i = 1; i <= 1001; ++i) {
        q.push_back(i * 10);
        c.push_back(i * 70);
    }
    const auto s = speedup_estimate(c, q);
    CHECK(s.value == doctest::Approx(7.0));
    CHECK(s.lo <= s.value);
    CHECK(s.hi >= s.value);
    CHECK(s.quantum_effort == 5010);
    CHECK_THROWS_AS(speedup_estimate(c, {}), ValidationError);
}

TEST_CASE("target resolution")
{
    const auto d = std::make_shared<QualityDistribution>(FiniteDistribution::from_values({1, 1, 2, 3}));
    auto t = resolve_target(*d, {TargetSpec::Kind::optimum, 0, {}});
    CHECK(t.ratio == 0.5);
    t = resolve_target(*d, {TargetSpec::Kind::ratio, 0.6, {}});
    CHECK(t.ratio == 0.75);
    t = resolve_target(*d, {TargetSpec::Kind::ids, 0, {3, 9}});
    CHECK(t.ratio == 0.25);
    t = resolve_target(*d, {TargetSpec::Kind::cutoff, 1.0, {}});
    CHECK(t.ratio == 0.0);
}

TEST_CASE("experiments are identical across worker counts")
{
    for (auto algo : {Algorithm::maoa, Algorithm::rgas, Algorithm::classical, Algorithm::gas}) {
        ExperimentSpec spec;
        spec.dist = small_space();
        spec.algorithm = algo;
        spec.maoa.final_rotations = 8;
        spec.target = {TargetSpec::Kind::optimum, 0, {}};
        spec.runs = 200;
        spec.master_seed = 99;
        spec.workers = 1;
        const auto one = curve_text(run_experiment(spec));
        spec.workers = 4;
        const auto four = curve_text(run_experiment(spec));
        CAPTURE(to_string(algo));
        CHECK(one == four);
    }
}

TEST_CASE("property: every run succeeds or is truncated, never both")
{
    ExperimentSpec spec;
    spec.dist = small_space();
    spec.algorithm = Algorithm::maoa;
    spec.maoa.final_rotations = 4;
    spec.target = {TargetSpec::Kind::optimum, 0, {}};
    spec.runs = 100;
    spec.effort_cap = 400;
    const auto res = run_experiment(spec);
    for (const auto& r : res.runs) {
        CHECK((r.success_effort != kNever) != r.truncated);
        CHECK(r.total_effort <= 400);
        if (r.success_effort != kNever)
            CHECK(r.success_effort <= r.total_effort);
    }
}

TEST_CASE("event logs are kept for the first K runs and replay the effort")
{
    ExperimentSpec spec;
    spec.dist = small_space();
    spec.algorithm = Algorithm::rgas;
    spec.maoa.final_rotations = 8;
    spec.target = {TargetSpec::Kind::optimum, 0, {}};
    spec.runs = 20;
    spec.event_runs = 3;
    const auto res = run_experiment(spec);
    REQUIRE(res.events.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        std::uint64_t total = 0;
        for (const auto& e : res.events[i])
            total += 2ull * e.r + 1;
        CHECK(total == res.runs[i].total_effort);
    }
    std::ostringstream out;
    write_events_csv(res.events[0], out);
    CHECK(out.str().rfind("effort,best_quality,r_used,marked\n", 0) == 0);
}

TEST_CASE("unreachable target gives an all-zero curve")
{
    ExperimentSpec spec;
    spec.dist = small_space();
    spec.target = {TargetSpec::Kind::cutoff, -1e9, {}};
    spec.runs = 10;
    const auto res = run_experiment(spec);
    CHECK(res.unreachable);
    for (const auto& p : res.curve.points)
        CHECK(p.p == 0.0);
}

TEST_CASE("spec validation")
{
    ExperimentSpec spec;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec.dist = std::make_shared<QualityDistribution>(NormalDistribution{});
    spec.target = {TargetSpec::Kind::optimum, 0, {}};
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec.target = {TargetSpec::Kind::ratio, 1.5, {}};
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec.target = {TargetSpec::Kind::ratio, 1e-6, {}};
    spec.algorithm = Algorithm::gas;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
}

TEST_CASE("curve CSV writes NaN as an empty cell")
{
    SuccessCurve c;
    c.points.push_back({1.0, 0.5, 0.1, 0.9, std::nan("")});
    std::ostringstream out;
    write_curve_csv(c, out);
    CHECK(out.str() == "effort,empirical_p,wilson_lo,wilson_hi,analytic_p\n1,0.5,0.10000000000000001,0.90000000000000002,\n");
}
