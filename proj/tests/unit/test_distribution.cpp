#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "maoa/distribution.hpp"
#include "maoa/error.hpp"
#include "maoa/normal.hpp"

using namespace maoa;

TEST_CASE("from_values sorts and compresses runs")
{
    const auto d = FiniteDistribution::from_values({3, 1, 2, 1, 3, 3});
    REQUIRE(d.runs().size() == 3);
    CHECK(d.runs()[0] == FiniteDistribution::Run{1, 2});
    CHECK(d.runs()[2] == FiniteDistribution::Run{3, 3});
    CHECK(d.size() == 6);
    CHECK(d.min() == 1);
    CHECK(d.max() == 3);
    CHECK(d.mean() == doctest::Approx(13.0 / 6.0));
    CHECK(d.expand() == std::vector<double>{1, 1, 2, 3, 3, 3});
}

TEST_CASE("construction rejects bad input")
{
    CHECK_THROWS_AS(FiniteDistribution::from_values({}), ValidationError);
    CHECK_THROWS_AS(FiniteDistribution::from_values({1.0, std::nan("")}), ValidationError);
    CHECK_THROWS_AS(FiniteDistribution::from_runs({{2, 1}, {1, 1}}), ValidationError);
    CHECK_THROWS_AS(FiniteDistribution::from_runs({{1, 0}}), ValidationError);
}

TEST_CASE("counts, ranks and prefix sums")
{
    const auto d = FiniteDistribution::from_values({1, 1, 2, 3, 3, 3});
    CHECK(d.count_below(1) == 0);
    CHECK(d.count_below(2) == 2);
    CHECK(d.count_below(2.5) == 3);
    CHECK(d.count_above(2) == 3);
    CHECK(d.count_above(3) == 0);
    CHECK(d.value_at(0) == 1);
    CHECK(d.value_at(2) == 2);
    CHECK(d.value_at(5) == 3);
    CHECK(static_cast<double>(d.prefix_sum(3)) == 4.0);
    CHECK(static_cast<double>(d.prefix_sum(6)) == 13.0);
}

TEST_CASE("marked ratio in both senses, ties never marked")
{
    const QualityDistribution d(FiniteDistribution::from_values({1, 2, 2, 3}));
    CHECK(d.marked_ratio(2.0) == 0.25);
    CHECK(d.marked_ratio(MarkingSpec{2.0, Sense::maximise}) == 0.25);
    CHECK(d.marked_ratio(0.5) == 0.0);
    CHECK(d.marked_ratio(10.0) == 1.0);
}

TEST_CASE("property: finite quantile marks at least ceil(pN), and the previous value marks fewer")
{
    const auto f = FiniteDistribution::from_values({1, 1, 2, 2, 2, 5, 7, 7, 9, 9});
    const QualityDistribution d(f);
    for (double p = 0.01; p <= 1.0; p += 0.01) {
        CAPTURE(p);
        const double t = d.quantile(p);
        const auto need = static_cast<std::uint64_t>(std::ceil(p * 10 - 1e-9));
        CHECK(f.count_below(t) >= need);
        // Any smaller distinct threshold falls short.
        double prev = -1e9;
        for (const auto& run : f.runs())
            if (run.value < t)
                prev = run.value;
        CHECK(f.count_below(prev) < need);
    }
    CHECK(d.quantile(0.0) == 1.0);
    CHECK(d.quantile(1.0) > 9.0);
}

TEST_CASE("normal distribution delegates to the normal functions")
{
    const QualityDistribution d(NormalDistribution{});
    CHECK(d.marked_ratio(-2.0) == doctest::Approx(normal::cdf(-2.0)));
    CHECK(d.quantile(1e-6) == doctest::Approx(normal::quantile(1e-6)));
    CHECK(d.mass_between(-1.0, 1.0) == doctest::Approx(0.6826894921370859));
    CHECK(d.mean() == 0.0);
    CHECK(d.mean_below(0.0).value() == doctest::Approx(-std::sqrt(2.0 / M_PI)));
}

TEST_CASE("property: marked and unmarked draws stay on their side")
{
    Rng rng(4);
    const QualityDistribution fin(FiniteDistribution::from_values({1, 2, 3, 4, 5, 6}));
    const QualityDistribution nor(NormalDistribution{});
    for (int i = 0; i < 2000; ++i) {
        const MarkingSpec m{3.5};
        CHECK(fin.sample_marked(m, rng).quality < 3.5);
        CHECK(fin.sample_unmarked(m, rng).quality >= 3.5);
        const MarkingSpec tail{-5.0};
        CHECK(nor.sample_marked(tail, rng).quality < -5.0);
        CHECK(nor.sample_unmarked(tail, rng).quality >= -5.0);
        const double b = nor.sample_between(-6.0, -5.5, rng).quality;
        CHECK((b >= -6.0 && b < -5.5));
    }
}

TEST_CASE("finite sample ids are ranks of the drawn quality")
{
    Rng rng(9);
    const auto f = FiniteDistribution::from_values({5, 6, 6, 8});
    const QualityDistribution d(f);
    for (int i = 0; i < 200; ++i) {
        const Sample s = d.sample_uniform(rng);
        REQUIRE(s.id < 4);
        CHECK(f.value_at(s.id) == s.quality);
    }
}

TEST_CASE("uniform finite sampling covers every rank evenly")
{
    Rng rng(17);
    const QualityDistribution d(FiniteDistribution::from_values({0, 1, 2, 3, 4, 5, 6, 7}));
    std::vector<int> hits(8, 0);
    const int n = 80'000;
    for (int i = 0; i < n; ++i)
        ++hits[d.sample_uniform(rng).id];
    double chi2 = 0.0;
    for (int h : hits)
        chi2 += (h - n / 8.0) * (h - n / 8.0) / (n / 8.0);
    // 99th percentile of chi-square with 7 degrees of freedom.
    CHECK(chi2 < 18.475);
}

TEST_CASE("binary round trip and format errors")
{
    const auto f = FiniteDistribution::from_values({-1.5, 0.25, 0.25, 1e300});
    std::stringstream buf;
    save(f, buf);
    CHECK(load(buf) == f);

    std::stringstream bad("NOTADIST");
    CHECK_THROWS(load(bad));
    std::string bytes;
    {
        std::stringstream s;
        save(f, s);
        bytes = s.str();
    }
    std::stringstream truncated(bytes.substr(0, bytes.size() - 3));
    CHECK_THROWS(load(truncated));
}

TEST_CASE("csv export lists value and multiplicity")
{
    std::ostringstream out;
    export_csv(FiniteDistribution::from_values({2, 2, 3}), out);
    CHECK(out.str() == "value,multiplicity\n2,2\n3,1\n");
}
