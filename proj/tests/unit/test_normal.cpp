#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "maoa/normal.hpp"

using namespace maoa;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

// Reference values from mpmath at 40 digits.
TEST_CASE("normal cdf matches high-precision references")
{
    struct Ref
    {
        double x;
        double p;
    };
    const Ref refs[] = {
        {-20.0, 2.7536241186062336951e-89}, {-10.0, 7.619853024160526066e-24},
        {-5.5, 1.8989562465887719384e-8},   {-3.0, 0.0013498980316300945267},
        {-1.0, 0.15865525393145705141},     {0.0, 0.5},
        {0.5, 0.69146246127401310364},      {2.5, 0.99379033467422386483},
    };
    for (const auto& r : refs) {
        CAPTURE(r.x);
        CHECK(rel(normal::cdf(r.x), r.p) < 1e-13);
    }
}

TEST_CASE("normal quantile matches high-precision references")
{
    struct Ref
    {
        double p;
        double x;
    };
    const Ref refs[] = {
        {1e-300, -37.047096299361199237}, {1e-100, -21.273453560965324294},
        {1e-20, -9.2623400897984075796},  {1e-10, -6.3613409024040561991},
        {1.502e-6, -4.6705461381528576168}, {1e-3, -3.0902323061678135354},
        {0.1, -1.2815515655446004353},    {0.9, 1.2815515655446005935},
    };
    for (const auto& r : refs) {
        CAPTURE(r.p);
        CHECK(rel(normal::quantile(r.p), r.x) < 1e-12);
    }
    CHECK(normal::quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("normal quantile edge cases")
{
    CHECK(normal::quantile(0.0) == -std::numeric_limits<double>::infinity());
    CHECK(normal::quantile(1.0) == std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(normal::quantile(-0.1), std::domain_error);
    CHECK_THROWS_AS(normal::quantile(1.1), std::domain_error);
    CHECK_THROWS_AS(normal::quantile(std::nan("")), std::domain_error);
}

TEST_CASE("property: quantile inverts cdf in the lower tail")
{
    for (double x = -30.0; x <= 3.0; x += 0.37) {
        CAPTURE(x);
        CHECK(normal::quantile(normal::cdf(x)) == doctest::Approx(x).epsilon(1e-11));
    }
}

TEST_CASE("property: sf is the mirror of cdf and upper_quantile inverts it")
{
    for (double x = -8.0; x <= 30.0; x += 0.5) {
        CAPTURE(x);
        CHECK(rel(normal::sf(x), normal::cdf(-x)) < 1e-14);
        if (x > -5.0)
            CHECK(normal::upper_quantile(normal::sf(x)) == doctest::Approx(x).epsilon(1e-10));
    }
}

TEST_CASE("pdf is the derivative of cdf")
{
    for (double x : {-6.0, -2.0, 0.0, 1.5}) {
        const double h = 1e-5;
        const double d = (normal::cdf(x + h) - normal::cdf(x - h)) / (2 * h);
        CHECK(normal::pdf(x) == doctest::Approx(d).epsilon(1e-8));
    }
}
