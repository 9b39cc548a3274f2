#include <doctest.h>

#include <algorithm>
#include <complex>
#include <utility>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "maoa/circulant.hpp"
#include "maoa/error.hpp"

using namespace maoa;

namespace {

constexpr double pi = std::numbers::pi;

QwoaParams random_params(Rng& rng, int r)
{
    QwoaParams p;
    for (int i = 0; i < r; ++i) {
        p.gamma.push_back(rng.uniform(0.0, 2 * pi));
        p.t.push_back(rng.uniform(0.0, 1.0));
    }
    return p;
}

// Library-free route: eigenvalues from the cosine sums, naive O(n^2) DFT.
std::vector<std::complex<double>> naive_circulant(int n, const std::vector<int>& conn,
                                                  const std::vector<double>& q, const QwoaParams& p)
{
    using cd = std::complex<double>;
    std::vector<double> lambda(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j)
        for (int s : conn)
            for (int sign : {1, -1}) {
                if (sign == -1 && 2 * s == n)
                    continue;
                lambda[static_cast<std::size_t>(j)] += std::cos(2 * pi * j * s * sign / n);
            }
    std::vector<cd> psi(static_cast<std::size_t>(n), cd(1.0 / std::sqrt(n), 0.0));
    for (std::size_t it = 0; it < p.iterations(); ++it) {
        for (int v = 0; v < n; ++v)
            psi[static_cast<std::size_t>(v)] *= std::polar(1.0, -p.gamma[it] * q[static_cast<std::size_t>(v)]);
        std::vector<cd> spec(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            for (int v = 0; v < n; ++v)
                spec[static_cast<std::size_t>(j)] += psi[static_cast<std::size_t>(v)] * std::polar(1.0, -2 * pi * j * v / n);
        for (int j = 0; j < n; ++j)
            spec[static_cast<std::size_t>(j)] *= std::polar(1.0, -p.t[it] * lambda[static_cast<std::size_t>(j)]);
        for (int v = 0; v < n; ++v) {
            cd acc = 0.0;
            for (int j = 0; j < n; ++j)
                acc += spec[static_cast<std::size_t>(j)] * std::polar(1.0, 2 * pi * j * v / n);
            psi[static_cast<std::size_t>(v)] = acc / static_cast<double>(n);
        }
    }
    return psi;
}

}  // namespace

TEST_CASE("FFT walk matches a naive DFT oracle")
{
    Rng rng(17);
    for (const auto& [n, conn] : std::vector<std::pair<int, std::vector<int>>>{
             {12, {1, 3}}, {12, {2, 6}}, {9, {1, 2, 3, 4}}, {7, {1}}, {24, {1, 5, 12}}}) {
        const CirculantGraph g(n, conn);
        std::vector<double> q;
        for (int v = 0; v < n; ++v)
            q.push_back(rng.uniform());
        const auto p = random_params(rng, 3);
        const auto fast = evolve_circulant(g, q, p);
        const auto oracle = naive_circulant(n, conn, q, p);
        for (std::size_t i = 0; i < fast.size(); ++i)
            CHECK(std::abs(fast[i] - oracle[i]) < 1e-10);
    }
}

TEST_CASE("FFT walk matches dense eigendecomposition")
{
    Rng rng(3);
    for (const auto& g : {CirculantGraph(12, {1, 3}), CirculantGraph(12, {2, 6}),
                          CirculantGraph::complete(9), CirculantGraph::cycle(7)}) {
        std::vector<double> q;
        for (int v = 0; v < g.size(); ++v)
            q.push_back(rng.uniform());
        const auto p = random_params(rng, 3);
        const auto fast = evolve_circulant(g, q, p);
        const auto dense = evolve_dense(g.adjacency(), q, p);
        REQUIRE(fast.size() == dense.size());
        double norm = 0.0;
        for (std::size_t i = 0; i < fast.size(); ++i) {
            CHECK(std::abs(fast[i] - dense[i]) < 1e-10);
            norm += std::norm(fast[i]);
        }
        CHECK(norm == doctest::Approx(1.0));
    }
}

TEST_CASE("eigenvalues agree with a symmetric solver")
{
    for (const auto& g : {CirculantGraph(10, {1, 4}), CirculantGraph(10, {5}),
                          CirculantGraph(24, {1, 2, 7, 12})}) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.adjacency());
        std::vector<double> ours = g.eigenvalues();
        std::sort(ours.begin(), ours.end());
        for (int i = 0; i < g.size(); ++i)
            CHECK(ours[static_cast<std::size_t>(i)] ==
                  doctest::Approx(solver.eigenvalues()(i)).scale(1.0).epsilon(1e-10));
        CHECK(g.spectral_radius() == doctest::Approx(solver.eigenvalues().cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("graph invariants")
{
    const auto k = CirculantGraph::complete(24);
    CHECK(k.degree() == 23);
    CHECK(k.spectral_count() == 2);
    CHECK(k.connected());
    CHECK(k.label() == "D23E2");
    const auto c = CirculantGraph::cycle(8);
    CHECK(c.degree() == 2);
    CHECK(c.spectral_count() == 5);
    CHECK_FALSE(CirculantGraph(8, {2}).connected());
    CHECK(CirculantGraph(8, {4}).degree() == 1);
    CHECK(count_distinct({1.0, 1.0 + 1e-12, 2.0}, 1e-9) == 2);
    CHECK_THROWS_AS(CirculantGraph(8, {5}), ValidationError);
}

TEST_CASE("enumeration filters")
{
    const auto all = enumerate_circulants(8);
    for (const auto& g : all)
        CHECK(g.connected());
    const auto d4 = enumerate_circulants(8, 4);
    CHECK_FALSE(d4.empty());
    for (const auto& g : d4)
        CHECK(g.degree() == 4);
    const auto e2 = enumerate_circulants(8, {}, 2);
    REQUIRE(e2.size() == 1);
    CHECK(e2.front().degree() == 7);
}

TEST_CASE("quality assignments")
{
    const auto b = binary_qualities(6, 2);
    CHECK(b.qualities == std::vector<double>{0, 0, 1, 0, 0, 0});
    CHECK(b.optimal == 2);

    const auto g = graded_qualities(7, 3, 0);
    CHECK(g.qualities == std::vector<double>{1.0, 0.0, 1.0 / 3, 2.0 / 3, 0.0, 1.0 / 3, 2.0 / 3});
    CHECK_THROWS_AS(graded_qualities(7, 7, 0), ValidationError);

    Rng rng(12);
    for (int levels : {1, 2, 6, 23}) {
        const auto r = random_qualities(24, levels, rng);
        std::vector<double> rest;
        for (std::size_t v = 0; v < r.qualities.size(); ++v)
            if (v != r.optimal) {
                CHECK(r.qualities[v] < r.qualities[r.optimal]);
                rest.push_back(r.qualities[v]);
            }
        CHECK(count_distinct(rest, 0.0) == levels);
    }
}

TEST_CASE("one-iteration optimum on K_n matches a reduced-graph grid search")
{
    const int n = 16;
    const auto g = CirculantGraph::complete(n);
    const auto q = binary_qualities(n);
    Rng rng(1);
    OptimiseProtocol prot;
    prot.starts = 300;
    prot.refine = 5;
    const auto res = optimise_amplification(g, q, 1, prot, rng);

    const ReducedGraph reduced({1.0, n - 1.0}, {1.0, 0.0});
    double grid_best = 0.0;
    const int pts = 200;
    for (int i = 0; i < pts; ++i)
        for (int j = 0; j < pts; ++j) {
            const double gamma = 2 * pi * i / pts;
            const double t = 2 * pi / (n - 1) * j / pts;
            grid_best = std::max(grid_best, reduced.group_probabilities(QwoaParams::repeated(gamma, t, 1))[0]);
        }
    CHECK(res.best >= grid_best - 1e-9);
    CHECK(res.best <= grid_best + 1e-3);
    CHECK(res.refined.size() == 5);
    CHECK(res.best >= res.mean);
    REQUIRE(res.params.size() == 2);
}

TEST_CASE("repeated-pair landscape shape")
{
    const auto g = CirculantGraph::complete(6);
    const auto m = repeated_pair_landscape(g, binary_qualities(6), 2, 5, 7);
    CHECK(m.rows() == 5);
    CHECK(m.cols() == 7);
    CHECK(m.minCoeff() >= 0.0);
    CHECK(m.maxCoeff() <= 1.0 + 1e-12);
    // gamma = 0 leaves the uniform state untouched.
    CHECK(m(0, 3) == doctest::Approx(1.0 / 6));
}

TEST_CASE("appendix suite runs a reduced study")
{
    AppendixConfig cfg;
    cfg.n = 8;
    cfg.r = 1;
    cfg.draws = 1;
    cfg.starts = 20;
    cfg.refine = 2;
    cfg.degeneracy_levels = {1, 7};
    const auto res = run_appendix_suite(cfg, {"degeneracy"});
    CHECK_FALSE(res.rows.empty());
    for (const auto& row : res.rows) {
        CHECK(row.study == "degeneracy");
        CHECK((row.best > 0.0 && row.best <= 1.0));
    }
    std::ostringstream out;
    write_suite_csv(res.rows, out);
    CHECK(out.str().rfind("study,graph,levels,r,mode,best,mean,stddev,samples\n", 0) == 0);
}
