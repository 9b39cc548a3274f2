#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <ostream>
#include <thread>

#include "maoa/circulant.hpp"
#include "maoa/error.hpp"

namespace maoa {

void AppendixConfig::use_full_budget()
{
    draws = 48;
    starts = 10'000;
    refine = 10;
    landscape_starts = 240;
    pair_starts = 1000;
}

namespace {

std::string graph_name(const CirculantGraph& g)
{
    std::string s = g.label() + ":";
    for (std::size_t i = 0; i < g.connections().size(); ++i)
        s += (i ? "-" : "") + std::to_string(g.connections()[i]);
    return s;
}

struct MeanSd
{
    double mean;
    double sd;
    double max;
};

MeanSd summarise(const std::vector<double>& v)
{
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v)
        ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / n), *std::max_element(v.begin(), v.end())};
}

// Random member of a (D, E) class, or nullopt when the class is empty.
std::optional<CirculantGraph> pick(int n, int degree, int spectral, Rng& rng)
{
    auto all = enumerate_circulants(n, degree, spectral);
    if (all.empty())
        return std::nullopt;
    return all[static_cast<std::size_t>(rng.index(all.size()))];
}

}  // namespace

AppendixResults run_appendix_suite(const AppendixConfig& cfg,
                                   const std::vector<std::string>& studies)
{
    auto wanted = [&](const char* name) {
        return studies.empty() || std::find(studies.begin(), studies.end(), name) != studies.end();
    };
    const int n = cfg.n;
    Rng graph_rng(derive_seed(cfg.seed, 0xA99E));

    // Graph series shared by several studies.
    std::vector<CirculantGraph> replicates;
    {
        auto all = enumerate_circulants(n, 12, 12);
        for (int i = 0; i < cfg.replicate_graphs && !all.empty(); ++i) {
            const auto k = static_cast<std::size_t>(graph_rng.index(all.size()));
            replicates.push_back(all[k]);
            all.erase(all.begin() + static_cast<std::ptrdiff_t>(k));
        }
    }
    std::vector<CirculantGraph> degree_series;
    for (int d = 2; d <= n - 3; ++d)
        if (auto g = pick(n, d, 13, graph_rng))
            degree_series.push_back(*g);
    std::vector<CirculantGraph> spectral_series{CirculantGraph::complete(n)};
    for (int e = 3; e <= 13; ++e)
        if (auto g = pick(n, 12, e, graph_rng))
            spectral_series.push_back(*g);

    // Every cell is an independent task with its own seed.
    std::vector<std::function<SuiteRow(Rng&)>> cells;
    const OptimiseProtocol best_of{ParamMode::free, cfg.starts, cfg.refine, cfg.nm};

    auto random_cell = [&](const char* study, const CirculantGraph& g, int levels) {
        cells.push_back([=, &cfg](Rng& rng) {
            std::vector<double> best;
            for (std::uint64_t d = 0; d < cfg.draws; ++d) {
                const auto q = random_qualities(n, levels, rng);
                best.push_back(optimise_amplification(g, q, cfg.r, best_of, rng).best);
            }
            const auto s = summarise(best);
            return SuiteRow{study, graph_name(g), levels, cfg.r, "free", s.max, s.mean, s.sd,
                            cfg.draws};
        });
    };

    if (wanted("replicates"))
        for (const auto& g : replicates)
            random_cell("replicates", g, n - 1);
    if (wanted("degree"))
        for (const auto& g : degree_series)
            random_cell("degree", g, n - 1);
    if (wanted("spectral"))
        for (const auto& g : spectral_series)
            random_cell("spectral", g, n - 1);
    if (wanted("degeneracy"))
        for (const auto& g : spectral_series)
            for (int levels : cfg.degeneracy_levels)
                random_cell("degeneracy", g, levels);
    if (wanted("landscape")) {
        const OptimiseProtocol all_refined{ParamMode::free, cfg.landscape_starts,
                                           cfg.landscape_starts, cfg.nm};
        for (const auto& g : spectral_series)
            for (int levels : cfg.degeneracy_levels) {
                cells.push_back([=, &cfg](Rng& rng) {
                    // Same arrangement on every graph for a given level.
                    Rng arrange(derive_seed(cfg.seed, 0x1A00 + static_cast<std::uint64_t>(levels)));
                    const auto q = graded_qualities(n, levels, 0, &arrange);
                    const auto res = optimise_amplification(g, q, cfg.r, all_refined, rng);
                    return SuiteRow{"landscape", graph_name(g), levels, cfg.r, "free", res.best,
                                    res.mean, res.stddev, res.refined.size()};
                });
            }
    }
    if (wanted("repeated_pair")) {
        const OptimiseProtocol pairs{ParamMode::repeated, cfg.pair_starts, cfg.refine, cfg.nm};
        for (const auto& g : spectral_series)
            for (int levels : {1, n - 1}) {
                cells.push_back([=](Rng& rng) {
                    const auto q = graded_qualities(n, levels, 0);
                    const auto res = optimise_amplification(g, q, cfg.r, pairs, rng);
                    return SuiteRow{"repeated_pair", graph_name(g), levels, cfg.r, "repeated",
                                    res.best, res.mean, res.stddev, res.refined.size()};
                });
            }
    }

    AppendixResults out;
    out.rows.resize(cells.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            Rng rng(derive_seed(cfg.seed, 1000 + i));
            out.rows[i] = cells[i](rng);
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(cells.size())));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }

    if (wanted("grids")) {
        const auto k = CirculantGraph::complete(n);
        out.landscape_binary =
            repeated_pair_landscape(k, binary_qualities(n), cfg.r, cfg.grid_points, cfg.grid_points);
        out.landscape_graded = repeated_pair_landscape(k, graded_qualities(n, n - 1, 0), cfg.r,
                                                       cfg.grid_points, cfg.grid_points);
    }
    return out;
}

void write_suite_csv(std::span<const SuiteRow> rows, std::ostream& out)
{
    out << "study,graph,levels,r,mode,best,mean,stddev,samples\n";
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%u,", r.levels, r.r);
        out << r.study << ',' << r.graph << ',' << buf << r.mode << ',';
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,", r.best, r.mean, r.stddev);
        out << buf << r.samples << '\n';
    }
}

void write_landscape_csv(const Eigen::MatrixXd& grid, double gamma_max, double t_max,
                         std::ostream& out)
{
    char buf[40];
    out << "gamma\\t";
    for (Eigen::Index j = 0; j < grid.cols(); ++j) {
        std::snprintf(buf, sizeof buf, ",%.17g", t_max * j / std::max<Eigen::Index>(1, grid.cols() - 1));
        out << buf;
    }
    out << '\n';
    for (Eigen::Index i = 0; i < grid.rows(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", gamma_max * i / std::max<Eigen::Index>(1, grid.rows() - 1));
        out << buf;
        for (Eigen::Index j = 0; j < grid.cols(); ++j) {
            std::snprintf(buf, sizeof buf, ",%.17g", grid(i, j));
            out << buf;
        }
        out << '\n';
    }
}

}  // namespace maoa
