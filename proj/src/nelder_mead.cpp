#include "maoa/nelder_mead.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace maoa {

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const std::vector<double>& scale, const NelderMeadOptions& opts)
{
    const std::size_t n = x0.size();
    if (n == 0)
        throw std::invalid_argument("nelder_mead: empty start point");
    std::uint64_t evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };

    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i)
        pts[i + 1][i] += opts.initial_step * (scale.empty() ? 1.0 : scale[i]);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        vals[i] = eval(pts[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n);
    auto blend = [&](const std::vector<double>& towards, double coef) {
        std::vector<double> out(n);
        for (std::size_t j = 0; j < n; ++j)
            out[j] = centroid[j] + coef * (towards[j] - centroid[j]);
        return out;
    };

    bool converged = false;
    while (evals < opts.max_evaluations) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[n - 1];
        if (vals[worst] - vals[best] < opts.tolerance) {
            converged = true;
            break;
        }
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i)
            if (i != worst)
                for (std::size_t j = 0; j < n; ++j)
                    centroid[j] += pts[i][j] / static_cast<double>(n);

        const auto xr = blend(pts[worst], -opts.reflection);
        const double fr = eval(xr);
        if (fr < vals[best]) {
            const auto xe = blend(pts[worst], -opts.reflection * opts.expansion);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[worst] = xe;
                vals[worst] = fe;
            } else {
                pts[worst] = xr;
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second]) {
            pts[worst] = xr;
            vals[worst] = fr;
            continue;
        }
        // Contract outside when the reflection beat the worst point, else inside.
        const bool outside = fr < vals[worst];
        const auto xc = outside ? blend(xr, opts.contraction) : blend(pts[worst], opts.contraction);
        const double fc = eval(xc);
        if (fc < (outside ? fr : vals[worst])) {
            pts[worst] = xc;
            vals[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                pts[i][j] = pts[best][j] + opts.shrink * (pts[i][j] - pts[best][j]);
            vals[i] = eval(pts[i]);
        }
    }
    const auto it = std::min_element(vals.begin(), vals.end());
    const auto idx = static_cast<std::size_t>(it - vals.begin());
    return {pts[idx], *it, evals, converged};
}

MultistartResult multistart_minimise(const Objective& f,
                                     const std::function<std::vector<double>(Rng&)>& draw,
                                     const std::vector<double>& scale, Rng& rng,
                                     const MultistartOptions& opts)
{
    if (opts.starts == 0)
        throw std::invalid_argument("multistart_minimise: need at least one start");
    struct Start
    {
        std::vector<double> x;
        double value;
        std::uint64_t index;
    };
    std::vector<Start> starts;
    starts.reserve(opts.starts);
    for (std::uint64_t i = 0; i < opts.starts; ++i) {
        auto x = draw(rng);
        const double v = f(x);
        starts.push_back({std::move(x), v, i});
    }
    std::stable_sort(starts.begin(), starts.end(),
                     [](const Start& a, const Start& b) { return a.value < b.value; });

    MultistartResult out;
    const auto refine = std::min<std::uint64_t>(std::max<std::uint64_t>(1, opts.refine), starts.size());
    for (std::uint64_t i = 0; i < refine; ++i) {
        out.refined.push_back(nelder_mead(f, starts[i].x, scale, opts.nm));
        if (i == 0 || out.refined.back().value < out.best.value)
            out.best = out.refined.back();
    }
    return out;
}

}  // namespace maoa
