#include "maoa/circulant.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "maoa/error.hpp"

namespace maoa {

namespace {

using cd = std::complex<double>;

// FFTW planning is not thread-safe; executing a finished plan is.
struct FftPlans
{
    fftw_plan forward;
    fftw_plan backward;
};

const FftPlans& plans_for(int n)
{
    static std::mutex mutex;
    static std::map<int, FftPlans> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::vector<cd> a(static_cast<std::size_t>(n)), b(a.size());
        auto* in = reinterpret_cast<fftw_complex*>(a.data());
        auto* out = reinterpret_cast<fftw_complex*>(b.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        FftPlans p{fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, flags),
                   fftw_plan_dft_1d(n, in, out, FFTW_BACKWARD, flags)};
        it = cache.emplace(n, p).first;
    }
    return it->second;
}

// Fisher-Yates on Rng::index so arrangements do not depend on the standard
// library's distribution implementations.
template <class T>
void shuffle_in_place(std::vector<T>& v, Rng& rng)
{
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[static_cast<std::size_t>(rng.index(i))]);
}

}  // namespace

CirculantGraph::CirculantGraph(int n, std::vector<int> connections)
    : n_(n), connections_(std::move(connections))
{
    if (n < 2 || n > 4096)
        throw ValidationError("circulant size must be in [2, 4096]");
    std::sort(connections_.begin(), connections_.end());
    connections_.erase(std::unique(connections_.begin(), connections_.end()), connections_.end());
    for (int s : connections_)
        if (s < 1 || 2 * s > n)
            throw ValidationError("connection offsets must lie in [1, n/2]");
    eigenvalues_.assign(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        double sum = 0.0;
        for (int s : connections_) {
            if (2 * s == n)
                sum += std::cos(std::numbers::pi * j);
            else
                sum += 2.0 * std::cos(2.0 * std::numbers::pi * j * s / n);
        }
        eigenvalues_[static_cast<std::size_t>(j)] = sum;
    }
}

CirculantGraph CirculantGraph::complete(int n)
{
    std::vector<int> all(static_cast<std::size_t>(n / 2));
    std::iota(all.begin(), all.end(), 1);
    return CirculantGraph(n, std::move(all));
}

CirculantGraph CirculantGraph::cycle(int n)
{
    return CirculantGraph(n, {1});
}

double CirculantGraph::spectral_radius() const
{
    double m = 0.0;
    for (double v : eigenvalues_)
        m = std::max(m, std::abs(v));
    return m;
}

int CirculantGraph::degree() const
{
    int d = 0;
    for (int s : connections_)
        d += 2 * s == n_ ? 1 : 2;
    return d;
}

int count_distinct(std::vector<double> values, double tol)
{
    if (values.empty())
        return 0;
    std::sort(values.begin(), values.end());
    int count = 1;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] - values[i - 1] > tol)
            ++count;
    return count;
}

int CirculantGraph::spectral_count() const
{
    return count_distinct(eigenvalues_, kEigenvalueTolerance);
}

bool CirculantGraph::connected() const
{
    int g = n_;
    for (int s : connections_)
        g = std::gcd(g, s);
    return !connections_.empty() && g == 1;
}

std::string CirculantGraph::label() const
{
    return "D" + std::to_string(degree()) + "E" + std::to_string(spectral_count());
}

Eigen::MatrixXd CirculantGraph::adjacency() const
{
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
    for (int v = 0; v < n_; ++v)
        for (int s : connections_) {
            a(v, (v + s) % n_) = 1.0;
            a(v, (v - s + n_) % n_) = 1.0;
        }
    return a;
}

std::vector<cd> evolve_circulant(const CirculantGraph& graph, std::span<const double> qualities,
                                 const QwoaParams& params)
{
    const int n = graph.size();
    if (static_cast<int>(qualities.size()) != n)
        throw ValidationError("one quality per vertex required");
    const FftPlans& plans = plans_for(n);
    const auto& lambda = graph.eigenvalues();
    std::vector<cd> psi(static_cast<std::size_t>(n), cd(1.0 / std::sqrt(static_cast<double>(n))));
    std::vector<cd> spec(psi.size());
    auto* x = reinterpret_cast<fftw_complex*>(psi.data());
    auto* y = reinterpret_cast<fftw_complex*>(spec.data());
    for (std::size_t it = 0; it < params.iterations(); ++it) {
        for (std::size_t v = 0; v < psi.size(); ++v)
            psi[v] *= std::polar(1.0, -params.gamma[it] * qualities[v]);
        fftw_execute_dft(plans.forward, x, y);
        for (std::size_t j = 0; j < spec.size(); ++j)
            spec[j] *= std::polar(1.0 / n, -params.t[it] * lambda[j]);
        fftw_execute_dft(plans.backward, y, x);
    }
    return psi;
}

std::vector<cd> evolve_dense(const Eigen::MatrixXd& adjacency, std::span<const double> qualities,
                             const QwoaParams& params)
{
    const auto n = adjacency.rows();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency);
    const Eigen::MatrixXd& v = solver.eigenvectors();
    const Eigen::VectorXd& lambda = solver.eigenvalues();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Constant(n, cd(1.0 / std::sqrt(static_cast<double>(n))));
    for (std::size_t it = 0; it < params.iterations(); ++it) {
        for (Eigen::Index i = 0; i < n; ++i)
            psi(i) *= std::polar(1.0, -params.gamma[it] * qualities[static_cast<std::size_t>(i)]);
        Eigen::VectorXcd c = v.transpose() * psi;
        for (Eigen::Index i = 0; i < n; ++i)
            c(i) *= std::polar(1.0, -params.t[it] * lambda(i));
        psi = v * c;
    }
    return {psi.data(), psi.data() + n};
}

std::vector<CirculantGraph> enumerate_circulants(int n, std::optional<int> degree,
                                                 std::optional<int> spectral_count)
{
    const int half = n / 2;
    if (half > 20)
        throw ValidationError("circulant enumeration limited to n <= 41");
    std::vector<CirculantGraph> out;
    for (std::uint32_t mask = 1; mask < (1u << half); ++mask) {
        std::vector<int> set;
        for (int s = 1; s <= half; ++s)
            if (mask & (1u << (s - 1)))
                set.push_back(s);
        CirculantGraph g(n, std::move(set));
        if (!g.connected())
            continue;
        if (degree && g.degree() != *degree)
            continue;
        if (spectral_count && g.spectral_count() != *spectral_count)
            continue;
        out.push_back(std::move(g));
    }
    return out;
}

QualityAssignment binary_qualities(int n, std::size_t optimal)
{
    QualityAssignment q{std::vector<double>(static_cast<std::size_t>(n), 0.0), optimal, 1};
    q.qualities.at(optimal) = 1.0;
    return q;
}

QualityAssignment graded_qualities(int n, int levels, std::size_t optimal, Rng* shuffle)
{
    if (levels < 1 || levels > n - 1)
        throw ValidationError("degeneracy levels must lie in [1, n-1]");
    std::vector<double> rest;
    for (int i = 0; i < n - 1; ++i)
        rest.push_back(static_cast<double>(i % levels) / levels);
    if (shuffle)
        shuffle_in_place(rest, *shuffle);
    QualityAssignment q{{}, optimal, levels};
    for (int v = 0, k = 0; v < n; ++v)
        q.qualities.push_back(static_cast<std::size_t>(v) == optimal
                                  ? 1.0
                                  : rest[static_cast<std::size_t>(k++)]);
    return q;
}

QualityAssignment random_qualities(int n, int levels, Rng& rng)
{
    if (levels < 1 || levels > n - 1)
        throw ValidationError("degeneracy levels must lie in [1, n-1]");
    std::vector<double> pool(static_cast<std::size_t>(levels + 1));
    for (double& v : pool)
        v = rng.uniform();
    std::sort(pool.begin(), pool.end());
    const double top = pool.back();
    pool.pop_back();
    std::vector<double> q;
    for (int i = 0; i < n - 1; ++i)
        q.push_back(pool[static_cast<std::size_t>(i % levels)]);
    q.push_back(top);
    shuffle_in_place(q, rng);
    const auto opt = static_cast<std::size_t>(std::max_element(q.begin(), q.end()) - q.begin());
    return {std::move(q), opt, levels};
}

OptimiseResult optimise_amplification(const CirculantGraph& graph, const QualityAssignment& q,
                                      std::uint32_t r, const OptimiseProtocol& protocol, Rng& rng)
{
    const double uniform = 1.0 / graph.size();
    if (r == 0)
        return {uniform, uniform, 0.0, {uniform}, {}};
    const double t_max = 2.0 * std::numbers::pi / graph.spectral_radius();
    const std::size_t dims = protocol.mode == ParamMode::free ? 2 * r : 2;

    auto params_of = [&](const std::vector<double>& x) {
        if (protocol.mode == ParamMode::repeated)
            return QwoaParams::repeated(x[0], x[1], r);
        return QwoaParams::from_flat(x);
    };
    auto objective = [&](const std::vector<double>& x) {
        return -std::norm(evolve_circulant(graph, q.qualities, params_of(x))[q.optimal]);
    };
    auto draw = [&](Rng& g) {
        std::vector<double> x(dims);
        for (std::size_t i = 0; i < dims; i += 2) {
            x[i] = g.uniform(0.0, 2.0 * std::numbers::pi);
            x[i + 1] = g.uniform(0.0, t_max);
        }
        return x;
    };
    std::vector<double> scale(dims);
    for (std::size_t i = 0; i < dims; i += 2) {
        scale[i] = 1.0;
        scale[i + 1] = 1.0 / graph.spectral_radius();
    }

    const auto res = multistart_minimise(objective, draw, scale, rng,
                                         {protocol.starts, protocol.refine, protocol.nm});
    OptimiseResult out;
    out.best = -res.best.value;
    out.params = res.best.x;
    for (const auto& r2 : res.refined)
        out.refined.push_back(-r2.value);
    const double n = static_cast<double>(out.refined.size());
    out.mean = std::accumulate(out.refined.begin(), out.refined.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : out.refined)
        ss += (v - out.mean) * (v - out.mean);
    out.stddev = std::sqrt(ss / n);
    return out;
}

Eigen::MatrixXd repeated_pair_landscape(const CirculantGraph& graph, const QualityAssignment& q,
                                        std::uint32_t r, int gamma_points, int t_points)
{
    const double t_max = 2.0 * std::numbers::pi / graph.spectral_radius();
    Eigen::MatrixXd grid(gamma_points, t_points);
    for (int i = 0; i < gamma_points; ++i) {
        const double gamma = 2.0 * std::numbers::pi * i / std::max(1, gamma_points - 1);
        for (int j = 0; j < t_points; ++j) {
            const double t = t_max * j / std::max(1, t_points - 1);
            grid(i, j) = std::norm(
                evolve_circulant(graph, q.qualities, QwoaParams::repeated(gamma, t, r))[q.optimal]);
        }
    }
    return grid;
}

}  // namespace maoa
