#include "maoa/reduced_graph.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "maoa/error.hpp"
#include "maoa/rng.hpp"

namespace maoa {

namespace {

using cd = std::complex<double>;

Eigen::VectorXcd walk_step(const Eigen::MatrixXd& vecs, const Eigen::VectorXd& vals,
                           const Eigen::VectorXd& qualities, const Eigen::VectorXcd& psi,
                           double gamma, double t)
{
    Eigen::VectorXcd phased(psi.size());
    for (Eigen::Index i = 0; i < psi.size(); ++i)
        phased(i) = psi(i) * std::polar(1.0, -gamma * qualities(i));
    Eigen::VectorXcd coeff = vecs.transpose() * phased;
    for (Eigen::Index i = 0; i < coeff.size(); ++i)
        coeff(i) *= std::polar(1.0, -t * vals(i));
    return vecs * coeff;
}

}  // namespace

QwoaParams QwoaParams::repeated(double gamma, double t, std::size_t r)
{
    return {std::vector<double>(r, gamma), std::vector<double>(r, t)};
}

QwoaParams QwoaParams::from_flat(std::span<const double> flat)
{
    if (flat.size() % 2 != 0)
        throw std::invalid_argument("QwoaParams::from_flat: odd length");
    QwoaParams p;
    for (std::size_t i = 0; i < flat.size(); i += 2) {
        p.gamma.push_back(flat[i]);
        p.t.push_back(flat[i + 1]);
    }
    return p;
}

std::vector<double> QwoaParams::flatten() const
{
    std::vector<double> out;
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        out.push_back(gamma[i]);
        out.push_back(t[i]);
    }
    return out;
}

ReducedGraph::ReducedGraph(std::vector<double> counts, std::vector<double> qualities)
    : counts_(std::move(counts)), qualities_(std::move(qualities))
{
    const auto k = static_cast<Eigen::Index>(counts_.size());
    if (k == 0 || counts_.size() != qualities_.size())
        throw ValidationError("reduced graph needs one quality per non-empty group");
    if (k > 64)
        throw ValidationError("reduced graph supports at most 64 groups");
    total_ = 0.0;
    for (double c : counts_) {
        if (!(c > 0.0))
            throw ValidationError("reduced graph group counts must be positive");
        total_ += c;
    }
    adjacency_.resize(k, k);
    initial_.resize(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const double ni = counts_[static_cast<std::size_t>(i)];
        initial_(i) = std::sqrt(ni / total_);
        for (Eigen::Index j = 0; j < k; ++j) {
            const double nj = counts_[static_cast<std::size_t>(j)];
            adjacency_(i, j) = i == j ? ni - 1.0 : std::sqrt(ni * nj);
        }
    }
    if ((adjacency_ - adjacency_.transpose()).cwiseAbs().maxCoeff() != 0.0)
        throw std::logic_error("reduced adjacency is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency_);
    eigvecs_ = solver.eigenvectors();
    eigvals_ = solver.eigenvalues();
}

Eigen::VectorXcd ReducedGraph::evolve(const QwoaParams& params) const
{
    const Eigen::Map<const Eigen::VectorXd> q(qualities_.data(),
                                               static_cast<Eigen::Index>(qualities_.size()));
    Eigen::VectorXcd psi = initial_.cast<cd>();
    for (std::size_t j = 0; j < params.iterations(); ++j)
        psi = walk_step(eigvecs_, eigvals_, q, psi, params.gamma[j], params.t[j]);
    return psi;
}

std::vector<double> ReducedGraph::group_probabilities(const QwoaParams& params) const
{
    const Eigen::VectorXcd psi = evolve(params);
    std::vector<double> out(static_cast<std::size_t>(psi.size()));
    for (Eigen::Index i = 0; i < psi.size(); ++i)
        out[static_cast<std::size_t>(i)] = std::norm(psi(i));
    return out;
}

double single_iteration_amplification(double gamma, double t, double n)
{
    const double c = std::cos(n * t);
    const double s = std::sin(n * t);
    return 3.0 + 2.0 * (c * (std::cos(gamma) - 1.0) - std::cos(gamma)) -
           2.0 * s * std::sin(gamma);
}

std::vector<double> evolve_complete_graph(std::span<const double> qualities,
                                          const QwoaParams& params)
{
    const auto n = static_cast<Eigen::Index>(qualities.size());
    if (n == 0 || n > 4096)
        throw ValidationError("complete graph size must be in [1, 4096]");
    const Eigen::MatrixXd a =
        Eigen::MatrixXd::Ones(n, n) - Eigen::MatrixXd::Identity(n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    const Eigen::Map<const Eigen::VectorXd> q(qualities.data(), n);
    Eigen::VectorXcd psi =
        Eigen::VectorXcd::Constant(n, cd(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
    for (std::size_t j = 0; j < params.iterations(); ++j)
        psi = walk_step(solver.eigenvectors(), solver.eigenvalues(), q, psi, params.gamma[j],
                        params.t[j]);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = std::norm(psi(i));
    return out;
}

Contraction contract_complete_graph(std::span<const double> qualities)
{
    std::vector<double> counts, values;
    std::vector<std::size_t> group_of;
    for (double q : qualities) {
        std::size_t g = 0;
        while (g < values.size() && values[g] != q)
            ++g;
        if (g == values.size()) {
            values.push_back(q);
            counts.push_back(0.0);
        }
        counts[g] += 1.0;
        group_of.push_back(g);
    }
    return {ReducedGraph(std::move(counts), std::move(values)), std::move(group_of)};
}

void PartitionOptions::use_full_budget()
{
    starts = 10'000;
    refine = 3;
    repeats = 24;
}

ReducedGraph partition_graph(int partitions, double total, double marked)
{
    if (partitions < 2)
        throw ValidationError("partition experiment needs at least 2 partitions");
    if (!(marked > 0.0 && marked < total))
        throw ValidationError("marked count must lie in (0, N)");
    const int rest = partitions - 1;
    const double remaining = total - marked;
    const double base = std::floor(remaining / rest);
    double extra = remaining - base * rest;
    std::vector<double> counts{marked};
    std::vector<double> qualities{1.0};
    for (int i = 0; i < rest; ++i) {
        double c = base;
        if (extra >= 1.0) {
            c += 1.0;
            extra -= 1.0;
        }
        counts.push_back(c);
        qualities.push_back((static_cast<double>(i) + 0.5) / rest);
    }
    return ReducedGraph(std::move(counts), std::move(qualities));
}

std::vector<PartitionRow> partition_experiment(int partitions, std::uint32_t r_lo,
                                               std::uint32_t r_hi, const PartitionOptions& opts)
{
    const ReducedGraph graph = partition_graph(partitions, opts.total, opts.marked);
    const double rho = opts.marked / opts.total;
    const double n = graph.total();
    std::vector<PartitionRow> rows;
    for (std::uint32_t r = r_lo; r <= r_hi; ++r) {
        const double k = 2.0 * r + 1.0;
        double best = rho;
        if (r > 0) {
            // Optimise amplification over (gamma, tau = t N) so values and
            // coordinates are O(1).
            auto objective = [&](const std::vector<double>& x) {
                QwoaParams p = QwoaParams::from_flat(x);
                for (double& t : p.t)
                    t /= n;
                return -graph.group_probabilities(p)[0] / rho;
            };
            auto draw = [&](Rng& rng) {
                std::vector<double> x(2 * r);
                for (double& v : x)
                    v = rng.uniform(0.0, 2.0 * std::numbers::pi);
                return x;
            };
            MultistartOptions ms{opts.starts, opts.refine, opts.nm};
            for (std::uint64_t rep = 0; rep < opts.repeats; ++rep) {
                Rng rng(derive_seed(opts.seed, (static_cast<std::uint64_t>(partitions) << 40) |
                                                   (static_cast<std::uint64_t>(r) << 20) | rep));
                const auto res = multistart_minimise(objective, draw, {}, rng, ms);
                best = std::max(best, -res.best.value * rho);
            }
        }
        rows.push_back({partitions, r, best, best / rho, k * k});
    }
    return rows;
}

void write_partition_csv(std::span<const PartitionRow> rows, std::ostream& out)
{
    out << "p,r,optimised_probability,amplification,low_convergence_bound\n";
    char buf[160];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%d,%u,%.17g,%.17g,%.17g\n", row.partitions, row.r,
                      row.probability, row.amplification, row.bound);
        out << buf;
    }
}

}  // namespace maoa
