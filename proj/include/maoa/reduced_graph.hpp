#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "maoa/nelder_mead.hpp"

namespace maoa {

/// Alternating phase-shift and walk parameters, one pair per iteration.
struct QwoaParams
{
    std::vector<double> gamma;
    std::vector<double> t;

    std::size_t iterations() const { return gamma.size(); }
    static QwoaParams repeated(double gamma, double t, std::size_t r);
    /// Inverse of flatten(): (gamma_1, t_1, gamma_2, t_2, ...).
    static QwoaParams from_flat(std::span<const double> flat);
    std::vector<double> flatten() const;
};

/// Complete graph with quality-degenerate vertices contracted into groups.
/// Group i holds counts[i] vertices of quality qualities[i].
class ReducedGraph
{
  public:
    ReducedGraph(std::vector<double> counts, std::vector<double> qualities);

    std::size_t groups() const { return counts_.size(); }
    double total() const { return total_; }
    const std::vector<double>& counts() const { return counts_; }
    const std::vector<double>& qualities() const { return qualities_; }

    /// Diagonal n_i - 1, off-diagonal sqrt(n_i n_j).
    const Eigen::MatrixXd& adjacency() const { return adjacency_; }
    /// Components sqrt(n_i / N).
    const Eigen::VectorXd& initial_state() const { return initial_; }

    Eigen::VectorXcd evolve(const QwoaParams& params) const;

    /// Probability of measuring any vertex of each group.
    std::vector<double> group_probabilities(const QwoaParams& params) const;

  private:
    std::vector<double> counts_;
    std::vector<double> qualities_;
    double total_;
    Eigen::MatrixXd adjacency_;
    Eigen::VectorXd initial_;
    Eigen::MatrixXd eigvecs_;
    Eigen::VectorXd eigvals_;
};

/// Closed-form single-iteration amplification of a small marked fraction on
/// the complete graph: 3 + 2(cos Nt (cos g - 1) - cos g) - 2 sin Nt sin g.
/// Under the exp(-i g Q), exp(-i t A) convention used by evolve() this is the
/// amplification at phase -g; the maximum 9 at (pi, pi/N) is the same.
double single_iteration_amplification(double gamma, double t, double n);

/// Full N-vertex complete-graph evolution (dense), for checking contraction.
/// Returns per-vertex probabilities.
std::vector<double> evolve_complete_graph(std::span<const double> qualities,
                                          const QwoaParams& params);

/// Groups the vertices of a complete graph by equal quality. group_of[v] is
/// the group index of vertex v; groups are ordered by first appearance.
struct Contraction
{
    ReducedGraph graph;
    std::vector<std::size_t> group_of;
};
Contraction contract_complete_graph(std::span<const double> qualities);

struct PartitionOptions
{
    double total = 1e8;
    double marked = 10;
    std::uint64_t starts = 500;
    std::uint64_t refine = 3;
    std::uint64_t repeats = 4;
    std::uint64_t seed = 1;
    NelderMeadOptions nm;

    /// 10,000 starts, 24 repeats.
    void use_full_budget();
};

/// Partition p: one marked group of quality 1 plus p-1 equal-sized unmarked
/// groups with qualities at the midpoints of p-1 equal strata of [0, 1].
ReducedGraph partition_graph(int partitions, double total, double marked);

struct PartitionRow
{
    int partitions;
    std::uint32_t r;
    double probability;
    double amplification;
    double bound;  // (2r+1)^2
};

/// Best marked probability over free (gamma, t) pairs for each r in
/// [r_lo, r_hi].
std::vector<PartitionRow> partition_experiment(int partitions, std::uint32_t r_lo,
                                               std::uint32_t r_hi, const PartitionOptions& opts);

/// "p,r,optimised_probability,amplification,low_convergence_bound".
void write_partition_csv(std::span<const PartitionRow> rows, std::ostream& out);

}  // namespace maoa
