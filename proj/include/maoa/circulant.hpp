#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "maoa/nelder_mead.hpp"
#include "maoa/reduced_graph.hpp"
#include "maoa/rng.hpp"

namespace maoa {

inline constexpr double kEigenvalueTolerance = 1e-9;

/// Circulant graph on n vertices: vertex v is adjacent to v +- s (mod n) for
/// every s in the connection set, a subset of {1, ..., n/2}.
class CirculantGraph
{
  public:
    CirculantGraph(int n, std::vector<int> connections);

    static CirculantGraph complete(int n);
    static CirculantGraph cycle(int n);

    int size() const { return n_; }
    const std::vector<int>& connections() const { return connections_; }

    /// lambda_j for j = 0..n-1, in Fourier order.
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    double spectral_radius() const;

    /// Average (here: common) vertex degree.
    int degree() const;
    /// Number of distinct eigenvalues, grouped within kEigenvalueTolerance.
    int spectral_count() const;
    bool connected() const;
    std::string label() const;  // "D<degree>E<spectral count>"

    Eigen::MatrixXd adjacency() const;

  private:
    int n_;
    std::vector<int> connections_;
    std::vector<double> eigenvalues_;
};

/// Distinct values of `values` after grouping sorted neighbours within tol.
int count_distinct(std::vector<double> values, double tol);

/// Alternating phase shifts and walks, the walk applied in the Fourier
/// basis. Returns the n-vertex state.
std::vector<std::complex<double>> evolve_circulant(const CirculantGraph& graph,
                                                   std::span<const double> qualities,
                                                   const QwoaParams& params);

/// Same evolution through a dense eigendecomposition of the adjacency matrix.
std::vector<std::complex<double>> evolve_dense(const Eigen::MatrixXd& adjacency,
                                               std::span<const double> qualities,
                                               const QwoaParams& params);

/// Connected circulants on n vertices, optionally filtered by degree and
/// spectral count, in increasing bitmask order of the connection set.
std::vector<CirculantGraph> enumerate_circulants(int n, std::optional<int> degree = {},
                                                 std::optional<int> spectral_count = {});

struct QualityAssignment
{
    std::vector<double> qualities;
    std::size_t optimal;  // index of the unique best (highest) quality
    int levels;           // distinct non-optimal values
};

/// One vertex of quality 1, the rest 0.
QualityAssignment binary_qualities(int n, std::size_t optimal = 0);

/// Non-optimal vertices take `levels` evenly spaced values j/levels
/// (repeated round-robin, positions shuffled by rng when given); the optimal
/// vertex takes 1. levels = n-1 gives the evenly spaced no-degeneracy case.
QualityAssignment graded_qualities(int n, int levels, std::size_t optimal, Rng* shuffle = nullptr);

/// Random degenerate assignment: levels+1 values uniform on [0,1), the
/// largest on one random vertex, the others repeated over the remaining
/// vertices in random arrangement.
QualityAssignment random_qualities(int n, int levels, Rng& rng);

enum class ParamMode { free, repeated };

struct OptimiseProtocol
{
    ParamMode mode = ParamMode::free;
    std::uint64_t starts = 1000;
    std::uint64_t refine = 10;  // refine == starts: every start goes to Nelder-Mead
    NelderMeadOptions nm;
};

struct OptimiseResult
{
    double best;
    double mean;    // over refined starts
    double stddev;  // population deviation over refined starts
    std::vector<double> refined;
    std::vector<double> params;  // flattened (gamma, t) of the best
};

/// Maximises the probability of the optimal vertex after r iterations.
/// Starts draw gamma on [0, 2 pi) and t on [0, 2 pi / lambda_max).
OptimiseResult optimise_amplification(const CirculantGraph& graph, const QualityAssignment& q,
                                      std::uint32_t r, const OptimiseProtocol& protocol, Rng& rng);

/// Optimal-vertex probability on a (gamma, t) grid with the pair repeated r
/// times. Rows are gamma, columns t.
Eigen::MatrixXd repeated_pair_landscape(const CirculantGraph& graph, const QualityAssignment& q,
                                        std::uint32_t r, int gamma_points, int t_points);

// ---------------------------------------------------------------------------
// Appendix studies

struct AppendixConfig
{
    int n = 24;
    std::uint32_t r = 3;
    std::uint64_t seed = 1;
    unsigned workers = 1;

    std::uint64_t draws = 8;              // quality distributions per graph
    std::uint64_t starts = 1000;          // random starts per optimisation
    std::uint64_t refine = 10;            // best starts refined
    std::uint64_t landscape_starts = 24;  // starts per landscape study, all refined
    std::uint64_t pair_starts = 1000;     // repeated-pair study
    int replicate_graphs = 9;
    std::vector<int> degeneracy_levels{1, 2, 3, 6, 12, 23};
    int grid_points = 121;
    NelderMeadOptions nm;

    /// 48 distributions, 10,000 starts, 240 landscape starts.
    void use_full_budget();
};

struct SuiteRow
{
    std::string study;
    std::string graph;
    int levels;
    std::uint32_t r;
    std::string mode;
    double best;
    double mean;
    double stddev;
    std::uint64_t samples;
};

struct AppendixResults
{
    std::vector<SuiteRow> rows;
    Eigen::MatrixXd landscape_binary;
    Eigen::MatrixXd landscape_graded;
};

/// Studies: "replicates" (D12E12 graphs), "degree" (E = 13), "spectral"
/// (D = 12 plus the complete graph), "degeneracy", "landscape",
/// "repeated_pair", and the two K_n repeated-pair grids.
AppendixResults run_appendix_suite(const AppendixConfig& cfg,
                                   const std::vector<std::string>& studies = {});

/// "study,graph,levels,r,mode,best,mean,stddev,samples".
void write_suite_csv(std::span<const SuiteRow> rows, std::ostream& out);

/// Comma-separated matrix with a header row of t values and a leading
/// gamma column.
void write_landscape_csv(const Eigen::MatrixXd& grid, double gamma_max, double t_max,
                         std::ostream& out);

}  // namespace maoa
