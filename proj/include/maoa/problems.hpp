#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "maoa/distribution.hpp"

namespace maoa {

using u128 = unsigned __int128;

std::string to_string(u128 value);

// ---------------------------------------------------------------------------
// Capacitated vehicle routing

/// Location 0 is the depot; customer locations are 1..l.
struct CvrpInstance
{
    std::vector<int> demands;            // size l, demands[i] belongs to location i+1
    std::vector<std::vector<int>> cost;  // (l+1) x (l+1), symmetric, zero diagonal
    int capacity = 20;

    int locations() const { return static_cast<int>(demands.size()); }

    /// Throws ValidationError when the shape, symmetry or diagonal is wrong.
    void validate() const;
};

/// Integer ranges used for randomly generated instances.
struct CvrpRanges
{
    int demand_lo = 5, demand_hi = 30;
    int depot_cost_lo = 10, depot_cost_hi = 20;
    int inter_cost_lo = 1, inter_cost_hi = 15;
    int capacity = 20;
};

CvrpInstance generate_cvrp(int locations, std::uint64_t seed, const CvrpRanges& ranges = {});

/// Number of ways to split l locations into unordered sets of ordered routes
/// (sum of Lah numbers). Exact for l <= 20.
u128 cvrp_cardinality(int locations);

/// Cost of one route with split delivery: the vehicle leaves the depot full
/// and drops what it carries at each location. When it runs dry part way
/// through a delivery it makes a depot round trip and finishes; when it
/// leaves a location empty it goes via the depot to the next one.
long long route_cost(const CvrpInstance& inst, std::span<const int> route);

/// Visits every solution once. Routes are 1-based location indices.
using CvrpVisitor = std::function<void(std::span<const std::vector<int>> routes, long long cost)>;
void for_each_cvrp_solution(const CvrpInstance& inst, const CvrpVisitor& visit);

/// Full sorted cost distribution. `workers` shards the enumeration tree.
FiniteDistribution cvrp_enumerate(const CvrpInstance& inst, unsigned workers = 1);

/// Key-value text: "locations", "capacity", "demands", "cost.<row>".
void write_cvrp(const CvrpInstance& inst, std::ostream& out);
CvrpInstance read_cvrp(std::istream& in);

// ---------------------------------------------------------------------------
// Portfolio selection

struct PortfolioInstance
{
    std::vector<std::string> assets;
    Eigen::VectorXd returns;     // mean daily percentage return per asset
    Eigen::MatrixXd covariance;  // covariance of percentage returns, scaled by 1/100
    int net_position = 0;

    int size() const { return static_cast<int>(returns.size()); }
    void validate() const;
};

/// Sum over short counts s of C(n, I+s) C(n-I-s, s).
u128 portfolio_cardinality(int n, int net_position);

struct PortfolioPoint
{
    double risk;
    double ret;
};

/// One (risk, return) pair per valid position vector z in {-1,0,1}^n with
/// sum(z) = I, in lexicographic order of z (-1 < 0 < 1).
std::vector<PortfolioPoint> portfolio_enumerate(const PortfolioInstance& inst);

/// Two-threshold marking over a portfolio table: risk < second_threshold and
/// return beyond `threshold` in the mark's sense.
double marked_ratio(std::span<const PortfolioPoint> table, const MarkingSpec& mark);

/// Risk cutoff marking the lowest `fraction` of portfolios by risk.
double risk_cutoff(std::span<const PortfolioPoint> table, double fraction);

/// Distribution of -return over portfolios with risk < risk_cutoff(fraction),
/// i.e. maximising return inside the low-risk subspace as a minimisation.
FiniteDistribution low_risk_return_distribution(std::span<const PortfolioPoint> table,
                                                double fraction = 0.10);

/// Parses a price table: header of asset names (an optional leading
/// "date" column is skipped), one row per trading day, positive prices.
PortfolioInstance ingest_prices(std::istream& csv, int net_position);

/// Geometric random walk price table in the format ingest_prices reads.
std::string synthetic_prices_csv(int assets, int days, std::uint64_t seed);

PortfolioInstance generate_portfolio(int assets, int net_position, std::uint64_t seed,
                                     int days = 500);

void write_portfolio(const PortfolioInstance& inst, std::ostream& out);
PortfolioInstance read_portfolio(std::istream& in);

}  // namespace maoa
