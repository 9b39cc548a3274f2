#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "maoa/error.hpp"
#include "maoa/kv_config.hpp"
#include "maoa/problems.hpp"
#include "maoa/rng.hpp"

namespace maoa {

std::string to_string(u128 value)
{
    if (value == 0)
        return "0";
    std::string digits;
    while (value > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

void CvrpInstance::validate() const
{
    const auto l = demands.size();
    if (l == 0)
        throw ValidationError("CVRP instance needs at least one location");
    if (capacity <= 0)
        throw ValidationError("CVRP capacity must be positive");
    if (cost.size() != l + 1)
        throw ValidationError("CVRP cost matrix must have l+1 rows");
    for (std::size_t i = 0; i <= l; ++i) {
        if (cost[i].size() != l + 1)
            throw ValidationError("CVRP cost matrix must be square");
        if (cost[i][i] != 0)
            throw ValidationError("CVRP cost matrix diagonal must be zero");
        for (std::size_t j = 0; j < i; ++j) {
            if (cost[i][j] != cost[j][i])
                throw ValidationError("CVRP cost matrix must be symmetric");
            if (cost[i][j] < 0)
                throw ValidationError("CVRP costs must be nonnegative");
        }
    }
    for (int d : demands)
        if (d < 0)
            throw ValidationError("CVRP demands must be nonnegative");
}

CvrpInstance generate_cvrp(int locations, std::uint64_t seed, const CvrpRanges& ranges)
{
    if (locations < 1)
        throw ValidationError("CVRP instance needs at least one location");
    Rng rng(seed);
    auto draw = [&](int lo, int hi) {
        return lo + static_cast<int>(rng.index(static_cast<std::uint64_t>(hi - lo + 1)));
    };

    CvrpInstance inst;
    inst.capacity = ranges.capacity;
    inst.demands.resize(static_cast<std::size_t>(locations));
    for (int& d : inst.demands)
        d = draw(ranges.demand_lo, ranges.demand_hi);

    const auto size = static_cast<std::size_t>(locations) + 1;
    inst.cost.assign(size, std::vector<int>(size, 0));
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = i + 1; j < size; ++j) {
            const int c = i == 0 ? draw(ranges.depot_cost_lo, ranges.depot_cost_hi)
                                 : draw(ranges.inter_cost_lo, ranges.inter_cost_hi);
            inst.cost[i][j] = inst.cost[j][i] = c;
        }
    }
    return inst;
}

u128 cvrp_cardinality(int locations)
{
    if (locations < 1)
        throw std::invalid_argument("cvrp_cardinality: need at least one location");
    if (locations > 20)
        throw std::invalid_argument("cvrp_cardinality: exact only up to 20 locations");
    // Lah numbers via L(l, k+1) = L(l, k) (l-k) / (k (k+1)), L(l, 1) = l!.
    const auto l = static_cast<unsigned>(locations);
    u128 term = 1;
    for (unsigned i = 2; i <= l; ++i)
        term *= i;
    u128 total = 0;
    for (unsigned k = 1; k <= l; ++k) {
        total += term;
        if (k < l)
            term = term * (l - k) / (static_cast<u128>(k) * (k + 1));
    }
    return total;
}

long long route_cost(const CvrpInstance& inst, std::span<const int> route)
{
    long long total = 0;
    int load = inst.capacity;
    int pos = 0;
    for (int loc : route) {
        int demand = inst.demands[static_cast<std::size_t>(loc - 1)];
        if (load == 0) {
            total += inst.cost[pos][0] + inst.cost[0][loc];
            load = inst.capacity;
        } else {
            total += inst.cost[pos][loc];
        }
        while (demand > load) {
            demand -= load;
            total += inst.cost[loc][0] + inst.cost[0][loc];
            load = inst.capacity;
        }
        load -= demand;
        pos = loc;
    }
    if (pos != 0)
        total += inst.cost[pos][0];
    return total;
}

namespace {

using Routes = std::vector<std::vector<int>>;

long long solution_cost(const CvrpInstance& inst, const Routes& routes)
{
    long long total = 0;
    for (const auto& r : routes)
        total += route_cost(inst, r);
    return total;
}

// Builds every unordered set of ordered routes by inserting locations
// next..l one at a time: each location either opens a new route or goes into
// any gap of an existing route. Removing locations in decreasing order undoes
// the construction, so every solution is produced exactly once.
template <class Leaf>
void grow(Routes& routes, int next, int last, Leaf& leaf)
{
    if (next > last) {
        leaf(routes);
        return;
    }
    const std::size_t route_count = routes.size();
    for (std::size_t r = 0; r < route_count; ++r) {
        for (std::size_t pos = 0; pos <= routes[r].size(); ++pos) {
            routes[r].insert(routes[r].begin() + static_cast<std::ptrdiff_t>(pos), next);
            grow(routes, next + 1, last, leaf);
            routes[r].erase(routes[r].begin() + static_cast<std::ptrdiff_t>(pos));
        }
    }
    routes.push_back({next});
    grow(routes, next + 1, last, leaf);
    routes.pop_back();
}

}  // namespace

void for_each_cvrp_solution(const CvrpInstance& inst, const CvrpVisitor& visit)
{
    inst.validate();
    Routes routes;
    auto leaf = [&](const Routes& rs) { visit(rs, solution_cost(inst, rs)); };
    grow(routes, 1, inst.locations(), leaf);
}

FiniteDistribution cvrp_enumerate(const CvrpInstance& inst, unsigned workers)
{
    inst.validate();
    const int l = inst.locations();
    const int prefix = std::min(l, 4);

    // Shards: every partial solution over locations 1..prefix.
    std::vector<Routes> shards;
    {
        Routes routes;
        auto collect = [&](const Routes& rs) { shards.push_back(rs); };
        grow(routes, 1, prefix, collect);
    }

    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(shards.size())));
    std::vector<std::unordered_map<long long, std::uint64_t>> histograms(workers);
    auto work = [&](unsigned w) {
        auto& hist = histograms[w];
        auto leaf = [&](const Routes& rs) { ++hist[solution_cost(inst, rs)]; };
        for (std::size_t s = w; s < shards.size(); s += workers) {
            Routes routes = shards[s];
            grow(routes, prefix + 1, l, leaf);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work, w);
    }

    std::map<long long, std::uint64_t> merged;
    for (const auto& h : histograms)
        for (const auto& [cost, count] : h)
            merged[cost] += count;
    std::vector<FiniteDistribution::Run> runs;
    runs.reserve(merged.size());
    for (const auto& [cost, count] : merged)
        runs.push_back({static_cast<double>(cost), count});
    return FiniteDistribution::from_runs(std::move(runs));
}

void write_cvrp(const CvrpInstance& inst, std::ostream& out)
{
    auto join = [](const std::vector<int>& v) {
        std::ostringstream s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s << (i ? " " : "") << v[i];
        return s.str();
    };
    KeyValues kv;
    kv.set("locations", std::to_string(inst.locations()));
    kv.set("capacity", std::to_string(inst.capacity));
    kv.set("demands", join(inst.demands));
    for (std::size_t i = 0; i < inst.cost.size(); ++i)
        kv.set("cost." + std::to_string(i), join(inst.cost[i]));
    kv.write(out);
}

CvrpInstance read_cvrp(std::istream& in)
{
    const KeyValues kv = KeyValues::parse(in);
    auto ints = [](const std::string& text) {
        std::vector<int> out;
        for (long long v : parse_integer_list(text))
            out.push_back(static_cast<int>(v));
        return out;
    };
    CvrpInstance inst;
    const auto l = std::stoi(kv.require("locations"));
    inst.capacity = std::stoi(kv.require("capacity"));
    inst.demands = ints(kv.require("demands"));
    if (static_cast<int>(inst.demands.size()) != l)
        throw ValidationError("CVRP demands length does not match locations");
    for (int i = 0; i <= l; ++i)
        inst.cost.push_back(ints(kv.require("cost." + std::to_string(i))));
    inst.validate();
    return inst;
}

}  // namespace maoa
