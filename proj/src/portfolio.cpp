#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "maoa/error.hpp"
#include "maoa/kv_config.hpp"
#include "maoa/normal.hpp"
#include "maoa/problems.hpp"
#include "maoa/rng.hpp"

namespace maoa {

void PortfolioInstance::validate() const
{
    const auto n = returns.size();
    if (n == 0)
        throw ValidationError("portfolio needs at least one asset");
    if (covariance.rows() != n || covariance.cols() != n)
        throw ValidationError("covariance must be n x n");
    if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw ValidationError("covariance must be symmetric");
    if (std::abs(net_position) > n)
        throw ValidationError("net position exceeds asset count");
    if (!assets.empty() && static_cast<Eigen::Index>(assets.size()) != n)
        throw ValidationError("asset name count does not match returns");
}

namespace {

u128 binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    u128 out = 1;
    for (int i = 1; i <= k; ++i)
        out = out * static_cast<u128>(n - k + i) / static_cast<u128>(i);
    return out;
}

}  // namespace

u128 portfolio_cardinality(int n, int net_position)
{
    if (n < 0 || net_position < 0 || net_position > n)
        throw std::invalid_argument("portfolio_cardinality: need 0 <= I <= n");
    u128 total = 0;
    for (int s = 0; s <= (n - net_position) / 2; ++s)
        total += binomial(n, net_position + s) * binomial(n - net_position - s, s);
    return total;
}

std::vector<PortfolioPoint> portfolio_enumerate(const PortfolioInstance& inst)
{
    inst.validate();
    if (inst.net_position < 0)
        throw ValidationError("portfolio enumeration expects a nonnegative net position");
    const int n = inst.size();
    const auto expected = portfolio_cardinality(n, inst.net_position);
    std::vector<PortfolioPoint> out;
    out.reserve(static_cast<std::size_t>(expected));

    // acc[k] holds sum_j sigma(k, j) z_j over the assets fixed so far.
    std::vector<double> acc(static_cast<std::size_t>(n), 0.0);

    auto recurse = [&](auto&& self, int i, int sum, double risk, double ret) -> void {
        if (i == n) {
            out.push_back({risk, ret});
            return;
        }
        const int remaining = n - i - 1;
        for (int zi = -1; zi <= 1; ++zi) {
            const int need = inst.net_position - (sum + zi);
            if (std::abs(need) > remaining)
                continue;
            if (zi == 0) {
                self(self, i + 1, sum, risk, ret);
                continue;
            }
            const double delta =
                inst.covariance(i, i) + 2.0 * zi * acc[static_cast<std::size_t>(i)];
            for (int k = i + 1; k < n; ++k)
                acc[static_cast<std::size_t>(k)] += inst.covariance(k, i) * zi;
            self(self, i + 1, sum + zi, risk + delta, ret + inst.returns(i) * zi);
            for (int k = i + 1; k < n; ++k)
                acc[static_cast<std::size_t>(k)] -= inst.covariance(k, i) * zi;
        }
    };
    recurse(recurse, 0, 0, 0.0, 0.0);
    return out;
}

double marked_ratio(std::span<const PortfolioPoint> table, const MarkingSpec& mark)
{
    if (table.empty())
        return 0.0;
    std::size_t count = 0;
    for (const auto& p : table) {
        if (mark.second_threshold && !(p.risk < *mark.second_threshold))
            continue;
        if (mark.marks(p.ret))
            ++count;
    }
    return static_cast<double>(count) / static_cast<double>(table.size());
}

double risk_cutoff(std::span<const PortfolioPoint> table, double fraction)
{
    std::vector<double> risks;
    risks.reserve(table.size());
    for (const auto& p : table)
        risks.push_back(p.risk);
    const QualityDistribution dist(FiniteDistribution::from_values(std::move(risks)));
    return dist.quantile(fraction);
}

FiniteDistribution low_risk_return_distribution(std::span<const PortfolioPoint> table,
                                                double fraction)
{
    const double cutoff = risk_cutoff(table, fraction);
    std::vector<double> values;
    for (const auto& p : table)
        if (p.risk < cutoff)
            values.push_back(-p.ret);
    if (values.empty())
        throw ValidationError("risk fraction selects no portfolios");
    return FiniteDistribution::from_values(std::move(values));
}

namespace {

std::vector<std::string_view> split_csv_line(std::string_view line)
{
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return cells;
}

std::string lower(std::string_view s)
{
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

PortfolioInstance ingest_prices(std::istream& csv, int net_position)
{
    std::vector<std::string> lines;
    for (std::string line; std::getline(csv, line);)
        if (!trim(line).empty())
            lines.push_back(line);
    if (lines.size() < 3)
        throw ValidationError("price table needs a header and at least two trading days");

    const auto header = split_csv_line(lines[0]);
    const bool has_date = !header.empty() && lower(header[0]) == "date";
    const std::size_t first_col = has_date ? 1 : 0;
    if (header.size() <= first_col)
        throw ValidationError("price table has no asset columns");
    const auto n = static_cast<Eigen::Index>(header.size() - first_col);

    const auto days = static_cast<Eigen::Index>(lines.size() - 1);
    Eigen::MatrixXd prices(days, n);
    for (Eigen::Index d = 0; d < days; ++d) {
        const auto cells = split_csv_line(lines[static_cast<std::size_t>(d + 1)]);
        if (cells.size() != header.size())
            throw ValidationError("row " + std::to_string(d + 2) + " has the wrong column count");
        for (Eigen::Index a = 0; a < n; ++a) {
            const auto cell = cells[first_col + static_cast<std::size_t>(a)];
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc() || ptr != cell.data() + cell.size())
                throw ValidationError("non-numeric price '" + std::string(cell) + "' on row " +
                                      std::to_string(d + 2));
            if (!(value > 0.0))
                throw ValidationError("nonpositive price on row " + std::to_string(d + 2));
            prices(d, a) = value;
        }
    }

    // Daily percentage returns.
    const Eigen::Index samples = days - 1;
    Eigen::MatrixXd returns(samples, n);
    for (Eigen::Index d = 0; d < samples; ++d)
        returns.row(d) = 100.0 * (prices.row(d + 1).array() / prices.row(d).array() - 1.0);

    PortfolioInstance inst;
    for (std::size_t c = first_col; c < header.size(); ++c)
        inst.assets.emplace_back(header[c]);
    inst.returns = returns.colwise().mean().transpose();
    const Eigen::MatrixXd centred = returns.rowwise() - inst.returns.transpose();
    const double denom = samples > 1 ? static_cast<double>(samples - 1) : 1.0;
    inst.covariance = (centred.transpose() * centred) / denom / 100.0;
    inst.covariance = 0.5 * (inst.covariance + inst.covariance.transpose()).eval();
    inst.net_position = net_position;
    inst.validate();
    return inst;
}

std::string synthetic_prices_csv(int assets, int days, std::uint64_t seed)
{
    if (assets < 1 || days < 2)
        throw ValidationError("synthetic price table needs assets >= 1 and days >= 2");
    Rng rng(seed);
    auto normal_draw = [](Rng& g) { return normal::quantile(g.uniform_open()); };

    std::vector<double> drift(static_cast<std::size_t>(assets));
    std::vector<double> beta(drift.size());
    std::vector<double> idio(drift.size());
    for (std::size_t a = 0; a < drift.size(); ++a) {
        drift[a] = rng.uniform(-0.05, 0.15);
        beta[a] = rng.uniform(0.3, 1.3);
        idio[a] = rng.uniform(0.6, 2.0);
    }

    std::ostringstream out;
    for (int a = 0; a < assets; ++a)
        out << (a ? "," : "") << "A" << a;
    out << '\n';
    std::vector<double> price(drift.size(), 100.0);
    char buf[64];
    for (int d = 0; d < days; ++d) {
        if (d > 0) {
            const double market = normal_draw(rng);
            for (std::size_t a = 0; a < price.size(); ++a) {
                const double pct = drift[a] + beta[a] * market + idio[a] * normal_draw(rng);
                price[a] *= std::exp(pct / 100.0);
            }
        }
        for (std::size_t a = 0; a < price.size(); ++a) {
            std::snprintf(buf, sizeof buf, "%.12g", price[a]);
            out << (a ? "," : "") << buf;
        }
        out << '\n';
    }
    return out.str();
}

PortfolioInstance generate_portfolio(int assets, int net_position, std::uint64_t seed, int days)
{
    std::istringstream csv(synthetic_prices_csv(assets, days, seed));
    return ingest_prices(csv, net_position);
}

void write_portfolio(const PortfolioInstance& inst, std::ostream& out)
{
    auto join = [](auto&& range) {
        std::ostringstream s;
        s.precision(17);
        bool first = true;
        for (const auto& v : range) {
            s << (first ? "" : " ") << v;
            first = false;
        }
        return s.str();
    };
    KeyValues kv;
    kv.set("assets", join(inst.assets));
    kv.set("net_position", std::to_string(inst.net_position));
    std::vector<double> r(inst.returns.data(), inst.returns.data() + inst.returns.size());
    kv.set("returns", join(r));
    for (Eigen::Index i = 0; i < inst.covariance.rows(); ++i) {
        std::vector<double> row(static_cast<std::size_t>(inst.covariance.cols()));
        for (Eigen::Index j = 0; j < inst.covariance.cols(); ++j)
            row[static_cast<std::size_t>(j)] = inst.covariance(i, j);
        kv.set("covariance." + std::to_string(i), join(row));
    }
    kv.write(out);
}

PortfolioInstance read_portfolio(std::istream& in)
{
    const KeyValues kv = KeyValues::parse(in);
    PortfolioInstance inst;
    std::istringstream names(kv.require("assets"));
    for (std::string name; names >> name;)
        inst.assets.push_back(name);
    inst.net_position = std::stoi(kv.require("net_position"));
    const auto r = parse_number_list(kv.require("returns"));
    const auto n = static_cast<Eigen::Index>(r.size());
    inst.returns = Eigen::Map<const Eigen::VectorXd>(r.data(), n);
    inst.covariance.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto row = parse_number_list(kv.require("covariance." + std::to_string(i)));
        if (static_cast<Eigen::Index>(row.size()) != n)
            throw ValidationError("covariance row length mismatch");
        for (Eigen::Index j = 0; j < n; ++j)
            inst.covariance(i, j) = row[static_cast<std::size_t>(j)];
    }
    inst.validate();
    return inst;
}

}  // namespace maoa
