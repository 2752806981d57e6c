#include "dappnet/netbuild.hpp"

#include "dappnet/format.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <set>
#include <stdexcept>

namespace dappnet {

std::uint64_t BipartiteCallMatrix::at(std::size_t row, std::size_t col) const
{
    auto it = counts.find({row, col});
    return it == counts.end() ? 0 : it->second;
}

std::vector<std::uint64_t> BipartiteCallMatrix::row_sums() const
{
    std::vector<std::uint64_t> sums(functions.size(), 0);
    for (const auto& [key, n] : counts)
        sums[key.first] += n;
    return sums;
}

std::vector<std::uint64_t> BipartiteCallMatrix::column_sums() const
{
    std::vector<std::uint64_t> sums(contracts.size(), 0);
    for (const auto& [key, n] : counts)
        sums[key.second] += n;
    return sums;
}

std::string to_string(SizeClass size)
{
    switch (size) {
    case SizeClass::Small: return "Small";
    case SizeClass::Medium: return "Medium";
    case SizeClass::Large: return "Large";
    }
    return "Small";
}

WeightedDigraph build_contract_graph(std::span<const CallRecord> records, bool include_sentinel,
                                     std::span<const std::string> declared_contracts)
{
    std::set<std::string> labels(declared_contracts.begin(), declared_contracts.end());
    for (const auto& r : records) {
        labels.insert(r.source_contract);
        if (r.target_contract || include_sentinel)
            labels.insert(r.target_label());
    }
    WeightedDigraph g;
    for (const auto& label : labels)
        g.add_node(label);
    for (const auto& r : records) {
        if (!r.target_contract && !include_sentinel)
            continue;
        g.add_edge(r.source_contract, r.target_label(), 1.0);
    }
    return g;
}

BipartiteCallMatrix build_bipartite(std::span<const CallRecord> records, bool include_sentinel)
{
    std::set<std::string> rows;
    std::set<std::string> cols;
    for (const auto& r : records) {
        if (!r.target_contract && !include_sentinel)
            continue;
        rows.insert(r.qualified_function());
        cols.insert(r.target_label());
    }
    BipartiteCallMatrix m;
    m.functions.assign(rows.begin(), rows.end());
    m.contracts.assign(cols.begin(), cols.end());
    auto index_of = [](const std::vector<std::string>& v, const std::string& s) {
        return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), s) - v.begin());
    };
    for (const auto& r : records) {
        if (!r.target_contract && !include_sentinel)
            continue;
        ++m.counts[{index_of(m.functions, r.qualified_function()), index_of(m.contracts, r.target_label())}];
    }
    return m;
}

WeightedDigraph project_functions(const BipartiteCallMatrix& m)
{
    const auto s = m.row_sums();
    const auto t = m.column_sums();
    std::vector<std::vector<std::pair<std::size_t, double>>> column(m.contracts.size());
    for (const auto& [key, n] : m.counts)
        column[key.second].emplace_back(key.first, static_cast<double>(n));

    std::map<std::pair<std::size_t, std::size_t>, double> rho;
    for (std::size_t c = 0; c < column.size(); ++c) {
        if (column[c].empty())
            continue;
        assert(t[c] > 0);
        const double tc = static_cast<double>(t[c]);
        for (const auto& [f1, m1] : column[c]) {
            const double out = m1 / static_cast<double>(s[f1]);
            for (const auto& [f2, m2] : column[c])
                rho[{f1, f2}] += out * (m2 / tc);
        }
    }

    WeightedDigraph g;
    for (const auto& f : m.functions)
        g.add_node(f);
    for (const auto& [key, w] : rho)
        if (w > 0.0)
            g.add_edge(key.first, key.second, w);
    return g;
}

SizeClass classify_size(std::size_t n_contracts)
{
    if (n_contracts < 1)
        throw std::invalid_argument("size class needs at least one contract");
    if (n_contracts <= 23)
        return SizeClass::Small;
    if (n_contracts <= 45)
        return SizeClass::Medium;
    return SizeClass::Large;
}

double function_contract_ratio(std::span<const CallRecord> records)
{
    std::set<std::string> functions;
    std::set<std::string> contracts;
    for (const auto& r : records) {
        functions.insert(r.qualified_function());
        contracts.insert(r.source_contract);
    }
    if (contracts.empty())
        throw std::invalid_argument("function/contract ratio needs at least one contract");
    return static_cast<double>(functions.size()) / static_cast<double>(contracts.size());
}

void write_adjacency_csv(std::ostream& out, const WeightedDigraph& g, int decimals)
{
    auto cell = [&](double w) {
        if (w == 0.0)
            return std::string("0");
        return decimals < 0 ? format_number(w) : format_fixed(w, decimals);
    };
    for (const auto& label : g.labels())
        out << ',' << label;
    out << '\n';
    for (NodeId i = 0; i < g.node_count(); ++i) {
        out << g.label(i);
        for (NodeId j = 0; j < g.node_count(); ++j)
            out << ',' << cell(g.weight(i, j));
        out << '\n';
    }
}

void write_bipartite_csv(std::ostream& out, const BipartiteCallMatrix& m)
{
    for (const auto& c : m.contracts)
        out << ',' << c;
    out << '\n';
    for (std::size_t i = 0; i < m.functions.size(); ++i) {
        out << m.functions[i];
        for (std::size_t j = 0; j < m.contracts.size(); ++j)
            out << ',' << m.at(i, j);
        out << '\n';
    }
}

} // namespace dappnet
