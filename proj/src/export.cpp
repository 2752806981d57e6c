#include "dappnet/export.hpp"

#include "dappnet/format.hpp"
#include "dappnet/metrics.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace dappnet {

std::string to_string(GraphFormat f)
{
    switch (f) {
    case GraphFormat::Dot: return "dot";
    case GraphFormat::GraphML: return "graphml";
    case GraphFormat::EdgeCsv: return "edge-csv";
    }
    return "dot";
}

GraphFormat graph_format_from_string(const std::string& s)
{
    if (s == "dot")
        return GraphFormat::Dot;
    if (s == "graphml")
        return GraphFormat::GraphML;
    if (s == "edge-csv" || s == "csv")
        return GraphFormat::EdgeCsv;
    throw std::invalid_argument("unknown graph format '" + s + "'");
}

std::string file_extension(GraphFormat f)
{
    switch (f) {
    case GraphFormat::Dot: return ".dot";
    case GraphFormat::GraphML: return ".graphml";
    case GraphFormat::EdgeCsv: return ".edges.csv";
    }
    return ".dot";
}

NodeAttributes compute_node_attributes(const WeightedDigraph& g, std::uint64_t louvain_seed)
{
    const SimpleGraph sg = simple_view(g);
    NodeAttributes a;
    a.betweenness = betweenness_by_component(sg);
    a.clustering = clustering(sg).local;
    a.degree = total_degrees(g);
    a.community = louvain(g, louvain_seed).community;
    return a;
}

namespace {

std::string dot_quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + '"';
}

std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

void check_sizes(const WeightedDigraph& g, const NodeAttributes& a)
{
    const std::size_t n = g.node_count();
    auto ok = [n](std::size_t size) { return size == 0 || size == n; };
    if (!ok(a.betweenness.size()) || !ok(a.clustering.size()) || !ok(a.degree.size()) || !ok(a.community.size()))
        throw std::invalid_argument("node attribute vectors must match the node count");
}

void write_dot(std::ostream& out, const WeightedDigraph& g, const NodeAttributes& a)
{
    out << "digraph dappnet {\n";
    for (NodeId v = 0; v < g.node_count(); ++v) {
        out << "  n" << v << " [label=" << dot_quote(g.label(v));
        if (!a.betweenness.empty())
            out << ", betweenness=" << format_number(a.betweenness[v]);
        if (!a.clustering.empty())
            out << ", clustering=" << format_number(a.clustering[v]);
        if (!a.degree.empty())
            out << ", degree=" << a.degree[v];
        if (!a.community.empty())
            out << ", community=" << a.community[v];
        out << "];\n";
    }
    for (const auto& [key, w] : g.edges())
        out << "  n" << key.first << " -> n" << key.second << " [weight=" << format_number(w) << "];\n";
    out << "}\n";
}

void write_graphml(std::ostream& out, const WeightedDigraph& g, const NodeAttributes& a)
{
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
    if (!a.betweenness.empty())
        out << "  <key id=\"betweenness\" for=\"node\" attr.name=\"betweenness\" attr.type=\"double\"/>\n";
    if (!a.clustering.empty())
        out << "  <key id=\"clustering\" for=\"node\" attr.name=\"clustering\" attr.type=\"double\"/>\n";
    if (!a.degree.empty())
        out << "  <key id=\"degree\" for=\"node\" attr.name=\"degree\" attr.type=\"int\"/>\n";
    if (!a.community.empty())
        out << "  <key id=\"community\" for=\"node\" attr.name=\"community\" attr.type=\"int\"/>\n";
    out << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
        << "  <graph id=\"G\" edgedefault=\"directed\">\n";
    for (NodeId v = 0; v < g.node_count(); ++v) {
        out << "    <node id=\"n" << v << "\">\n"
            << "      <data key=\"label\">" << xml_escape(g.label(v)) << "</data>\n";
        if (!a.betweenness.empty())
            out << "      <data key=\"betweenness\">" << format_number(a.betweenness[v]) << "</data>\n";
        if (!a.clustering.empty())
            out << "      <data key=\"clustering\">" << format_number(a.clustering[v]) << "</data>\n";
        if (!a.degree.empty())
            out << "      <data key=\"degree\">" << a.degree[v] << "</data>\n";
        if (!a.community.empty())
            out << "      <data key=\"community\">" << a.community[v] << "</data>\n";
        out << "    </node>\n";
    }
    std::size_t e = 0;
    for (const auto& [key, w] : g.edges()) {
        out << "    <edge id=\"e" << e++ << "\" source=\"n" << key.first << "\" target=\"n" << key.second << "\">\n"
            << "      <data key=\"weight\">" << format_number(w) << "</data>\n"
            << "    </edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
}

void write_edge_csv(std::ostream& out, const WeightedDigraph& g)
{
    out << "source,target,weight\n";
    for (const auto& [key, w] : g.edges())
        out << csv_field(g.label(key.first)) << ',' << csv_field(g.label(key.second)) << ',' << format_number(w)
            << '\n';
}

// Splits one CSV line with double-quote escaping.
std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

} // namespace

void export_graph(std::ostream& out, const WeightedDigraph& g, GraphFormat format, const NodeAttributes& attrs)
{
    check_sizes(g, attrs);
    switch (format) {
    case GraphFormat::Dot: write_dot(out, g, attrs); break;
    case GraphFormat::GraphML: write_graphml(out, g, attrs); break;
    case GraphFormat::EdgeCsv: write_edge_csv(out, g); break;
    }
}

void export_graph_file(const std::string& path, const WeightedDigraph& g, GraphFormat format,
                       const NodeAttributes& attrs)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    export_graph(out, g, format, attrs);
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing " + path);
}

WeightedDigraph read_edge_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != "source,target,weight")
        throw std::runtime_error("edge CSV: expected header source,target,weight");
    WeightedDigraph g;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        const auto f = split_csv(line);
        if (f.size() != 3)
            throw std::runtime_error("edge CSV line " + std::to_string(lineno) + ": expected 3 fields");
        double w = 0.0;
        try {
            w = std::stod(f[2]);
        } catch (const std::exception&) {
            throw std::runtime_error("edge CSV line " + std::to_string(lineno) + ": bad weight '" + f[2] + "'");
        }
        g.add_edge(f[0], f[1], w);
    }
    return g;
}

} // namespace dappnet
