#include "dappnet/metrics.hpp"

#include <algorithm>
#include <iterator>

namespace dappnet {

namespace {

class BronKerbosch {
public:
    BronKerbosch(const SimpleGraph& g, std::size_t budget) : g_(g), budget_(budget) {}

    std::vector<std::vector<NodeId>> run()
    {
        std::vector<NodeId> p(g_.node_count());
        for (NodeId v = 0; v < p.size(); ++v)
            p[v] = v;
        std::vector<NodeId> r, x;
        expand(r, p, x);
        return std::move(out_);
    }

private:
    // Pivot maximizing |P ∩ N(u)| over P ∪ X.
    NodeId pivot(const std::vector<NodeId>& p, const std::vector<NodeId>& x) const
    {
        NodeId best = p.empty() ? x.front() : p.front();
        std::size_t best_count = 0;
        bool first = true;
        auto consider = [&](NodeId u) {
            const std::size_t c = intersection_size(p, g_.adj[u]);
            if (first || c > best_count) {
                best = u;
                best_count = c;
                first = false;
            }
        };
        for (NodeId u : p)
            consider(u);
        for (NodeId u : x)
            consider(u);
        return best;
    }

    static std::size_t intersection_size(const std::vector<NodeId>& a, const std::vector<NodeId>& b)
    {
        std::size_t n = 0;
        auto i = a.begin();
        auto j = b.begin();
        while (i != a.end() && j != b.end()) {
            if (*i < *j) {
                ++i;
            } else if (*j < *i) {
                ++j;
            } else {
                ++n;
                ++i;
                ++j;
            }
        }
        return n;
    }

    static std::vector<NodeId> intersect(const std::vector<NodeId>& a, const std::vector<NodeId>& b)
    {
        std::vector<NodeId> out;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    }

    void expand(std::vector<NodeId>& r, std::vector<NodeId> p, std::vector<NodeId> x)
    {
        if (p.empty()) {
            if (x.empty()) {
                if (out_.size() >= budget_)
                    throw CliqueBudgetExceeded("maximal clique enumeration exceeded the budget of "
                                               + std::to_string(budget_) + " cliques");
                auto clique = r;
                std::sort(clique.begin(), clique.end());
                out_.push_back(std::move(clique));
            }
            return;
        }
        const NodeId u = pivot(p, x);
        std::vector<NodeId> candidates;
        std::set_difference(p.begin(), p.end(), g_.adj[u].begin(), g_.adj[u].end(),
                            std::back_inserter(candidates));
        for (NodeId v : candidates) {
            r.push_back(v);
            expand(r, intersect(p, g_.adj[v]), intersect(x, g_.adj[v]));
            r.pop_back();
            p.erase(std::lower_bound(p.begin(), p.end(), v));
            x.insert(std::lower_bound(x.begin(), x.end(), v), v);
        }
    }

    const SimpleGraph& g_;
    std::size_t budget_;
    std::vector<std::vector<NodeId>> out_;
};

} // namespace

std::vector<std::vector<NodeId>> maximal_cliques(const SimpleGraph& g, std::size_t budget)
{
    if (g.node_count() == 0)
        return {};
    return BronKerbosch(g, budget).run();
}

std::map<std::size_t, std::size_t> clique_size_histogram(const SimpleGraph& g, std::size_t budget)
{
    std::map<std::size_t, std::size_t> hist;
    for (const auto& c : maximal_cliques(g, budget))
        if (c.size() >= 3)
            ++hist[c.size()];
    return hist;
}

} // namespace dappnet
