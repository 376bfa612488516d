// Causal-graph generators and a path-sum oracle.  The oracle counts paths and
// sums path products by dynamic programming over a topological order, which
// shares nothing with the depth-first enumeration under test.

#ifndef TCPDL_TESTS_CAUSAL_ORACLE_HPP
#define TCPDL_TESTS_CAUSAL_ORACLE_HPP

#include "oracles.hpp"
#include "tcpdl/causal.hpp"

#include <random>
#include <string>
#include <vector>

namespace oracle {

struct RandomDag {
    int n = 0;
    // adj[i][j] >= 0 is the probability of edge i -> j (i < j); -1 = no edge.
    std::vector<std::vector<double>> adj;

    static std::string name(int i) { return "N" + std::to_string(i); }

    tcpdl::causal::CausalGraph graph() const {
        tcpdl::causal::CausalGraph g;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (adj[i][j] >= 0) {
                    tcpdl::causal::CausalEdge e;
                    e.cause = name(i);
                    e.effect = name(j);
                    e.probability = adj[i][j];
                    g.add_edge(e);
                }
        return g;
    }

    // paths[s][t] = number of paths, sums[s][t] = Σ over paths of the product.
    void path_sums(std::vector<std::vector<long>>& paths, std::vector<std::vector<double>>& sums) const {
        paths.assign(n, std::vector<long>(n, 0));
        sums.assign(n, std::vector<double>(n, 0.0));
        for (int s = 0; s < n; ++s) {
            paths[s][s] = 1;
            sums[s][s] = 1.0;
            for (int t = s + 1; t < n; ++t)
                for (int u = s; u < t; ++u)
                    if (adj[u][t] >= 0) {
                        paths[s][t] += paths[s][u];
                        sums[s][t] += sums[s][u] * adj[u][t];
                    }
        }
    }
};

inline RandomDag random_dag(std::mt19937& rng, int max_nodes = 8, double density = 0.3) {
    std::uniform_int_distribution<int> size(2, max_nodes);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RandomDag d;
    d.n = size(rng);
    d.adj.assign(d.n, std::vector<double>(d.n, -1.0));
    for (int i = 0; i < d.n; ++i)
        for (int j = i + 1; j < d.n; ++j)
            if (unit(rng) < density) d.adj[i][j] = unit(rng);
    return d;
}

// A forest DAG: every node has at most one parent, so each connected pair
// has exactly one path.
inline RandomDag random_single_path_dag(std::mt19937& rng, int max_nodes = 8) {
    std::uniform_int_distribution<int> size(3, max_nodes);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RandomDag d;
    d.n = size(rng);
    d.adj.assign(d.n, std::vector<double>(d.n, -1.0));
    for (int j = 1; j < d.n; ++j) {
        if (unit(rng) < 0.15) continue;
        std::uniform_int_distribution<int> parent(0, j - 1);
        d.adj[parent(rng)][j] = unit(rng);
    }
    return d;
}

// Nodes with integer intervals; every edge has its cause interval before or
// meeting its effect interval.
struct AnchoredGraph {
    std::vector<Iv> iv;
    std::vector<std::pair<int, int>> edges;

    static std::string node(int i) { return "C" + std::to_string(i); }
    static std::string interval(int i) { return "i" + std::to_string(i); }
};

inline AnchoredGraph random_anchored_graph(std::mt19937& rng, int max_nodes = 8) {
    std::uniform_int_distribution<int> size(2, max_nodes);
    std::uniform_int_distribution<int> start(0, 30);
    std::uniform_int_distribution<int> len(1, 4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    AnchoredGraph g;
    int n = size(rng);
    for (int i = 0; i < n; ++i) {
        int s = start(rng);
        g.iv.push_back({s, s + len(rng)});
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            Relation r = classify(g.iv[i], g.iv[j]);
            if ((r == Relation::Before || r == Relation::Meets) && unit(rng) < 0.4) g.edges.push_back({i, j});
        }
    return g;
}

}  // namespace oracle

#endif
