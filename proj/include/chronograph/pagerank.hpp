#pragma once

#include <cstdint>
#include <vector>

#include "chronograph/people_graph.hpp"

namespace chronograph {

struct PagerankOptions {
    double damping = 0.85;
    double epsilon = 1e-10;  // L1 convergence threshold
    int max_iter = 200;
    int threads = 0;
};

struct PagerankResult {
    std::vector<double> scores;  // sums to 1
    int iterations = 0;
    bool converged = false;
};

// Power iteration on the weighted directed graph: transition probability out
// of u proportional to edge weight, dangling nodes redistribute uniformly,
// teleport term (1-damping)/N. The parallel kernel does the per-node pull
// sums concurrently with a fixed in-edge order, so results are bitwise
// identical to the serial reference for any thread count.
PagerankResult pagerank(std::size_t num_nodes, const std::vector<PGEdge>& edges,
                        const PagerankOptions& opts = {});
PagerankResult pagerank_serial(std::size_t num_nodes, const std::vector<PGEdge>& edges,
                               const PagerankOptions& opts = {});

inline PagerankResult pagerank(const PeopleGraph& g, const PagerankOptions& opts = {}) {
    return pagerank(g.node_count(), g.edges, opts);
}

}  // namespace chronograph
