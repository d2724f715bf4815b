#pragma once

#include <cstdint>
#include <vector>

namespace chronograph {

using Adjacency = std::vector<std::vector<std::uint32_t>>;

// Unnormalized shortest-path betweenness on an undirected, unweighted graph
// (each unordered pair counted once). The parallel kernel runs Brandes'
// per-source phases over fixed-size source chunks and merges partials in
// chunk order, so the floating-point summation order and hence the result
// are independent of the thread count.
std::vector<double> betweenness(const Adjacency& adj, int threads = 0);
std::vector<double> betweenness_serial(const Adjacency& adj);

}  // namespace chronograph
