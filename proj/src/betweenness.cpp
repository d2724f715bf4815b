#include "chronograph/betweenness.hpp"

#include <omp.h>

#include <algorithm>
#include <queue>

#include "chronograph/threads.hpp"

namespace chronograph {

namespace {

constexpr std::size_t kChunk = 64;  // sources per deterministic partial

// One Brandes source phase: BFS with path counting, then dependency
// accumulation over the stack in reverse BFS order.
void accumulate_source(const Adjacency& adj, std::uint32_t s, std::vector<double>& centrality,
                       std::vector<std::int32_t>& dist, std::vector<double>& sigma,
                       std::vector<double>& delta, std::vector<std::uint32_t>& order) {
    const std::size_t n = adj.size();
    dist.assign(n, -1);
    sigma.assign(n, 0.0);
    delta.assign(n, 0.0);
    order.clear();

    dist[s] = 0;
    sigma[s] = 1.0;
    std::queue<std::uint32_t> q;
    q.push(s);
    while (!q.empty()) {
        std::uint32_t v = q.front();
        q.pop();
        order.push_back(v);
        for (std::uint32_t w : adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
            if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        std::uint32_t w = *it;
        for (std::uint32_t v : adj[w]) {
            if (dist[v] == dist[w] - 1) {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
        }
        if (w != s) centrality[w] += delta[w];
    }
}

}  // namespace

std::vector<double> betweenness_serial(const Adjacency& adj) {
    const std::size_t n = adj.size();
    std::vector<double> centrality(n, 0.0);
    std::vector<std::int32_t> dist;
    std::vector<double> sigma, delta;
    std::vector<std::uint32_t> order;
    for (std::uint32_t s = 0; s < n; ++s) {
        accumulate_source(adj, s, centrality, dist, sigma, delta, order);
    }
    // undirected pairs counted once
    for (double& c : centrality) c /= 2.0;
    return centrality;
}

std::vector<double> betweenness(const Adjacency& adj, int threads) {
    const std::size_t n = adj.size();
    const std::size_t num_chunks = (n + kChunk - 1) / kChunk;
    std::vector<std::vector<double>> partial(num_chunks);

#pragma omp parallel num_threads(effective_threads(threads))
    {
        std::vector<std::int32_t> dist;
        std::vector<double> sigma, delta;
        std::vector<std::uint32_t> order;
#pragma omp for schedule(dynamic)
        for (std::int64_t c = 0; c < static_cast<std::int64_t>(num_chunks); ++c) {
            std::vector<double>& acc = partial[static_cast<std::size_t>(c)];
            acc.assign(n, 0.0);
            std::size_t lo = static_cast<std::size_t>(c) * kChunk;
            std::size_t hi = std::min(lo + kChunk, n);
            for (std::size_t s = lo; s < hi; ++s) {
                accumulate_source(adj, static_cast<std::uint32_t>(s), acc, dist, sigma, delta,
                                  order);
            }
        }
    }

    std::vector<double> centrality(n, 0.0);
    for (std::size_t c = 0; c < num_chunks; ++c) {
        for (std::size_t v = 0; v < n; ++v) centrality[v] += partial[c][v];
    }
    for (double& c : centrality) c /= 2.0;
    return centrality;
}

}  // namespace chronograph
