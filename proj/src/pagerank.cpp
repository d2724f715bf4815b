#include "chronograph/pagerank.hpp"

#include <omp.h>

#include <cmath>
#include <cstdint>

#include "chronograph/error.hpp"
#include "chronograph/threads.hpp"

namespace chronograph {

namespace {

// Pull-style CSR over incoming edges: for each destination, the in-edges are
// stored contiguously with the contribution factor weight/out_weight(src).
struct PullCsr {
    std::vector<std::size_t> row_start;  // per destination node
    std::vector<std::uint32_t> src;
    std::vector<double> factor;
    std::vector<bool> dangling;

    PullCsr(std::size_t n, const std::vector<PGEdge>& edges) {
        std::vector<double> out_weight(n, 0.0);
        for (const PGEdge& e : edges) out_weight[e.src] += e.weight;
        dangling.assign(n, false);
        for (std::size_t v = 0; v < n; ++v) dangling[v] = out_weight[v] == 0.0;

        std::vector<std::size_t> counts(n, 0);
        for (const PGEdge& e : edges) ++counts[e.dst];
        row_start.assign(n + 1, 0);
        for (std::size_t v = 0; v < n; ++v) row_start[v + 1] = row_start[v] + counts[v];
        src.resize(edges.size());
        factor.resize(edges.size());
        std::vector<std::size_t> cursor(row_start.begin(), row_start.end() - 1);
        // edges are sorted by (src,dst), so each destination's in-edge list
        // ends up ordered by src: a fixed summation order for determinism
        for (const PGEdge& e : edges) {
            std::size_t slot = cursor[e.dst]++;
            src[slot] = e.src;
            factor[slot] = e.weight / out_weight[e.src];
        }
    }
};

template <bool Parallel>
PagerankResult run(std::size_t n, const std::vector<PGEdge>& edges,
                   const PagerankOptions& opts) {
    if (n == 0) throw Error(ErrorKind::Input, "pagerank: empty graph");
    PullCsr csr(n, edges);
    const double d = opts.damping;
    const double teleport = (1.0 - d) / static_cast<double>(n);
    const int threads = effective_threads(opts.threads);

    std::vector<double> score(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);
    PagerankResult result;

    for (int iter = 0; iter < opts.max_iter; ++iter) {
        // dangling mass and the convergence delta are summed serially so the
        // result does not depend on the thread count
        double dangling_mass = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            if (csr.dangling[v]) dangling_mass += score[v];
        }
        const double dangling_share = d * dangling_mass / static_cast<double>(n);

        const std::int64_t nn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) num_threads(threads) if (Parallel)
        for (std::int64_t v = 0; v < nn; ++v) {
            double acc = 0.0;
            for (std::size_t k = csr.row_start[v]; k < csr.row_start[v + 1]; ++k) {
                acc += score[csr.src[k]] * csr.factor[k];
            }
            next[static_cast<std::size_t>(v)] = teleport + dangling_share + d * acc;
        }

        double delta = 0.0;
        for (std::size_t v = 0; v < n; ++v) delta += std::fabs(next[v] - score[v]);
        score.swap(next);
        result.iterations = iter + 1;
        if (delta < opts.epsilon) {
            result.converged = true;
            break;
        }
    }
    result.scores = std::move(score);
    return result;
}

}  // namespace

PagerankResult pagerank(std::size_t num_nodes, const std::vector<PGEdge>& edges,
                        const PagerankOptions& opts) {
    return run<true>(num_nodes, edges, opts);
}

PagerankResult pagerank_serial(std::size_t num_nodes, const std::vector<PGEdge>& edges,
                               const PagerankOptions& opts) {
    return run<false>(num_nodes, edges, opts);
}

}  // namespace chronograph
