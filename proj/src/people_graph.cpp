#include "chronograph/people_graph.hpp"

#include <omp.h>

#include <algorithm>
#include <unordered_map>

#include "chronograph/error.hpp"
#include "chronograph/threads.hpp"

namespace chronograph {

namespace {

struct NodeTable {
    std::vector<const PersonRecord*> records;
    std::unordered_map<std::string_view, std::uint32_t> ids;
};

NodeTable dated_nodes(const PeopleIndex& index) {
    NodeTable t;
    for (const auto& [title, rec] : index) {
        if (!rec.dated()) continue;  // undated persons never enter temporal graphs
        t.ids.emplace(rec.title, static_cast<std::uint32_t>(t.records.size()));
        t.records.push_back(&rec);
    }
    return t;
}

PeopleGraph graph_from_nodes(const NodeTable& t) {
    PeopleGraph g;
    g.titles.reserve(t.records.size());
    for (const PersonRecord* rec : t.records) {
        g.titles.push_back(rec->title);
        g.lifespans.push_back(*rec->lifespan);
        g.genders.push_back(rec->gender);
        g.categories.push_back(rec->categories);
    }
    return g;
}

std::vector<PGEdge> edges_for_source(const NodeTable& t, std::uint32_t src) {
    const PersonRecord& rec = *t.records[src];
    std::vector<PGEdge> out;
    for (const LinkMention& link : rec.links) {
        auto it = t.ids.find(link.target);
        if (it == t.ids.end()) continue;  // undated or unknown target
        std::uint32_t dst = it->second;
        if (dst == src) continue;
        if (!lifespans_overlap(*rec.lifespan, *t.records[dst]->lifespan)) continue;
        out.push_back({src, dst, link.count});
    }
    // links are sorted by target title, which is not node-id order
    std::sort(out.begin(), out.end(),
              [](const PGEdge& a, const PGEdge& b) { return a.dst < b.dst; });
    return out;
}

}  // namespace

std::optional<std::uint32_t> PeopleGraph::node_id(std::string_view title) const {
    auto it = std::lower_bound(titles.begin(), titles.end(), title);
    if (it == titles.end() || *it != title) return std::nullopt;
    return static_cast<std::uint32_t>(it - titles.begin());
}

PeopleGraph build_full_graph(const PeopleIndex& index, int threads) {
    NodeTable t = dated_nodes(index);
    PeopleGraph g = graph_from_nodes(t);
    std::uint32_t n = static_cast<std::uint32_t>(t.records.size());

    // Each source's edge list is independent; concatenating in source order
    // keeps the result identical to the serial reference for any thread count.
    std::vector<std::vector<PGEdge>> per_source(n);
#pragma omp parallel for schedule(dynamic, 64) num_threads(effective_threads(threads))
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        per_source[static_cast<std::size_t>(i)] =
            edges_for_source(t, static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        g.edges.insert(g.edges.end(), per_source[i].begin(), per_source[i].end());
    }
    return g;
}

PeopleGraph build_full_graph_serial(const PeopleIndex& index) {
    NodeTable t = dated_nodes(index);
    PeopleGraph g = graph_from_nodes(t);
    for (std::uint32_t i = 0; i < t.records.size(); ++i) {
        std::vector<PGEdge> edges = edges_for_source(t, i);
        g.edges.insert(g.edges.end(), edges.begin(), edges.end());
    }
    return g;
}

PeopleGraph build_slice(const PeopleGraph& graph, Year year) {
    if (!year_in_slice_range(year)) {
        throw Error(ErrorKind::Input,
                    "slice year " + std::to_string(year) + " outside [-3000, 1950]");
    }
    PeopleGraph s;
    s.slice_year = year;
    std::vector<std::uint32_t> remap(graph.node_count(), UINT32_MAX);
    for (std::uint32_t i = 0; i < graph.node_count(); ++i) {
        if (!graph.lifespans[i].alive_in(year)) continue;
        remap[i] = static_cast<std::uint32_t>(s.titles.size());
        s.titles.push_back(graph.titles[i]);
        s.lifespans.push_back(graph.lifespans[i]);
        s.genders.push_back(graph.genders[i]);
        s.categories.push_back(graph.categories[i]);
    }
    for (const PGEdge& e : graph.edges) {
        if (remap[e.src] == UINT32_MAX || remap[e.dst] == UINT32_MAX) continue;
        s.edges.push_back({remap[e.src], remap[e.dst], e.weight});
    }
    return s;
}

std::vector<Year> slice_years(Year from, Year to, int step) {
    if (from >= to) throw Error(ErrorKind::Input, "slice range requires from < to");
    if (step < 1) throw Error(ErrorKind::Input, "slice step must be positive");
    std::vector<Year> years;
    YearGrid grid(from, to, step);
    while (auto y = grid.next()) years.push_back(*y);
    return years;
}

void for_each_slice(const PeopleGraph& graph, Year from, Year to, int step,
                    const std::function<void(Year, const PeopleGraph&)>& fn) {
    for (Year y : slice_years(from, to, step)) {
        PeopleGraph s = build_slice(graph, y);
        fn(y, s);
    }
}

}  // namespace chronograph
