#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chronograph/person.hpp"
#include "chronograph/year.hpp"

namespace chronograph {

struct PGEdge {
    std::uint32_t src = 0;
    std::uint32_t dst = 0;
    std::uint32_t weight = 0;

    bool operator==(const PGEdge&) const = default;
};

// Directed, mention-weighted graph over dated persons after the
// lifetime-overlap filter. Node ids index the title table, which is sorted
// ascending so serialization is stable.
struct PeopleGraph {
    std::vector<std::string> titles;
    std::vector<Lifespan> lifespans;
    std::vector<Gender> genders;
    std::vector<std::vector<std::string>> categories;
    std::vector<PGEdge> edges;  // sorted by (src, dst); no self edges; weight >= 1
    std::optional<Year> slice_year;

    std::size_t node_count() const { return titles.size(); }
    std::optional<std::uint32_t> node_id(std::string_view title) const;
};

// Nodes: every dated person. Edges: one per (src,dst) link pair whose
// lifespans overlap, weight = summed mention count. The parallel kernel maps
// over source persons; the serial variant is the reference implementation.
PeopleGraph build_full_graph(const PeopleIndex& index, int threads = 0);
PeopleGraph build_full_graph_serial(const PeopleIndex& index);

// Subgraph of persons alive in `year` (closed interval) and the edges with
// both endpoints alive. Node ids are recompacted.
PeopleGraph build_slice(const PeopleGraph& graph, Year year);

// One slice per grid year of [from, to]; see YearGrid for the stepping rule.
std::vector<Year> slice_years(Year from, Year to, int step);
void for_each_slice(const PeopleGraph& graph, Year from, Year to, int step,
                    const std::function<void(Year, const PeopleGraph&)>& fn);

}  // namespace chronograph
