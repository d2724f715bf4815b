#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "chronograph/news.hpp"
#include "chronograph/people_graph.hpp"
#include "chronograph/ranking.hpp"

namespace chronograph {

enum class GraphFormat { EdgeCsv, GraphMl, Dot };

// "csv" | "graphml" | "dot"; anything else is a config error.
GraphFormat parse_graph_format(const std::string& name);
const char* graph_format_extension(GraphFormat format);

// Optional node annotations; each vector, when present, is indexed by node id.
struct PeopleGraphAttrs {
    const std::vector<double>* pagerank = nullptr;
    const std::vector<std::uint32_t>* indegree = nullptr;
    const std::vector<PersonCategory>* category = nullptr;
    bool include_gender = false;
};

// Nodes ordered by title, edges by (src,dst) title pair; output is
// byte-stable for identical inputs. Empty graphs are an error.
void export_people_graph(const PeopleGraph& graph, GraphFormat format, std::ostream& out,
                         const PeopleGraphAttrs& attrs = {});

struct NewsGraphAttrs {
    const std::map<std::string, TextScores>* scores = nullptr;
    const std::vector<double>* betweenness = nullptr;  // by node id
};

void export_news_graph(const NewsGraph& graph, GraphFormat format, std::ostream& out,
                       const NewsGraphAttrs& attrs = {});

// Reads a people graph back from its edge CSV. Lifespans/genders/categories
// are not part of that format; when an index is supplied its records fill
// them in by title.
PeopleGraph read_people_edge_csv(std::istream& in, const PeopleIndex* index = nullptr);

std::string xml_escape(std::string_view s);

}  // namespace chronograph
