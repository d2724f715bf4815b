#include "chronograph/graph_io.hpp"

#include <algorithm>
#include <istream>
#include <numeric>

#include "chronograph/csv.hpp"
#include "chronograph/error.hpp"

namespace chronograph {

namespace {

std::string dot_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back('"');
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

// title-sorted node order and the inverse id remap
std::vector<std::uint32_t> title_order(const std::vector<std::string>& titles) {
    std::vector<std::uint32_t> order(titles.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return titles[a] < titles[b];
    });
    return order;
}

}  // namespace

GraphFormat parse_graph_format(const std::string& name) {
    if (name == "csv" || name == "edge_csv") return GraphFormat::EdgeCsv;
    if (name == "graphml") return GraphFormat::GraphMl;
    if (name == "dot") return GraphFormat::Dot;
    throw Error(ErrorKind::Config, "unknown graph format \"" + name + "\"");
}

const char* graph_format_extension(GraphFormat format) {
    switch (format) {
        case GraphFormat::EdgeCsv: return "csv";
        case GraphFormat::GraphMl: return "graphml";
        default: return "dot";
    }
}

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

void export_people_graph(const PeopleGraph& graph, GraphFormat format, std::ostream& out,
                         const PeopleGraphAttrs& attrs) {
    if (graph.node_count() == 0) {
        throw Error(ErrorKind::Input, "export: empty graph");
    }
    std::vector<std::uint32_t> order = title_order(graph.titles);
    std::vector<std::uint32_t> remap(order.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) remap[order[i]] = i;

    std::vector<PGEdge> edges = graph.edges;
    std::sort(edges.begin(), edges.end(), [&](const PGEdge& a, const PGEdge& b) {
        if (remap[a.src] != remap[b.src]) return remap[a.src] < remap[b.src];
        return remap[a.dst] < remap[b.dst];
    });

    switch (format) {
        case GraphFormat::EdgeCsv: {
            out << "src,dst,weight\n";
            for (const PGEdge& e : edges) {
                out << csv_field(graph.titles[e.src]) << ',' << csv_field(graph.titles[e.dst])
                    << ',' << e.weight << '\n';
            }
            break;
        }
        case GraphFormat::GraphMl: {
            out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
                << "  <key id=\"title\" for=\"node\" attr.name=\"title\" attr.type=\"string\"/>\n";
            if (attrs.pagerank)
                out << "  <key id=\"pagerank\" for=\"node\" attr.name=\"pagerank\" attr.type=\"double\"/>\n";
            if (attrs.indegree)
                out << "  <key id=\"indegree\" for=\"node\" attr.name=\"indegree\" attr.type=\"int\"/>\n";
            if (attrs.include_gender)
                out << "  <key id=\"gender\" for=\"node\" attr.name=\"gender\" attr.type=\"string\"/>\n";
            if (attrs.category)
                out << "  <key id=\"category\" for=\"node\" attr.name=\"category\" attr.type=\"string\"/>\n";
            out << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n"
                << "  <graph id=\"G\" edgedefault=\"directed\">\n";
            for (std::uint32_t i = 0; i < order.size(); ++i) {
                std::uint32_t v = order[i];
                out << "    <node id=\"n" << i << "\">";
                out << "<data key=\"title\">" << xml_escape(graph.titles[v]) << "</data>";
                if (attrs.pagerank)
                    out << "<data key=\"pagerank\">" << fmt_score((*attrs.pagerank)[v]) << "</data>";
                if (attrs.indegree)
                    out << "<data key=\"indegree\">" << (*attrs.indegree)[v] << "</data>";
                if (attrs.include_gender)
                    out << "<data key=\"gender\">" << gender_name(graph.genders[v]) << "</data>";
                if (attrs.category)
                    out << "<data key=\"category\">" << category_name((*attrs.category)[v])
                        << "</data>";
                out << "</node>\n";
            }
            for (const PGEdge& e : edges) {
                out << "    <edge source=\"n" << remap[e.src] << "\" target=\"n" << remap[e.dst]
                    << "\"><data key=\"weight\">" << e.weight << "</data></edge>\n";
            }
            out << "  </graph>\n</graphml>\n";
            break;
        }
        case GraphFormat::Dot: {
            out << "digraph chronograph {\n";
            for (std::uint32_t v : order) {
                out << "  " << dot_escape(graph.titles[v]) << ";\n";
            }
            for (const PGEdge& e : edges) {
                out << "  " << dot_escape(graph.titles[e.src]) << " -> "
                    << dot_escape(graph.titles[e.dst]) << " [weight=" << e.weight << "];\n";
            }
            out << "}\n";
            break;
        }
    }
}

PeopleGraph read_people_edge_csv(std::istream& in, const PeopleIndex* index) {
    PeopleGraph g;
    std::map<std::string, std::uint32_t> ids;
    struct RawEdge {
        std::string src, dst;
        std::uint32_t weight;
    };
    std::vector<RawEdge> raw;
    std::string line;
    bool first = true;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("src,", 0) == 0) continue;  // header
        }
        std::vector<std::string> fields = parse_csv_row(line);
        if (fields.size() != 3) {
            throw Error(ErrorKind::Input,
                        "edge CSV line " + std::to_string(line_no) + ": expected 3 fields");
        }
        std::uint32_t weight = 0;
        try {
            weight = static_cast<std::uint32_t>(std::stoul(fields[2]));
        } catch (...) {
            throw Error(ErrorKind::Input,
                        "edge CSV line " + std::to_string(line_no) + ": bad weight");
        }
        ids.emplace(fields[0], 0);
        ids.emplace(fields[1], 0);
        raw.push_back({std::move(fields[0]), std::move(fields[1]), weight});
    }
    for (auto& [title, id] : ids) {
        id = static_cast<std::uint32_t>(g.titles.size());
        g.titles.push_back(title);
        Lifespan ls;
        Gender gender = Gender::Unknown;
        std::vector<std::string> cats;
        if (index) {
            auto it = index->find(title);
            if (it != index->end()) {
                if (it->second.lifespan) ls = *it->second.lifespan;
                gender = it->second.gender;
                cats = it->second.categories;
            }
        }
        g.lifespans.push_back(ls);
        g.genders.push_back(gender);
        g.categories.push_back(std::move(cats));
    }
    for (const RawEdge& e : raw) {
        g.edges.push_back({ids.at(e.src), ids.at(e.dst), e.weight});
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const PGEdge& a, const PGEdge& b) {
        if (a.src != b.src) return a.src < b.src;
        return a.dst < b.dst;
    });
    return g;
}

void export_news_graph(const NewsGraph& graph, GraphFormat format, std::ostream& out,
                       const NewsGraphAttrs& attrs) {
    if (graph.node_count() == 0) {
        throw Error(ErrorKind::Input, "export: empty graph");
    }
    std::vector<std::uint32_t> order = title_order(graph.titles);
    std::vector<std::uint32_t> remap(order.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) remap[order[i]] = i;

    std::vector<UEdge> edges;
    edges.reserve(graph.edges.size());
    for (const UEdge& e : graph.edges) {
        std::uint32_t a = e.a, b = e.b;
        if (remap[a] > remap[b]) std::swap(a, b);
        edges.push_back({a, b, e.weight});
    }
    std::sort(edges.begin(), edges.end(), [&](const UEdge& x, const UEdge& y) {
        if (remap[x.a] != remap[y.a]) return remap[x.a] < remap[y.a];
        return remap[x.b] < remap[y.b];
    });

    auto scores_for = [&](std::uint32_t v) -> const TextScores* {
        if (!attrs.scores) return nullptr;
        auto it = attrs.scores->find(graph.titles[v]);
        return it == attrs.scores->end() ? nullptr : &it->second;
    };

    switch (format) {
        case GraphFormat::EdgeCsv: {
            out << "src,dst,weight\n";
            for (const UEdge& e : edges) {
                out << csv_field(graph.titles[e.a]) << ',' << csv_field(graph.titles[e.b]) << ','
                    << e.weight << '\n';
            }
            break;
        }
        case GraphFormat::GraphMl: {
            out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
                << "  <key id=\"title\" for=\"node\" attr.name=\"title\" attr.type=\"string\"/>\n";
            if (attrs.scores) {
                out << "  <key id=\"sentiment\" for=\"node\" attr.name=\"sentiment\" attr.type=\"double\"/>\n"
                    << "  <key id=\"emotionality\" for=\"node\" attr.name=\"emotionality\" attr.type=\"double\"/>\n"
                    << "  <key id=\"complexity\" for=\"node\" attr.name=\"complexity\" attr.type=\"double\"/>\n";
            }
            if (attrs.betweenness)
                out << "  <key id=\"betweenness\" for=\"node\" attr.name=\"betweenness\" attr.type=\"double\"/>\n";
            out << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n"
                << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
            for (std::uint32_t i = 0; i < order.size(); ++i) {
                std::uint32_t v = order[i];
                out << "    <node id=\"n" << i << "\">";
                out << "<data key=\"title\">" << xml_escape(graph.titles[v]) << "</data>";
                if (const TextScores* s = scores_for(v)) {
                    out << "<data key=\"sentiment\">" << fmt_score(s->sentiment) << "</data>"
                        << "<data key=\"emotionality\">" << fmt_score(s->emotionality) << "</data>"
                        << "<data key=\"complexity\">" << fmt_score(s->complexity) << "</data>";
                }
                if (attrs.betweenness)
                    out << "<data key=\"betweenness\">" << fmt_score((*attrs.betweenness)[v])
                        << "</data>";
                out << "</node>\n";
            }
            for (const UEdge& e : edges) {
                out << "    <edge source=\"n" << remap[e.a] << "\" target=\"n" << remap[e.b]
                    << "\"><data key=\"weight\">" << e.weight << "</data></edge>\n";
            }
            out << "  </graph>\n</graphml>\n";
            break;
        }
        case GraphFormat::Dot: {
            out << "graph chronograph {\n";
            for (std::uint32_t v : order) {
                out << "  " << dot_escape(graph.titles[v]) << ";\n";
            }
            for (const UEdge& e : edges) {
                out << "  " << dot_escape(graph.titles[e.a]) << " -- "
                    << dot_escape(graph.titles[e.b]) << " [weight=" << e.weight << "];\n";
            }
            out << "}\n";
            break;
        }
    }
}

}  // namespace chronograph
