#include "chronograph/ranking.hpp"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "chronograph/csv.hpp"
#include "chronograph/error.hpp"
#include "chronograph/strings.hpp"

namespace chronograph {

using nlohmann::json;

const char* category_name(PersonCategory c) {
    switch (c) {
        case PersonCategory::Politician: return "politician";
        case PersonCategory::Religious: return "religious";
        case PersonCategory::ArtistScientist: return "artist_scientist";
        default: return "other";
    }
}

namespace {

PersonCategory category_from_name(const std::string& name, const std::string& origin) {
    if (name == "politician") return PersonCategory::Politician;
    if (name == "religious") return PersonCategory::Religious;
    if (name == "artist_scientist") return PersonCategory::ArtistScientist;
    if (name == "other") return PersonCategory::Other;
    throw Error(ErrorKind::Config, origin + ": unknown category \"" + name + "\"");
}

std::string slurp(const std::string& path, ErrorKind kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(kind, "cannot open rules file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

CategoryRules CategoryRules::load(const std::string& path) {
    return from_json_text(slurp(path, ErrorKind::Config), path);
}

CategoryRules CategoryRules::from_json_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::Config, origin + ": " + e.what());
    }
    CategoryRules r;
    for (const auto& item : j.value("rules", json::array())) {
        Rule rule;
        rule.category = category_from_name(item.at("class").get<std::string>(), origin);
        if (item.contains("contains")) {
            rule.contains = to_lower(item.at("contains").get<std::string>());
        } else if (item.contains("regex")) {
            try {
                rule.re.emplace(item.at("regex").get<std::string>(),
                                std::regex::ECMAScript | std::regex::icase);
            } catch (const std::regex_error& e) {
                throw Error(ErrorKind::Config, origin + ": bad regex: " + e.what());
            }
        } else {
            throw Error(ErrorKind::Config, origin + ": rule needs \"contains\" or \"regex\"");
        }
        r.rules_.push_back(std::move(rule));
    }
    return r;
}

PersonCategory CategoryRules::categorize(const std::vector<std::string>& categories) const {
    for (const Rule& rule : rules_) {
        for (const std::string& cat : categories) {
            if (rule.re) {
                if (std::regex_search(cat, *rule.re)) return rule.category;
            } else if (to_lower(cat).find(rule.contains) != std::string::npos) {
                return rule.category;
            }
        }
    }
    return PersonCategory::Other;
}

SphereRules SphereRules::load(const std::string& path) {
    return from_json_text(slurp(path, ErrorKind::Config), path);
}

SphereRules SphereRules::from_json_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::Config, origin + ": " + e.what());
    }
    SphereRules r;
    r.lang_ = j.value("lang", "");
    for (const auto& p : j.value("in_group", std::vector<std::string>{})) {
        r.patterns_.push_back(to_lower(p));
    }
    return r;
}

bool SphereRules::in_group(const std::vector<std::string>& categories) const {
    for (const std::string& cat : categories) {
        std::string lower = to_lower(cat);
        for (const std::string& p : patterns_) {
            if (lower.find(p) != std::string::npos) return true;
        }
    }
    return false;
}

std::vector<std::uint32_t> indegree(const PeopleGraph& graph) {
    std::vector<std::uint32_t> deg(graph.node_count(), 0);
    // edges hold one entry per distinct (src,dst) pair, so this counts
    // distinct in-neighbors, not weights
    for (const PGEdge& e : graph.edges) ++deg[e.dst];
    return deg;
}

std::vector<RankingEntry> top_k(const PeopleGraph& graph, std::size_t k,
                                const PagerankOptions& opts,
                                const CategoryRules* category_rules,
                                const SphereRules* sphere_rules) {
    if (k < 1) throw Error(ErrorKind::Input, "top_k: k must be positive");
    PagerankResult pr = pagerank(graph, opts);
    std::vector<std::uint32_t> deg = indegree(graph);

    std::vector<RankingEntry> entries(graph.node_count());
    for (std::size_t i = 0; i < graph.node_count(); ++i) {
        entries[i].title = graph.titles[i];
        entries[i].pagerank = pr.scores[i];
        entries[i].indegree = deg[i];
        entries[i].wiki_categories = graph.categories[i];
        if (category_rules) entries[i].category = category_rules->categorize(graph.categories[i]);
        if (sphere_rules) entries[i].in_group = sphere_rules->in_group(graph.categories[i]);
    }
    std::sort(entries.begin(), entries.end(), [](const RankingEntry& a, const RankingEntry& b) {
        if (a.pagerank != b.pagerank) return a.pagerank > b.pagerank;
        if (a.indegree != b.indegree) return a.indegree > b.indegree;
        return a.title < b.title;
    });
    if (entries.size() > k) entries.resize(k);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        entries[i].rank = static_cast<std::uint32_t>(i + 1);
    }
    return entries;
}

GroupStats ingroup_fraction(std::vector<RankingEntry>& entries, const SphereRules& sphere) {
    if (entries.empty()) {
        throw Error(ErrorKind::Input, "ingroup_fraction: empty ranking list");
    }
    GroupStats stats;
    for (RankingEntry& e : entries) {
        e.in_group = sphere.in_group(e.wiki_categories);
        ++stats.category_counts[static_cast<std::size_t>(e.category)];
        if (e.in_group) ++stats.in_group_count;
    }
    stats.fraction = static_cast<double>(stats.in_group_count) /
                     static_cast<double>(entries.size());
    return stats;
}

void write_rankings_csv(const std::vector<RankingEntry>& entries, std::ostream& out) {
    out << "rank,title,pagerank,indegree,category,ingroup\n";
    for (const RankingEntry& e : entries) {
        out << e.rank << ',' << csv_field(e.title) << ',' << fmt_score(e.pagerank) << ','
            << e.indegree << ',' << category_name(e.category) << ','
            << (e.in_group ? "true" : "false") << '\n';
    }
}

}  // namespace chronograph
