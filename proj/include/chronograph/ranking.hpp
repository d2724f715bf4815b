#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "chronograph/pagerank.hpp"
#include "chronograph/people_graph.hpp"

namespace chronograph {

enum class PersonCategory : std::uint8_t { Politician = 0, Religious = 1, ArtistScientist = 2, Other = 3 };

const char* category_name(PersonCategory c);

// Ordered category ruleset: first matching rule wins, no match is Other.
class CategoryRules {
  public:
    static CategoryRules load(const std::string& path);
    static CategoryRules from_json_text(const std::string& text, const std::string& origin);

    PersonCategory categorize(const std::vector<std::string>& categories) const;

  private:
    struct Rule {
        std::string contains;          // lowercase substring, or
        std::optional<std::regex> re;  // regex, when given
        PersonCategory category = PersonCategory::Other;
    };
    std::vector<Rule> rules_;
};

// Language-sphere classifier: a person is in-group when any of their wiki
// categories contains one of the patterns (case-insensitive).
class SphereRules {
  public:
    static SphereRules load(const std::string& path);
    static SphereRules from_json_text(const std::string& text, const std::string& origin);

    bool in_group(const std::vector<std::string>& categories) const;
    const std::string& lang() const { return lang_; }

  private:
    std::string lang_;
    std::vector<std::string> patterns_;  // lowercase substrings
};

struct RankingEntry {
    std::string title;
    double pagerank = 0.0;
    std::uint32_t indegree = 0;
    std::uint32_t rank = 0;  // 1-based
    PersonCategory category = PersonCategory::Other;
    bool in_group = false;
    std::vector<std::string> wiki_categories;
};

// Distinct in-neighbors per node (weights ignored).
std::vector<std::uint32_t> indegree(const PeopleGraph& graph);

// First min(k, N) entries sorted by pagerank desc, then indegree desc, then
// title asc. Category/in-group columns are filled when rules are given.
std::vector<RankingEntry> top_k(const PeopleGraph& graph, std::size_t k,
                                const PagerankOptions& opts = {},
                                const CategoryRules* category_rules = nullptr,
                                const SphereRules* sphere_rules = nullptr);

struct GroupStats {
    std::array<std::uint32_t, 4> category_counts{};  // indexed by PersonCategory
    std::uint32_t in_group_count = 0;
    double fraction = 0.0;
};

// Classifies each entry against the sphere rules and tallies the result.
GroupStats ingroup_fraction(std::vector<RankingEntry>& entries, const SphereRules& sphere);

void write_rankings_csv(const std::vector<RankingEntry>& entries, std::ostream& out);

}  // namespace chronograph
