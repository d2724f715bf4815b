#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "chronograph/betweenness.hpp"

namespace chronograph {

struct NewsAnchor {
    std::string date;  // ISO: "2014-07-17", "2014-07", "2014"; "" when unknown
    bool date_known = false;
    std::string summary;             // the anchor sentence as written
    std::vector<std::string> links;  // normalized, deduplicated, in order
};

// Parses a Wikinews yearly/portal listing: one anchor per dated bullet
// entry. Date headings ("== July 17 ==", "== 17. Juli ==", ...) carry down
// to the entries below them; entries before any heading are date-unknown.
// `default_year` fills in headings that omit the year (0 = unknown).
std::vector<NewsAnchor> parse_news_index(std::string_view wikitext, const std::string& lang,
                                         int default_year = 0);

struct UEdge {
    std::uint32_t a = 0;  // a < b
    std::uint32_t b = 0;
    std::uint32_t weight = 0;

    bool operator==(const UEdge&) const = default;
};

// Undirected co-occurrence network: every anchor contributes a clique over
// its links; repeated pairs accumulate weight.
struct NewsGraph {
    std::vector<std::string> titles;  // node id = position (first-seen order)
    std::vector<UEdge> edges;         // sorted by (a,b)

    Adjacency adjacency() const;
    std::size_t node_count() const { return titles.size(); }
};

NewsGraph build_news_network(const std::vector<NewsAnchor>& anchors);

struct SentimentLexicon {
    std::string lang;
    std::unordered_set<std::string> positive;
    std::unordered_set<std::string> negative;

    static SentimentLexicon load(const std::string& path);
    static SentimentLexicon from_json_text(const std::string& text, const std::string& origin);
};

struct TextScores {
    double sentiment = 0.5;     // p/(p+n), 0.5 when no lexicon hits
    double emotionality = 0.0;  // (p+n)/tokens
    double complexity = 0.0;    // (distinct/tokens) * mean token length
};

TextScores score_text(std::string_view text, const SentimentLexicon& lexicon);

struct NewsReport {
    std::string lang;
    double mean_sentiment = 0.0;
    double mean_emotionality = 0.0;
    double mean_complexity = 0.0;
    std::size_t scored_nodes = 0;
    std::vector<std::pair<std::string, double>> top_betweenness;  // (title, value)
};

// Unweighted means over nodes with a score; top-K nodes by betweenness
// (ties broken by title). Throws when no node has a score.
NewsReport aggregate_scores(const NewsGraph& graph,
                            const std::map<std::string, TextScores>& scores,
                            const std::string& lang, std::size_t top_k, int threads = 0);

void write_news_report_csv(const NewsReport& report, std::ostream& out);
void write_betweenness_csv(const NewsReport& report, std::ostream& out);

}  // namespace chronograph
