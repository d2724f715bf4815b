#include "chronograph/news.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unordered_map>

#include "chronograph/csv.hpp"
#include "chronograph/error.hpp"
#include "chronograph/strings.hpp"
#include "chronograph/wikitext.hpp"

namespace chronograph {

using nlohmann::json;

namespace {

const std::unordered_map<std::string, std::vector<std::string>>& month_tables() {
    static const std::unordered_map<std::string, std::vector<std::string>> tables = {
        {"en",
         {"january", "february", "march", "april", "may", "june", "july", "august", "september",
          "october", "november", "december"}},
        {"de",
         {"januar", "februar", "märz", "april", "mai", "juni", "juli", "august", "september",
          "oktober", "november", "dezember"}},
        {"es",
         {"enero", "febrero", "marzo", "abril", "mayo", "junio", "julio", "agosto", "septiembre",
          "octubre", "noviembre", "diciembre"}},
        {"pt",
         {"janeiro", "fevereiro", "março", "abril", "maio", "junho", "julho", "agosto", "setembro",
          "outubro", "novembro", "dezembro"}},
    };
    return tables;
}

int month_number(const std::string& word, const std::string& lang) {
    auto it = month_tables().find(lang);
    if (it == month_tables().end()) it = month_tables().find("en");
    const auto& months = it->second;
    std::string lower = to_lower(word);
    for (std::size_t i = 0; i < months.size(); ++i) {
        if (lower == months[i]) return static_cast<int>(i + 1);
    }
    return 0;
}

struct ParsedDate {
    int year = 0;  // 0 = not in the heading
    int month = 0;
    int day = 0;
};

// Heading date forms: "July 17", "July 17, 2014", "17. Juli", "17 de julio
// de 2014", "2014-07-17". Returns nullopt when the heading is not a date.
std::optional<ParsedDate> parse_heading_date(const std::string& heading, const std::string& lang) {
    std::vector<std::string> words;
    std::string cur;
    for (char c : heading) {
        if (std::isalnum(static_cast<unsigned char>(c)) ||
            static_cast<unsigned char>(c) >= 0x80 || c == '-') {
            cur.push_back(c);
        } else if (!cur.empty()) {
            words.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) words.push_back(cur);
    if (words.empty()) return std::nullopt;

    auto as_int = [](const std::string& w) -> int {
        if (w.empty() || w.size() > 4) return 0;
        for (char c : w) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return 0;
        }
        return std::stoi(w);
    };

    // ISO yyyy-mm-dd comes through as a single token
    if (words.size() == 1 && words[0].size() == 10 && words[0][4] == '-' && words[0][7] == '-') {
        ParsedDate d;
        d.year = as_int(words[0].substr(0, 4));
        d.month = as_int(words[0].substr(5, 2));
        d.day = as_int(words[0].substr(8, 2));
        if (d.year && d.month >= 1 && d.month <= 12 && d.day >= 1 && d.day <= 31) return d;
        return std::nullopt;
    }

    ParsedDate d;
    for (const std::string& w : words) {
        int m = month_number(w, lang);
        if (m && !d.month) {
            d.month = m;
            continue;
        }
        int v = as_int(w);
        if (v >= 1 && v <= 31 && !d.day && w.size() <= 2) {
            d.day = v;
        } else if (v >= 100 && !d.year) {
            d.year = v;
        }
    }
    if (!d.month) return std::nullopt;
    return d;
}

std::string render_date(const ParsedDate& d, int default_year) {
    int year = d.year ? d.year : default_year;
    char buf[32];
    if (d.day) {
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, d.month, d.day);
    } else if (d.month) {
        std::snprintf(buf, sizeof(buf), "%04d-%02d", year, d.month);
    } else {
        std::snprintf(buf, sizeof(buf), "%04d", year);
    }
    return buf;
}

}  // namespace

std::vector<NewsAnchor> parse_news_index(std::string_view wikitext, const std::string& lang,
                                         int default_year) {
    std::vector<NewsAnchor> anchors;
    std::string current_date;
    bool have_date = false;

    std::size_t pos = 0;
    while (pos <= wikitext.size()) {
        std::size_t eol = wikitext.find('\n', pos);
        if (eol == std::string_view::npos) eol = wikitext.size();
        std::string line = trim(wikitext.substr(pos, eol - pos));
        pos = eol + 1;
        if (line.empty()) continue;

        if (line.front() == '=') {
            std::size_t start = line.find_first_not_of('=');
            if (start == std::string::npos) continue;
            std::string heading = trim(line.substr(start));
            while (!heading.empty() && heading.back() == '=') heading.pop_back();
            heading = trim(heading);
            if (auto d = parse_heading_date(heading, lang)) {
                current_date = render_date(*d, default_year);
                have_date = true;
            }
            continue;
        }
        if (line.front() != '*') continue;
        std::size_t body = line.find_first_not_of('*');
        if (body == std::string::npos) continue;

        NewsAnchor anchor;
        anchor.date = have_date ? current_date : "";
        anchor.date_known = have_date;
        anchor.summary = trim(line.substr(body));

        // dedupe while keeping first-seen order
        std::unordered_set<std::string> seen;
        for (std::string& target : extract_link_occurrences(anchor.summary, "")) {
            if (seen.insert(target).second) anchor.links.push_back(std::move(target));
        }
        anchors.push_back(std::move(anchor));
    }
    return anchors;
}

Adjacency NewsGraph::adjacency() const {
    Adjacency adj(titles.size());
    for (const UEdge& e : edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
}

NewsGraph build_news_network(const std::vector<NewsAnchor>& anchors) {
    NewsGraph g;
    std::unordered_map<std::string, std::uint32_t> ids;
    auto intern = [&](const std::string& title) {
        auto [it, inserted] = ids.emplace(title, static_cast<std::uint32_t>(g.titles.size()));
        if (inserted) g.titles.push_back(title);
        return it->second;
    };

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> weights;
    for (const NewsAnchor& anchor : anchors) {
        std::vector<std::uint32_t> nodes;
        nodes.reserve(anchor.links.size());
        for (const std::string& link : anchor.links) nodes.push_back(intern(link));
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                std::uint32_t a = std::min(nodes[i], nodes[j]);
                std::uint32_t b = std::max(nodes[i], nodes[j]);
                if (a == b) continue;
                ++weights[{a, b}];
            }
        }
    }
    g.edges.reserve(weights.size());
    for (const auto& [key, w] : weights) g.edges.push_back({key.first, key.second, w});
    return g;
}

SentimentLexicon SentimentLexicon::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Config, "cannot open sentiment lexicon: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str(), path);
}

SentimentLexicon SentimentLexicon::from_json_text(const std::string& text,
                                                  const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::Config, origin + ": " + e.what());
    }
    SentimentLexicon lex;
    lex.lang = j.value("lang", "en");
    for (const auto& t : j.value("positive", std::vector<std::string>{})) {
        lex.positive.insert(to_lower(t));
    }
    for (const auto& t : j.value("negative", std::vector<std::string>{})) {
        lex.negative.insert(to_lower(t));
    }
    for (const auto& t : lex.positive) {
        if (lex.negative.count(t)) {
            throw Error(ErrorKind::Config,
                        origin + ": term \"" + t + "\" appears in both polarity sets");
        }
    }
    return lex;
}

TextScores score_text(std::string_view text, const SentimentLexicon& lexicon) {
    std::vector<std::string> tokens = tokenize(text);
    if (tokens.empty()) throw Error(ErrorKind::Input, "score_text: empty text");

    std::size_t positive = 0, negative = 0, total_chars = 0;
    std::unordered_set<std::string> distinct;
    for (const std::string& token : tokens) {
        std::string lower = to_lower(token);
        if (lexicon.positive.count(lower)) ++positive;
        if (lexicon.negative.count(lower)) ++negative;
        total_chars += utf8_length(lower);
        distinct.insert(std::move(lower));
    }
    const double t = static_cast<double>(tokens.size());
    TextScores s;
    std::size_t hits = positive + negative;
    s.sentiment = hits > 0 ? static_cast<double>(positive) / static_cast<double>(hits) : 0.5;
    s.emotionality = static_cast<double>(hits) / t;
    s.complexity = (static_cast<double>(distinct.size()) / t) *
                   (static_cast<double>(total_chars) / t);
    return s;
}

NewsReport aggregate_scores(const NewsGraph& graph,
                            const std::map<std::string, TextScores>& scores,
                            const std::string& lang, std::size_t top_k, int threads) {
    NewsReport report;
    report.lang = lang;

    double sum_sent = 0.0, sum_emot = 0.0, sum_cplx = 0.0;
    for (const std::string& title : graph.titles) {
        auto it = scores.find(title);
        if (it == scores.end()) continue;
        sum_sent += it->second.sentiment;
        sum_emot += it->second.emotionality;
        sum_cplx += it->second.complexity;
        ++report.scored_nodes;
    }
    if (report.scored_nodes == 0) {
        throw Error(ErrorKind::Input, "aggregate_scores: no scored nodes");
    }
    const double n = static_cast<double>(report.scored_nodes);
    report.mean_sentiment = sum_sent / n;
    report.mean_emotionality = sum_emot / n;
    report.mean_complexity = sum_cplx / n;

    std::vector<double> bc = betweenness(graph.adjacency(), threads);
    std::vector<std::uint32_t> order(graph.node_count());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (bc[a] != bc[b]) return bc[a] > bc[b];
        return graph.titles[a] < graph.titles[b];
    });
    std::size_t k = std::min(top_k, order.size());
    for (std::size_t i = 0; i < k; ++i) {
        report.top_betweenness.emplace_back(graph.titles[order[i]], bc[order[i]]);
    }
    return report;
}

void write_news_report_csv(const NewsReport& report, std::ostream& out) {
    out << "language,mean_sentiment,mean_emotionality,mean_complexity\n";
    out << csv_field(report.lang) << ',' << fmt_score(report.mean_sentiment) << ','
        << fmt_score(report.mean_emotionality) << ',' << fmt_score(report.mean_complexity)
        << '\n';
}

void write_betweenness_csv(const NewsReport& report, std::ostream& out) {
    out << "rank,title,betweenness\n";
    for (std::size_t i = 0; i < report.top_betweenness.size(); ++i) {
        out << (i + 1) << ',' << csv_field(report.top_betweenness[i].first) << ','
            << fmt_score(report.top_betweenness[i].second) << '\n';
    }
}

}  // namespace chronograph
