#include "chronograph/gender.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "chronograph/error.hpp"
#include "chronograph/strings.hpp"

namespace chronograph {

using nlohmann::json;

GenderLexicon GenderLexicon::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Config, "cannot open lexicon file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str(), path);
}

GenderLexicon GenderLexicon::from_json_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::Config, origin + ": " + e.what());
    }
    GenderLexicon lex;
    lex.lang = j.value("lang", "en");
    auto load_terms = [&](const char* key, std::unordered_set<std::string>& out) {
        if (!j.contains(key) || !j.at(key).is_array()) {
            throw Error(ErrorKind::Config, origin + ": missing term list \"" + key + "\"");
        }
        for (const auto& t : j.at(key)) {
            std::string term = t.get<std::string>();
            if (term.empty() || term != to_lower(term)) {
                throw Error(ErrorKind::Config,
                            origin + ": term \"" + term + "\" must be non-empty lowercase");
            }
            out.insert(std::move(term));
        }
    };
    load_terms("female", lex.female_terms);
    load_terms("male", lex.male_terms);
    for (const auto& t : lex.female_terms) {
        if (lex.male_terms.count(t)) {
            throw Error(ErrorKind::Config,
                        origin + ": term \"" + t + "\" appears in both term sets");
        }
    }
    return lex;
}

GenderResult classify_gender(std::string_view text, const GenderLexicon& lexicon) {
    GenderResult r;
    for (const std::string& token : tokenize(text)) {
        std::string lower = to_lower(token);
        if (lexicon.female_terms.count(lower)) {
            ++r.female_count;
        } else if (lexicon.male_terms.count(lower)) {
            ++r.male_count;
        }
    }
    if (r.female_count > r.male_count) {
        r.gender = Gender::Female;
    } else if (r.male_count > r.female_count) {
        r.gender = Gender::Male;
    }
    return r;
}

std::vector<LabeledText> read_labeled_texts(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Input, "cannot open labeled set: " + path);
    std::vector<LabeledText> out;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("text") || !j.contains("gender")) {
            throw Error(ErrorKind::Input,
                        path + ": line " + std::to_string(line_no) + ": bad record");
        }
        auto g = gender_from_name(j.at("gender").get<std::string>());
        if (!g || *g == Gender::Unknown) {
            throw Error(ErrorKind::Input, path + ": line " + std::to_string(line_no) +
                                              ": label must be male or female");
        }
        out.push_back({j.at("text").get<std::string>(), *g});
    }
    return out;
}

double validate_accuracy(const std::vector<LabeledText>& labeled, const GenderLexicon& lexicon) {
    if (labeled.empty()) {
        throw Error(ErrorKind::Input, "validate_accuracy: empty labeled set");
    }
    std::size_t correct = 0;
    for (const LabeledText& item : labeled) {
        if (classify_gender(item.text, lexicon).gender == item.gender) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(labeled.size());
}

std::vector<GenderPoint> gender_timeseries(const PeopleIndex& index, Year from, Year to) {
    if (!year_valid(from) || !year_valid(to) || from > to) {
        throw Error(ErrorKind::Input, "gender_timeseries: bad year range");
    }
    // Difference arrays over the year line: O(persons + years) instead of a
    // full index scan per year.
    std::int64_t lo = year_to_line(from), hi = year_to_line(to);
    std::size_t n = static_cast<std::size_t>(hi - lo + 1);
    std::vector<std::int32_t> d_total(n + 1, 0), d_female(n + 1, 0);
    for (const auto& [title, rec] : index) {
        if (!rec.dated() || rec.gender == Gender::Unknown) continue;
        std::int64_t b = year_to_line(rec.lifespan->birth);
        std::int64_t d = year_to_line(rec.lifespan->effective_death());
        if (d < lo || b > hi) continue;
        std::size_t i0 = static_cast<std::size_t>(std::max(b, lo) - lo);
        std::size_t i1 = static_cast<std::size_t>(std::min(d, hi) - lo);
        ++d_total[i0];
        --d_total[i1 + 1];
        if (rec.gender == Gender::Female) {
            ++d_female[i0];
            --d_female[i1 + 1];
        }
    }
    std::vector<GenderPoint> series;
    series.reserve(n);
    std::int32_t total = 0, female = 0;
    for (std::size_t i = 0; i < n; ++i) {
        total += d_total[i];
        female += d_female[i];
        GenderPoint p;
        p.year = line_to_year(lo + static_cast<std::int64_t>(i));
        p.population = static_cast<std::uint32_t>(total);
        if (total > 0) p.percent_female = 100.0 * female / total;
        series.push_back(p);
    }
    return series;
}

void write_timeseries_csv(const std::vector<GenderPoint>& series, std::ostream& out) {
    out << "year,percent_female,population\n";
    char buf[64];
    for (const GenderPoint& p : series) {
        if (p.percent_female) {
            std::snprintf(buf, sizeof(buf), "%.12g", *p.percent_female);
            out << p.year << ',' << buf << ',' << p.population << '\n';
        } else {
            out << p.year << ",," << p.population << '\n';
        }
    }
}

}  // namespace chronograph
