#include "chronograph/rules.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "chronograph/error.hpp"
#include "chronograph/page_source.hpp"

namespace chronograph {

using nlohmann::json;

namespace {

std::regex compile(const std::string& pattern, const std::string& origin) {
    try {
        return std::regex(pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
        throw Error(ErrorKind::Config,
                    origin + ": bad regex \"" + pattern + "\": " + e.what());
    }
}

}  // namespace

LangRules LangRules::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Config, "cannot open rules file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str(), path);
}

LangRules LangRules::from_json_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::Config, origin + ": " + e.what());
    }

    LangRules r;
    r.lang_ = j.value("lang", "en");
    r.category_prefixes_ = j.value("category_prefixes", std::vector<std::string>{"Category"});
    r.excluded_link_prefixes_ = j.value("excluded_link_prefixes", std::vector<std::string>{});
    for (const auto& p : j.value("person_categories", std::vector<std::string>{})) {
        r.person_category_res_.push_back(compile(p, origin));
    }
    r.person_text_markers_ = j.value("person_text_markers", std::vector<std::string>{});

    auto load_patterns = [&](const char* key, std::vector<YearPattern>& out) {
        if (!j.contains(key)) return;
        for (const auto& item : j.at(key)) {
            YearPattern p;
            p.re = compile(item.at("re").get<std::string>(), origin);
            p.bc = item.value("bc", false);
            p.approx = item.value("approx", false);
            out.push_back(std::move(p));
        }
    };
    load_patterns("birth", r.birth_patterns_);
    load_patterns("death", r.death_patterns_);
    return r;
}

bool LangRules::detect_person(const RawPage& page) const {
    for (const std::string& cat : page.categories) {
        for (const std::regex& re : person_category_res_) {
            if (std::regex_search(cat, re)) return true;
        }
    }
    for (const std::string& marker : person_text_markers_) {
        if (page.wikitext.find(marker) != std::string::npos) return true;
    }
    return false;
}

std::optional<Year> LangRules::match_year(const std::vector<YearPattern>& pats,
                                          const std::vector<std::string>& categories,
                                          bool* approx) const {
    for (const std::string& cat : categories) {
        for (const YearPattern& p : pats) {
            std::smatch m;
            if (std::regex_search(cat, m, p.re) && m.size() >= 2) {
                long v = 0;
                try {
                    v = std::stol(m[1].str());
                } catch (...) {
                    continue;
                }
                if (v == 0 || v > 100000) continue;
                if (p.approx) *approx = true;
                return static_cast<Year>(p.bc ? -v : v);
            }
        }
    }
    return std::nullopt;
}

std::optional<Lifespan> LangRules::extract_lifespan(const RawPage& page) const {
    bool approx = false;
    std::optional<Year> birth = match_year(birth_patterns_, page.categories, &approx);
    std::optional<Year> death = match_year(death_patterns_, page.categories, &approx);
    if (!birth) return std::nullopt;  // no parseable birth year: undated

    Lifespan ls;
    ls.birth = *birth;
    ls.approx = approx;
    if (death) {
        if (*death < ls.birth) return std::nullopt;  // contradictory, reject
        if (years_between(ls.birth, *death) > kMaxLifespanYears) return std::nullopt;
        ls.death = *death;
    } else if (ls.birth < kModernBirthCutoff) {
        ls.death = year_add(ls.birth, kImputedLifespanYears);
        ls.approx = true;
    }
    // else: modern birth with unknown death, possibly living
    return ls;
}

}  // namespace chronograph
