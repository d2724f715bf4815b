#pragma once

#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "chronograph/year.hpp"

namespace chronograph {

struct RawPage;

// Per-language ruleset driving person-page detection and lifespan
// extraction. Loaded from a JSON file; see data/rules/en.json.
class LangRules {
  public:
    static LangRules load(const std::string& path);
    static LangRules from_json_text(const std::string& text, const std::string& origin);

    const std::string& lang() const { return lang_; }
    const std::vector<std::string>& category_prefixes() const { return category_prefixes_; }
    const std::vector<std::string>& excluded_link_prefixes() const { return excluded_link_prefixes_; }

    // True iff any person rule matches: a birth/death category pattern or a
    // text marker such as an infobox name.
    bool detect_person(const RawPage& page) const;

    // Category-derived years win over free text. BC categories map to
    // negative years. A missing death year is imputed as birth+70 for
    // births before 1900 and left open (possibly living) otherwise.
    // Contradictory or implausible spans (death before birth, more than 120
    // line years) yield nullopt: the person stays in the index undated.
    std::optional<Lifespan> extract_lifespan(const RawPage& page) const;

  private:
    struct YearPattern {
        std::regex re;  // one capture group: the year number
        bool bc = false;
        bool approx = false;
    };

    std::string lang_;
    std::vector<std::string> category_prefixes_;
    std::vector<std::string> excluded_link_prefixes_;
    std::vector<std::regex> person_category_res_;
    std::vector<std::string> person_text_markers_;
    std::vector<YearPattern> birth_patterns_;
    std::vector<YearPattern> death_patterns_;

    std::optional<Year> match_year(const std::vector<YearPattern>& pats,
                                   const std::vector<std::string>& categories,
                                   bool* approx) const;
};

}  // namespace chronograph
