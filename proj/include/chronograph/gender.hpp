#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "chronograph/person.hpp"
#include "chronograph/year.hpp"

namespace chronograph {

// Closed-class pronoun/keyword lists per language; term sets are disjoint,
// lowercase, non-empty.
struct GenderLexicon {
    std::string lang;
    std::unordered_set<std::string> female_terms;
    std::unordered_set<std::string> male_terms;

    static GenderLexicon load(const std::string& path);
    static GenderLexicon from_json_text(const std::string& text, const std::string& origin);
};

struct GenderResult {
    Gender gender = Gender::Unknown;
    std::uint32_t female_count = 0;
    std::uint32_t male_count = 0;
};

// Majority vote over exact token matches; ties and zero hits stay unknown.
GenderResult classify_gender(std::string_view text, const GenderLexicon& lexicon);

struct LabeledText {
    std::string text;
    Gender gender = Gender::Unknown;  // gold label, male or female
};

std::vector<LabeledText> read_labeled_texts(const std::string& path);

// Fraction of correct classifications; unknown counts as incorrect.
double validate_accuracy(const std::vector<LabeledText>& labeled, const GenderLexicon& lexicon);

struct GenderPoint {
    Year year = 0;
    std::optional<double> percent_female;  // empty when nobody with known gender is alive
    std::uint32_t population = 0;
};

// Percentage of women among classified, dated persons alive in each year of
// [from, to] (year 0 skipped).
std::vector<GenderPoint> gender_timeseries(const PeopleIndex& index, Year from, Year to);

void write_timeseries_csv(const std::vector<GenderPoint>& series, std::ostream& out);

}  // namespace chronograph
