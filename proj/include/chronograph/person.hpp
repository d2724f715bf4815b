#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chronograph/wikitext.hpp"
#include "chronograph/year.hpp"

namespace chronograph {

enum class Gender : std::uint8_t { Unknown = 0, Male = 1, Female = 2 };

const char* gender_name(Gender g);
std::optional<Gender> gender_from_name(std::string_view name);

struct PersonRecord {
    std::string title;
    std::string lang;
    std::optional<Lifespan> lifespan;  // nullopt = undated, excluded from temporal graphs
    std::vector<LinkMention> links;    // resolved to canonical person titles, sorted by target
    Gender gender = Gender::Unknown;
    std::vector<std::string> categories;

    bool dated() const { return lifespan.has_value(); }
};

// Sorted by title so serialization is bit-stable.
using PeopleIndex = std::map<std::string, PersonRecord>;

// JSONL serialization: one record per line, keys in a fixed order.
std::string person_to_jsonl(const PersonRecord& p);
PersonRecord person_from_jsonl(const std::string& line);

void write_index(const PeopleIndex& index, std::ostream& out);
PeopleIndex read_index(std::istream& in);
PeopleIndex read_index_file(const std::string& path);

}  // namespace chronograph
