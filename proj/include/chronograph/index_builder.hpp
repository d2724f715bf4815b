#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>

#include "chronograph/gender.hpp"
#include "chronograph/page_source.hpp"
#include "chronograph/person.hpp"
#include "chronograph/rules.hpp"

namespace chronograph {

struct BuildOptions {
    const GenderLexicon* gender_lexicon = nullptr;  // optional: classify while text is in hand
    int threads = 0;
    std::size_t block_size = 256;  // pages processed per parallel block
};

struct BuildReport {
    std::uint64_t pages_seen = 0;
    std::uint64_t persons = 0;
    std::uint64_t redirects = 0;
    std::uint64_t duplicate_titles = 0;
    std::uint64_t dropped_redirect_chains = 0;
    std::uint64_t undated_persons = 0;
    SourceStats source;
};

struct BuiltIndex {
    PeopleIndex people;
    std::unordered_map<std::string, std::string> redirects;  // title -> target
    BuildReport report;
};

// Streams the dump once, keeping only person records and the redirect map in
// memory. Page-level work (link extraction, lifespan parsing, gender
// classification) fans out to parallel workers per block and is merged back
// in dump order. Link mentions are resolved afterwards: redirects follow one
// hop, non-person targets and self links are dropped, duplicate targets merge
// with summed counts.
BuiltIndex build_people_index(PageSource& source, const LangRules& rules,
                              const BuildOptions& opts = {});

}  // namespace chronograph
