#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chronograph {

// MediaWiki title normalization: underscores to spaces, runs of spaces
// collapsed, trimmed, first ASCII letter upcased. Idempotent.
std::string normalize_title(std::string_view title);

struct LinkMention {
    std::string target;  // normalized title
    std::uint32_t count = 0;
};

// Removes <!-- comments --> and <nowiki> spans so links inside them are
// not counted.
std::string strip_hidden_spans(std::string_view wikitext);

// Scans [[Target]] / [[Target|label]] links. Section anchors (#...) are
// stripped, the leading-colon trick is honored, media/category/interwiki
// targets and self links are excluded, and duplicate targets aggregate into
// one mention with a summed count. Unbalanced bracket runs are skipped; the
// scanner resynchronizes at the next "[[".
std::vector<LinkMention> extract_links(std::string_view wikitext, std::string_view self_title,
                                       const std::vector<std::string>& extra_excluded_prefixes = {});

// Same scan, but one entry per occurrence in order of appearance.
std::vector<std::string> extract_link_occurrences(
    std::string_view wikitext, std::string_view self_title,
    const std::vector<std::string>& extra_excluded_prefixes = {});

// Category names referenced by the page, normalized, in order of appearance.
// `prefixes` lists the category namespace names for the language
// ("Category", "Kategorie", ...).
std::vector<std::string> extract_categories(std::string_view wikitext,
                                            const std::vector<std::string>& prefixes);

// Target of a #REDIRECT page, when the text is one.
std::optional<std::string> redirect_target(std::string_view wikitext);

}  // namespace chronograph
