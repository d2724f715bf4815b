#include "chronograph/wikitext.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "chronograph/strings.hpp"

namespace chronograph {

namespace {

const char* kMediaPrefixes[] = {"file", "image", "category", "media"};

bool is_excluded_target(std::string_view raw, const std::vector<std::string>& extra) {
    std::string_view::size_type colon = raw.find(':');
    if (colon == std::string_view::npos || colon == 0) return false;
    std::string prefix = to_lower(trim(raw.substr(0, colon)));
    for (const char* p : kMediaPrefixes) {
        if (prefix == p) return true;
    }
    for (const std::string& p : extra) {
        if (prefix == to_lower(p)) return true;
    }
    // Interwiki links use short lowercase language prefixes ("fr:", "zh-min-nan:").
    if (prefix.size() >= 2 && prefix.size() <= 12 &&
        raw.substr(0, colon).find_first_of("ABCDEFGHIJKLMNOPQRSTUVWXYZ") == std::string_view::npos) {
        bool lang_like = true;
        for (char c : prefix) {
            if (!(std::islower(static_cast<unsigned char>(c)) || c == '-')) {
                lang_like = false;
                break;
            }
        }
        if (lang_like) return true;
    }
    return false;
}

// Target part of one bracketed span: up to the pipe, anchor stripped,
// leading colon dropped.
std::optional<std::string> parse_target(std::string_view inner) {
    std::string_view::size_type pipe = inner.find('|');
    std::string_view target = inner.substr(0, pipe);
    if (!target.empty() && target.front() == ':') target.remove_prefix(1);
    std::string_view::size_type hash = target.find('#');
    if (hash != std::string_view::npos) target = target.substr(0, hash);
    // brackets, braces and newlines are illegal in titles; spans containing
    // them come from unbalanced or nested markup and are skipped
    if (target.find_first_of("[]{}<>\n") != std::string_view::npos) return std::nullopt;
    if (trim(target).empty()) return std::nullopt;
    return std::string(target);
}

}  // namespace

std::string normalize_title(std::string_view title) {
    std::string out;
    out.reserve(title.size());
    bool prev_space = true;  // leading whitespace is dropped
    for (char c : title) {
        if (c == '_' || c == ' ' || c == '\t') {
            if (!prev_space) out.push_back(' ');
            prev_space = true;
        } else {
            out.push_back(c);
            prev_space = false;
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    if (!out.empty() && std::islower(static_cast<unsigned char>(out[0]))) {
        out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    }
    return out;
}

std::string strip_hidden_spans(std::string_view wikitext) {
    std::string out;
    out.reserve(wikitext.size());
    std::size_t i = 0;
    while (i < wikitext.size()) {
        if (wikitext.compare(i, 4, "<!--") == 0) {
            std::size_t end = wikitext.find("-->", i + 4);
            i = end == std::string_view::npos ? wikitext.size() : end + 3;
            out.push_back(' ');
            continue;
        }
        if (wikitext.compare(i, 8, "<nowiki>") == 0) {
            std::size_t end = wikitext.find("</nowiki>", i + 8);
            i = end == std::string_view::npos ? wikitext.size() : end + 9;
            out.push_back(' ');
            continue;
        }
        out.push_back(wikitext[i]);
        ++i;
    }
    return out;
}

std::vector<std::string> extract_link_occurrences(
    std::string_view wikitext, std::string_view self_title,
    const std::vector<std::string>& extra_excluded_prefixes) {
    std::string cleaned = strip_hidden_spans(wikitext);
    std::string self = normalize_title(self_title);

    std::vector<std::pair<std::size_t, std::string>> found;  // (opening offset, target)
    std::vector<std::size_t> starts;  // stack of open "[[" positions (nested file captions)
    std::size_t pos = 0;
    while (pos + 1 < cleaned.size()) {
        if (cleaned[pos] == '[' && cleaned[pos + 1] == '[') {
            pos += 2;
            starts.push_back(pos);
        } else if (cleaned[pos] == ']' && cleaned[pos + 1] == ']') {
            if (!starts.empty()) {
                std::size_t start = starts.back();
                starts.pop_back();
                std::string_view inner(cleaned.data() + start, pos - start);
                if (auto raw = parse_target(inner)) {
                    if (!is_excluded_target(*raw, extra_excluded_prefixes)) {
                        std::string title = normalize_title(*raw);
                        if (!title.empty() && title != self) {
                            found.emplace_back(start, std::move(title));
                        }
                    }
                }
            }
            pos += 2;
        } else {
            ++pos;
        }
    }
    // nested links close before their container; report in opening order
    std::stable_sort(found.begin(), found.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::string> out;
    out.reserve(found.size());
    for (auto& [offset, target] : found) out.push_back(std::move(target));
    return out;
}

std::vector<LinkMention> extract_links(std::string_view wikitext, std::string_view self_title,
                                       const std::vector<std::string>& extra_excluded_prefixes) {
    std::map<std::string, std::uint32_t> counts;
    for (std::string& target :
         extract_link_occurrences(wikitext, self_title, extra_excluded_prefixes)) {
        ++counts[std::move(target)];
    }
    std::vector<LinkMention> out;
    out.reserve(counts.size());
    for (auto& [target, count] : counts) out.push_back({target, count});
    return out;
}

std::vector<std::string> extract_categories(std::string_view wikitext,
                                            const std::vector<std::string>& prefixes) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while ((pos = wikitext.find("[[", pos)) != std::string_view::npos) {
        pos += 2;
        std::size_t end = wikitext.find("]]", pos);
        if (end == std::string_view::npos) break;
        std::string_view inner = wikitext.substr(pos, end - pos);
        std::string_view::size_type colon = inner.find(':');
        if (colon != std::string_view::npos) {
            std::string prefix = trim(inner.substr(0, colon));
            for (const std::string& want : prefixes) {
                if (starts_with_icase(prefix, want) && prefix.size() == want.size()) {
                    std::string_view name = inner.substr(colon + 1);
                    std::string_view::size_type pipe = name.find('|');
                    std::string cat = normalize_title(name.substr(0, pipe));
                    if (!cat.empty() && std::find(out.begin(), out.end(), cat) == out.end()) {
                        out.push_back(cat);
                    }
                    break;
                }
            }
        }
        pos = end + 2;
    }
    return out;
}

std::optional<std::string> redirect_target(std::string_view wikitext) {
    std::string head = trim(wikitext.substr(0, 512));
    if (!starts_with_icase(head, "#redirect")) return std::nullopt;
    std::size_t open = head.find("[[");
    if (open == std::string::npos) return std::nullopt;
    std::size_t close = head.find("]]", open + 2);
    if (close == std::string::npos) return std::nullopt;
    auto target = parse_target(std::string_view(head).substr(open + 2, close - open - 2));
    if (!target) return std::nullopt;
    return normalize_title(*target);
}

}  // namespace chronograph
