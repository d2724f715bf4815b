#include "chronograph/index_builder.hpp"

#include <omp.h>

#include <iostream>
#include <map>

#include "chronograph/threads.hpp"

namespace chronograph {

namespace {

struct PageWork {
    RawPage page;
    bool is_person = false;
    PersonRecord record;
    std::vector<LinkMention> raw_links;
};

}  // namespace

BuiltIndex build_people_index(PageSource& source, const LangRules& rules,
                              const BuildOptions& opts) {
    BuiltIndex out;
    int threads = effective_threads(opts.threads);

    std::vector<PageWork> block;
    block.reserve(opts.block_size);

    // raw (unresolved) mention lists per person; duplicates: later page wins
    std::unordered_map<std::string, std::vector<LinkMention>> raw_links;

    auto flush_block = [&]() {
        if (block.empty()) return;
        std::int64_t n = static_cast<std::int64_t>(block.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (std::int64_t i = 0; i < n; ++i) {
            PageWork& w = block[static_cast<std::size_t>(i)];
            if (w.page.redirect) continue;
            if (!rules.detect_person(w.page)) continue;
            w.is_person = true;
            w.record.title = w.page.title;
            w.record.lang = rules.lang();
            w.record.categories = w.page.categories;
            w.record.lifespan = rules.extract_lifespan(w.page);
            if (opts.gender_lexicon) {
                w.record.gender = classify_gender(w.page.wikitext, *opts.gender_lexicon).gender;
            }
            w.raw_links = extract_links(w.page.wikitext, w.page.title,
                                        rules.excluded_link_prefixes());
        }
        // merge in dump order so the "later occurrence wins" rule is
        // deterministic
        for (PageWork& w : block) {
            ++out.report.pages_seen;
            if (w.page.redirect) {
                auto [it, inserted] = out.redirects.insert_or_assign(w.page.title, *w.page.redirect);
                if (!inserted) {
                    ++out.report.duplicate_titles;
                    std::cerr << "warning: duplicate redirect title \"" << w.page.title
                              << "\", later occurrence wins\n";
                }
                continue;
            }
            if (!w.is_person) continue;
            if (out.people.count(w.record.title)) {
                ++out.report.duplicate_titles;
                std::cerr << "warning: duplicate title \"" << w.record.title
                          << "\", later occurrence wins\n";
            }
            raw_links[w.record.title] = std::move(w.raw_links);
            out.people.insert_or_assign(w.record.title, std::move(w.record));
        }
        block.clear();
    };

    while (auto page = source.next()) {
        block.push_back(PageWork{std::move(*page), false, {}, {}});
        if (block.size() >= opts.block_size) flush_block();
    }
    flush_block();

    // Resolution pass: redirects one hop, person targets only, counts merged.
    for (auto& [title, rec] : out.people) {
        std::map<std::string, std::uint32_t> resolved;
        for (const LinkMention& link : raw_links[title]) {
            std::string target = link.target;
            auto r = out.redirects.find(target);
            if (r != out.redirects.end() && !out.people.count(target)) {
                target = r->second;
                if (out.redirects.count(target) && !out.people.count(target)) {
                    // redirect chain deeper than one hop
                    ++out.report.dropped_redirect_chains;
                    std::cerr << "warning: dropping redirect chain " << link.target
                              << " -> " << target << " -> ...\n";
                    continue;
                }
            }
            if (target == title) continue;  // self link after resolution
            if (!out.people.count(target)) continue;
            resolved[target] += link.count;
        }
        rec.links.clear();
        rec.links.reserve(resolved.size());
        for (auto& [target, count] : resolved) rec.links.push_back({target, count});
    }

    out.report.persons = out.people.size();
    out.report.redirects = out.redirects.size();
    for (const auto& [title, rec] : out.people) {
        if (!rec.dated()) ++out.report.undated_persons;
    }
    out.report.source = source.stats();
    return out;
}

}  // namespace chronograph
