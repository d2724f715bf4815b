#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chronograph/strings.hpp"
#include "chronograph/wikitext.hpp"
#include "oracles.hpp"

using namespace chronograph;

TEST_CASE("title normalization") {
    CHECK(normalize_title("julius_caesar") == "Julius caesar");
    CHECK(normalize_title("Julius Caesar") == "Julius Caesar");
    CHECK(normalize_title("  Rome ") == "Rome");
    CHECK(normalize_title("a__b   c") == "A b c");
    CHECK(normalize_title("") == "");

    SUBCASE("idempotence on generated titles") {
        std::mt19937 rng(7);
        std::uniform_int_distribution<int> len(0, 24);
        const std::string alphabet = "aA _z9-:()'";
        std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
        for (int i = 0; i < 500; ++i) {
            std::string t;
            int n = len(rng);
            for (int k = 0; k < n; ++k) t.push_back(alphabet[pick(rng)]);
            std::string once = normalize_title(t);
            CHECK(normalize_title(once) == once);
        }
    }
}

TEST_CASE("link extraction basics") {
    SUBCASE("anchor strip") {
        auto links = extract_links("[[Rome#History]]", "Plutarch");
        REQUIRE(links.size() == 1);
        CHECK(links[0].target == "Rome");
        CHECK(links[0].count == 1);
    }
    SUBCASE("media link exclusion") {
        auto links = extract_links("see [[File:X.jpg]] and [[Plutarch]]", "Hadrian");
        REQUIRE(links.size() == 1);
        CHECK(links[0].target == "Plutarch");
    }
    SUBCASE("pipe labels and duplicate aggregation") {
        auto links = extract_links("[[Julius Caesar]] fought. [[Julius Caesar|Caesar]] won.", "X");
        REQUIRE(links.size() == 1);
        CHECK(links[0].target == "Julius Caesar");
        CHECK(links[0].count == 2);
    }
    SUBCASE("self links dropped") {
        CHECK(extract_links("[[Plutarch]] wrote.", "Plutarch").empty());
        CHECK(extract_links("[[plutarch]] wrote.", "Plutarch").empty());
    }
    SUBCASE("interwiki and category excluded") {
        auto links = extract_links("[[fr:Rome]] [[Category:Essays]] [[Nero]]", "X");
        REQUIRE(links.size() == 1);
        CHECK(links[0].target == "Nero");
    }
    SUBCASE("colon trick keeps the page link") {
        auto links = extract_links("[[:Foo]]", "X");
        REQUIRE(links.size() == 1);
        CHECK(links[0].target == "Foo");
    }
    SUBCASE("empty and anchored-only targets skipped") {
        CHECK(extract_links("[[#section]] [[|label]]", "X").empty());
    }
}

TEST_CASE("link extraction resynchronizes on unbalanced brackets") {
    auto links = extract_links("[[Broken start [[Nero]] trailing ]] junk [[Hadrian]]", "X");
    REQUIRE(links.size() == 2);
    CHECK(links[0].target == "Hadrian");
    CHECK(links[1].target == "Nero");

    CHECK(extract_links("[[Never closed", "X").empty());
    auto tail = extract_links("]] stray close [[Plutarch]]", "X");
    REQUIRE(tail.size() == 1);
    CHECK(tail[0].target == "Plutarch");
}

TEST_CASE("nested file caption links count the inner target") {
    auto links = extract_links(
        "[[File:Bust.jpg|thumb|[[Zeno of Citium]] as sculpted]] and [[Plutarch]]", "X");
    REQUIRE(links.size() == 2);
    CHECK(links[0].target == "Plutarch");
    CHECK(links[1].target == "Zeno of Citium");
}

TEST_CASE("links in comments and nowiki spans are ignored") {
    auto links = extract_links(
        "<!-- [[Hidden]] --> [[Nero]] <nowiki>[[AlsoHidden]]</nowiki>", "X");
    REQUIRE(links.size() == 1);
    CHECK(links[0].target == "Nero");
}

TEST_CASE("mention counts match the naive occurrence scan") {
    // property: for generated flat wikitext, counts equal the brute scan
    std::mt19937 rng(41);
    const std::vector<std::string> targets = {"Nero", "Hadrian", "Julius Caesar", "Kubaba"};
    std::uniform_int_distribution<std::size_t> pick(0, targets.size() - 1);
    std::uniform_int_distribution<int> mode(0, 2);
    std::uniform_int_distribution<int> n_links(0, 30);
    for (int round = 0; round < 100; ++round) {
        std::string text = "Intro text. ";
        int n = n_links(rng);
        for (int i = 0; i < n; ++i) {
            const std::string& t = targets[pick(rng)];
            switch (mode(rng)) {
                case 0: text += "[[" + t + "]] "; break;
                case 1: text += "[[" + t + "|label]] "; break;
                default: text += "[[" + t + "#part]] "; break;
            }
            text += "filler ";
        }
        auto links = extract_links(text, "Self");
        for (const std::string& t : targets) {
            std::uint32_t expected = oracles::naive_mention_count(text, t);
            std::uint32_t got = 0;
            for (const auto& l : links) {
                if (l.target == t) got = l.count;
            }
            CHECK(got == expected);
        }
    }
}

TEST_CASE("category extraction") {
    auto cats = extract_categories(
        "text [[Category:46 births]] more [[Category:120 deaths|sort]] [[Kategorie:Ignored]]",
        {"Category"});
    REQUIRE(cats.size() == 2);
    CHECK(cats[0] == "46 births");
    CHECK(cats[1] == "120 deaths");

    auto de = extract_categories("[[Kategorie:Geboren 46]]", {"Kategorie"});
    REQUIRE(de.size() == 1);
    CHECK(de[0] == "Geboren 46");
}

TEST_CASE("redirect detection") {
    CHECK(redirect_target("#REDIRECT [[Julius Caesar]]").value() == "Julius Caesar");
    CHECK(redirect_target("#redirect[[julius caesar]]").value() == "Julius caesar");
    CHECK(!redirect_target("Not a redirect [[X]]").has_value());
    CHECK(!redirect_target("").has_value());
}

TEST_CASE("tokenizer respects word boundaries") {
    auto tokens = tokenize("Shepherd went to Hebron, she said");
    REQUIRE(tokens.size() == 6);
    CHECK(tokens[0] == "Shepherd");
    CHECK(tokens[4] == "she");

    CHECK(tokenize("").empty());
    CHECK(tokenize("  ,.;  ").empty());
}

TEST_CASE("lowercasing covers latin-1 accents") {
    CHECK(to_lower("Él") == "él");
    CHECK(to_lower("MÄRZ") == "märz");
    CHECK(to_lower("ABC xyz") == "abc xyz");
}
