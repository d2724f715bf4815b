#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "chronograph/error.hpp"
#include "chronograph/gender.hpp"
#include "testutil.hpp"

using namespace chronograph;

namespace {

GenderLexicon en_lexicon() {
    return GenderLexicon::load(testutil::data_file("lexicons/gender/en.json"));
}

PersonRecord dated_person(const std::string& title, Year birth, Year death, Gender g) {
    PersonRecord p;
    p.title = title;
    p.lang = "en";
    p.lifespan = Lifespan{birth, death, false};
    p.gender = g;
    return p;
}

}  // namespace

TEST_CASE("classify_gender majority rule") {
    GenderLexicon lex = en_lexicon();

    SUBCASE("female majority") {
        std::string text;
        for (int i = 0; i < 10; ++i) text += "she ";
        for (int i = 0; i < 2; ++i) text += "he ";
        GenderResult r = classify_gender(text, lex);
        CHECK(r.gender == Gender::Female);
        CHECK(r.female_count == 10);
        CHECK(r.male_count == 2);
    }
    SUBCASE("tie is unknown") {
        GenderResult r = classify_gender("she he she he said they", lex);
        CHECK(r.gender == Gender::Unknown);
        CHECK(r.female_count == 2);
        CHECK(r.male_count == 2);
    }
    SUBCASE("terms never match inside words") {
        GenderResult r = classify_gender("Shepherd went to Hebron", lex);
        CHECK(r.gender == Gender::Unknown);
        CHECK(r.female_count == 0);
        CHECK(r.male_count == 0);
    }
    SUBCASE("empty text is unknown, not an error") {
        GenderResult r = classify_gender("", lex);
        CHECK(r.gender == Gender::Unknown);
    }
    SUBCASE("matching is case-insensitive at token level") {
        CHECK(classify_gender("She wrote. SHE ruled. Her court.", lex).female_count == 3);
    }
}

TEST_CASE("classify_gender invariances") {
    GenderLexicon lex = en_lexicon();
    std::string base = "she wrote about him and her work while he observed her";

    SUBCASE("token order permutation") {
        GenderResult before = classify_gender(base, lex);
        std::istringstream ss(base);
        std::vector<std::string> tokens{std::istream_iterator<std::string>(ss), {}};
        std::mt19937 rng(5);
        for (int round = 0; round < 20; ++round) {
            std::shuffle(tokens.begin(), tokens.end(), rng);
            std::string shuffled;
            for (const auto& t : tokens) shuffled += t + " ";
            GenderResult after = classify_gender(shuffled, lex);
            CHECK(after.gender == before.gender);
            CHECK(after.female_count == before.female_count);
            CHECK(after.male_count == before.male_count);
        }
    }
    SUBCASE("appending zero-hit text changes nothing") {
        GenderResult before = classify_gender(base, lex);
        GenderResult after =
            classify_gender(base + " the chronicle continues with plain words", lex);
        CHECK(after.gender == before.gender);
        CHECK(after.female_count == before.female_count);
        CHECK(after.male_count == before.male_count);
    }
    SUBCASE("swapping term sets swaps the verdict") {
        GenderLexicon swapped = lex;
        std::swap(swapped.female_terms, swapped.male_terms);
        for (const std::string& text :
             {std::string("she her hers"), std::string("he him his"), std::string("she he")}) {
            GenderResult a = classify_gender(text, lex);
            GenderResult b = classify_gender(text, swapped);
            CHECK(a.female_count == b.male_count);
            CHECK(a.male_count == b.female_count);
            if (a.gender == Gender::Unknown) {
                CHECK(b.gender == Gender::Unknown);
            } else {
                CHECK(b.gender == (a.gender == Gender::Female ? Gender::Male : Gender::Female));
            }
        }
    }
}

TEST_CASE("lexicon validation rejects bad files") {
    CHECK_THROWS_AS(GenderLexicon::from_json_text(
                        R"({"lang":"en","female":["she"],"male":["she"]})", "t"),
                    Error);
    CHECK_THROWS_AS(GenderLexicon::from_json_text(
                        R"({"lang":"en","female":["She"],"male":["he"]})", "t"),
                    Error);
    CHECK_THROWS_AS(GenderLexicon::from_json_text(R"({"lang":"en","female":["x"]})", "t"), Error);
}

TEST_CASE("validation accuracy on the bundled labeled fixtures") {
    for (const std::string lang : {"en", "de", "es", "pt"}) {
        GenderLexicon lex =
            GenderLexicon::load(testutil::data_file("lexicons/gender/" + lang + ".json"));
        auto labeled = read_labeled_texts(testutil::fixture("gender/" + lang + ".jsonl"));
        REQUIRE(labeled.size() == 200);
        double accuracy = validate_accuracy(labeled, lex);
        CHECK(accuracy >= 0.90);
        // frozen composition of the fixture: 182 clear, 12 inverted, 6 ties
        CHECK(accuracy == doctest::Approx(0.91).epsilon(1e-12));
    }
}

TEST_CASE("validation identities") {
    GenderLexicon lex = en_lexicon();
    SUBCASE("all-correct set scores 1.0") {
        std::vector<LabeledText> set{{"she her hers", Gender::Female},
                                     {"he him his", Gender::Male}};
        CHECK(validate_accuracy(set, lex) == 1.0);
    }
    SUBCASE("inverting labels complements accuracy when nothing is unknown") {
        std::vector<LabeledText> set{{"she her", Gender::Female},
                                     {"he him", Gender::Male},
                                     {"she said he did she would", Gender::Male}};
        double original = validate_accuracy(set, lex);
        std::vector<LabeledText> inverted = set;
        for (auto& item : inverted) {
            item.gender = item.gender == Gender::Female ? Gender::Male : Gender::Female;
        }
        CHECK(validate_accuracy(inverted, lex) == doctest::Approx(1.0 - original));
    }
    SUBCASE("empty set is an error") {
        CHECK_THROWS_AS(validate_accuracy({}, lex), Error);
    }
}

TEST_CASE("gender time series") {
    SUBCASE("three women and one man alive in 1950") {
        PeopleIndex index;
        index.emplace("A", dated_person("A", 1900, 1980, Gender::Female));
        index.emplace("B", dated_person("B", 1910, 1990, Gender::Female));
        index.emplace("C", dated_person("C", 1920, 1995, Gender::Female));
        index.emplace("D", dated_person("D", 1905, 1985, Gender::Male));
        auto series = gender_timeseries(index, 1950, 1950);
        REQUIRE(series.size() == 1);
        CHECK(series[0].year == 1950);
        CHECK(series[0].population == 4);
        CHECK(series[0].percent_female.value() == 75.0);
    }
    SUBCASE("years with nobody alive emit null points") {
        PeopleIndex index;
        index.emplace("A", dated_person("A", 1900, 1980, Gender::Female));
        auto series = gender_timeseries(index, 1890, 1900);
        REQUIRE(series.size() == 11);
        CHECK(!series[0].percent_female.has_value());
        CHECK(series[0].population == 0);
        CHECK(series.back().percent_female.has_value());
    }
    SUBCASE("unknown-gender and undated persons are excluded") {
        PeopleIndex index;
        index.emplace("A", dated_person("A", 1900, 1980, Gender::Female));
        index.emplace("B", dated_person("B", 1900, 1980, Gender::Unknown));
        PersonRecord undated;
        undated.title = "C";
        undated.gender = Gender::Male;
        index.emplace("C", undated);
        auto series = gender_timeseries(index, 1950, 1950);
        CHECK(series[0].population == 1);
        CHECK(series[0].percent_female.value() == 100.0);
    }
    SUBCASE("monotone cohort produces a non-decreasing series") {
        // each year 1901..1910 adds one woman; two men span the whole decade
        PeopleIndex index;
        index.emplace("M1", dated_person("M1", 1890, 1980, Gender::Male));
        index.emplace("M2", dated_person("M2", 1890, 1980, Gender::Male));
        for (int i = 0; i < 10; ++i) {
            std::string title = "W" + std::to_string(i);
            index.emplace(title, dated_person(title, 1901 + i, 1980, Gender::Female));
        }
        auto series = gender_timeseries(index, 1900, 1910);
        REQUIRE(series.size() == 11);
        CHECK(series[0].percent_female.value() == 0.0);
        double prev = -1.0;
        for (const auto& p : series) {
            CHECK(p.percent_female.value() >= prev);
            prev = *p.percent_female;
        }
        // hand-computed endpoints: 0/2 then 10/12
        CHECK(series.back().population == 12);
        CHECK(series.back().percent_female.value() ==
              doctest::Approx(100.0 * 10 / 12).epsilon(1e-12));
    }
    SUBCASE("percent stays within [0,100] on random populations") {
        std::mt19937 rng(31);
        std::uniform_int_distribution<int> birth(1800, 1940);
        std::uniform_int_distribution<int> life(1, 100);
        std::uniform_int_distribution<int> g(0, 2);
        PeopleIndex index;
        for (int i = 0; i < 200; ++i) {
            std::string title = "P" + std::to_string(i);
            Year b = birth(rng);
            index.emplace(title,
                          dated_person(title, b, year_add(b, life(rng)),
                                       static_cast<Gender>(g(rng))));
        }
        for (const auto& p : gender_timeseries(index, 1800, 1950)) {
            if (p.percent_female) {
                CHECK(*p.percent_female >= 0.0);
                CHECK(*p.percent_female <= 100.0);
            }
        }
    }
    SUBCASE("bad ranges are errors") {
        PeopleIndex index;
        CHECK_THROWS_AS(gender_timeseries(index, 1950, 1900), Error);
        CHECK_THROWS_AS(gender_timeseries(index, 0, 10), Error);
    }
}

TEST_CASE("timeseries csv shape") {
    PeopleIndex index;
    index.emplace("A", dated_person("A", 1900, 1980, Gender::Female));
    auto series = gender_timeseries(index, 1899, 1901);
    std::ostringstream out;
    write_timeseries_csv(series, out);
    CHECK(out.str() ==
          "year,percent_female,population\n"
          "1899,,0\n"
          "1900,100,1\n"
          "1901,100,1\n");
}
