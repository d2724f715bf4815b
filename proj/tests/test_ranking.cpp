#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <random>

#include "chronograph/error.hpp"
#include "chronograph/index_builder.hpp"
#include "chronograph/pagerank.hpp"
#include "chronograph/ranking.hpp"
#include "chronograph/rules.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace chronograph;

namespace {

PeopleGraph tiny_graph(std::size_t n, std::vector<PGEdge> edges) {
    PeopleGraph g;
    for (std::size_t i = 0; i < n; ++i) {
        g.titles.push_back(std::string(1, static_cast<char>('A' + i)));
        g.lifespans.push_back({1, 80, false});
        g.genders.push_back(Gender::Unknown);
        g.categories.emplace_back();
    }
    std::sort(edges.begin(), edges.end(), [](const PGEdge& a, const PGEdge& b) {
        return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    g.edges = std::move(edges);
    return g;
}

PeopleGraph plutarch_graph() {
    LangRules rules = LangRules::load(testutil::data_file("rules/en.json"));
    SourceOptions opts;
    opts.format = DumpFormat::Jsonl;
    opts.category_prefixes = rules.category_prefixes();
    auto src = open_dump(testutil::fixture("plutarch.jsonl"), opts);
    return build_full_graph(build_people_index(*src, rules).people);
}

}  // namespace

TEST_CASE("pagerank closed forms") {
    SUBCASE("two mutual nodes split evenly for any damping") {
        for (double d : {0.5, 0.85, 0.99}) {
            PagerankOptions opts;
            opts.damping = d;
            auto r = pagerank(2, {{0, 1, 1}, {1, 0, 1}}, opts);
            CHECK(r.converged);
            CHECK(r.scores[0] == doctest::Approx(0.5).epsilon(1e-12));
            CHECK(r.scores[1] == doctest::Approx(0.5).epsilon(1e-12));
        }
    }
    SUBCASE("directed 3-cycle is uniform") {
        auto r = pagerank(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
        for (double s : r.scores) CHECK(s == doctest::Approx(1.0 / 3).epsilon(1e-12));
    }
    SUBCASE("A->B, C->B matches the dense oracle and the frozen solution") {
        std::vector<PGEdge> edges{{0, 1, 1}, {2, 1, 1}};
        auto r = pagerank(3, edges);
        auto expected = oracles::dense_pagerank(3, edges, 0.85, 1e-12, 500);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::fabs(r.scores[i] - expected[i]) <= 1e-9);
        }
        // analytic stationary point: b = 0.05 + 0.85*(a + c + b/3), a = c
        CHECK(r.scores[0] == doctest::Approx(0.2127659574).epsilon(1e-8));
        CHECK(r.scores[1] == doctest::Approx(0.5744680851).epsilon(1e-8));
        CHECK(r.scores[2] == doctest::Approx(0.2127659574).epsilon(1e-8));
    }
    SUBCASE("empty graph is an error") {
        CHECK_THROWS_AS(pagerank(0, {}), Error);
    }
    SUBCASE("non-convergence is reported, not thrown") {
        PagerankOptions opts;
        opts.epsilon = 1e-300;
        opts.max_iter = 3;
        auto r = pagerank(3, {{0, 1, 1}}, opts);
        CHECK(!r.converged);
        CHECK(r.iterations == 3);
    }
}

TEST_CASE("pagerank oracle equivalence on random graphs") {
    std::mt19937 rng(4242);
    for (int round = 0; round < 200; ++round) {
        std::size_t n = 0;
        std::vector<PGEdge> edges = oracles::random_digraph(rng, 12, &n);
        PagerankOptions opts;
        opts.epsilon = 1e-14;
        opts.max_iter = 2000;
        auto r = pagerank(n, edges, opts);
        auto expected = oracles::dense_pagerank(n, edges, opts.damping, 1e-14, 2000);

        double sum = 0.0, linf = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += r.scores[i];
            linf = std::max(linf, std::fabs(r.scores[i] - expected[i]));
        }
        CHECK(linf <= 1e-8);
        CHECK(std::fabs(sum - 1.0) <= 1e-9);
        for (double s : r.scores) CHECK(s >= (1.0 - opts.damping) / double(n) - 1e-12);
    }
}

TEST_CASE("pagerank parallel kernel is bitwise equal to the serial reference") {
    std::mt19937 rng(515);
    for (int round = 0; round < 30; ++round) {
        std::size_t n = 0;
        std::vector<PGEdge> edges = oracles::random_digraph(rng, 40, &n);
        PagerankOptions par;
        par.threads = 2;
        PagerankOptions ser;
        auto a = pagerank(n, edges, par);
        auto b = pagerank_serial(n, edges, ser);
        REQUIRE(a.scores.size() == b.scores.size());
        for (std::size_t i = 0; i < n; ++i) CHECK(a.scores[i] == b.scores[i]);
        CHECK(a.iterations == b.iterations);
    }
}

TEST_CASE("pagerank invariances") {
    std::mt19937 rng(99);
    std::size_t n = 0;
    std::vector<PGEdge> edges = oracles::random_digraph(rng, 10, &n);

    SUBCASE("weight scaling leaves scores unchanged") {
        std::vector<PGEdge> scaled = edges;
        for (PGEdge& e : scaled) e.weight *= 7;
        auto a = pagerank(n, edges);
        auto b = pagerank(n, scaled);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(a.scores[i] == doctest::Approx(b.scores[i]).epsilon(1e-12));
        }
    }
    SUBCASE("node relabeling permutes scores identically") {
        std::vector<std::uint32_t> perm(n);
        for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<PGEdge> relabeled;
        for (const PGEdge& e : edges) relabeled.push_back({perm[e.src], perm[e.dst], e.weight});
        std::sort(relabeled.begin(), relabeled.end(), [](const PGEdge& a, const PGEdge& b) {
            return a.src != b.src ? a.src < b.src : a.dst < b.dst;
        });
        auto a = pagerank(n, edges);
        auto b = pagerank(n, relabeled);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(a.scores[i] == doctest::Approx(b.scores[perm[i]]).epsilon(1e-10));
        }
    }
}

TEST_CASE("indegree counts distinct in-neighbors") {
    PeopleGraph g = tiny_graph(3, {{0, 1, 5}, {2, 1, 2}});
    auto deg = indegree(g);
    CHECK(deg[0] == 0);
    CHECK(deg[1] == 2);  // two sources, weights ignored
    CHECK(deg[2] == 0);

    SUBCASE("matches brute force on random graphs") {
        std::mt19937 rng(7);
        for (int round = 0; round < 20; ++round) {
            std::size_t n = 0;
            auto edges = oracles::random_digraph(rng, 15, &n);
            PeopleGraph rg = tiny_graph(n, edges);
            auto got = indegree(rg);
            for (std::uint32_t v = 0; v < n; ++v) {
                std::uint32_t expected = 0;
                for (const PGEdge& e : edges) {
                    if (e.dst == v) ++expected;
                }
                CHECK(got[v] == expected);
            }
        }
    }
}

TEST_CASE("top_k ordering and tie-breaking") {
    SUBCASE("equal pagerank breaks ties by indegree, then title") {
        // two sinks fed equally; B gets two in-neighbors, D gets one of
        // weight 2, so pageranks of B and D are equal but indegree differs
        PeopleGraph g = tiny_graph(4, {{0, 1, 1}, {2, 1, 1}, {2, 3, 2}});
        // A->B, C->B w1, C->D w2: contribution to B = A + C/2... adjust to
        // make a true tie instead: two disconnected pairs
        g = tiny_graph(4, {{0, 1, 1}, {2, 3, 5}});
        auto entries = top_k(g, 4);
        CHECK(entries[0].pagerank == doctest::Approx(entries[1].pagerank));
        // B and D tie on pagerank and indegree; title ascending wins
        CHECK(entries[0].title == "B");
        CHECK(entries[1].title == "D");
        CHECK(entries[0].rank == 1);
        CHECK(entries[3].rank == 4);
    }
    SUBCASE("k larger than node count returns everything") {
        PeopleGraph g = tiny_graph(3, {{0, 1, 1}});
        CHECK(top_k(g, 50).size() == 3);
    }
    SUBCASE("k must be positive") {
        PeopleGraph g = tiny_graph(2, {});
        CHECK_THROWS_AS(top_k(g, 0), Error);
    }
}

TEST_CASE("fixture graph golden top-3") {
    PeopleGraph g = plutarch_graph();
    auto entries = top_k(g, 3);
    REQUIRE(entries.size() == 3);

    // cross-check every score against the dense oracle at runtime
    auto expected = oracles::dense_pagerank(g.node_count(), g.edges, 0.85, 1e-14, 2000);
    for (const RankingEntry& e : entries) {
        auto id = g.node_id(e.title);
        REQUIRE(id.has_value());
        CHECK(std::fabs(e.pagerank - expected[*id]) <= 1e-9);
    }

    CHECK(entries[0].title == "Plutarch");
    CHECK(entries[1].title == "Caesar");
    CHECK(entries[2].title == "Hadrian");
    // frozen from the dense oracle on this fixture
    CHECK(entries[0].pagerank == doctest::Approx(0.231902225008).epsilon(1e-8));
    CHECK(entries[1].pagerank == doctest::Approx(0.160869111041).epsilon(1e-8));
    CHECK(entries[2].pagerank == doctest::Approx(0.160869111041).epsilon(1e-8));
    CHECK(entries[1].indegree == 1);
}

TEST_CASE("categorize follows rule order with other as default") {
    CategoryRules rules = CategoryRules::load(testutil::data_file("categories/default.json"));
    CHECK(rules.categorize({"Roman emperors"}) == PersonCategory::Politician);
    CHECK(rules.categorize({"Popes"}) == PersonCategory::Religious);
    CHECK(rules.categorize({"Greek historians"}) == PersonCategory::ArtistScientist);
    CHECK(rules.categorize({"Cities in Italy"}) == PersonCategory::Other);
    CHECK(rules.categorize({}) == PersonCategory::Other);
    // first matching rule wins: emperor outranks historian in rule order
    CHECK(rules.categorize({"Byzantine historians", "Byzantine emperors"}) ==
          PersonCategory::Politician);
}

TEST_CASE("ingroup fraction arithmetic") {
    auto load_case = [](const std::string& name, double expected_fraction,
                        std::uint32_t expected_in) {
        std::string text = testutil::slurp(testutil::fixture("ingroup/" + name));
        auto j = nlohmann::json::parse(text);
        SphereRules sphere =
            SphereRules::from_json_text(j.at("sphere").dump(), name);
        std::vector<RankingEntry> entries;
        for (const auto& item : j.at("entries")) {
            RankingEntry e;
            e.title = item.at("title").get<std::string>();
            e.pagerank = item.at("pagerank").get<double>();
            e.indegree = item.at("indegree").get<std::uint32_t>();
            e.wiki_categories = item.at("categories").get<std::vector<std::string>>();
            entries.push_back(std::move(e));
        }
        GroupStats stats = ingroup_fraction(entries, sphere);
        CHECK(stats.in_group_count == expected_in);
        CHECK(stats.fraction == expected_fraction);
    };
    load_case("zh.json", 0.96, 48);
    load_case("en.json", 0.20, 10);

    SUBCASE("empty list is an error") {
        std::vector<RankingEntry> empty;
        SphereRules sphere = SphereRules::from_json_text(R"({"lang":"zh","in_group":["x"]})", "t");
        CHECK_THROWS_AS(ingroup_fraction(empty, sphere), Error);
    }
}

TEST_CASE("rankings csv format") {
    PeopleGraph g = tiny_graph(2, {{0, 1, 1}});
    g.titles[1] = "Name, with comma";
    auto entries = top_k(g, 2);
    std::ostringstream out;
    write_rankings_csv(entries, out);
    std::string csv = out.str();
    CHECK(csv.rfind("rank,title,pagerank,indegree,category,ingroup\n", 0) == 0);
    CHECK(csv.find("\"Name, with comma\"") != std::string::npos);
}
