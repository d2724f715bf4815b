#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "chronograph/digest.hpp"
#include "chronograph/error.hpp"
#include "chronograph/graph_io.hpp"
#include "chronograph/pipeline.hpp"
#include "testutil.hpp"

using namespace chronograph;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json base_config(const testutil::TempDir& tmp, const std::string& out_name) {
    json c;
    c["lang"] = "en";
    c["out_dir"] = tmp.file(out_name);
    c["dump"] = testutil::fixture("fixture60.jsonl");
    c["rules"] = testutil::data_file("rules/en.json");
    c["gender_lexicon"] = testutil::data_file("lexicons/gender/en.json");
    c["slices"] = {{"from", -2450}, {"to", 1950}, {"step", 500}};
    c["rank"] = {{"top", 10},
                 {"categories", testutil::data_file("categories/default.json")},
                 {"sphere", testutil::data_file("spheres/en.json")}};
    c["gender_timeseries"] = {{"from", 1900}, {"to", 1950}};
    c["news"] = {{"listing", testutil::fixture("news/listing_en.wiki")},
                 {"articles", testutil::fixture("news/articles")},
                 {"lexicon", testutil::data_file("lexicons/sentiment/en.json")},
                 {"top", 5},
                 {"year", 2014}};
    return c;
}

// every file under dir, relative path -> sha256
std::map<std::string, std::string> digest_tree(const std::string& dir) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string rel = fs::relative(entry.path(), dir).string();
        if (rel == ".chronograph.lock") continue;
        out[rel] = sha256_file_hex(entry.path().string());
    }
    return out;
}

}  // namespace

TEST_CASE("config parsing") {
    SUBCASE("unknown top-level keys are rejected") {
        CHECK_THROWS_WITH_AS(PipelineConfig::from_json_text(R"({"out_dir":"x","frobnicate":1})", "t"),
                             doctest::Contains("frobnicate"), Error);
    }
    SUBCASE("unknown nested keys are rejected") {
        CHECK_THROWS_WITH_AS(
            PipelineConfig::from_json_text(R"({"out_dir":"x","rank":{"dampling":0.9}})", "t"),
            doctest::Contains("rank.dampling"), Error);
    }
    SUBCASE("bad damping is a config error") {
        CHECK_THROWS_AS(
            PipelineConfig::from_json_text(R"({"out_dir":"x","rank":{"damping":1.5}})", "t"),
            Error);
    }
    SUBCASE("malformed json names the origin") {
        CHECK_THROWS_WITH_AS(PipelineConfig::from_json_text("{", "conf.json"),
                             doctest::Contains("conf.json"), Error);
    }
    SUBCASE("config errors carry exit code 2, input errors 3") {
        try {
            PipelineConfig::from_json_text(R"({"zzz":1})", "t");
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.exit_code() == 2);
        }
    }
}

TEST_CASE("atomic files never leave partial final artifacts") {
    testutil::TempDir tmp;
    std::string target = tmp.file("artifact.csv");

    SUBCASE("uncommitted writes vanish") {
        {
            AtomicFile f(target);
            f.stream() << "half a row";
            // destructor without commit()
        }
        CHECK(!fs::exists(target));
        CHECK(fs::directory_iterator(tmp.str()) == fs::directory_iterator());
    }
    SUBCASE("commit makes the content visible atomically") {
        {
            AtomicFile f(target);
            f.stream() << "a,b\n";
            f.commit();
        }
        CHECK(testutil::slurp(target) == "a,b\n");
    }
    SUBCASE("overwrite replaces the old content only on commit") {
        testutil::write_file(target, "old");
        {
            AtomicFile f(target);
            f.stream() << "new";
            CHECK(testutil::slurp(target) == "old");
            f.commit();
        }
        CHECK(testutil::slurp(target) == "new");
    }
}

TEST_CASE("directory lock is exclusive") {
    testutil::TempDir tmp;
    DirLock first(tmp.str());
    CHECK_THROWS_WITH_AS(DirLock(tmp.str()), doctest::Contains("locked"), Error);
}

TEST_CASE("pipeline runs end to end and is byte-deterministic") {
    testutil::TempDir tmp;
    json c1 = base_config(tmp, "run1");
    json c2 = base_config(tmp, "run2");

    PipelineConfig cfg1 = PipelineConfig::from_json_text(c1.dump(), "c1");
    PipelineConfig cfg2 = PipelineConfig::from_json_text(c2.dump(), "c2");
    run_pipeline(cfg1, {});
    run_pipeline(cfg2, {});

    auto d1 = digest_tree(tmp.file("run1"));
    auto d2 = digest_tree(tmp.file("run2"));

    SUBCASE("expected artifacts exist") {
        for (const char* name :
             {"index.jsonl", "graph/full_graph.csv", "graph/full_graph.graphml",
              "graph/full_graph.dot", "rankings.csv", "gender_timeseries.csv",
              "news/news_graph.csv", "news/news_graph.graphml", "news/report.csv",
              "news/betweenness.csv", "manifest.json"}) {
            CAPTURE(name);
            CHECK(d1.count(name) == 1);
        }
        // grid years with someone alive get a slice file; empty ones do not
        CHECK(d1.count("graph/slice_-2450.csv") == 1);
        CHECK(d1.count("graph/slice_1551.csv") == 1);
        CHECK(d1.count("graph/slice_-450.csv") == 0);
    }
    SUBCASE("every data artifact is byte-identical across runs") {
        for (const auto& [rel, digest] : d1) {
            if (rel == "manifest.json") continue;  // holds wall-clock fields
            CAPTURE(rel);
            REQUIRE(d2.count(rel) == 1);
            CHECK(d2.at(rel) == digest);
        }
        CHECK(d1.size() == d2.size());
    }
    SUBCASE("manifests record identical output digests") {
        auto outputs_of = [](const std::string& path) {
            json m = json::parse(testutil::slurp(path));
            std::set<std::string> digests;
            for (const auto& stage : m.at("stages")) {
                for (const auto& out : stage.at("outputs")) {
                    digests.insert(out.at("sha256").get<std::string>());
                }
            }
            return digests;
        };
        CHECK(outputs_of(tmp.file("run1/manifest.json")) ==
              outputs_of(tmp.file("run2/manifest.json")));
    }
}

TEST_CASE("single-stage run with a missing input names the path") {
    testutil::TempDir tmp;
    json c = base_config(tmp, "out");
    PipelineConfig cfg = PipelineConfig::from_json_text(c.dump(), "c");
    cfg.graph_csv = tmp.file("missing_graph.csv");
    cfg.index = testutil::fixture("fixture60.jsonl");  // exists; not the blocker
    try {
        run_pipeline(cfg, {"rank"});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.exit_code() == 3);
        CHECK(std::string(e.what()).find("missing_graph.csv") != std::string::npos);
    }
}

TEST_CASE("unknown stage is a config error") {
    testutil::TempDir tmp;
    PipelineConfig cfg =
        PipelineConfig::from_json_text(base_config(tmp, "out").dump(), "c");
    CHECK_THROWS_AS(run_pipeline(cfg, {"frobnicate"}), Error);
}

TEST_CASE("graph export formats") {
    PeopleGraph g;
    g.titles = {"Alpha", "Beta \"quoted\""};
    g.lifespans = {{1, 70, false}, {2, 71, false}};
    g.genders = {Gender::Male, Gender::Female};
    g.categories = {{}, {}};
    g.edges = {{0, 1, 3}};

    SUBCASE("dot output is stable and escaped") {
        std::ostringstream out;
        export_people_graph(g, GraphFormat::Dot, out);
        CHECK(out.str() ==
              "digraph chronograph {\n"
              "  \"Alpha\";\n"
              "  \"Beta \\\"quoted\\\"\";\n"
              "  \"Alpha\" -> \"Beta \\\"quoted\\\"\" [weight=3];\n"
              "}\n");
    }
    SUBCASE("edge csv quotes fields") {
        std::ostringstream out;
        export_people_graph(g, GraphFormat::EdgeCsv, out);
        CHECK(out.str() ==
              "src,dst,weight\n"
              "Alpha,\"Beta \"\"quoted\"\"\",3\n");
    }
    SUBCASE("graphml carries node attributes when provided") {
        std::vector<double> pr{0.25, 0.75};
        std::vector<std::uint32_t> deg{0, 1};
        PeopleGraphAttrs attrs;
        attrs.pagerank = &pr;
        attrs.indegree = &deg;
        attrs.include_gender = true;
        std::ostringstream out;
        export_people_graph(g, GraphFormat::GraphMl, out, attrs);
        std::string xml = out.str();
        CHECK(xml.find("attr.name=\"pagerank\"") != std::string::npos);
        CHECK(xml.find("<data key=\"pagerank\">0.25</data>") != std::string::npos);
        CHECK(xml.find("<data key=\"gender\">female</data>") != std::string::npos);
        CHECK(xml.find("Beta &quot;quoted&quot;") != std::string::npos);
    }
    SUBCASE("empty graph export is an error") {
        PeopleGraph empty;
        std::ostringstream out;
        CHECK_THROWS_AS(export_people_graph(empty, GraphFormat::Dot, out), Error);
    }
    SUBCASE("unknown format name is a config error") {
        CHECK_THROWS_AS(parse_graph_format("yaml"), Error);
    }
    SUBCASE("edge csv round-trips through the reader") {
        std::ostringstream out;
        export_people_graph(g, GraphFormat::EdgeCsv, out);
        std::istringstream in(out.str());
        PeopleGraph back = read_people_edge_csv(in);
        REQUIRE(back.node_count() == 2);
        CHECK(back.titles[0] == "Alpha");
        REQUIRE(back.edges.size() == 1);
        CHECK(back.edges[0].weight == 3);
    }
}

TEST_CASE("sha256 digests") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
