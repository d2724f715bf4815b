#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "chronograph/betweenness.hpp"
#include "chronograph/error.hpp"
#include "chronograph/fetch.hpp"
#include "chronograph/gender.hpp"
#include "chronograph/graph_io.hpp"
#include "chronograph/index_builder.hpp"
#include "chronograph/news.hpp"
#include "chronograph/pagerank.hpp"
#include "chronograph/people_graph.hpp"
#include "chronograph/person.hpp"
#include "chronograph/pipeline.hpp"
#include "chronograph/ranking.hpp"
#include "chronograph/rules.hpp"
#include "chronograph/strings.hpp"

namespace fs = std::filesystem;
using namespace chronograph;

namespace {

struct IngestArgs {
    std::string dump, lang = "en", rules, out, gender_lexicon, format = "auto";
    bool strict = false;
    int threads = 0;
};

int cmd_ingest(const IngestArgs& a) {
    LangRules rules = LangRules::load(a.rules);
    SourceOptions sopts;
    sopts.strict = a.strict;
    sopts.category_prefixes = rules.category_prefixes();
    if (a.format == "xml") sopts.format = DumpFormat::Xml;
    if (a.format == "jsonl") sopts.format = DumpFormat::Jsonl;
    auto source = open_dump(a.dump, sopts);

    BuildOptions bopts;
    bopts.threads = a.threads;
    GenderLexicon lexicon;
    if (!a.gender_lexicon.empty()) {
        lexicon = GenderLexicon::load(a.gender_lexicon);
        bopts.gender_lexicon = &lexicon;
    }
    BuiltIndex built = build_people_index(*source, rules, bopts);
    AtomicFile file(a.out);
    write_index(built.people, file.stream());
    file.commit();
    std::cerr << "ingested " << built.report.pages_seen << " pages, " << built.report.persons
              << " persons (" << built.report.undated_persons << " undated), "
              << built.report.redirects << " redirects\n";
    return 0;
}

struct GraphArgs {
    std::string index, out_dir;
    Year slice_from = 0, slice_to = 0;
    int slice_step = 1;
    std::string formats = "csv,graphml,dot";
    int threads = 0;
};

int cmd_graph(const GraphArgs& a) {
    PeopleIndex index = read_index_file(a.index);
    PeopleGraph graph = build_full_graph(index, a.threads);
    std::cerr << "full graph: " << graph.node_count() << " nodes, " << graph.edges.size()
              << " edges\n";

    std::vector<GraphFormat> formats;
    std::stringstream ss(a.formats);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) formats.push_back(parse_graph_format(trim(item)));
    }
    for (GraphFormat f : formats) {
        std::string path = (fs::path(a.out_dir) /
                            (std::string("full_graph.") + graph_format_extension(f)))
                               .string();
        AtomicFile file(path);
        export_people_graph(graph, f, file.stream());
        file.commit();
    }
    if (a.slice_from != 0 || a.slice_to != 0) {
        std::size_t nonempty = 0;
        for_each_slice(graph, a.slice_from, a.slice_to, a.slice_step,
                       [&](Year y, const PeopleGraph& slice) {
                           if (slice.node_count() == 0) return;
                           ++nonempty;
                           for (GraphFormat f : formats) {
                               std::string path =
                                   (fs::path(a.out_dir) /
                                    ("slice_" + std::to_string(y) + "." +
                                     graph_format_extension(f)))
                                       .string();
                               AtomicFile file(path);
                               export_people_graph(slice, f, file.stream());
                               file.commit();
                           }
                       });
        std::cerr << "wrote " << nonempty << " nonempty slices\n";
    }
    return 0;
}

struct RankArgs {
    std::string graph, index, categories, sphere, out;
    std::size_t top = 50;
    double damping = 0.85, epsilon = 1e-10;
    int max_iter = 200;
    int threads = 0;
};

int cmd_rank(const RankArgs& a) {
    PeopleIndex index;
    const PeopleIndex* index_ptr = nullptr;
    if (!a.index.empty()) {
        index = read_index_file(a.index);
        index_ptr = &index;
    }
    std::ifstream in(a.graph, std::ios::binary);
    if (!in) throw Error(ErrorKind::Input, "cannot open graph file: " + a.graph);
    PeopleGraph graph = read_people_edge_csv(in, index_ptr);

    CategoryRules categories;
    SphereRules sphere;
    const CategoryRules* cat_ptr = nullptr;
    const SphereRules* sphere_ptr = nullptr;
    if (!a.categories.empty()) {
        categories = CategoryRules::load(a.categories);
        cat_ptr = &categories;
    }
    if (!a.sphere.empty()) {
        sphere = SphereRules::load(a.sphere);
        sphere_ptr = &sphere;
    }
    PagerankOptions opts{a.damping, a.epsilon, a.max_iter, a.threads};
    std::vector<RankingEntry> entries = top_k(graph, a.top, opts, cat_ptr, sphere_ptr);
    if (sphere_ptr) {
        GroupStats stats = ingroup_fraction(entries, sphere);
        std::cerr << "in-group: " << stats.in_group_count << "/" << entries.size() << " = "
                  << stats.fraction << "\n";
    }
    AtomicFile file(a.out);
    write_rankings_csv(entries, file.stream());
    file.commit();
    return 0;
}

struct GenderArgs {
    std::string index, lexicon, out, validate;
    std::vector<Year> timeseries;  // FROM TO
    std::size_t top_k = 0;
    double damping = 0.85;
    int threads = 0;
};

int cmd_gender(const GenderArgs& a) {
    if (!a.validate.empty()) {
        GenderLexicon lexicon = GenderLexicon::load(a.lexicon);
        double accuracy = validate_accuracy(read_labeled_texts(a.validate), lexicon);
        std::cout << "accuracy," << accuracy << "\n";
        if (a.timeseries.empty()) return 0;
    }
    if (a.timeseries.empty()) {
        throw Error(ErrorKind::Config, "gender: nothing to do (pass --timeseries or --validate)");
    }
    PeopleIndex index = read_index_file(a.index);
    std::vector<GenderPoint> series;
    if (a.top_k > 0) {
        // population restricted to the top-K ranked persons per year slice
        PeopleGraph graph = build_full_graph(index, a.threads);
        PagerankOptions opts;
        opts.damping = a.damping;
        opts.threads = a.threads;
        for (Year y : slice_years(a.timeseries[0], a.timeseries[1], 1)) {
            PeopleGraph slice = build_slice(graph, y);
            GenderPoint p;
            p.year = y;
            if (slice.node_count() > 0) {
                std::uint32_t female = 0, known = 0;
                for (const RankingEntry& e : top_k(slice, a.top_k, opts)) {
                    auto id = slice.node_id(e.title);
                    Gender g = slice.genders[*id];
                    if (g == Gender::Unknown) continue;
                    ++known;
                    if (g == Gender::Female) ++female;
                }
                p.population = known;
                if (known > 0) p.percent_female = 100.0 * female / known;
            }
            series.push_back(p);
        }
    } else {
        series = gender_timeseries(index, a.timeseries[0], a.timeseries[1]);
    }
    AtomicFile file(a.out);
    write_timeseries_csv(series, file.stream());
    file.commit();
    return 0;
}

struct NewsArgs {
    std::string listing, articles, lexicon, out_dir, lang = "en";
    std::size_t top = 20;
    int year = 0;
    int threads = 0;
};

int cmd_news(const NewsArgs& a) {
    std::ifstream in(a.listing, std::ios::binary);
    if (!in) throw Error(ErrorKind::Input, "cannot open listing: " + a.listing);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::vector<NewsAnchor> anchors = parse_news_index(buf.str(), a.lang, a.year);
    NewsGraph graph = build_news_network(anchors);
    std::cerr << "news network: " << anchors.size() << " anchors, " << graph.node_count()
              << " nodes, " << graph.edges.size() << " edges\n";

    SentimentLexicon lexicon = SentimentLexicon::load(a.lexicon);
    std::map<std::string, TextScores> scores;
    for (const std::string& title : graph.titles) {
        fs::path p = fs::path(a.articles) / (percent_encode(title) + ".txt");
        if (!fs::exists(p)) continue;
        std::ifstream art(p, std::ios::binary);
        std::ostringstream text;
        text << art.rdbuf();
        if (text.str().empty()) continue;
        scores.emplace(title, score_text(text.str(), lexicon));
    }

    std::vector<double> bc = betweenness(graph.adjacency(), a.threads);
    NewsGraphAttrs attrs;
    attrs.scores = scores.empty() ? nullptr : &scores;
    attrs.betweenness = &bc;
    for (GraphFormat f : {GraphFormat::EdgeCsv, GraphFormat::GraphMl}) {
        std::string path = (fs::path(a.out_dir) /
                            (std::string("news_graph.") + graph_format_extension(f)))
                               .string();
        AtomicFile file(path);
        export_news_graph(graph, f, file.stream(), attrs);
        file.commit();
    }
    NewsReport report = aggregate_scores(graph, scores, a.lang, a.top, a.threads);
    {
        AtomicFile file((fs::path(a.out_dir) / "report.csv").string());
        write_news_report_csv(report, file.stream());
        file.commit();
    }
    {
        AtomicFile file((fs::path(a.out_dir) / "betweenness.csv").string());
        write_betweenness_csv(report, file.stream());
        file.commit();
    }
    return 0;
}

struct FetchArgs {
    std::string titles, out, base_url, lang = "en";
    double rps = 2.0;
    int concurrency = 2;
};

int cmd_fetch(const FetchArgs& a) {
    FetchOptions opts;
    opts.base_url = a.base_url;
    opts.lang = a.lang;
    opts.out_dir = a.out;
    opts.requests_per_second = a.rps;
    opts.concurrency = a.concurrency;
    FetchReport report = fetch_articles(read_title_list(a.titles), opts);
    std::cerr << "fetched " << report.fetched << ", cached " << report.cached << ", failed "
              << report.failed << "\n";
    return report.failed == 0 ? 0 : 4;
}

struct RunArgs {
    std::string config, stages, out_dir, dump;
    int threads = -1;
};

int cmd_run(const RunArgs& a) {
    PipelineConfig config = PipelineConfig::load(a.config);
    if (!a.out_dir.empty()) config.out_dir = a.out_dir;
    if (!a.dump.empty()) config.dump = a.dump;
    if (a.threads >= 0) config.threads = a.threads;

    std::set<std::string> stages;
    if (!a.stages.empty()) {
        std::stringstream ss(a.stages);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (!item.empty()) stages.insert(item);
        }
    }
    run_pipeline(config, stages);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chronograph: historical people networks and news analysis from wiki dumps"};
    app.require_subcommand(1);

    IngestArgs ia;
    auto* ingest = app.add_subcommand("ingest", "parse a dump into a people index");
    ingest->add_option("--dump", ia.dump, "dump file (XML or JSONL, optionally gzip)")->required();
    ingest->add_option("--lang", ia.lang, "language code");
    ingest->add_option("--rules", ia.rules, "detection/date rules JSON")->required();
    ingest->add_option("--out", ia.out, "output index JSONL")->required();
    ingest->add_option("--gender-lexicon", ia.gender_lexicon, "classify gender during ingest");
    ingest->add_option("--format", ia.format, "auto|xml|jsonl")
        ->check(CLI::IsMember({"auto", "xml", "jsonl"}));
    ingest->add_flag("--strict", ia.strict, "abort on bad records");
    ingest->add_option("--threads", ia.threads, "worker threads (0 = auto)");

    GraphArgs ga;
    auto* graph = app.add_subcommand("graph", "build the lifetime-filtered graph and slices");
    graph->add_option("--index", ga.index, "people index JSONL")->required();
    graph->add_option("--out-dir", ga.out_dir, "output directory")->required();
    graph->add_option("--slice-from", ga.slice_from, "first slice year");
    graph->add_option("--slice-to", ga.slice_to, "last slice year");
    graph->add_option("--slice-step", ga.slice_step, "slice step in years");
    graph->add_option("--formats", ga.formats, "comma list of csv,graphml,dot");
    graph->add_option("--threads", ga.threads, "worker threads (0 = auto)");

    RankArgs ra;
    auto* rank = app.add_subcommand("rank", "PageRank/indegree rankings for a graph");
    rank->add_option("--graph", ra.graph, "edge CSV of the graph")->required();
    rank->add_option("--index", ra.index, "people index (for categories/spheres)");
    rank->add_option("--top", ra.top, "list length");
    rank->add_option("--damping", ra.damping, "PageRank damping factor");
    rank->add_option("--epsilon", ra.epsilon, "convergence threshold (L1)");
    rank->add_option("--max-iter", ra.max_iter, "iteration cap");
    rank->add_option("--categories", ra.categories, "category rules JSON");
    rank->add_option("--sphere", ra.sphere, "language-sphere rules JSON");
    rank->add_option("--out", ra.out, "output rankings CSV")->required();
    rank->add_option("--threads", ra.threads, "worker threads (0 = auto)");

    GenderArgs gea;
    auto* gender = app.add_subcommand("gender", "gender validation and time series");
    gender->add_option("--index", gea.index, "people index JSONL");
    gender->add_option("--lexicon", gea.lexicon, "gender lexicon JSON");
    gender->add_option("--timeseries", gea.timeseries, "FROM TO (years)")->expected(2);
    gender->add_option("--validate", gea.validate, "labeled JSONL set to score");
    gender->add_option("--out", gea.out, "output CSV");
    gender->add_option("--top-k", gea.top_k, "restrict population to top-K per year slice");
    gender->add_option("--damping", gea.damping, "PageRank damping for --top-k");
    gender->add_option("--threads", gea.threads, "worker threads (0 = auto)");

    NewsArgs na;
    auto* news = app.add_subcommand("news", "news co-occurrence network and text scores");
    news->require_subcommand(0, 1);
    news->add_option("--listing", na.listing, "news listing wikitext file");
    news->add_option("--articles", na.articles, "directory of article texts");
    news->add_option("--lexicon", na.lexicon, "sentiment lexicon JSON");
    news->add_option("--top", na.top, "top-K betweenness table length");
    news->add_option("--out-dir", na.out_dir, "output directory");
    news->add_option("--lang", na.lang, "language code");
    news->add_option("--year", na.year, "default year for headings without one");
    news->add_option("--threads", na.threads, "worker threads (0 = auto)");

    FetchArgs fa;
    auto* fetch = news->add_subcommand("fetch", "download article texts");
    fetch->add_option("--titles", fa.titles, "file with one title per line")->required();
    fetch->add_option("--out", fa.out, "output directory")->required();
    fetch->add_option("--rps", fa.rps, "request rate limit per second");
    fetch->add_option("--lang", fa.lang, "language code");
    fetch->add_option("--base-url", fa.base_url, "endpoint override");
    fetch->add_option("--concurrency", fa.concurrency, "parallel connections");

    RunArgs ru;
    auto* run = app.add_subcommand("run", "run the staged pipeline from a config");
    run->add_option("--config", ru.config, "pipeline config JSON")->required();
    run->add_option("--stages", ru.stages, "comma list (default: all)");
    run->add_option("--out-dir", ru.out_dir, "override out_dir");
    run->add_option("--dump", ru.dump, "override dump path");
    run->add_option("--threads", ru.threads, "override worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (ingest->parsed()) return cmd_ingest(ia);
        if (graph->parsed()) return cmd_graph(ga);
        if (rank->parsed()) return cmd_rank(ra);
        if (gender->parsed()) return cmd_gender(gea);
        if (news->parsed()) {
            if (fetch->parsed()) return cmd_fetch(fa);
            if (na.listing.empty() || na.articles.empty() || na.lexicon.empty() ||
                na.out_dir.empty()) {
                std::cerr << "error: news requires --listing, --articles, --lexicon, --out-dir\n";
                return 2;
            }
            return cmd_news(na);
        }
        if (run->parsed()) return cmd_run(ru);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
