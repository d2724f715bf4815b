#include "chronograph/pipeline.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "chronograph/digest.hpp"
#include "chronograph/error.hpp"
#include "chronograph/gender.hpp"
#include "chronograph/graph_io.hpp"
#include "chronograph/index_builder.hpp"
#include "chronograph/news.hpp"
#include "chronograph/person.hpp"
#include "chronograph/ranking.hpp"
#include "chronograph/rules.hpp"
#include "chronograph/strings.hpp"

namespace chronograph {

namespace fs = std::filesystem;
using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// AtomicFile / DirLock

struct AtomicFile::Impl {
    std::string tmp_path;
    std::ofstream out;
    bool committed = false;
};

AtomicFile::AtomicFile(const std::string& final_path)
    : impl_(new Impl), final_path_(final_path) {
    fs::path parent = fs::path(final_path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    impl_->tmp_path = final_path + ".tmp." + std::to_string(::getpid());
    impl_->out.open(impl_->tmp_path, std::ios::binary | std::ios::trunc);
    if (!impl_->out) {
        std::string tmp = impl_->tmp_path;
        delete impl_;
        throw Error(ErrorKind::Stage, "cannot create temporary file: " + tmp);
    }
}

AtomicFile::~AtomicFile() {
    if (!impl_->committed) {
        impl_->out.close();
        std::error_code ec;
        fs::remove(impl_->tmp_path, ec);
    }
    delete impl_;
}

std::ostream& AtomicFile::stream() { return impl_->out; }

void AtomicFile::commit() {
    impl_->out.flush();
    if (!impl_->out) {
        throw Error(ErrorKind::Stage, "write failed: " + impl_->tmp_path);
    }
    impl_->out.close();
    std::error_code ec;
    fs::rename(impl_->tmp_path, final_path_, ec);
    if (ec) {
        throw Error(ErrorKind::Stage,
                    "cannot move " + impl_->tmp_path + " to " + final_path_ + ": " + ec.message());
    }
    impl_->committed = true;
}

DirLock::DirLock(const std::string& dir) {
    fs::create_directories(dir);
    path_ = (fs::path(dir) / ".chronograph.lock").string();
    fd_ = ::open(path_.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ < 0) {
        throw Error(ErrorKind::Stage, "cannot open lock file: " + path_);
    }
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
        ::close(fd_);
        fd_ = -1;
        throw Error(ErrorKind::Stage,
                    "output directory is locked by another run: " + path_);
    }
}

DirLock::~DirLock() {
    if (fd_ >= 0) {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
}

// ---------------------------------------------------------------------------
// Config

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) {
            throw Error(ErrorKind::Config, "unknown config key \"" + where + key + "\"");
        }
    }
}

}  // namespace

PipelineConfig PipelineConfig::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Config, "cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str(), path);
}

PipelineConfig PipelineConfig::from_json_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::Config, origin + ": " + e.what());
    }
    if (!j.is_object()) throw Error(ErrorKind::Config, origin + ": config must be an object");

    reject_unknown_keys(j,
                        {"lang", "out_dir", "dump", "rules", "index", "graph_csv", "strict",
                         "gender_lexicon", "slices", "rank", "gender_timeseries",
                         "gender_validate", "news", "threads"},
                        "");

    PipelineConfig c;
    c.lang = j.value("lang", "en");
    c.out_dir = j.value("out_dir", "");
    c.dump = j.value("dump", "");
    c.rules = j.value("rules", "");
    c.index = j.value("index", "");
    c.graph_csv = j.value("graph_csv", "");
    c.strict = j.value("strict", false);
    c.gender_lexicon = j.value("gender_lexicon", "");
    c.threads = j.value("threads", 0);

    if (j.contains("slices")) {
        const json& s = j.at("slices");
        reject_unknown_keys(s, {"from", "to", "step"}, "slices.");
        SliceRange r;
        r.from = s.value("from", kSliceMin);
        r.to = s.value("to", kSliceMax);
        r.step = s.value("step", 1);
        c.slices = r;
    }
    if (j.contains("rank")) {
        const json& r = j.at("rank");
        reject_unknown_keys(r, {"top", "damping", "epsilon", "max_iter", "categories", "sphere"},
                            "rank.");
        c.top_k = r.value("top", std::size_t{50});
        c.pagerank.damping = r.value("damping", 0.85);
        c.pagerank.epsilon = r.value("epsilon", 1e-10);
        c.pagerank.max_iter = r.value("max_iter", 200);
        c.category_rules = r.value("categories", "");
        c.sphere_rules = r.value("sphere", "");
    }
    if (j.contains("gender_timeseries")) {
        const json& g = j.at("gender_timeseries");
        reject_unknown_keys(g, {"from", "to"}, "gender_timeseries.");
        c.gender_range = {g.value("from", Year{1900}), g.value("to", Year{1950})};
    }
    c.gender_validate = j.value("gender_validate", "");
    if (j.contains("news")) {
        const json& n = j.at("news");
        reject_unknown_keys(n, {"listing", "articles", "lexicon", "top", "year"}, "news.");
        c.news_listing = n.value("listing", "");
        c.news_articles = n.value("articles", "");
        c.news_lexicon = n.value("lexicon", "");
        c.news_top = n.value("top", std::size_t{20});
        c.news_year = n.value("year", 0);
    }
    if (c.pagerank.damping <= 0.0 || c.pagerank.damping >= 1.0) {
        throw Error(ErrorKind::Config, "rank.damping must lie in (0,1)");
    }
    return c;
}

const std::vector<std::string>& all_stages() {
    static const std::vector<std::string> stages = {"ingest", "graph", "rank", "gender", "news"};
    return stages;
}

// ---------------------------------------------------------------------------
// Pipeline run

namespace {

struct FileDigest {
    std::string path;
    std::string sha256;
};

struct StageRecord {
    std::string name;
    ordered_json params = ordered_json::object();
    std::vector<FileDigest> inputs;
    std::vector<FileDigest> outputs;
    double seconds = 0.0;
};

std::string utc_now() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void require_file(const std::string& path, const std::string& what) {
    if (path.empty()) {
        throw Error(ErrorKind::Config, "missing config path for " + what);
    }
    if (!fs::exists(path)) {
        throw Error(ErrorKind::Input, what + " not found: " + path);
    }
}

class Runner {
  public:
    Runner(const PipelineConfig& config, std::set<std::string> stages)
        : cfg_(config), stages_(std::move(stages)) {
        if (cfg_.out_dir.empty()) {
            throw Error(ErrorKind::Config, "out_dir is required");
        }
        for (const std::string& s : stages_) {
            if (std::find(all_stages().begin(), all_stages().end(), s) == all_stages().end()) {
                throw Error(ErrorKind::Config, "unknown stage \"" + s + "\"");
            }
        }
        index_path_ = cfg_.index.empty() ? out("index.jsonl") : cfg_.index;
        graph_csv_path_ = cfg_.graph_csv.empty() ? out("graph/full_graph.csv") : cfg_.graph_csv;
    }

    void run(std::vector<StageOutcome>* outcomes) {
        validate();
        DirLock lock(cfg_.out_dir);
        for (const std::string& stage : all_stages()) {
            if (!stages_.count(stage)) continue;
            StageRecord record;
            record.name = stage;
            auto t0 = std::chrono::steady_clock::now();
            try {
                if (stage == "ingest") run_ingest(record);
                if (stage == "graph") run_graph(record);
                if (stage == "rank") run_rank(record);
                if (stage == "gender") run_gender(record);
                if (stage == "news") run_news(record);
            } catch (const Error& e) {
                throw Error(ErrorKind::Stage, "stage " + stage + " failed: " + e.what());
            }
            record.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            std::cerr << "stage " << stage << " done in " << record.seconds << "s\n";
            if (outcomes) outcomes->push_back({record.name, record.seconds});
            records_.push_back(std::move(record));
        }
        write_manifest();
    }

  private:
    std::string out(const std::string& rel) const {
        return (fs::path(cfg_.out_dir) / rel).string();
    }

    // All referenced paths are checked before any stage runs.
    void validate() {
        if (stages_.count("ingest")) {
            require_file(cfg_.dump, "dump");
            require_file(cfg_.rules, "rules file");
            if (!cfg_.gender_lexicon.empty()) require_file(cfg_.gender_lexicon, "gender lexicon");
        }
        bool makes_index = stages_.count("ingest");
        if ((stages_.count("graph") || stages_.count("gender") || stages_.count("rank")) &&
            !makes_index) {
            require_file(index_path_, "people index");
        }
        if (stages_.count("rank")) {
            if (!stages_.count("graph")) require_file(graph_csv_path_, "graph file");
            if (!cfg_.category_rules.empty()) require_file(cfg_.category_rules, "category rules");
            if (!cfg_.sphere_rules.empty()) require_file(cfg_.sphere_rules, "sphere rules");
        }
        if (stages_.count("gender") && !cfg_.gender_validate.empty()) {
            require_file(cfg_.gender_validate, "labeled gender set");
        }
        if (stages_.count("news")) {
            require_file(cfg_.news_listing, "news listing");
            require_file(cfg_.news_lexicon, "sentiment lexicon");
            require_file(cfg_.news_articles, "articles directory");
        }
    }

    void add_input(StageRecord& r, const std::string& path) {
        r.inputs.push_back({path, sha256_file_hex(path)});
    }
    void add_output(StageRecord& r, const std::string& path) {
        r.outputs.push_back({path, sha256_file_hex(path)});
    }

    PeopleIndex load_index() { return read_index_file(index_path_); }

    void run_ingest(StageRecord& r) {
        add_input(r, cfg_.dump);
        add_input(r, cfg_.rules);
        LangRules rules = LangRules::load(cfg_.rules);
        SourceOptions sopts;
        sopts.strict = cfg_.strict;
        sopts.category_prefixes = rules.category_prefixes();
        auto source = open_dump(cfg_.dump, sopts);

        BuildOptions bopts;
        bopts.threads = cfg_.threads;
        GenderLexicon lexicon;
        if (!cfg_.gender_lexicon.empty()) {
            add_input(r, cfg_.gender_lexicon);
            lexicon = GenderLexicon::load(cfg_.gender_lexicon);
            bopts.gender_lexicon = &lexicon;
        }
        BuiltIndex built = build_people_index(*source, rules, bopts);
        r.params["pages"] = built.report.pages_seen;
        r.params["persons"] = built.report.persons;
        r.params["redirects"] = built.report.redirects;
        r.params["undated"] = built.report.undated_persons;

        AtomicFile file(index_path_);
        write_index(built.people, file.stream());
        file.commit();
        add_output(r, index_path_);
    }

    void run_graph(StageRecord& r) {
        add_input(r, index_path_);
        PeopleIndex index = load_index();
        PeopleGraph graph = build_full_graph(index, cfg_.threads);
        r.params["nodes"] = graph.node_count();
        r.params["edges"] = graph.edges.size();

        for (GraphFormat f : {GraphFormat::EdgeCsv, GraphFormat::GraphMl, GraphFormat::Dot}) {
            std::string path = out(std::string("graph/full_graph.") + graph_format_extension(f));
            if (f == GraphFormat::EdgeCsv) path = graph_csv_path_;
            AtomicFile file(path);
            export_people_graph(graph, f, file.stream());
            file.commit();
            add_output(r, path);
        }
        if (cfg_.slices) {
            std::size_t count = 0, nonempty = 0;
            for_each_slice(graph, cfg_.slices->from, cfg_.slices->to, cfg_.slices->step,
                           [&](Year y, const PeopleGraph& slice) {
                               ++count;
                               if (slice.node_count() == 0) return;
                               ++nonempty;
                               std::string path =
                                   out("graph/slice_" + std::to_string(y) + ".csv");
                               AtomicFile file(path);
                               export_people_graph(slice, GraphFormat::EdgeCsv, file.stream());
                               file.commit();
                               add_output(r, path);
                           });
            r.params["slices"] = count;
            r.params["nonempty_slices"] = nonempty;
        }
    }

    void run_rank(StageRecord& r) {
        add_input(r, graph_csv_path_);
        PeopleIndex index;
        const PeopleIndex* index_ptr = nullptr;
        if (fs::exists(index_path_)) {
            add_input(r, index_path_);
            index = load_index();
            index_ptr = &index;
        }
        std::ifstream in(graph_csv_path_, std::ios::binary);
        if (!in) throw Error(ErrorKind::Input, "cannot open graph file: " + graph_csv_path_);
        PeopleGraph graph = read_people_edge_csv(in, index_ptr);

        CategoryRules categories;
        SphereRules sphere;
        const CategoryRules* cat_ptr = nullptr;
        const SphereRules* sphere_ptr = nullptr;
        if (!cfg_.category_rules.empty()) {
            add_input(r, cfg_.category_rules);
            categories = CategoryRules::load(cfg_.category_rules);
            cat_ptr = &categories;
        }
        if (!cfg_.sphere_rules.empty()) {
            add_input(r, cfg_.sphere_rules);
            sphere = SphereRules::load(cfg_.sphere_rules);
            sphere_ptr = &sphere;
        }
        PagerankOptions popts = cfg_.pagerank;
        popts.threads = cfg_.threads;
        std::vector<RankingEntry> entries = top_k(graph, cfg_.top_k, popts, cat_ptr, sphere_ptr);
        if (sphere_ptr) {
            GroupStats stats = ingroup_fraction(entries, sphere);
            r.params["in_group"] = stats.in_group_count;
            r.params["in_group_fraction"] = stats.fraction;
        }
        r.params["top"] = cfg_.top_k;
        r.params["damping"] = cfg_.pagerank.damping;

        std::string path = out("rankings.csv");
        AtomicFile file(path);
        write_rankings_csv(entries, file.stream());
        file.commit();
        add_output(r, path);
    }

    void run_gender(StageRecord& r) {
        add_input(r, index_path_);
        PeopleIndex index = load_index();
        if (!cfg_.gender_validate.empty()) {
            add_input(r, cfg_.gender_validate);
            if (cfg_.gender_lexicon.empty()) {
                throw Error(ErrorKind::Config, "gender_validate requires gender_lexicon");
            }
            add_input(r, cfg_.gender_lexicon);
            GenderLexicon lexicon = GenderLexicon::load(cfg_.gender_lexicon);
            double accuracy =
                validate_accuracy(read_labeled_texts(cfg_.gender_validate), lexicon);
            r.params["validation_accuracy"] = accuracy;
        }
        auto [from, to] = cfg_.gender_range.value_or(std::pair<Year, Year>{1900, 1950});
        std::vector<GenderPoint> series = gender_timeseries(index, from, to);
        r.params["from"] = from;
        r.params["to"] = to;

        std::string path = out("gender_timeseries.csv");
        AtomicFile file(path);
        write_timeseries_csv(series, file.stream());
        file.commit();
        add_output(r, path);
    }

    void run_news(StageRecord& r) {
        add_input(r, cfg_.news_listing);
        add_input(r, cfg_.news_lexicon);
        std::ifstream in(cfg_.news_listing, std::ios::binary);
        if (!in) throw Error(ErrorKind::Input, "cannot open listing: " + cfg_.news_listing);
        std::ostringstream buf;
        buf << in.rdbuf();
        std::vector<NewsAnchor> anchors = parse_news_index(buf.str(), cfg_.lang, cfg_.news_year);
        NewsGraph graph = build_news_network(anchors);
        r.params["anchors"] = anchors.size();
        r.params["nodes"] = graph.node_count();
        r.params["edges"] = graph.edges.size();

        SentimentLexicon lexicon = SentimentLexicon::load(cfg_.news_lexicon);
        std::map<std::string, TextScores> scores;
        if (!cfg_.news_articles.empty()) {
            for (const std::string& title : graph.titles) {
                fs::path p = fs::path(cfg_.news_articles) / (percent_encode(title) + ".txt");
                if (!fs::exists(p)) continue;
                std::ifstream art(p, std::ios::binary);
                std::ostringstream text;
                text << art.rdbuf();
                if (text.str().empty()) continue;
                scores.emplace(title, score_text(text.str(), lexicon));
            }
        }
        r.params["scored"] = scores.size();

        std::vector<double> bc = betweenness(graph.adjacency(), cfg_.threads);
        NewsGraphAttrs attrs;
        attrs.scores = scores.empty() ? nullptr : &scores;
        attrs.betweenness = &bc;
        for (GraphFormat f : {GraphFormat::EdgeCsv, GraphFormat::GraphMl}) {
            std::string path = out(std::string("news/news_graph.") + graph_format_extension(f));
            AtomicFile file(path);
            export_news_graph(graph, f, file.stream(), attrs);
            file.commit();
            add_output(r, path);
        }

        NewsReport report =
            aggregate_scores(graph, scores, cfg_.lang, cfg_.news_top, cfg_.threads);
        {
            std::string path = out("news/report.csv");
            AtomicFile file(path);
            write_news_report_csv(report, file.stream());
            file.commit();
            add_output(r, path);
        }
        {
            std::string path = out("news/betweenness.csv");
            AtomicFile file(path);
            write_betweenness_csv(report, file.stream());
            file.commit();
            add_output(r, path);
        }
    }

    void write_manifest() {
        ordered_json m;
        m["tool"] = "chronograph";
        m["created_utc"] = utc_now();
        m["lang"] = cfg_.lang;
        ordered_json stages = ordered_json::array();
        for (const StageRecord& rec : records_) {
            ordered_json s;
            s["name"] = rec.name;
            s["params"] = rec.params;
            ordered_json ins = ordered_json::array(), outs = ordered_json::array();
            for (const FileDigest& f : rec.inputs) {
                ins.push_back({{"path", f.path}, {"sha256", f.sha256}});
            }
            for (const FileDigest& f : rec.outputs) {
                outs.push_back({{"path", f.path}, {"sha256", f.sha256}});
            }
            s["inputs"] = std::move(ins);
            s["outputs"] = std::move(outs);
            s["seconds"] = rec.seconds;
            stages.push_back(std::move(s));
        }
        m["stages"] = std::move(stages);
        AtomicFile file(out("manifest.json"));
        file.stream() << m.dump(2) << '\n';
        file.commit();
    }

    const PipelineConfig& cfg_;
    std::set<std::string> stages_;
    std::string index_path_;
    std::string graph_csv_path_;
    std::vector<StageRecord> records_;
};

}  // namespace

void run_pipeline(const PipelineConfig& config, const std::set<std::string>& stages,
                  std::vector<StageOutcome>* outcomes) {
    Runner runner(config, stages.empty()
                              ? std::set<std::string>(all_stages().begin(), all_stages().end())
                              : stages);
    runner.run(outcomes);
}

}  // namespace chronograph
