#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chronograph/pagerank.hpp"
#include "chronograph/year.hpp"

namespace chronograph {

// Writes to <final>.tmp.<pid> and renames on commit, so a killed process
// never leaves a partial file under the final name.
class AtomicFile {
  public:
    explicit AtomicFile(const std::string& final_path);
    ~AtomicFile();

    AtomicFile(const AtomicFile&) = delete;
    AtomicFile& operator=(const AtomicFile&) = delete;

    std::ostream& stream();
    void commit();
    const std::string& path() const { return final_path_; }

  private:
    struct Impl;
    Impl* impl_;
    std::string final_path_;
};

// flock-based exclusive lock: one pipeline process per output directory.
class DirLock {
  public:
    explicit DirLock(const std::string& dir);
    ~DirLock();

    DirLock(const DirLock&) = delete;
    DirLock& operator=(const DirLock&) = delete;

  private:
    int fd_ = -1;
    std::string path_;
};

struct SliceRange {
    Year from = kSliceMin;
    Year to = kSliceMax;
    int step = 1;
};

struct PipelineConfig {
    std::string lang = "en";
    std::string out_dir;

    // stage inputs; later stages default to earlier stages' outputs
    std::string dump;
    std::string rules;
    std::string index;      // override: path of an existing index
    std::string graph_csv;  // override: path of an existing full-graph CSV
    bool strict = false;

    std::string gender_lexicon;
    std::optional<SliceRange> slices;

    std::size_t top_k = 50;
    PagerankOptions pagerank;
    std::string category_rules;
    std::string sphere_rules;

    std::optional<std::pair<Year, Year>> gender_range;
    std::string gender_validate;  // optional labeled JSONL

    std::string news_listing;
    std::string news_articles;
    std::string news_lexicon;
    std::size_t news_top = 20;
    int news_year = 0;

    int threads = 0;

    // Rejects unknown keys anywhere in the document.
    static PipelineConfig load(const std::string& path);
    static PipelineConfig from_json_text(const std::string& text, const std::string& origin);
};

const std::vector<std::string>& all_stages();  // dependency order

struct StageOutcome {
    std::string name;
    double seconds = 0.0;
};

// Runs the requested stages in dependency order, validating every referenced
// path first. Each artifact is written atomically; a JSON manifest with
// input/output digests lands in out_dir last.
void run_pipeline(const PipelineConfig& config, const std::set<std::string>& stages,
                  std::vector<StageOutcome>* outcomes = nullptr);

}  // namespace chronograph
