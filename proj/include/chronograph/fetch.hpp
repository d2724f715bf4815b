#pragma once

#include <string>
#include <vector>

namespace chronograph {

struct FetchOptions {
    // Default endpoint is https://<lang>.wikipedia.org; tests point this at
    // a local server.
    std::string base_url;
    std::string lang = "en";
    // Raw-wikitext render endpoint; {title} is replaced percent-encoded.
    std::string path_template = "/w/index.php?title={title}&action=raw";
    std::string out_dir;
    double requests_per_second = 2.0;
    int concurrency = 2;
    bool skip_existing = true;  // cache on disk
};

struct FetchReport {
    std::size_t fetched = 0;
    std::size_t cached = 0;
    std::size_t failed = 0;
};

// Downloads each title's text into <out_dir>/<percent-encoded title>.txt.
// Requests are rate-limited across workers.
FetchReport fetch_articles(const std::vector<std::string>& titles, const FetchOptions& opts);

std::vector<std::string> read_title_list(const std::string& path);

}  // namespace chronograph
