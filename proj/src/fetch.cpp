#include "chronograph/fetch.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "chronograph/error.hpp"
#include "chronograph/pipeline.hpp"
#include "chronograph/strings.hpp"

namespace chronograph {

namespace fs = std::filesystem;

namespace {

// Shared token-interval limiter: request starts are spaced 1/rps apart
// across all workers.
class RateLimiter {
  public:
    explicit RateLimiter(double rps)
        : interval_(rps > 0 ? 1.0 / rps : 0.0), next_(std::chrono::steady_clock::now()) {}

    void wait() {
        std::chrono::steady_clock::time_point slot;
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto now = std::chrono::steady_clock::now();
            if (next_ < now) next_ = now;
            slot = next_;
            next_ += std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                std::chrono::duration<double>(interval_));
        }
        std::this_thread::sleep_until(slot);
    }

  private:
    std::mutex mu_;
    double interval_;
    std::chrono::steady_clock::time_point next_;
};

std::string replace_all(std::string s, const std::string& needle, const std::string& with) {
    std::size_t pos = 0;
    while ((pos = s.find(needle, pos)) != std::string::npos) {
        s.replace(pos, needle.size(), with);
        pos += with.size();
    }
    return s;
}

}  // namespace

std::vector<std::string> read_title_list(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Input, "cannot open title list: " + path);
    std::vector<std::string> titles;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (!t.empty()) titles.push_back(std::move(t));
    }
    return titles;
}

FetchReport fetch_articles(const std::vector<std::string>& titles, const FetchOptions& opts) {
    if (opts.out_dir.empty()) throw Error(ErrorKind::Config, "fetch: out_dir is required");
    fs::create_directories(opts.out_dir);

    std::string base = opts.base_url.empty()
                           ? "https://" + opts.lang + ".wikipedia.org"
                           : opts.base_url;

    FetchReport report;
    std::mutex report_mu;
    RateLimiter limiter(opts.requests_per_second);
    std::size_t cursor = 0;
    std::mutex cursor_mu;

    int workers = std::max(1, opts.concurrency);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            httplib::Client client(base);
            client.set_follow_location(true);
            client.set_connection_timeout(10);
            client.set_read_timeout(30);
            for (;;) {
                std::string title;
                {
                    std::lock_guard<std::mutex> lock(cursor_mu);
                    if (cursor >= titles.size()) return;
                    title = titles[cursor++];
                }
                fs::path target = fs::path(opts.out_dir) / (percent_encode(title) + ".txt");
                if (opts.skip_existing && fs::exists(target)) {
                    std::lock_guard<std::mutex> lock(report_mu);
                    ++report.cached;
                    continue;
                }
                limiter.wait();
                std::string path = replace_all(opts.path_template, "{title}",
                                               percent_encode(title));
                httplib::Result res = client.Get(path);
                if (!res || res->status != 200) {
                    std::lock_guard<std::mutex> lock(report_mu);
                    ++report.failed;
                    std::cerr << "fetch failed for \"" << title << "\""
                              << (res ? " (status " + std::to_string(res->status) + ")" : "")
                              << "\n";
                    continue;
                }
                AtomicFile file(target.string());
                file.stream() << res->body;
                file.commit();
                std::lock_guard<std::mutex> lock(report_mu);
                ++report.fetched;
            }
        });
    }
    for (std::thread& t : pool) t.join();
    return report;
}

}  // namespace chronograph
