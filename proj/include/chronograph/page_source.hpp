#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace chronograph {

struct RawPage {
    std::string title;  // normalized
    int ns = 0;
    std::string wikitext;
    std::vector<std::string> categories;
    std::optional<std::string> redirect;  // normalized target, when a redirect page
    std::uint64_t source_offset = 0;      // byte offset of the page in the source
};

struct SourceStats {
    std::uint64_t pages_yielded = 0;
    std::uint64_t pages_skipped = 0;  // non-main-namespace
    std::uint64_t records_bad = 0;    // JSONL lines failing the schema
    std::uint64_t bytes_read = 0;
    std::size_t max_page_buffer = 0;  // high-water mark of the per-page buffer
};

// Streaming page reader: one page in memory at a time plus fixed buffers.
// Only main-namespace (0) pages are yielded.
class PageSource {
  public:
    virtual ~PageSource() = default;
    virtual std::optional<RawPage> next() = 0;
    virtual const SourceStats& stats() const = 0;
};

enum class DumpFormat { Autodetect, Jsonl, Xml };

struct SourceOptions {
    DumpFormat format = DumpFormat::Autodetect;
    bool strict = false;  // abort on bad JSONL records instead of skipping
    std::vector<std::string> category_prefixes = {"Category"};
};

// Wraps `raw` in a gzip decompressor when the stream starts with the gzip
// magic; bzip2 input is detected and rejected with a clear error. The
// returned stream may reference `raw`, which must outlive it.
std::unique_ptr<std::istream> decompress_stream(std::unique_ptr<std::istream> raw);

// Detects XML vs JSONL by content when format is Autodetect.
std::unique_ptr<PageSource> open_page_stream(std::unique_ptr<std::istream> in,
                                             const SourceOptions& opts);

// Opens a dump file, applying magic-byte decompression first.
std::unique_ptr<PageSource> open_dump(const std::string& path, const SourceOptions& opts);

}  // namespace chronograph
