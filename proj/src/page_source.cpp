#include "chronograph/page_source.hpp"

#include <expat.h>
#include <zlib.h>

#include <cstring>
#include <deque>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "chronograph/error.hpp"
#include "chronograph/strings.hpp"
#include "chronograph/wikitext.hpp"
#include "chronograph/xml_error.hpp"

namespace chronograph {

namespace {

constexpr std::size_t kChunkSize = 256 * 1024;
constexpr std::size_t kMaxPageBytes = 512u * 1024 * 1024;

// ---------------------------------------------------------------------------
// gzip decompression as a streambuf so readers stay format-agnostic.

class GzInputBuf : public std::streambuf {
  public:
    explicit GzInputBuf(std::unique_ptr<std::istream> src)
        : src_(std::move(src)), in_(kChunkSize), out_(kChunkSize) {
        std::memset(&zs_, 0, sizeof(zs_));
        // 15+32: accept both zlib and gzip headers
        if (inflateInit2(&zs_, 15 + 32) != Z_OK) {
            throw Error(ErrorKind::Input, "zlib initialization failed");
        }
    }

    ~GzInputBuf() override { inflateEnd(&zs_); }

  protected:
    int_type underflow() override {
        if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
        if (stream_done_) return traits_type::eof();

        zs_.next_out = reinterpret_cast<Bytef*>(out_.data());
        zs_.avail_out = static_cast<uInt>(out_.size());
        while (zs_.avail_out == out_.size()) {
            if (zs_.avail_in == 0) {
                src_->read(in_.data(), static_cast<std::streamsize>(in_.size()));
                std::streamsize got = src_->gcount();
                if (got == 0) {
                    // EOF before Z_STREAM_END means the archive is cut short
                    throw Error(ErrorKind::Input, "truncated gzip stream");
                }
                zs_.next_in = reinterpret_cast<Bytef*>(in_.data());
                zs_.avail_in = static_cast<uInt>(got);
            }
            int rc = inflate(&zs_, Z_NO_FLUSH);
            if (rc == Z_STREAM_END) {
                stream_done_ = true;
                break;
            }
            if (rc != Z_OK && rc != Z_BUF_ERROR) {
                throw Error(ErrorKind::Input,
                            std::string("gzip decompression failed: ") +
                                (zs_.msg ? zs_.msg : "corrupt stream"));
            }
        }
        std::size_t produced = out_.size() - zs_.avail_out;
        if (produced == 0) return traits_type::eof();
        setg(out_.data(), out_.data(), out_.data() + produced);
        return traits_type::to_int_type(*gptr());
    }

  private:
    std::unique_ptr<std::istream> src_;
    z_stream zs_;
    std::vector<char> in_, out_;
    bool stream_done_ = false;
};

class GzInputStream : public std::istream {
  public:
    explicit GzInputStream(std::unique_ptr<std::istream> src)
        : std::istream(nullptr), buf_(std::move(src)) {
        rdbuf(&buf_);
    }

  private:
    GzInputBuf buf_;
};

// ---------------------------------------------------------------------------
// JSONL fixture reader: {"title":str,"ns":int,"text":str,"categories":[str]}

class JsonlPageSource : public PageSource {
  public:
    JsonlPageSource(std::unique_ptr<std::istream> in, SourceOptions opts)
        : in_(std::move(in)), opts_(std::move(opts)) {}

    std::optional<RawPage> next() override {
        std::string line;
        while (std::getline(*in_, line)) {
            std::uint64_t offset = offset_;
            offset_ += line.size() + 1;
            stats_.bytes_read = offset_;
            ++line_no_;
            if (line.empty()) continue;
            stats_.max_page_buffer = std::max(stats_.max_page_buffer, line.size());
            nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
            std::string problem;
            if (j.is_discarded()) {
                problem = "not valid JSON";
            } else if (!j.contains("title") || !j.at("title").is_string()) {
                problem = "missing string field \"title\"";
            } else if (!j.contains("ns") || !j.at("ns").is_number_integer()) {
                problem = "missing integer field \"ns\"";
            } else if (!j.contains("text") || !j.at("text").is_string()) {
                problem = "missing string field \"text\"";
            }
            if (!problem.empty()) {
                if (opts_.strict) {
                    throw Error(ErrorKind::Input,
                                "line " + std::to_string(line_no_) + ": " + problem);
                }
                ++stats_.records_bad;
                std::cerr << "warning: skipping line " << line_no_ << ": " << problem << "\n";
                continue;
            }
            RawPage page;
            page.title = normalize_title(j.at("title").get<std::string>());
            page.ns = j.at("ns").get<int>();
            page.wikitext = j.at("text").get<std::string>();
            page.source_offset = offset;
            if (page.ns != 0 || page.title.empty()) {
                ++stats_.pages_skipped;
                continue;
            }
            if (j.contains("categories") && j.at("categories").is_array()) {
                for (const auto& c : j.at("categories")) {
                    if (c.is_string()) {
                        std::string cat = normalize_title(c.get<std::string>());
                        if (!cat.empty()) page.categories.push_back(std::move(cat));
                    }
                }
            } else {
                page.categories = extract_categories(page.wikitext, opts_.category_prefixes);
            }
            page.redirect = redirect_target(page.wikitext);
            ++stats_.pages_yielded;
            return page;
        }
        return std::nullopt;
    }

    const SourceStats& stats() const override { return stats_; }

  private:
    std::unique_ptr<std::istream> in_;
    SourceOptions opts_;
    SourceStats stats_;
    std::uint64_t offset_ = 0;
    std::uint64_t line_no_ = 0;
};

// ---------------------------------------------------------------------------
// MediaWiki pages-articles XML reader on top of expat.

class XmlPageSource : public PageSource {
  public:
    XmlPageSource(std::unique_ptr<std::istream> in, SourceOptions opts)
        : in_(std::move(in)), opts_(std::move(opts)) {
        parser_ = XML_ParserCreate(nullptr);
        if (!parser_) throw Error(ErrorKind::Input, "cannot create XML parser");
        XML_SetUserData(parser_, this);
        XML_SetElementHandler(parser_, &XmlPageSource::start_tramp, &XmlPageSource::end_tramp);
        XML_SetCharacterDataHandler(parser_, &XmlPageSource::chars_tramp);
    }

    ~XmlPageSource() override { XML_ParserFree(parser_); }

    std::optional<RawPage> next() override {
        while (queue_.empty() && !finished_) feed();
        if (queue_.empty()) return std::nullopt;
        RawPage page = std::move(queue_.front());
        queue_.pop_front();
        return page;
    }

    const SourceStats& stats() const override { return stats_; }

  private:
    void feed() {
        std::vector<char> buf(kChunkSize);
        in_->read(buf.data(), static_cast<std::streamsize>(buf.size()));
        std::streamsize got = in_->gcount();
        stats_.bytes_read += static_cast<std::uint64_t>(got);
        int is_final = got == 0 ? 1 : 0;
        if (XML_Parse(parser_, buf.data(), static_cast<int>(got), is_final) == XML_STATUS_ERROR) {
            std::uint64_t err_at = static_cast<std::uint64_t>(XML_GetCurrentByteIndex(parser_));
            throw XmlParseError(
                "malformed XML at byte " + std::to_string(err_at) + " (" +
                    XML_ErrorString(XML_GetErrorCode(parser_)) +
                    "); last complete page ends at byte " + std::to_string(last_page_end_),
                err_at, last_page_end_);
        }
        if (is_final) finished_ = true;
    }

    void on_start(const XML_Char* name, const XML_Char** atts) {
        std::string_view el(name);
        if (el == "page") {
            in_page_ = true;
            cur_ = RawPage{};
            cur_.source_offset = static_cast<std::uint64_t>(XML_GetCurrentByteIndex(parser_));
            title_.clear();
            ns_.clear();
            text_.clear();
        } else if (in_page_ && el == "title" && !in_revision_) {
            capture_ = &title_;
        } else if (in_page_ && el == "ns" && !in_revision_) {
            capture_ = &ns_;
        } else if (in_page_ && el == "redirect" && !in_revision_) {
            for (int i = 0; atts[i]; i += 2) {
                if (std::string_view(atts[i]) == "title") {
                    cur_.redirect = normalize_title(atts[i + 1]);
                }
            }
        } else if (in_page_ && el == "revision") {
            in_revision_ = true;
        } else if (in_revision_ && el == "text") {
            text_.clear();
            capture_ = &text_;
        }
    }

    void on_end(const XML_Char* name) {
        std::string_view el(name);
        capture_ = nullptr;
        if (el == "revision") {
            in_revision_ = false;
        } else if (el == "page") {
            in_page_ = false;
            // byte just past "</page>" = intact-prefix length so far
            last_page_end_ =
                static_cast<std::uint64_t>(XML_GetCurrentByteIndex(parser_)) + 7;
            finalize_page();
        }
    }

    void on_chars(const XML_Char* s, int len) {
        if (!capture_) return;
        if (capture_->size() + static_cast<std::size_t>(len) > kMaxPageBytes) {
            throw Error(ErrorKind::Input, "page exceeds the size guard");
        }
        capture_->append(s, static_cast<std::size_t>(len));
    }

    void finalize_page() {
        stats_.max_page_buffer =
            std::max(stats_.max_page_buffer, title_.size() + text_.size());
        RawPage page = std::move(cur_);
        page.title = normalize_title(title_);
        page.ns = 0;
        if (!ns_.empty()) {
            try {
                page.ns = std::stoi(trim(ns_));
            } catch (...) {
                page.ns = -1;
            }
        }
        page.wikitext = std::move(text_);
        text_ = std::string();
        if (page.ns != 0 || page.title.empty()) {
            ++stats_.pages_skipped;
            return;
        }
        page.categories = extract_categories(page.wikitext, opts_.category_prefixes);
        if (!page.redirect) page.redirect = redirect_target(page.wikitext);
        ++stats_.pages_yielded;
        queue_.push_back(std::move(page));
    }

    static void start_tramp(void* ud, const XML_Char* name, const XML_Char** atts) {
        static_cast<XmlPageSource*>(ud)->on_start(name, atts);
    }
    static void end_tramp(void* ud, const XML_Char* name) {
        static_cast<XmlPageSource*>(ud)->on_end(name);
    }
    static void chars_tramp(void* ud, const XML_Char* s, int len) {
        static_cast<XmlPageSource*>(ud)->on_chars(s, len);
    }

    std::unique_ptr<std::istream> in_;
    SourceOptions opts_;
    SourceStats stats_;
    XML_Parser parser_ = nullptr;
    std::deque<RawPage> queue_;
    bool finished_ = false;

    bool in_page_ = false;
    bool in_revision_ = false;
    std::string* capture_ = nullptr;
    RawPage cur_;
    std::string title_, ns_, text_;
    std::uint64_t last_page_end_ = 0;
};

}  // namespace

std::unique_ptr<std::istream> decompress_stream(std::unique_ptr<std::istream> raw) {
    int c0 = raw->peek();
    if (c0 == 0x1f) {
        return std::make_unique<GzInputStream>(std::move(raw));
    }
    if (c0 == 'B') {
        char magic[3] = {0, 0, 0};
        raw->read(magic, 3);
        for (int i = 2; i >= 0; --i) raw->putback(magic[i]);
        if (magic[0] == 'B' && magic[1] == 'Z' && magic[2] == 'h') {
            throw Error(ErrorKind::Input,
                        "bzip2-compressed dumps are not supported by this build; "
                        "decompress the file first (bunzip2) or recompress as gzip");
        }
    }
    return raw;
}

std::unique_ptr<PageSource> open_page_stream(std::unique_ptr<std::istream> in,
                                             const SourceOptions& opts) {
    auto stream = decompress_stream(std::move(in));
    DumpFormat format = opts.format;
    if (format == DumpFormat::Autodetect) {
        int c = stream->peek();
        while (c == '\n' || c == '\r' || c == ' ' || c == '\t') {
            stream->get();
            c = stream->peek();
        }
        format = c == '<' ? DumpFormat::Xml : DumpFormat::Jsonl;
    }
    if (format == DumpFormat::Xml) {
        return std::make_unique<XmlPageSource>(std::move(stream), opts);
    }
    return std::make_unique<JsonlPageSource>(std::move(stream), opts);
}

std::unique_ptr<PageSource> open_dump(const std::string& path, const SourceOptions& opts) {
    auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*file) throw Error(ErrorKind::Input, "cannot open dump file: " + path);
    return open_page_stream(std::move(file), opts);
}

}  // namespace chronograph
