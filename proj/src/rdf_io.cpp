#include "owlmat/rdf_io.hpp"

#include <zlib.h>

#include <array>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

namespace owlmat {

ParseError::ParseError(const std::string &what, std::uint64_t line, std::uint64_t column, std::uint64_t byte_offset,
                       std::string token)
    : std::runtime_error(what), line_(line), column_(column), byte_offset_(byte_offset), token_(std::move(token)) {}

RdfFormat format_for_path(std::string_view path) {
  if (path.ends_with(".gz")) path.remove_suffix(3);
  return path.ends_with(".nt") ? RdfFormat::ntriples : RdfFormat::turtle;
}

namespace {

// ---------------------------------------------------------------------------
// byte readers

class ByteReader {
 public:
  virtual ~ByteReader() = default;
  virtual std::size_t read(char *buf, std::size_t n) = 0;
};

class IstreamReader final : public ByteReader {
 public:
  explicit IstreamReader(std::istream &in) : in_(in) {}
  std::size_t read(char *buf, std::size_t n) override {
    in_.read(buf, static_cast<std::streamsize>(n));
    if (in_.bad()) throw IoError("read failure");
    return static_cast<std::size_t>(in_.gcount());
  }

 private:
  std::istream &in_;
};

class MemoryReader final : public ByteReader {
 public:
  explicit MemoryReader(std::string_view data) : data_(data) {}
  std::size_t read(char *buf, std::size_t n) override {
    n = std::min(n, data_.size());
    std::memcpy(buf, data_.data(), n);
    data_.remove_prefix(n);
    return n;
  }

 private:
  std::string_view data_;
};

class FileReader final : public ByteReader {
 public:
  explicit FileReader(const std::string &path) : file_(std::fopen(path.c_str(), "rb")) {
    if (!file_) throw IoError("cannot open " + path + ": " + std::strerror(errno));
  }
  ~FileReader() override { std::fclose(file_); }
  std::size_t read(char *buf, std::size_t n) override {
    std::size_t got = std::fread(buf, 1, n, file_);
    if (got < n && std::ferror(file_)) throw IoError("read failure");
    return got;
  }

 private:
  std::FILE *file_;
};

// Replays a prefix that was consumed during format sniffing.
class PrefixedReader final : public ByteReader {
 public:
  PrefixedReader(std::string prefix, ByteReader &inner) : prefix_(std::move(prefix)), inner_(inner) {}
  std::size_t read(char *buf, std::size_t n) override {
    if (pos_ < prefix_.size()) {
      n = std::min(n, prefix_.size() - pos_);
      std::memcpy(buf, prefix_.data() + pos_, n);
      pos_ += n;
      return n;
    }
    return inner_.read(buf, n);
  }

 private:
  std::string prefix_;
  std::size_t pos_ = 0;
  ByteReader &inner_;
};

class InflateReader final : public ByteReader {
 public:
  explicit InflateReader(std::unique_ptr<ByteReader> inner) : inner_(std::move(inner)) {
    std::memset(&zs_, 0, sizeof zs_);
    if (inflateInit2(&zs_, 15 + 32) != Z_OK) throw IoError("zlib initialisation failed");
  }
  ~InflateReader() override { inflateEnd(&zs_); }

  std::size_t read(char *buf, std::size_t n) override {
    zs_.next_out = reinterpret_cast<Bytef *>(buf);
    zs_.avail_out = static_cast<uInt>(n);
    while (zs_.avail_out == n && !done_) {
      if (zs_.avail_in == 0) {
        std::size_t got = inner_->read(in_.data(), in_.size());
        if (got == 0) {
          if (!done_) throw IoError("truncated gzip stream");
          break;
        }
        zs_.next_in = reinterpret_cast<Bytef *>(in_.data());
        zs_.avail_in = static_cast<uInt>(got);
      }
      int rc = inflate(&zs_, Z_NO_FLUSH);
      if (rc == Z_STREAM_END) {
        // Concatenated gzip members are legal.
        if (zs_.avail_in > 0 || peek_more()) {
          inflateReset(&zs_);
        } else {
          done_ = true;
        }
      } else if (rc != Z_OK && rc != Z_BUF_ERROR) {
        throw IoError(std::string("gzip decode error: ") + (zs_.msg ? zs_.msg : "unknown"));
      }
    }
    return n - zs_.avail_out;
  }

 private:
  bool peek_more() {
    std::size_t got = inner_->read(in_.data(), in_.size());
    zs_.next_in = reinterpret_cast<Bytef *>(in_.data());
    zs_.avail_in = static_cast<uInt>(got);
    return got > 0;
  }

  std::unique_ptr<ByteReader> inner_;
  z_stream zs_;
  std::array<char, 1 << 16> in_{};
  bool done_ = false;
};

// Owns the reader chain and hands out a possibly-decompressed stream.
struct ReaderChain {
  std::unique_ptr<ByteReader> base;
  std::unique_ptr<ByteReader> prefixed;
  std::unique_ptr<ByteReader> top;
  ByteReader *reader = nullptr;

  explicit ReaderChain(std::unique_ptr<ByteReader> raw) : base(std::move(raw)) {
    std::string head(2, '\0');
    std::size_t got = 0;
    while (got < 2) {
      std::size_t r = base->read(head.data() + got, 2 - got);
      if (r == 0) break;
      got += r;
    }
    head.resize(got);
    bool gz = got == 2 && static_cast<unsigned char>(head[0]) == 0x1f && static_cast<unsigned char>(head[1]) == 0x8b;
    prefixed = std::make_unique<PrefixedReader>(std::move(head), *base);
    if (gz) {
      struct Borrowed final : ByteReader {
        ByteReader &r;
        explicit Borrowed(ByteReader &x) : r(x) {}
        std::size_t read(char *b, std::size_t n) override { return r.read(b, n); }
      };
      top = std::make_unique<InflateReader>(std::make_unique<Borrowed>(*prefixed));
      reader = top.get();
    } else {
      reader = prefixed.get();
    }
  }
};

// ---------------------------------------------------------------------------
// buffered source with UTF-8 validation and position tracking

class Source {
 public:
  explicit Source(ByteReader &reader) : reader_(reader) { fill(); }

  static constexpr int kEof = -1;

  int peek(std::size_t ahead = 0) {
    if (pos_ + ahead >= len_) {
      if (!ensure(ahead + 1)) return kEof;
    }
    return static_cast<unsigned char>(buf_[pos_ + ahead]);
  }

  int get() {
    int c = peek();
    if (c == kEof) return c;
    ++pos_;
    ++offset_;
    validate(static_cast<unsigned char>(c));
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++column_;
    }
    return c;
  }

  std::uint64_t line() const { return line_; }
  std::uint64_t column() const { return column_; }
  std::uint64_t offset() const { return offset_; }

  void finish() {
    if (utf8_need_ != 0) throw_utf8();
  }

 private:
  bool ensure(std::size_t n) {
    if (pos_ + n <= len_) return true;
    if (eof_) return false;
    // compact then refill
    std::memmove(buf_.data(), buf_.data() + pos_, len_ - pos_);
    len_ -= pos_;
    pos_ = 0;
    while (len_ < n && !eof_) fill();
    return pos_ + n <= len_;
  }

  void fill() {
    std::size_t got = reader_.read(buf_.data() + len_, buf_.size() - len_);
    if (got == 0) eof_ = true;
    len_ += got;
  }

  void validate(unsigned char c) {
    if (utf8_need_ == 0) {
      if (c < 0x80) return;
      if (c >= 0xC2 && c <= 0xDF) {
        utf8_need_ = 1, utf8_lo_ = 0x80, utf8_hi_ = 0xBF;
      } else if (c >= 0xE0 && c <= 0xEF) {
        utf8_need_ = 2;
        utf8_lo_ = c == 0xE0 ? 0xA0 : 0x80;
        utf8_hi_ = c == 0xED ? 0x9F : 0xBF;
      } else if (c >= 0xF0 && c <= 0xF4) {
        utf8_need_ = 3;
        utf8_lo_ = c == 0xF0 ? 0x90 : 0x80;
        utf8_hi_ = c == 0xF4 ? 0x8F : 0xBF;
      } else {
        throw_utf8();
      }
      return;
    }
    if (c < utf8_lo_ || c > utf8_hi_) throw_utf8();
    utf8_lo_ = 0x80;
    utf8_hi_ = 0xBF;
    --utf8_need_;
  }

  [[noreturn]] void throw_utf8() const {
    throw ParseError("invalid UTF-8 at byte offset " + std::to_string(offset_ - 1), line_, column_, offset_ - 1, {});
  }

  ByteReader &reader_;
  std::array<char, 1 << 16> buf_{};
  std::size_t pos_ = 0, len_ = 0;
  bool eof_ = false;
  std::uint64_t line_ = 1, column_ = 1, offset_ = 0;
  int utf8_need_ = 0;
  unsigned char utf8_lo_ = 0x80, utf8_hi_ = 0xBF;
};

// ---------------------------------------------------------------------------
// parser

bool is_alpha(int c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(int c) { return c >= '0' && c <= '9'; }
bool is_hex(int c) { return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F'); }
bool is_name_char(int c) { return is_alpha(c) || is_digit(c) || c == '_' || c == '-' || c >= 0x80; }

void append_utf8(std::string &out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Parser {
 public:
  Parser(Source &src, TermStore &store, const TripleSink &sink, const ParseOptions &options, std::uint32_t ordinal)
      : src_(src),
        store_(store),
        sink_(sink),
        options_(options),
        blank_suffix_(".d" + std::to_string(ordinal)),
        gen_suffix_("d" + std::to_string(ordinal)),
        rdf_type_(store.intern_iri(iri::rdf_type)) {}

  ParseSummary run() {
    for (;;) {
      skip_ws();
      if (src_.peek() == Source::kEof) break;
      statement();
    }
    src_.finish();
    return {std::move(prefixes_), emitted_, 0};
  }

 private:
  static constexpr int kMaxDepth = 512;

  [[noreturn]] void fail(const std::string &msg, std::string token = {}) {
    if (token.empty()) {
      int c = src_.peek();
      if (c == Source::kEof) {
        token = "<EOF>";
      } else {
        token = std::string(1, static_cast<char>(c));
      }
    }
    std::ostringstream os;
    if (!options_.source_name.empty()) os << options_.source_name << ':';
    os << src_.line() << ':' << src_.column() << ": " << msg << " (at '" << token << "')";
    throw ParseError(os.str(), src_.line(), src_.column(), src_.offset(), token);
  }

  void skip_ws() {
    for (;;) {
      int c = src_.peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        src_.get();
      } else if (c == '#') {
        while (c != Source::kEof && c != '\n') {
          src_.get();
          c = src_.peek();
        }
      } else {
        return;
      }
    }
  }

  void expect(char want) {
    skip_ws();
    if (src_.peek() != static_cast<unsigned char>(want)) fail(std::string("expected '") + want + "'");
    src_.get();
  }

  void emit(TermId s, TermId p, TermId o) {
    sink_(Triple{s, p, o});
    ++emitted_;
    if (options_.on_progress && options_.progress_interval && emitted_ % options_.progress_interval == 0)
      options_.on_progress(emitted_);
  }

  // -- statements

  bool keyword_ahead(std::string_view word) {
    for (std::size_t i = 0; i < word.size(); ++i) {
      int c = src_.peek(i);
      if (c == Source::kEof || std::tolower(c) != word[i]) return false;
    }
    int after = src_.peek(word.size());
    return after == ' ' || after == '\t' || after == '\n' || after == '\r';
  }

  void statement() {
    int c = src_.peek();
    if (c == '@') {
      src_.get();
      std::string word;
      while (is_alpha(src_.peek())) word += static_cast<char>(src_.get());
      if (word == "prefix") {
        prefix_decl();
        expect('.');
      } else if (word == "base") {
        fail("unsupported construct: @base", "@base");
      } else {
        fail("unknown directive", "@" + word);
      }
      return;
    }
    if (keyword_ahead("prefix")) {
      for (int i = 0; i < 6; ++i) src_.get();
      prefix_decl();
      return;
    }
    if (keyword_ahead("base")) fail("unsupported construct: BASE", "BASE");

    TermId subject;
    bool property_list_subject = false;
    if (c == '[') {
      subject = blank_property_list(0, &property_list_subject);
    } else {
      subject = subject_term();
    }
    skip_ws();
    if (property_list_subject && src_.peek() == '.') {
      src_.get();
      return;
    }
    predicate_object_list(subject, 0);
    expect('.');
  }

  void prefix_decl() {
    skip_ws();
    std::string label;
    while (is_name_char(src_.peek()) || src_.peek() == '.') label += static_cast<char>(src_.get());
    if (src_.peek() != ':') fail("expected ':' in prefix declaration");
    src_.get();
    skip_ws();
    if (src_.peek() != '<') fail("expected IRI in prefix declaration");
    std::string ns = iri_ref();
    prefixes_[label] = ns;
  }

  TermId subject_term() {
    int c = src_.peek();
    if (c == '<') return store_.intern_iri(iri_ref());
    if (c == '_') return blank_label();
    if (c == '(') fail("unsupported construct: collection", "(");
    if (c == '"' || c == '\'') fail("literal in subject position");
    if (is_digit(c) || c == '+' || c == '-') fail("unsupported construct: numeric literal");
    return pname(false);
  }

  TermId verb() {
    skip_ws();
    int c = src_.peek();
    if (c == '<') return store_.intern_iri(iri_ref());
    if (c == 'a') {
      int n = src_.peek(1);
      if (n == ' ' || n == '\t' || n == '\n' || n == '\r' || n == '<' || n == '[' || n == '_' || n == '"') {
        src_.get();
        return rdf_type_;
      }
    }
    if (c == '_' || c == '[') fail("blank node in predicate position");
    if (c == Source::kEof) fail("unexpected end of input");
    return pname(false);
  }

  void predicate_object_list(TermId subject, int depth) {
    for (;;) {
      TermId predicate = verb();
      object_list(subject, predicate, depth);
      skip_ws();
      if (src_.peek() != ';') return;
      while (src_.peek() == ';') {
        src_.get();
        skip_ws();
      }
      int c = src_.peek();
      if (c == '.' || c == ']' || c == Source::kEof) return;
    }
  }

  void object_list(TermId subject, TermId predicate, int depth) {
    for (;;) {
      object(subject, predicate, depth);
      skip_ws();
      if (src_.peek() != ',') return;
      src_.get();
    }
  }

  void object(TermId subject, TermId predicate, int depth) {
    skip_ws();
    int c = src_.peek();
    switch (c) {
      case '<':
        emit(subject, predicate, store_.intern_iri(iri_ref()));
        return;
      case '_':
        emit(subject, predicate, blank_label());
        return;
      case '"':
      case '\'':
        emit(subject, predicate, literal());
        return;
      case '[': {
        src_.get();
        TermId b = fresh_blank();
        emit(subject, predicate, b);
        if (depth + 1 > kMaxDepth) fail("blank-node nesting too deep");
        skip_ws();
        if (src_.peek() != ']') predicate_object_list(b, depth + 1);
        expect(']');
        return;
      }
      case '(':
        fail("unsupported construct: collection", "(");
      case Source::kEof:
        fail("unexpected end of input");
      default:
        break;
    }
    if (is_digit(c) || c == '+' || c == '-' || c == '.') fail("unsupported construct: numeric literal");
    emit(subject, predicate, pname(true));
  }

  // `[ ... ]` in subject position.
  TermId blank_property_list(int depth, bool *had_properties) {
    src_.get();
    TermId b = fresh_blank();
    skip_ws();
    if (src_.peek() == ']') {
      src_.get();
      *had_properties = false;
      return b;
    }
    predicate_object_list(b, depth + 1);
    expect(']');
    *had_properties = true;
    return b;
  }

  TermId fresh_blank() {
    label_.assign("gen");
    label_ += std::to_string(generated_++);
    label_ += gen_suffix_;
    return store_.intern_blank(label_);
  }

  // -- terms

  std::uint32_t hex_escape(int digits) {
    std::uint32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      int h = src_.peek();
      if (!is_hex(h)) fail("bad unicode escape");
      src_.get();
      cp = cp * 16 + static_cast<std::uint32_t>(is_digit(h) ? h - '0' : (std::tolower(h) - 'a' + 10));
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("escape is not a Unicode scalar value");
    return cp;
  }

  std::string iri_ref() {
    src_.get();  // '<'
    std::string out;
    for (;;) {
      int c = src_.get();
      if (c == Source::kEof) fail("unterminated IRI");
      if (c == '>') break;
      if (c == '\\') {
        int e = src_.get();
        if (e == 'u') {
          append_utf8(out, hex_escape(4));
        } else if (e == 'U') {
          append_utf8(out, hex_escape(8));
        } else {
          fail("bad escape in IRI");
        }
        continue;
      }
      if (c <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' || c == '`')
        fail("illegal character in IRI", std::string(1, static_cast<char>(c)));
      out += static_cast<char>(c);
    }
    auto colon = out.find(':');
    if (colon == std::string::npos || colon == 0)
      fail("unsupported construct: relative IRI (no @base support)", "<" + out + ">");
    return out;
  }

  TermId blank_label() {
    src_.get();  // '_'
    if (src_.peek() != ':') fail("expected ':' after '_'");
    src_.get();
    label_.clear();
    for (;;) {
      int c = src_.peek();
      if (is_name_char(c)) {
        label_ += static_cast<char>(src_.get());
      } else if (c == '.' && !label_.empty() && (is_name_char(src_.peek(1)) || src_.peek(1) == '.')) {
        label_ += static_cast<char>(src_.get());
      } else {
        break;
      }
    }
    if (label_.empty()) fail("empty blank-node label");
    label_ += blank_suffix_;
    return store_.intern_blank(label_);
  }

  TermId pname(bool object_position) {
    prefix_.clear();
    for (;;) {
      int c = src_.peek();
      if (is_name_char(c)) {
        prefix_ += static_cast<char>(src_.get());
      } else if (c == '.' && !prefix_.empty() && is_name_char(src_.peek(1))) {
        prefix_ += static_cast<char>(src_.get());
      } else {
        break;
      }
    }
    if (src_.peek() != ':') {
      if (object_position && (prefix_ == "true" || prefix_ == "false"))
        fail("unsupported construct: boolean literal", prefix_);
      fail("expected prefixed name", prefix_.empty() ? std::string{} : prefix_);
    }
    src_.get();
    auto it = prefixes_.find(prefix_);
    if (it == prefixes_.end()) fail("unknown prefix '" + prefix_ + ":'", prefix_ + ":");
    label_ = it->second;
    for (;;) {
      int c = src_.peek();
      if (is_name_char(c) || c == ':') {
        label_ += static_cast<char>(src_.get());
      } else if (c == '.') {
        int n = src_.peek(1);
        if (is_name_char(n) || n == ':' || n == '.' || n == '%' || n == '\\') {
          label_ += static_cast<char>(src_.get());
        } else {
          break;
        }
      } else if (c == '%') {
        label_ += static_cast<char>(src_.get());
        for (int i = 0; i < 2; ++i) {
          if (!is_hex(src_.peek())) fail("bad percent escape in local name");
          label_ += static_cast<char>(src_.get());
        }
      } else if (c == '\\') {
        src_.get();
        int e = src_.get();
        if (e == Source::kEof || !std::strchr("_~.-!$&'()*+,;=/?#@%", e)) fail("bad escape in local name");
        label_ += static_cast<char>(e);
      } else {
        break;
      }
    }
    return store_.intern_iri(label_);
  }

  TermId literal() {
    int quote = src_.get();
    bool long_form = src_.peek() == quote && src_.peek(1) == quote;
    std::string lexical;
    if (long_form) {
      src_.get();
      src_.get();
    }
    for (;;) {
      int c = src_.get();
      if (c == Source::kEof) fail("unterminated string literal");
      if (c == quote) {
        if (!long_form) break;
        if (src_.peek() == quote && src_.peek(1) == quote) {
          // A run of more than three closing quotes belongs to the content.
          if (src_.peek(2) == quote) {
            lexical += static_cast<char>(c);
            continue;
          }
          src_.get();
          src_.get();
          break;
        }
        lexical += static_cast<char>(c);
        continue;
      }
      if (c == '\\') {
        int e = src_.get();
        switch (e) {
          case 't': lexical += '\t'; break;
          case 'b': lexical += '\b'; break;
          case 'n': lexical += '\n'; break;
          case 'r': lexical += '\r'; break;
          case 'f': lexical += '\f'; break;
          case '"': lexical += '"'; break;
          case '\'': lexical += '\''; break;
          case '\\': lexical += '\\'; break;
          case 'u': append_utf8(lexical, hex_escape(4)); break;
          case 'U': append_utf8(lexical, hex_escape(8)); break;
          default: fail("bad escape in string literal");
        }
        continue;
      }
      if (!long_form && (c == '\n' || c == '\r')) fail("newline in short string literal");
      lexical += static_cast<char>(c);
    }
    int c = src_.peek();
    if (c == '@') {
      src_.get();
      std::string lang;
      while (is_alpha(src_.peek())) lang += static_cast<char>(src_.get());
      if (lang.empty()) fail("empty language tag");
      while (src_.peek() == '-') {
        lang += static_cast<char>(src_.get());
        std::size_t before = lang.size();
        while (is_alpha(src_.peek()) || is_digit(src_.peek())) lang += static_cast<char>(src_.get());
        if (lang.size() == before) fail("bad language tag");
      }
      return store_.intern_literal(lexical, iri::rdf_lang_string, lang);
    }
    if (c == '^' && src_.peek(1) == '^') {
      src_.get();
      src_.get();
      TermId dt = src_.peek() == '<' ? store_.intern_iri(iri_ref()) : pname(false);
      std::string datatype = store_.resolve(dt).value;
      return store_.intern_literal(lexical, datatype);
    }
    return store_.intern_literal(lexical, iri::xsd_string);
  }

  Source &src_;
  TermStore &store_;
  const TripleSink &sink_;
  const ParseOptions &options_;
  PrefixMap prefixes_;
  std::string blank_suffix_;
  std::string gen_suffix_;
  TermId rdf_type_;
  std::uint64_t generated_ = 0;
  std::uint64_t emitted_ = 0;
  std::string label_;
  std::string prefix_;
};

ParseSummary run_parser(std::unique_ptr<ByteReader> raw, TermStore &store, const TripleSink &sink,
                        const ParseOptions &options) {
  ReaderChain chain(std::move(raw));
  Source src(*chain.reader);
  std::uint32_t ordinal = options.document_ordinal ? *options.document_ordinal : store.next_document_ordinal();
  Parser parser(src, store, sink, options, ordinal);
  ParseSummary summary = parser.run();
  summary.document_ordinal = ordinal;
  return summary;
}

// -- serialization

void write_escaped_iri(std::ostream &out, std::string_view v) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  out << '<';
  for (unsigned char c : v) {
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
        c == '`' || c == '\\') {
      out << "\\u00" << kHex[c >> 4] << kHex[c & 0xF];
    } else {
      out << static_cast<char>(c);
    }
  }
  out << '>';
}

void write_escaped_string(std::ostream &out, std::string_view v) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  out << '"';
  for (unsigned char c : v) {
    switch (c) {
      case '"': out << "\\\""; break;
      case '\\': out << "\\\\"; break;
      case '\n': out << "\\n"; break;
      case '\r': out << "\\r"; break;
      case '\t': out << "\\t"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          out << "\\u00" << kHex[c >> 4] << kHex[c & 0xF];
        } else {
          out << static_cast<char>(c);
        }
    }
  }
  out << '"';
}

}  // namespace

ParseSummary parse(std::istream &in, TermStore &store, const TripleSink &sink, const ParseOptions &options) {
  return run_parser(std::make_unique<IstreamReader>(in), store, sink, options);
}

ParseSummary parse_string(std::string_view text, TermStore &store, const TripleSink &sink,
                          const ParseOptions &options) {
  return run_parser(std::make_unique<MemoryReader>(text), store, sink, options);
}

ParseSummary parse_file(const std::string &path, TermStore &store, const TripleSink &sink, ParseOptions options,
                        std::optional<RdfFormat> format) {
  options.format = format.value_or(format_for_path(path));
  if (options.source_name.empty()) options.source_name = path;
  return run_parser(std::make_unique<FileReader>(path), store, sink, options);
}

std::vector<Triple> parse_all(std::string_view text, TermStore &store, const ParseOptions &options) {
  std::vector<Triple> out;
  parse_string(text, store, [&](const Triple &t) { out.push_back(t); }, options);
  return out;
}

void write_term(std::ostream &out, const Term &term) {
  switch (term.kind) {
    case TermKind::iri:
      write_escaped_iri(out, term.value);
      break;
    case TermKind::blank:
      out << "_:" << term.value;
      break;
    case TermKind::literal:
      write_escaped_string(out, term.value);
      if (!term.lang.empty()) {
        out << '@' << term.lang;
      } else if (term.datatype != iri::xsd_string) {
        out << "^^";
        write_escaped_iri(out, term.datatype);
      }
      break;
  }
}

void NTriplesWriter::write(const Triple &t) {
  write_term(out_, store_.resolve(t.subject));
  out_ << ' ';
  write_term(out_, store_.resolve(t.predicate));
  out_ << ' ';
  write_term(out_, store_.resolve(t.object));
  out_ << " .\n";
  if (!out_) throw IoError("write failure");
}

std::string to_ntriples(std::span<const Triple> triples, const TermStore &store) {
  std::ostringstream os;
  NTriplesWriter(os, store).write(triples);
  return os.str();
}

}  // namespace owlmat
