#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "owlmat/term_store.hpp"

namespace owlmat {

struct Triple {
  TermId subject;
  TermId predicate;
  TermId object;

  friend constexpr auto operator<=>(const Triple &, const Triple &) = default;
};

using PrefixMap = std::map<std::string, std::string>;
using TripleSink = std::function<void(const Triple &)>;

enum class RdfFormat { turtle, ntriples };

/// Picks N-Triples for `.nt` / `.nt.gz`, Turtle otherwise.
RdfFormat format_for_path(std::string_view path);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &what, std::uint64_t line, std::uint64_t column, std::uint64_t byte_offset,
             std::string token);

  std::uint64_t line() const { return line_; }
  std::uint64_t column() const { return column_; }
  std::uint64_t byte_offset() const { return byte_offset_; }
  const std::string &token() const { return token_; }

 private:
  std::uint64_t line_, column_, byte_offset_;
  std::string token_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParseOptions {
  RdfFormat format = RdfFormat::turtle;
  /// Blank-node scope. Reusing an ordinal reproduces the same blank-node ids,
  /// which lets a caller stream the same document twice.
  std::optional<std::uint32_t> document_ordinal;
  std::string source_name;
  /// Called every `progress_interval` triples; may throw to abort the parse.
  std::function<void(std::uint64_t)> on_progress;
  std::uint64_t progress_interval = 1u << 16;
};

struct ParseSummary {
  PrefixMap prefixes;
  std::uint64_t triples = 0;
  std::uint32_t document_ordinal = 0;
};

/// Streaming parse of a Turtle-subset or N-Triples document. gzip input is
/// detected from the magic bytes. Triples are handed to `sink` in document
/// order.
ParseSummary parse(std::istream &in, TermStore &store, const TripleSink &sink, const ParseOptions &options = {});
ParseSummary parse_string(std::string_view text, TermStore &store, const TripleSink &sink,
                          const ParseOptions &options = {});
/// Format defaults to format_for_path(path) unless `format` is given.
ParseSummary parse_file(const std::string &path, TermStore &store, const TripleSink &sink,
                        ParseOptions options = {}, std::optional<RdfFormat> format = std::nullopt);

/// Collects every triple of a document.
std::vector<Triple> parse_all(std::string_view text, TermStore &store, const ParseOptions &options = {});

void write_term(std::ostream &out, const Term &term);

class NTriplesWriter {
 public:
  NTriplesWriter(std::ostream &out, const TermStore &store) : out_(out), store_(store) {}
  void write(const Triple &t);
  void write(std::span<const Triple> triples) {
    for (const auto &t : triples) write(t);
  }

 private:
  std::ostream &out_;
  const TermStore &store_;
};

std::string to_ntriples(std::span<const Triple> triples, const TermStore &store);

}  // namespace owlmat
