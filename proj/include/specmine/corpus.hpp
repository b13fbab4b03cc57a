#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "specmine/token.hpp"

namespace specmine {

// One intraprocedural symbolic trace. If sentinels are present, `$START`
// may appear only at index 0 and `$END` only at the last index.
struct Trace {
  std::string procedure_id;
  std::vector<Token> tokens;

  bool operator==(const Trace& o) const = default;
};

TokenSet unique_tokens(const Trace& t);

// A trace corpus grouped by source procedure. Groups iterate in procedure-id
// order; traces within a group keep their insertion (file) order. Immutable
// by convention once ingested.
class Corpus {
 public:
  using GroupMap = std::map<std::string, std::vector<Trace>>;

  void add(Trace t);
  const GroupMap& groups() const { return groups_; }
  std::size_t group_count() const { return groups_.size(); }
  std::size_t trace_count() const;
  bool empty() const { return groups_.empty(); }

  // Group order, then stored trace order.
  std::vector<const Trace*> all_traces() const;

  bool operator==(const Corpus& o) const = default;

 private:
  GroupMap groups_;
};

// The distinct tokens of a corpus in lexicographic text order; the canonical
// index basis for distance matrices.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<Token> tokens);  // dedups and sorts

  static Vocabulary of_corpus(const Corpus& c);
  Vocabulary without_sentinels() const;

  int size() const { return static_cast<int>(tokens_.size()); }
  const Token& operator[](int i) const { return tokens_[static_cast<std::size_t>(i)]; }
  const std::vector<Token>& tokens() const { return tokens_; }
  int index_of(std::string_view text) const;  // -1 when absent
  bool contains(std::string_view text) const { return index_of(text) >= 0; }

  bool operator==(const Vocabulary& o) const { return tokens_ == o.tokens_; }

 private:
  std::vector<Token> tokens_;
  std::map<std::string, int, std::less<>> index_;
};

Vocabulary vocabulary(const Corpus& c);

// Line-delimited record format, one trace per line:
//   {"procedure": "<id>", "tokens": ["<tok>", ...]}
// Blank lines and lines starting with `#` are ignored. Token texts are
// canonicalized on the way in; malformed records fail with the line number.
Corpus ingest(const std::filesystem::path& path);
Corpus ingest(std::istream& in, const std::string& source_name);
void serialize(const Corpus& c, std::ostream& out);
void save_corpus(const Corpus& c, const std::filesystem::path& path);

// Removes every non-sentinel token that occurs in fewer than `min_procs`
// distinct procedure groups. Sentinels are always retained; traces left with
// no non-sentinel token are dropped, as are groups left with no trace.
Corpus hierarchical_threshold(const Corpus& c, int min_procs);

}  // namespace specmine
