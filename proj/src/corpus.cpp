#include "specmine/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace specmine {

TokenSet unique_tokens(const Trace& t) { return TokenSet(t.tokens.begin(), t.tokens.end()); }

void Corpus::add(Trace t) {
  if (t.procedure_id.empty()) throw std::runtime_error("trace has an empty procedure id");
  if (t.tokens.empty()) throw std::runtime_error("trace has no tokens");
  groups_[t.procedure_id].push_back(std::move(t));
}

std::size_t Corpus::trace_count() const {
  std::size_t n = 0;
  for (const auto& [id, traces] : groups_) n += traces.size();
  return n;
}

std::vector<const Trace*> Corpus::all_traces() const {
  std::vector<const Trace*> out;
  out.reserve(trace_count());
  for (const auto& [id, traces] : groups_)
    for (const Trace& t : traces) out.push_back(&t);
  return out;
}

Vocabulary::Vocabulary(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  std::sort(tokens_.begin(), tokens_.end());
  tokens_.erase(std::unique(tokens_.begin(), tokens_.end()), tokens_.end());
  for (std::size_t i = 0; i < tokens_.size(); ++i) index_[tokens_[i].text] = static_cast<int>(i);
}

Vocabulary Vocabulary::of_corpus(const Corpus& c) {
  TokenSet seen;
  for (const auto& [id, traces] : c.groups())
    for (const Trace& t : traces) seen.insert(t.tokens.begin(), t.tokens.end());
  return Vocabulary(std::vector<Token>(seen.begin(), seen.end()));
}

Vocabulary Vocabulary::without_sentinels() const {
  std::vector<Token> kept;
  kept.reserve(tokens_.size());
  for (const Token& t : tokens_)
    if (!is_sentinel(t)) kept.push_back(t);
  return Vocabulary(std::move(kept));
}

int Vocabulary::index_of(std::string_view text) const {
  auto it = index_.find(text);
  return it == index_.end() ? -1 : it->second;
}

Vocabulary vocabulary(const Corpus& c) { return Vocabulary::of_corpus(c); }

namespace {

void check_sentinel_placement(const Trace& t) {
  for (std::size_t i = 0; i < t.tokens.size(); ++i) {
    const Token& tok = t.tokens[i];
    if (tok.text == "$START" && i != 0)
      throw std::runtime_error("$START may appear only at the start of a trace");
    if (tok.text == "$END" && i + 1 != t.tokens.size())
      throw std::runtime_error("$END may appear only at the end of a trace");
  }
}

Trace parse_record(const std::string& line) {
  nlohmann::json rec = nlohmann::json::parse(line);
  if (!rec.is_object()) throw std::runtime_error("record is not a JSON object");
  if (!rec.contains("procedure") || !rec["procedure"].is_string())
    throw std::runtime_error("record is missing a string \"procedure\" field");
  if (!rec.contains("tokens") || !rec["tokens"].is_array())
    throw std::runtime_error("record is missing a \"tokens\" array");

  Trace t;
  t.procedure_id = rec["procedure"].get<std::string>();
  if (t.procedure_id.empty()) throw std::runtime_error("procedure id is empty");
  for (const auto& item : rec["tokens"]) {
    if (!item.is_string()) throw std::runtime_error("token entries must be strings");
    t.tokens.push_back(parse_token(item.get<std::string>()));
  }
  if (t.tokens.empty()) throw std::runtime_error("trace has no tokens");
  check_sentinel_placement(t);
  return t;
}

bool blank_line(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

Corpus ingest(std::istream& in, const std::string& source_name) {
  Corpus c;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank_line(line) || line[0] == '#') continue;
    try {
      c.add(parse_record(line));
    } catch (const std::exception& e) {
      throw std::runtime_error(source_name + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (in.bad()) throw std::runtime_error(source_name + ": read failure");
  if (c.empty()) throw std::runtime_error(source_name + ": empty corpus");
  return c;
}

Corpus ingest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file " + path.string());
  return ingest(in, path.string());
}

void serialize(const Corpus& c, std::ostream& out) {
  for (const auto& [id, traces] : c.groups()) {
    for (const Trace& t : traces) {
      nlohmann::json rec;
      rec["procedure"] = t.procedure_id;
      auto& arr = rec["tokens"] = nlohmann::json::array();
      for (const Token& tok : t.tokens) arr.push_back(tok.text);
      out << rec.dump() << '\n';
    }
  }
}

void save_corpus(const Corpus& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write corpus file " + path.string());
  serialize(c, out);
  if (!out) throw std::runtime_error("write failure on " + path.string());
}

Corpus hierarchical_threshold(const Corpus& c, int min_procs) {
  if (min_procs < 1) throw std::runtime_error("min_procs must be >= 1");

  // Count distinct procedure groups per non-sentinel token.
  std::map<std::string, int> group_counts;
  for (const auto& [id, traces] : c.groups()) {
    std::set<std::string> in_group;
    for (const Trace& t : traces)
      for (const Token& tok : t.tokens)
        if (!is_sentinel(tok)) in_group.insert(tok.text);
    for (const std::string& text : in_group) ++group_counts[text];
  }

  Corpus out;
  for (const auto& [id, traces] : c.groups()) {
    for (const Trace& t : traces) {
      Trace kept;
      kept.procedure_id = t.procedure_id;
      bool has_content = false;
      for (const Token& tok : t.tokens) {
        if (is_sentinel(tok)) {
          kept.tokens.push_back(tok);
        } else if (group_counts[tok.text] >= min_procs) {
          kept.tokens.push_back(tok);
          has_content = true;
        }
      }
      if (has_content) out.add(std::move(kept));
    }
  }
  return out;
}

}  // namespace specmine
