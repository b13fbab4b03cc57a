#include "specmine/mining.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace specmine {

std::optional<ProjectedTrace> project(const Trace& t, const TermCluster& cluster) {
  ProjectedTrace out;
  out.procedure_id = t.procedure_id;
  out.tokens.push_back(start_token());
  bool any = false;
  for (const Token& tok : t.tokens) {
    if (is_sentinel(tok)) continue;
    if (cluster.count(tok)) {
      out.tokens.push_back(tok);
      any = true;
    }
  }
  if (!any) return std::nullopt;
  out.tokens.push_back(end_token());
  return out;
}

bool Fsa::accepts(const std::vector<std::string>& labels) const {
  std::set<int> cur{initial};
  for (const std::string& label : labels) {
    std::set<int> next;
    for (int s : cur) {
      auto it = delta[static_cast<std::size_t>(s)].find(label);
      if (it != delta[static_cast<std::size_t>(s)].end())
        next.insert(it->second.begin(), it->second.end());
    }
    if (next.empty()) return false;
    cur = std::move(next);
  }
  for (int s : cur)
    if (accepting.count(s)) return true;
  return false;
}

bool Fsa::accepts(const std::vector<Token>& tokens) const {
  std::vector<std::string> labels;
  labels.reserve(tokens.size());
  for (const Token& t : tokens) labels.push_back(t.text);
  return accepts(labels);
}

std::size_t Fsa::transition_count() const {
  std::size_t n = 0;
  for (const auto& row : delta)
    for (const auto& [label, succs] : row) n += succs.size();
  return n;
}

Fsa build_pta(const std::vector<ProjectedTrace>& traces) {
  if (traces.empty()) throw std::runtime_error("cannot mine from an empty trace list");
  Fsa pta;
  pta.state_count = 1;
  pta.delta.emplace_back();
  for (const ProjectedTrace& t : traces) {
    int cur = 0;
    for (const Token& tok : t.tokens) {
      auto& row = pta.delta[static_cast<std::size_t>(cur)];
      auto it = row.find(tok.text);
      if (it != row.end()) {
        cur = *it->second.begin();  // PTA rows are deterministic
      } else {
        const int next = pta.state_count++;
        pta.delta.emplace_back();
        row.emplace(tok.text, std::set<int>{next});
        cur = next;
      }
    }
    pta.accepting.insert(cur);
  }
  return pta;
}

namespace {

// Tail strings of length <= k from `state`, label texts joined with '\x1f'.
void collect_tails(const Fsa& fsa, int state, int left, std::string& cur,
                   std::set<std::string>& out) {
  if (fsa.accepting.count(state)) out.insert(cur);
  if (left == 0) {
    out.insert(cur);
    return;
  }
  for (const auto& [label, succs] : fsa.delta[static_cast<std::size_t>(state)]) {
    const std::size_t len = cur.size();
    if (!cur.empty()) cur.push_back('\x1f');
    cur += label;
    for (int s : succs) collect_tails(fsa, s, left - 1, cur, out);
    cur.resize(len);
  }
}

Fsa merge_states(const Fsa& fsa, const std::vector<int>& representative) {
  // representative maps old state -> class id (class ids dense from 0).
  int classes = 0;
  for (int r : representative) classes = std::max(classes, r + 1);
  Fsa out;
  out.state_count = classes;
  out.delta.resize(static_cast<std::size_t>(classes));
  out.initial = representative[static_cast<std::size_t>(fsa.initial)];
  for (int a : fsa.accepting) out.accepting.insert(representative[static_cast<std::size_t>(a)]);
  for (int s = 0; s < fsa.state_count; ++s)
    for (const auto& [label, succs] : fsa.delta[static_cast<std::size_t>(s)])
      for (int t : succs)
        out.delta[static_cast<std::size_t>(representative[static_cast<std::size_t>(s)])][label].insert(
            representative[static_cast<std::size_t>(t)]);
  return out;
}

// Stable renumbering: BFS from the initial state following labels in order,
// unreachable states (impossible here) appended last.
Fsa renumber(const Fsa& fsa) {
  std::vector<int> order(static_cast<std::size_t>(fsa.state_count), -1);
  int next = 0;
  std::deque<int> queue{fsa.initial};
  order[static_cast<std::size_t>(fsa.initial)] = next++;
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (const auto& [label, succs] : fsa.delta[static_cast<std::size_t>(s)])
      for (int t : succs)
        if (order[static_cast<std::size_t>(t)] < 0) {
          order[static_cast<std::size_t>(t)] = next++;
          queue.push_back(t);
        }
  }
  for (int s = 0; s < fsa.state_count; ++s)
    if (order[static_cast<std::size_t>(s)] < 0) order[static_cast<std::size_t>(s)] = next++;
  return merge_states(fsa, order);
}

}  // namespace

Fsa ktails(const std::vector<ProjectedTrace>& traces, int k) {
  if (k < 1) throw std::runtime_error("k must be >= 1");
  Fsa fsa = build_pta(traces);
  for (;;) {
    std::map<std::set<std::string>, std::vector<int>> by_tails;
    for (int s = 0; s < fsa.state_count; ++s) {
      std::set<std::string> tails;
      std::string cur;
      collect_tails(fsa, s, k, cur, tails);
      by_tails[std::move(tails)].push_back(s);
    }
    if (by_tails.size() == static_cast<std::size_t>(fsa.state_count)) break;
    std::vector<int> representative(static_cast<std::size_t>(fsa.state_count), -1);
    int next = 0;
    for (const auto& [tails, states] : by_tails) {
      // Groups are visited in tail-set order; ids stay dense.
      (void)tails;
      for (int s : states) representative[static_cast<std::size_t>(s)] = next;
      ++next;
    }
    fsa = merge_states(fsa, representative);
  }
  return renumber(fsa);
}

SeqModel fit_seq_model(const std::vector<ProjectedTrace>& traces) {
  if (traces.empty()) throw std::runtime_error("cannot fit a sequence model on no traces");
  SeqModel model;
  for (const ProjectedTrace& t : traces)
    for (std::size_t i = 0; i + 1 < t.tokens.size(); ++i)
      ++model.counts[t.tokens[i].text][t.tokens[i + 1].text];
  for (const auto& [from, row] : model.counts) {
    long total = 0;
    for (const auto& [to, n] : row) total += n;
    for (const auto& [to, n] : row)
      model.trans[from][to] = static_cast<double>(n) / static_cast<double>(total);
  }
  return model;
}

double SeqModel::log_likelihood(const std::vector<ProjectedTrace>& traces) const {
  double ll = 0.0;
  for (const ProjectedTrace& t : traces)
    for (std::size_t i = 0; i + 1 < t.tokens.size(); ++i) {
      auto row = trans.find(t.tokens[i].text);
      if (row == trans.end()) return -std::numeric_limits<double>::infinity();
      auto p = row->second.find(t.tokens[i + 1].text);
      if (p == row->second.end() || p->second <= 0.0)
        return -std::numeric_limits<double>::infinity();
      ll += std::log(p->second);
    }
  return ll;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string export_dot(const Fsa& fsa) {
  std::ostringstream out;
  out << "digraph fsa {\n  rankdir=LR;\n";
  for (int s = 0; s < fsa.state_count; ++s) {
    out << "  " << s << " [shape=" << (fsa.accepting.count(s) ? "doublecircle" : "circle");
    if (s == fsa.initial) out << ", style=bold";
    out << "];\n";
  }
  for (int s = 0; s < fsa.state_count; ++s)
    for (const auto& [label, succs] : fsa.delta[static_cast<std::size_t>(s)])
      for (int t : succs)
        out << "  " << s << " -> " << t << " [label=\"" << dot_escape(label) << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string export_dot(const SeqModel& model) {
  std::set<std::string> states;
  for (const auto& [from, row] : model.trans) {
    states.insert(from);
    for (const auto& [to, p] : row) states.insert(to);
  }
  std::ostringstream out;
  out << "digraph markov {\n  rankdir=LR;\n";
  for (const std::string& s : states)
    out << "  \"" << dot_escape(s) << "\" [shape=ellipse];\n";
  char buf[32];
  for (const auto& [from, row] : model.trans)
    for (const auto& [to, p] : row) {
      std::snprintf(buf, sizeof buf, "%.3f", p);
      out << "  \"" << dot_escape(from) << "\" -> \"" << dot_escape(to) << "\" [label=\"" << buf
          << "\"];\n";
    }
  out << "}\n";
  return out.str();
}

std::vector<ProjectedTrace> project_corpus(const Corpus& c, const TermCluster& cluster,
                                           int cluster_id) {
  std::vector<ProjectedTrace> out;
  for (const Trace* t : c.all_traces()) {
    std::optional<ProjectedTrace> p = project(*t, cluster);
    if (p) {
      p->cluster_id = cluster_id;
      out.push_back(std::move(*p));
    }
  }
  return out;
}

std::vector<ProjectedTrace> dedup_traces(const std::vector<ProjectedTrace>& traces) {
  std::vector<ProjectedTrace> out;
  std::set<std::vector<std::string>> seen;
  for (const ProjectedTrace& t : traces) {
    std::vector<std::string> key;
    key.reserve(t.tokens.size());
    for (const Token& tok : t.tokens) key.push_back(tok.text);
    if (seen.insert(std::move(key)).second) out.push_back(t);
  }
  return out;
}

}  // namespace specmine
