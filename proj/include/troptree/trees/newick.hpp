#pragma once

// Newick text with exact rational branch lengths.
//
//   [&R] (((1:4,2:4)w:3,3:7)v:3,(4:6,5:6)u:4)r;
//
// Leaves are the integers 1..n. Branch lengths are "p", "p/q" or finite
// decimals. The optional leading marker says whether the top node is a root
// ([&R]) or only the place where an unrooted tree was written down ([&U]);
// without a marker a top node with two children is read as a root. An unrooted
// top node with two children is suppressed by merging its two edges.

#include "troptree/trees/weighted_tree.hpp"

#include <cctype>
#include <climits>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace troptree {

class NewickError : public std::runtime_error {
 public:
  NewickError(const std::string& what, int line, int column)
      : std::runtime_error("newick:" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

 private:
  int line_;
  int column_;
};

namespace detail {

class NewickReader {
 public:
  explicit NewickReader(std::string_view text) : text_(text) {}

  WeightedTree read() {
    skip_space();
    enum class Marker { None, Rooted, Unrooted } marker = Marker::None;
    if (peek() == '[') {
      std::size_t close = text_.find(']', pos_);
      if (close == std::string_view::npos) fail("unterminated comment");
      std::string_view body = text_.substr(pos_ + 1, close - pos_ - 1);
      if (body == "&R" || body == "&r") marker = Marker::Rooted;
      else if (body == "&U" || body == "&u") marker = Marker::Unrooted;
      advance(close - pos_ + 1);
      skip_space();
    }
    if (peek() != '(') fail("expected '(' at start of tree");
    std::size_t top = parse_subtree();
    skip_space();
    if (peek() == ':') {
      advance(1);
      (void)parse_length();
      skip_space();
    }
    if (peek() != ';') fail("expected ';' at end of tree");
    advance(1);
    skip_space();
    if (pos_ != text_.size()) fail("unexpected text after ';'");

    bool rooted = marker == Marker::Rooted || (marker == Marker::None && children_[top].size() == 2);
    WeightedTree::Builder b;
    std::vector<NodeId> ids(labels_.size(), SIZE_MAX);
    bool suppress = !rooted && children_[top].size() == 2;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (suppress && i == top) continue;
      if (leaf_[i]) ids[i] = b.add_leaf(*leaf_[i]);
      else ids[i] = b.add_node(labels_[i]);
    }
    for (std::size_t u = 0; u < labels_.size(); ++u) {
      if (suppress && u == top) continue;
      for (std::size_t v : children_[u]) b.add_edge(ids[u], ids[v], lengths_[v]);
    }
    if (suppress) {
      std::size_t a = children_[top][0], c = children_[top][1];
      b.add_edge(ids[a], ids[c], lengths_[a] + lengths_[c]);
    }
    if (rooted) b.set_root(ids[top]);
    try {
      return std::move(b).build();
    } catch (const TreeError& e) {
      throw NewickError(e.what(), 1, 1);
    }
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw NewickError(what, line_, column_); }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void advance(std::size_t k) {
    for (std::size_t i = 0; i < k && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
    }
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance(1);
  }

  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-' || c == '\'';
  }
  std::string parse_name() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && name_char(text_[pos_])) advance(1);
    return std::string(text_.substr(start, pos_ - start));
  }
  Rational parse_length() {
    skip_space();
    int line = line_, col = column_;
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/' || text_[pos_] == '.' ||
            text_[pos_] == '-' || text_[pos_] == '+'))
      advance(1);
    std::string_view token = text_.substr(start, pos_ - start);
    try {
      Rational r = Rational::parse(token);
      if (r.sign() < 0) throw NewickError("negative branch length " + r.str(), line, col);
      return r;
    } catch (const std::invalid_argument&) {
      throw NewickError("invalid branch length '" + std::string(token) + "'", line, col);
    }
  }

  std::size_t new_node() {
    labels_.emplace_back();
    leaf_.emplace_back();
    children_.emplace_back();
    lengths_.emplace_back();
    return labels_.size() - 1;
  }

  std::size_t parse_subtree() {
    skip_space();
    std::size_t id = new_node();
    if (peek() == '(') {
      advance(1);
      while (true) {
        std::size_t child = parse_subtree();
        children_[id].push_back(child);
        skip_space();
        if (peek() == ',') {
          advance(1);
          continue;
        }
        if (peek() == ')') {
          advance(1);
          break;
        }
        fail("expected ',' or ')'");
      }
      skip_space();
      labels_[id] = parse_name();
    } else {
      int line = line_, col = column_;
      std::string name = parse_name();
      if (name.empty()) fail("expected a leaf label");
      int label = 0;
      for (char c : name) {
        if (!std::isdigit(static_cast<unsigned char>(c)) || label > 100000000)
          throw NewickError("leaf labels must be positive integers, got '" + name + "'", line, col);
        label = label * 10 + (c - '0');
      }
      if (label < 1) throw NewickError("leaf labels must be positive integers, got '" + name + "'", line, col);
      leaf_[id] = label;
    }
    skip_space();
    if (peek() == ':') {
      advance(1);
      lengths_[id] = parse_length();
    } else if (id != 0) {
      // only the top node may omit its length
      fail("missing branch length");
    }
    return id;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  std::vector<std::string> labels_;
  std::vector<std::optional<int>> leaf_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<Rational> lengths_;
};

}  // namespace detail

inline WeightedTree parse_newick(std::string_view text) { return detail::NewickReader(text).read(); }

// Deterministic Newick: children ordered by smallest leaf label below them.
// Rooted trees start at the root; unrooted ones at the neighbour of leaf 1.
inline std::string to_newick(const WeightedTree& t) {
  std::vector<int> min_label(t.node_count(), 0);
  NodeId start;
  if (t.root()) start = *t.root();
  else start = t.edge(t.node(t.leaf_node(1)).edges.front()).other(t.leaf_node(1));

  // For n = 2 unrooted the neighbour of leaf 1 is leaf 2; write it as a
  // two-child unrooted top node instead.
  if (t.is_leaf(start)) {
    const auto& e = t.edge(t.node(start).edges.front());
    return "[&U](1:0,2:" + e.length.str() + ");";
  }

  std::function<int(NodeId, NodeId)> compute = [&](NodeId u, NodeId from) {
    int best = t.node(u).leaf.value_or(INT32_MAX);
    for (EdgeId e : t.node(u).edges) {
      NodeId v = t.edge(e).other(u);
      if (v != from) best = std::min(best, compute(v, u));
    }
    return min_label[u] = best;
  };
  compute(start, SIZE_MAX);

  std::ostringstream os;
  os << (t.root() ? "[&R]" : "[&U]");
  std::function<void(NodeId, NodeId)> write = [&](NodeId u, NodeId from) {
    const auto& node = t.node(u);
    if (node.leaf) {
      os << *node.leaf;
      return;
    }
    std::vector<std::pair<int, EdgeId>> kids;
    for (EdgeId e : node.edges) {
      NodeId v = t.edge(e).other(u);
      if (v != from) kids.emplace_back(min_label[v], e);
    }
    std::sort(kids.begin(), kids.end());
    os << '(';
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (i) os << ',';
      NodeId v = t.edge(kids[i].second).other(u);
      write(v, u);
      os << ':' << t.edge(kids[i].second).length.str();
    }
    os << ')' << node.name;
  };
  write(start, SIZE_MAX);
  os << ';';
  return os.str();
}

// 64-bit FNV-1a of the canonical Newick text, as 16 hex digits.
inline std::string tree_digest(const WeightedTree& t) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : to_newick(t)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xf];
  return out;
}

}  // namespace troptree
