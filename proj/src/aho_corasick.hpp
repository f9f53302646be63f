// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace logoscope {

// Multi-pattern matcher over an arbitrary ordered symbol alphabet. Used over
// bytes for known-form containment and over lemma-pos unit ids for theme terms.
//
// Usage: add() every pattern, build() once, then scan() any number of texts.
// Every occurrence of every pattern is reported, overlapping ones included.
template <typename Symbol>
class AhoCorasick {
 public:
  struct Match {
    std::size_t pattern;
    std::size_t begin;  // symbol offsets, [begin, end)
    std::size_t end;
  };

  AhoCorasick() : nodes_(1) {}

  // Returns the pattern id. Empty patterns are stored but never match.
  std::size_t add(std::span<const Symbol> pattern) {
    if (built_) throw std::logic_error("AhoCorasick::add after build");
    const std::size_t id = lengths_.size();
    lengths_.push_back(pattern.size());
    next_same_.push_back(kNone);
    if (pattern.empty()) return id;
    std::int32_t node = 0;
    for (const Symbol& s : pattern) {
      std::int32_t child = find_child(node, s);
      if (child == kNone) {
        child = static_cast<std::int32_t>(nodes_.size());
        insert_child(node, s, child);
        nodes_.emplace_back();
        nodes_.back().depth = nodes_[static_cast<std::size_t>(node)].depth + 1;
      }
      node = child;
    }
    // Identical patterns are chained so each one reports its own id.
    auto& terminal = nodes_[static_cast<std::size_t>(node)].terminal;
    next_same_[id] = terminal;
    terminal = static_cast<std::int32_t>(id);
    return id;
  }

  void build() {
    std::deque<std::int32_t> queue;
    for (auto& [sym, child] : nodes_[0].next) {
      nodes_[static_cast<std::size_t>(child)].fail = 0;
      queue.push_back(child);
    }
    while (!queue.empty()) {
      const std::int32_t u = queue.front();
      queue.pop_front();
      const auto& un = nodes_[static_cast<std::size_t>(u)];
      for (const auto& [sym, v] : un.next) {
        std::int32_t f = un.fail;
        while (f != 0 && find_child(f, sym) == kNone) f = nodes_[static_cast<std::size_t>(f)].fail;
        std::int32_t target = find_child(f, sym);
        if (target == kNone || target == v) target = 0;
        auto& vn = nodes_[static_cast<std::size_t>(v)];
        vn.fail = target;
        const auto& tn = nodes_[static_cast<std::size_t>(target)];
        vn.output_link = tn.terminal != kNone ? target : tn.output_link;
        queue.push_back(v);
      }
    }
    built_ = true;
  }

  template <typename OnMatch>
  void scan(std::span<const Symbol> text, OnMatch&& on_match) const {
    if (!built_) throw std::logic_error("AhoCorasick::scan before build");
    std::int32_t state = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      const Symbol& s = text[i];
      while (state != 0 && find_child(state, s) == kNone) {
        state = nodes_[static_cast<std::size_t>(state)].fail;
      }
      const std::int32_t child = find_child(state, s);
      state = child == kNone ? 0 : child;
      std::int32_t hit = nodes_[static_cast<std::size_t>(state)].terminal != kNone
                             ? state
                             : nodes_[static_cast<std::size_t>(state)].output_link;
      while (hit != kNone && hit != 0) {
        const auto& hn = nodes_[static_cast<std::size_t>(hit)];
        for (std::int32_t id = hn.terminal; id != kNone; id = next_same_[static_cast<std::size_t>(id)]) {
          const std::size_t len = lengths_[static_cast<std::size_t>(id)];
          on_match(Match{static_cast<std::size_t>(id), i + 1 - len, i + 1});
        }
        hit = hn.output_link;
      }
    }
  }

  std::vector<Match> find_all(std::span<const Symbol> text) const {
    std::vector<Match> out;
    scan(text, [&](const Match& m) { out.push_back(m); });
    return out;
  }

  std::size_t pattern_count() const { return lengths_.size(); }
  std::size_t node_count() const { return nodes_.size(); }
  bool built() const { return built_; }

 private:
  static constexpr std::int32_t kNone = -1;

  struct Node {
    std::vector<std::pair<Symbol, std::int32_t>> next;  // sorted by symbol
    std::int32_t fail = 0;
    std::int32_t output_link = kNone;  // nearest proper suffix state with a terminal
    std::int32_t terminal = kNone;     // head of the identical-pattern chain
    std::uint32_t depth = 0;
  };

  std::int32_t find_child(std::int32_t node, const Symbol& s) const {
    const auto& next = nodes_[static_cast<std::size_t>(node)].next;
    auto it = std::lower_bound(next.begin(), next.end(), s,
                               [](const auto& edge, const Symbol& key) { return edge.first < key; });
    return (it != next.end() && !(s < it->first)) ? it->second : kNone;
  }

  void insert_child(std::int32_t node, const Symbol& s, std::int32_t child) {
    auto& next = nodes_[static_cast<std::size_t>(node)].next;
    auto it = std::lower_bound(next.begin(), next.end(), s,
                               [](const auto& edge, const Symbol& key) { return edge.first < key; });
    next.insert(it, {s, child});
  }

  std::vector<Node> nodes_;
  std::vector<std::size_t> lengths_;
  std::vector<std::int32_t> next_same_;
  bool built_ = false;
};

}  // namespace logoscope
