// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Tolerant markup parsing shared by the HTML content extractor and the feed
// reader. Never throws on malformed input: unmatched closing tags are ignored
// and open elements are closed at end of input.
namespace logoscope::markup {

struct Node {
  std::string tag;  // lowercased; empty for text nodes
  std::vector<std::pair<std::string, std::string>> attributes;  // raw (undecoded) values
  std::string text;  // raw text for text nodes
  std::vector<std::unique_ptr<Node>> children;

  bool is_text() const { return tag.empty(); }
  const std::string* attribute(std::string_view name) const;
};

enum class Mode { kHtml, kXml };

// Returns a synthetic root node (tag "#root").
std::unique_ptr<Node> parse(std::string_view document, Mode mode);

// Replaces character references (&amp;, &#233;, &#xE9;, ...). Unknown named
// references are left untouched.
std::string decode_entities(std::string_view text);

// Collapses whitespace runs (including no-break spaces) to one space and trims.
std::string normalize_space(std::string_view text);

// Concatenated raw text of all descendant text nodes.
std::string inner_text(const Node& node);

}  // namespace logoscope::markup
