// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Logoscope Authors

#include "markup.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_map>
#include <unordered_set>

#include "utf8.hpp"

namespace logoscope::markup {

const std::string* Node::attribute(std::string_view name) const {
  for (const auto& [k, v] : attributes) {
    if (k == name) return &v;
  }
  return nullptr;
}

namespace {

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool iequals_prefix(std::string_view text, std::size_t pos, std::string_view needle) {
  if (text.size() - pos < needle.size()) return false;
  for (std::size_t i = 0; i < needle.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[pos + i])) != needle[i]) return false;
  }
  return true;
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':' || c == '.';
}

const std::unordered_set<std::string_view>& void_elements() {
  static const std::unordered_set<std::string_view> kVoid = {
      "area", "base", "br", "col", "embed", "hr", "img", "input",
      "link", "meta", "param", "source", "track", "wbr"};
  return kVoid;
}

const std::unordered_set<std::string_view>& raw_text_elements() {
  static const std::unordered_set<std::string_view> kRaw = {"script", "style", "textarea", "noscript"};
  return kRaw;
}

// Opening one of these implicitly closes an open <p>.
const std::unordered_set<std::string_view>& closes_paragraph() {
  static const std::unordered_set<std::string_view> kBlocks = {
      "p", "div", "section", "article", "aside", "ul", "ol", "table", "h1", "h2", "h3",
      "h4", "h5", "h6", "header", "footer", "nav", "blockquote", "pre", "figure", "form", "hr"};
  return kBlocks;
}

class Parser {
 public:
  Parser(std::string_view doc, Mode mode) : doc_(doc), mode_(mode) {
    root_ = std::make_unique<Node>();
    root_->tag = "#root";
    stack_.push_back(root_.get());
  }

  std::unique_ptr<Node> run() {
    while (pos_ < doc_.size()) {
      if (doc_[pos_] == '<') {
        if (!markup()) text_until_next_tag(pos_ + 1);
      } else {
        text_until_next_tag(pos_);
      }
    }
    return std::move(root_);
  }

 private:
  void add_text(std::string_view raw) {
    if (raw.empty()) return;
    Node* parent = stack_.back();
    if (!parent->children.empty() && parent->children.back()->is_text()) {
      parent->children.back()->text += raw;
      return;
    }
    auto node = std::make_unique<Node>();
    node->text = std::string(raw);
    parent->children.push_back(std::move(node));
  }

  void text_until_next_tag(std::size_t from) {
    std::size_t next = doc_.find('<', from);
    if (next == std::string_view::npos) next = doc_.size();
    add_text(doc_.substr(pos_, next - pos_));
    pos_ = next;
  }

  // Returns false when the '<' does not start markup and must be read as text.
  bool markup() {
    if (doc_.compare(pos_, 4, "<!--") == 0) {
      const std::size_t end = doc_.find("-->", pos_ + 4);
      pos_ = end == std::string_view::npos ? doc_.size() : end + 3;
      return true;
    }
    if (doc_.compare(pos_, 9, "<![CDATA[") == 0) {
      const std::size_t end = doc_.find("]]>", pos_ + 9);
      const std::size_t stop = end == std::string_view::npos ? doc_.size() : end;
      // CDATA content is literal; escape '&' so entity decoding leaves it intact.
      std::string literal;
      for (char c : doc_.substr(pos_ + 9, stop - pos_ - 9)) {
        if (c == '&') literal += "&amp;";
        else literal.push_back(c);
      }
      add_text(literal);
      pos_ = end == std::string_view::npos ? doc_.size() : end + 3;
      return true;
    }
    if (doc_.compare(pos_, 2, "<!") == 0 || doc_.compare(pos_, 2, "<?") == 0) {
      const std::size_t end = doc_.find('>', pos_);
      pos_ = end == std::string_view::npos ? doc_.size() : end + 1;
      return true;
    }
    if (pos_ + 1 < doc_.size() && doc_[pos_ + 1] == '/') return closing_tag();
    if (pos_ + 1 < doc_.size() && std::isalpha(static_cast<unsigned char>(doc_[pos_ + 1]))) return opening_tag();
    return false;
  }

  bool closing_tag() {
    std::size_t i = pos_ + 2;
    const std::size_t start = i;
    while (i < doc_.size() && is_name_char(doc_[i])) ++i;
    const std::string name = lower_ascii(doc_.substr(start, i - start));
    const std::size_t end = doc_.find('>', i);
    pos_ = end == std::string_view::npos ? doc_.size() : end + 1;
    if (name.empty()) return true;
    for (std::size_t k = stack_.size(); k-- > 1;) {
      if (stack_[k]->tag == name) {
        stack_.resize(k);
        return true;
      }
    }
    return true;  // unmatched: ignored
  }

  bool opening_tag() {
    std::size_t i = pos_ + 1;
    const std::size_t start = i;
    while (i < doc_.size() && is_name_char(doc_[i])) ++i;
    auto node = std::make_unique<Node>();
    node->tag = lower_ascii(doc_.substr(start, i - start));
    bool self_closing = false;
    // Attributes.
    while (i < doc_.size()) {
      while (i < doc_.size() && std::isspace(static_cast<unsigned char>(doc_[i]))) ++i;
      if (i >= doc_.size()) break;
      if (doc_[i] == '>') {
        ++i;
        break;
      }
      if (doc_[i] == '/') {
        self_closing = true;
        ++i;
        continue;
      }
      const std::size_t name_start = i;
      while (i < doc_.size() && !std::isspace(static_cast<unsigned char>(doc_[i])) && doc_[i] != '=' &&
             doc_[i] != '>' && doc_[i] != '/') {
        ++i;
      }
      std::string name = lower_ascii(doc_.substr(name_start, i - name_start));
      if (name.empty()) {
        ++i;
        continue;
      }
      std::string value;
      while (i < doc_.size() && std::isspace(static_cast<unsigned char>(doc_[i]))) ++i;
      if (i < doc_.size() && doc_[i] == '=') {
        ++i;
        while (i < doc_.size() && std::isspace(static_cast<unsigned char>(doc_[i]))) ++i;
        if (i < doc_.size() && (doc_[i] == '"' || doc_[i] == '\'')) {
          const char quote = doc_[i++];
          const std::size_t vend = doc_.find(quote, i);
          const std::size_t stop = vend == std::string_view::npos ? doc_.size() : vend;
          value = std::string(doc_.substr(i, stop - i));
          i = vend == std::string_view::npos ? doc_.size() : vend + 1;
        } else {
          const std::size_t vstart = i;
          while (i < doc_.size() && !std::isspace(static_cast<unsigned char>(doc_[i])) && doc_[i] != '>') ++i;
          value = std::string(doc_.substr(vstart, i - vstart));
        }
      }
      node->attributes.emplace_back(std::move(name), std::move(value));
    }
    pos_ = i;

    const std::string tag = node->tag;
    if (mode_ == Mode::kHtml && closes_paragraph().contains(tag)) {
      for (std::size_t k = stack_.size(); k-- > 1;) {
        if (stack_[k]->tag == "p") {
          stack_.resize(k);
          break;
        }
        if (closes_paragraph().contains(stack_[k]->tag)) break;
      }
    }
    Node* raw = node.get();
    stack_.back()->children.push_back(std::move(node));
    const bool is_void = mode_ == Mode::kHtml && void_elements().contains(tag);
    if (self_closing || is_void) return true;

    if (mode_ == Mode::kHtml && raw_text_elements().contains(tag)) {
      const std::string close = "</" + tag;
      std::size_t j = pos_;
      while (j < doc_.size() && !iequals_prefix(doc_, j, close)) ++j;
      if (j > pos_) {
        auto text = std::make_unique<Node>();
        text->text = std::string(doc_.substr(pos_, j - pos_));
        raw->children.push_back(std::move(text));
      }
      const std::size_t end = doc_.find('>', j);
      pos_ = (j >= doc_.size() || end == std::string_view::npos) ? doc_.size() : end + 1;
      return true;
    }
    stack_.push_back(raw);
    return true;
  }

  std::string_view doc_;
  Mode mode_;
  std::size_t pos_ = 0;
  std::unique_ptr<Node> root_;
  std::vector<Node*> stack_;
};

const std::unordered_map<std::string_view, char32_t>& entity_table() {
  static const std::unordered_map<std::string_view, char32_t> kEntities = {
      {"amp", U'&'},      {"lt", U'<'},        {"gt", U'>'},        {"quot", U'"'},
      {"apos", U'\''},    {"nbsp", U'\u00A0'}, {"euro", U'€'},      {"laquo", U'«'},
      {"raquo", U'»'},    {"lsquo", U'‘'},     {"rsquo", U'’'},     {"ldquo", U'“'},
      {"rdquo", U'”'},    {"sbquo", U'‚'},     {"bdquo", U'„'},     {"ndash", U'–'},
      {"mdash", U'—'},    {"hellip", U'…'},    {"copy", U'©'},      {"reg", U'®'},
      {"trade", U'™'},    {"deg", U'°'},       {"middot", U'·'},    {"bull", U'•'},
      {"para", U'¶'},     {"sect", U'§'},      {"times", U'×'},     {"divide", U'÷'},
      {"pound", U'£'},    {"yen", U'¥'},       {"cent", U'¢'},      {"shy", U'\u00AD'},
      {"thinsp", U'\u2009'}, {"ensp", U'\u2002'}, {"emsp", U'\u2003'}, {"iexcl", U'¡'},
      {"iquest", U'¿'},   {"ordf", U'ª'},      {"ordm", U'º'},      {"szlig", U'ß'},
      {"Agrave", U'À'},   {"Aacute", U'Á'},    {"Acirc", U'Â'},     {"Atilde", U'Ã'},
      {"Auml", U'Ä'},     {"Aring", U'Å'},     {"AElig", U'Æ'},     {"Ccedil", U'Ç'},
      {"Egrave", U'È'},   {"Eacute", U'É'},    {"Ecirc", U'Ê'},     {"Euml", U'Ë'},
      {"Igrave", U'Ì'},   {"Iacute", U'Í'},    {"Icirc", U'Î'},     {"Iuml", U'Ï'},
      {"Ntilde", U'Ñ'},   {"Ograve", U'Ò'},    {"Oacute", U'Ó'},    {"Ocirc", U'Ô'},
      {"Otilde", U'Õ'},   {"Ouml", U'Ö'},      {"Oslash", U'Ø'},    {"Ugrave", U'Ù'},
      {"Uacute", U'Ú'},   {"Ucirc", U'Û'},     {"Uuml", U'Ü'},      {"Yacute", U'Ý'},
      {"agrave", U'à'},   {"aacute", U'á'},    {"acirc", U'â'},     {"atilde", U'ã'},
      {"auml", U'ä'},     {"aring", U'å'},     {"aelig", U'æ'},     {"ccedil", U'ç'},
      {"egrave", U'è'},   {"eacute", U'é'},    {"ecirc", U'ê'},     {"euml", U'ë'},
      {"igrave", U'ì'},   {"iacute", U'í'},    {"icirc", U'î'},     {"iuml", U'ï'},
      {"ntilde", U'ñ'},   {"ograve", U'ò'},    {"oacute", U'ó'},    {"ocirc", U'ô'},
      {"otilde", U'õ'},   {"ouml", U'ö'},      {"oslash", U'ø'},    {"ugrave", U'ù'},
      {"uacute", U'ú'},   {"ucirc", U'û'},     {"uuml", U'ü'},      {"yacute", U'ý'},
      {"yuml", U'ÿ'},     {"OElig", U'Œ'},     {"oelig", U'œ'},     {"Yuml", U'Ÿ'},
  };
  return kEntities;
}

}  // namespace

std::unique_ptr<Node> parse(std::string_view document, Mode mode) { return Parser(document, mode).run(); }

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out.push_back(text[i++]);
      continue;
    }
    const std::size_t semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(text[i++]);
      continue;
    }
    const std::string_view name = text.substr(i + 1, semi - i - 1);
    if (!name.empty() && name[0] == '#') {
      std::uint32_t cp = 0;
      const bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
      const std::string_view digits = name.substr(hex ? 2 : 1);
      auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
      if (!digits.empty() && ec == std::errc() && p == digits.data() + digits.size() && cp > 0 &&
          cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF)) {
        out += utf8::encode(static_cast<char32_t>(cp));
        i = semi + 1;
        continue;
      }
    } else if (auto it = entity_table().find(name); it != entity_table().end()) {
      out += utf8::encode(it->second);
      i = semi + 1;
      continue;
    }
    out.push_back(text[i++]);
  }
  return out;
}

std::string normalize_space(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  const auto cps = utf8::decode(text);
  for (char32_t c : cps) {
    if (utf8::is_space(c) || c == U'\u00A0' || c == U'\u00AD') {
      if (c != U'\u00AD') pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out += utf8::encode(c);
  }
  return out;
}

std::string inner_text(const Node& node) {
  if (node.is_text()) return node.text;
  std::string out;
  for (const auto& child : node.children) {
    if (!child->is_text() && child->tag == "br") {
      out.push_back(' ');
      continue;
    }
    out += inner_text(*child);
  }
  return out;
}

}  // namespace logoscope::markup
