/*
Copyright (C) 2026 The xtt Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "xtt/tree.hpp"

#include <algorithm>

namespace xtt {

namespace {

bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_delim(char c) noexcept { return is_space(c) || c == '(' || c == ')'; }

// Byte offset -> code-point offset for UTF-8 text.
std::size_t char_position(std::string_view text, std::size_t byte_offset) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < byte_offset && i < text.size(); ++i) {
    if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) ++n;
  }
  return n;
}

class SexprParser {
 public:
  explicit SexprParser(std::string_view text) : text_(text) {}

  Tree parse_document() {
    skip_space();
    if (pos_ == text_.size()) fail("empty input");
    Tree t = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail("trailing content after complete expression");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t at = char_position(text_, pos_);
    throw ParseError(msg + " at position " + std::to_string(at), at);
  }

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  std::string token() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_delim(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Tree parse_expr() {
    skip_space();
    if (pos_ == text_.size()) fail("unbalanced parentheses: unexpected end of input");
    char c = text_[pos_];
    if (c == ')') fail("unbalanced parentheses: unexpected ')'");
    if (c != '(') return Tree(token());

    std::size_t open = pos_++;
    skip_space();
    if (pos_ == text_.size()) fail("unbalanced parentheses: unexpected end of input");
    if (text_[pos_] == ')') {
      pos_ = open;
      fail("empty node \"()\"");
    }
    if (text_[pos_] == '(') fail("expected a node label, found '('");
    std::string label = token();

    std::vector<Tree> children;
    for (;;) {
      skip_space();
      if (pos_ == text_.size()) fail("unbalanced parentheses: unexpected end of input");
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      children.push_back(parse_expr());
    }
    return Tree(std::move(label), std::move(children));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void serialize_into(const Tree& t, std::string& out) {
  if (t.is_leaf()) {
    out += t.label();
    return;
  }
  out += '(';
  out += t.label();
  for (const Tree& c : t.children()) {
    out += ' ';
    serialize_into(c, out);
  }
  out += ')';
}

void yield_into(const Tree& t, std::vector<std::string>& out) {
  if (t.is_leaf()) {
    out.push_back(t.label());
    return;
  }
  for (const Tree& c : t.children()) yield_into(c, out);
}

Tree replace_from(const Tree& t, const Path& path, std::size_t step, const Tree& r) {
  if (step == path.size()) return r;
  std::size_t i = path[step];
  if (i >= t.arity()) {
    throw PathError("path " + format_path(path) + ": step " + std::to_string(step) +
                        " indexes child " + std::to_string(i) + " of a node with " +
                        std::to_string(t.arity()) + " children",
                    step);
  }
  std::vector<Tree> kids(t.children().begin(), t.children().end());
  kids[i] = replace_from(kids[i], path, step + 1, r);
  return Tree(t.label(), std::move(kids));
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t position)
    : Error(what), position_(position) {}

PathError::PathError(const std::string& what, std::size_t failing_step)
    : Error(what), failing_step_(failing_step) {}

std::string format_path(const Path& path) {
  std::string s = "[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(path[i]);
  }
  return s + "]";
}

bool is_prefix(const Path& prefix, const Path& path) {
  return prefix.size() <= path.size() && std::equal(prefix.begin(), prefix.end(), path.begin());
}

bool is_valid_label(std::string_view label) noexcept {
  return !label.empty() && std::none_of(label.begin(), label.end(), is_delim);
}

Tree::Tree(std::string label, std::vector<Tree> children) {
  if (!is_valid_label(label)) throw InvalidLabel("invalid tree label \"" + label + "\"");
  node_ = std::make_shared<const Node>(Node{std::move(label), std::move(children)});
}

std::size_t Tree::node_count() const {
  std::size_t n = 1;
  for (const Tree& c : children()) n += c.node_count();
  return n;
}

std::size_t Tree::leaf_count() const {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const Tree& c : children()) n += c.leaf_count();
  return n;
}

std::size_t Tree::depth() const {
  std::size_t d = 0;
  for (const Tree& c : children()) d = std::max(d, c.depth() + 1);
  return d;
}

bool operator==(const Tree& a, const Tree& b) {
  if (a.node_ == b.node_) return true;
  if (a.label() != b.label() || a.arity() != b.arity()) return false;
  return std::equal(a.children().begin(), a.children().end(), b.children().begin());
}

Tree parse_sexpr(std::string_view text) { return SexprParser(text).parse_document(); }

std::string serialize(const Tree& tree) {
  std::string out;
  serialize_into(tree, out);
  return out;
}

std::vector<std::string> yield_of(const Tree& tree) {
  std::vector<std::string> out;
  yield_into(tree, out);
  return out;
}

bool is_valid_path(const Tree& tree, const Path& path) noexcept {
  const Tree* t = &tree;
  for (std::size_t i : path) {
    if (i >= t->arity()) return false;
    t = &t->children()[i];
  }
  return true;
}

const Tree& subtree_at(const Tree& tree, const Path& path) {
  const Tree* t = &tree;
  for (std::size_t step = 0; step < path.size(); ++step) {
    std::size_t i = path[step];
    if (i >= t->arity()) {
      throw PathError("path " + format_path(path) + ": step " + std::to_string(step) +
                          " indexes child " + std::to_string(i) + " of a node with " +
                          std::to_string(t->arity()) + " children",
                      step);
    }
    t = &t->children()[i];
  }
  return *t;
}

Tree replace_at(const Tree& tree, const Path& path, const Tree& replacement) {
  return replace_from(tree, path, 0, replacement);
}

std::string join(const std::vector<std::string>& words, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += sep;
    out += words[i];
  }
  return out;
}

}  // namespace xtt
