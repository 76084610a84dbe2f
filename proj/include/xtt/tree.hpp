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

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace xtt {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed s-expression text. `position()` is the code-point offset
/// into the input where the problem was detected.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class InvalidLabel : public Error {
 public:
  using Error::Error;
};

/// A path step indexed a child that does not exist.
class PathError : public Error {
 public:
  PathError(const std::string& what, std::size_t failing_step);
  std::size_t failing_step() const noexcept { return failing_step_; }

 private:
  std::size_t failing_step_;
};

/// Child indices from the root down; the empty path is the root.
using Path = std::vector<std::size_t>;

std::string format_path(const Path& path);  // "[0,1]"
bool is_prefix(const Path& prefix, const Path& path);

/// An ordered, labeled, rooted tree.
///
/// Trees are immutable values. Copies share their nodes, so the engine can
/// hold many partial solutions that differ only near a rewrite site without
/// duplicating the untouched material.
class Tree {
 public:
  explicit Tree(std::string label, std::vector<Tree> children = {});

  const std::string& label() const noexcept { return node_->label; }
  std::span<const Tree> children() const noexcept { return node_->children; }
  const Tree& child(std::size_t i) const { return node_->children.at(i); }
  std::size_t arity() const noexcept { return node_->children.size(); }
  bool is_leaf() const noexcept { return node_->children.empty(); }

  std::size_t node_count() const;
  std::size_t leaf_count() const;
  std::size_t depth() const;  // a leaf has depth 0

  friend bool operator==(const Tree& a, const Tree& b);

 private:
  struct Node {
    std::string label;
    std::vector<Tree> children;
  };
  std::shared_ptr<const Node> node_;
};

/// True iff `label` is usable as a node label: nonempty, no whitespace, no
/// parentheses.
bool is_valid_label(std::string_view label) noexcept;

Tree parse_sexpr(std::string_view text);
std::string serialize(const Tree& tree);
std::vector<std::string> yield_of(const Tree& tree);

bool is_valid_path(const Tree& tree, const Path& path) noexcept;
const Tree& subtree_at(const Tree& tree, const Path& path);
Tree replace_at(const Tree& tree, const Path& path, const Tree& replacement);

std::string join(const std::vector<std::string>& words, std::string_view sep = " ");

}  // namespace xtt
