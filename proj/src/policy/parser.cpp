// Copyright 2026 The makpabe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cctype>
#include <numeric>

#include "makpabe/errors.hpp"
#include "makpabe/policy.hpp"

namespace makpabe::policy {

PolicyNode PolicyNode::leaf(AttributeIndex attribute) {
  PolicyNode n;
  n.attribute = attribute;
  n.threshold = 1;
  return n;
}

PolicyNode PolicyNode::gate(std::size_t threshold, std::vector<PolicyNode> children) {
  if (children.empty() || threshold < 1 || threshold > children.size()) {
    throw Error(Errc::kThresholdOutOfRange, "threshold " + std::to_string(threshold) + " outside [1, " +
                                                std::to_string(children.size()) + "]");
  }
  PolicyNode n;
  n.threshold = threshold;
  n.children = std::move(children);
  return n;
}

PolicyNode PolicyNode::all_of(std::vector<PolicyNode> children) {
  const std::size_t n = children.size();
  return gate(n, std::move(children));
}

PolicyNode PolicyNode::any_of(std::vector<PolicyNode> children) { return gate(1, std::move(children)); }

std::size_t PolicyNode::leaf_count() const noexcept {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.leaf_count();
  return n;
}

std::size_t PolicyNode::depth() const noexcept {
  std::size_t d = 0;
  for (const auto& c : children) d = std::max(d, c.depth());
  return d + 1;
}

bool evaluate(const PolicyNode& node, const AttributeSet& attributes) {
  if (node.is_leaf()) return attributes.contains(node.attribute);
  std::size_t satisfied = 0;
  for (const auto& c : node.children) satisfied += evaluate(c, attributes) ? 1 : 0;
  return satisfied >= node.threshold;
}

namespace {

enum class Tok { kName, kInt, kAnd, kOr, kOf, kLParen, kRParen, kComma, kEnd };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t offset;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_punct(char c) { return c == '(' || c == ')' || c == ','; }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (c == '(') out.push_back({Tok::kLParen, text.substr(i, 1), i});
    if (c == ')') out.push_back({Tok::kRParen, text.substr(i, 1), i});
    if (c == ',') out.push_back({Tok::kComma, text.substr(i, 1), i});
    if (is_punct(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i]) && !is_punct(text[i])) ++i;
    const std::string_view word = text.substr(start, i - start);
    Tok kind = Tok::kName;
    if (word == "and") kind = Tok::kAnd;
    else if (word == "or") kind = Tok::kOr;
    else if (word == "of") kind = Tok::kOf;
    else if (std::all_of(word.begin(), word.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; }))
      kind = Tok::kInt;
    out.push_back({kind, word, start});
  }
  out.push_back({Tok::kEnd, {}, text.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const AttributeUniverse& universe)
      : tokens_(tokenize(text)), universe_(universe) {}

  PolicyNode parse() {
    PolicyNode root = expr();
    if (peek().kind != Tok::kEnd) fail("unexpected '" + std::string(peek().text) + "'");
    return root;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& what) const { throw PolicySyntaxError(peek().offset, what); }

  void expect(Tok kind, std::string_view what) {
    if (peek().kind != kind) fail("expected " + std::string(what));
    next();
  }

  PolicyNode expr() {
    std::vector<PolicyNode> terms;
    terms.push_back(term());
    while (peek().kind == Tok::kOr) {
      next();
      terms.push_back(term());
    }
    if (terms.size() == 1) return std::move(terms.front());
    return PolicyNode::any_of(std::move(terms));
  }

  PolicyNode term() {
    std::vector<PolicyNode> factors;
    factors.push_back(factor());
    while (peek().kind == Tok::kAnd) {
      next();
      factors.push_back(factor());
    }
    if (factors.size() == 1) return std::move(factors.front());
    return PolicyNode::all_of(std::move(factors));
  }

  PolicyNode factor() {
    const Token& tok = peek();
    if (tok.kind == Tok::kInt && peek(1).kind == Tok::kOf) return threshold();
    if (tok.kind == Tok::kName || tok.kind == Tok::kInt) {
      const auto idx = universe_.find(tok.text);
      if (!idx) {
        throw Error(Errc::kUnknownAttribute,
                    "unknown attribute '" + std::string(tok.text) + "' at offset " + std::to_string(tok.offset));
      }
      next();
      return PolicyNode::leaf(*idx);
    }
    if (tok.kind == Tok::kLParen) {
      next();
      PolicyNode inner = expr();
      expect(Tok::kRParen, "')'");
      return inner;
    }
    if (tok.kind == Tok::kEnd) fail("unexpected end of policy");
    fail("unexpected '" + std::string(tok.text) + "'");
  }

  PolicyNode threshold() {
    const Token tok = next();
    next();  // "of"
    expect(Tok::kLParen, "'(' after 'of'");
    std::vector<PolicyNode> children;
    children.push_back(expr());
    while (peek().kind == Tok::kComma) {
      next();
      children.push_back(expr());
    }
    expect(Tok::kRParen, "')'");
    std::size_t t = 0;
    for (const char c : tok.text) {
      t = t * 10 + static_cast<std::size_t>(c - '0');
      if (t > children.size() + 1) break;  // clamp; out of range either way
    }
    if (t < 1 || t > children.size()) {
      throw Error(Errc::kThresholdOutOfRange, "threshold " + std::string(tok.text) + " at offset " +
                                                  std::to_string(tok.offset) + " outside [1, " +
                                                  std::to_string(children.size()) + "]");
    }
    return PolicyNode::gate(t, std::move(children));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const AttributeUniverse& universe_;
};

void print(const PolicyNode& node, const AttributeUniverse& universe, bool nested, std::string& out) {
  if (node.is_leaf()) {
    out += universe.name(node.attribute);
    return;
  }
  const std::size_t n = node.children.size();
  const bool infix = n >= 2 && (node.threshold == 1 || node.threshold == n);
  if (infix) {
    if (nested) out += '(';
    const char* sep = node.threshold == 1 ? " or " : " and ";
    for (std::size_t i = 0; i < n; ++i) {
      if (i != 0) out += sep;
      print(node.children[i], universe, true, out);
    }
    if (nested) out += ')';
    return;
  }
  out += std::to_string(node.threshold) + " of (";
  for (std::size_t i = 0; i < n; ++i) {
    if (i != 0) out += ", ";
    print(node.children[i], universe, false, out);
  }
  out += ')';
}

}  // namespace

PolicyNode parse_policy(std::string_view text, const AttributeUniverse& universe) {
  return Parser(text, universe).parse();
}

std::string to_string(const PolicyNode& node, const AttributeUniverse& universe) {
  std::string out;
  print(node, universe, false, out);
  return out;
}

}  // namespace makpabe::policy
