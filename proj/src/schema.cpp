// Copyright 2026 The eqfuzz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eqfuzz/schema.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <variant>

#include "eqfuzz/errors.hpp"

namespace eqfuzz {

std::string_view to_string(ParamKind kind) {
  switch (kind) {
    case ParamKind::kInt: return "int";
    case ParamKind::kFloat: return "float";
    case ParamKind::kBool: return "bool";
    case ParamKind::kString: return "string";
    case ParamKind::kList: return "list";
    case ParamKind::kTuple: return "tuple";
  }
  return "?";
}

std::string_view to_string(InputMode mode) {
  return mode == InputMode::kArgumentVector ? "argument_vector" : "text_stream";
}

namespace {

// Splits UTF-8 text into code points (invalid bytes pass through singly).
std::vector<std::string> code_points(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    std::size_t n = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 1;
    if (i + n > s.size()) n = 1;
    out.emplace_back(s.substr(i, n));
    i += n;
  }
  return out;
}

std::vector<std::string> range_chars(char lo, char hi) {
  std::vector<std::string> out;
  for (char c = lo; c <= hi; ++c) out.emplace_back(1, c);
  return out;
}

const std::vector<std::string>& printable_ascii() {
  static const std::vector<std::string> kPrintable = range_chars(' ', '~');
  return kPrintable;
}

}  // namespace

std::vector<std::string> resolve_charset(std::string_view spelling) {
  auto concat = [](std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  if (spelling == "lower") return range_chars('a', 'z');
  if (spelling == "upper") return range_chars('A', 'Z');
  if (spelling == "alpha") return concat(range_chars('a', 'z'), range_chars('A', 'Z'));
  if (spelling == "digit") return range_chars('0', '9');
  if (spelling == "alnum") {
    return concat(concat(range_chars('a', 'z'), range_chars('A', 'Z')), range_chars('0', '9'));
  }
  if (spelling == "printable") return printable_ascii();
  std::vector<std::string> out;
  for (auto& cp : code_points(spelling)) {
    if (std::find(out.begin(), out.end(), cp) == out.end()) out.push_back(std::move(cp));
  }
  if (out.empty()) throw SchemaError("empty charset");
  return out;
}

std::pair<std::int64_t, std::int64_t> ParamSpec::int_range() const {
  return int_bounds.value_or(std::pair{kDefaultIntLo, kDefaultIntHi});
}

std::pair<double, double> ParamSpec::float_range() const {
  return float_bounds.value_or(std::pair{kDefaultFloatLo, kDefaultFloatHi});
}

std::pair<std::size_t, std::size_t> ParamSpec::length_range() const {
  return length_bounds.value_or(std::pair{kDefaultMinLen, kDefaultMaxLen});
}

const std::vector<std::string>& ParamSpec::alphabet() const {
  return charset ? *charset : printable_ascii();
}

// ---------------------------------------------------------------------------
// Relation expressions

namespace {

enum class Ty { kInt, kFloat };

enum class BinOp { kAdd, kSub, kMul, kDiv, kMod };
enum class CmpOp { kLt, kLe, kEq, kNe, kGe, kGt };

// Numeric value during evaluation. Integers stay exact in 128 bits and fall
// back to long double on overflow.
struct Num {
  bool is_int = true;
  __int128 i = 0;
  long double f = 0;

  long double real() const { return is_int ? static_cast<long double>(i) : f; }
};

}  // namespace

struct RelationExpr::Node {
  struct Literal { Num value; };
  struct Param { std::size_t index; };
  struct Len { std::size_t index; };
  struct Neg { std::shared_ptr<const Node> operand; };
  struct Binary { BinOp op; std::shared_ptr<const Node> lhs, rhs; };
  struct Compare { CmpOp op; std::shared_ptr<const Node> lhs, rhs; };
  struct And { std::vector<std::shared_ptr<const Node>> terms; };

  std::variant<Literal, Param, Len, Neg, Binary, Compare, And> v;
  Ty ty = Ty::kInt;
};

namespace {

using Node = RelationExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

struct Token {
  enum Kind { kEnd, kNumber, kIdent, kPunct } kind = kEnd;
  std::string text;
  std::size_t pos = 0;
};

class RelationParser {
 public:
  RelationParser(std::string_view text, std::span<const ParamSpec> params)
      : text_(text), params_(params) {
    tokenize();
  }

  NodePtr parse_relation() {
    std::vector<NodePtr> terms;
    terms.push_back(parse_comparison());
    while (peek_is("and") || peek_is("&&")) {
      ++cur_;
      terms.push_back(parse_comparison());
    }
    if (tokens_[cur_].kind != Token::kEnd) fail("unexpected '" + tokens_[cur_].text + "'");
    if (terms.size() == 1) return terms.front();
    return make(Node{Node::And{std::move(terms)}, Ty::kInt});
  }

  std::vector<std::string> referenced;

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SchemaError("malformed relation \"" + std::string(text_) + "\": " + what);
  }

  void tokenize() {
    std::size_t i = 0;
    while (i < text_.size()) {
      char c = text_[i];
      if (c == ' ' || c == '\t') {
        ++i;
        continue;
      }
      Token t;
      t.pos = i;
      if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < text_.size() &&
                                                          std::isdigit(static_cast<unsigned char>(text_[i + 1])))) {
        std::size_t j = i;
        while (j < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[j])) || text_[j] == '.')) ++j;
        if (j < text_.size() && (text_[j] == 'e' || text_[j] == 'E')) {
          ++j;
          if (j < text_.size() && (text_[j] == '+' || text_[j] == '-')) ++j;
          while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        }
        t.kind = Token::kNumber;
        t.text = std::string(text_.substr(i, j - i));
        i = j;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) ++j;
        t.kind = Token::kIdent;
        t.text = std::string(text_.substr(i, j - i));
        i = j;
      } else {
        static constexpr std::string_view kTwo[] = {"<=", ">=", "==", "!=", "&&"};
        t.kind = Token::kPunct;
        std::string_view two = text_.substr(i, 2);
        if (std::find(std::begin(kTwo), std::end(kTwo), two) != std::end(kTwo)) {
          t.text = std::string(two);
          i += 2;
        } else if (std::string_view("()+-*/%<>=").find(c) != std::string_view::npos) {
          t.text = std::string(1, c);
          ++i;
        } else {
          fail("unexpected character '" + std::string(1, c) + "'");
        }
      }
      tokens_.push_back(std::move(t));
    }
    tokens_.push_back(Token{Token::kEnd, "<end>", text_.size()});
  }

  bool peek_is(std::string_view s) const {
    const Token& t = tokens_[cur_];
    return t.kind != Token::kEnd && t.kind != Token::kNumber && t.text == s;
  }

  void expect(std::string_view s) {
    if (!peek_is(s)) fail("expected '" + std::string(s) + "'");
    ++cur_;
  }

  NodePtr parse_comparison() {
    NodePtr lhs = parse_sum();
    static const std::pair<std::string_view, CmpOp> kOps[] = {
        {"<", CmpOp::kLt}, {"<=", CmpOp::kLe}, {"==", CmpOp::kEq}, {"=", CmpOp::kEq},
        {"!=", CmpOp::kNe}, {">=", CmpOp::kGe}, {">", CmpOp::kGt}};
    for (const auto& [spelling, op] : kOps) {
      if (peek_is(spelling)) {
        ++cur_;
        NodePtr rhs = parse_sum();
        return make(Node{Node::Compare{op, lhs, rhs}, Ty::kInt});
      }
    }
    fail("expected a comparison operator");
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_product();
    while (peek_is("+") || peek_is("-")) {
      BinOp op = tokens_[cur_++].text == "+" ? BinOp::kAdd : BinOp::kSub;
      lhs = binary(op, lhs, parse_product());
    }
    return lhs;
  }

  NodePtr parse_product() {
    NodePtr lhs = parse_unary();
    while (peek_is("*") || peek_is("/") || peek_is("%") || peek_is("mod")) {
      const std::string& s = tokens_[cur_++].text;
      BinOp op = s == "*" ? BinOp::kMul : s == "/" ? BinOp::kDiv : BinOp::kMod;
      lhs = binary(op, lhs, parse_unary());
    }
    return lhs;
  }

  NodePtr binary(BinOp op, NodePtr lhs, NodePtr rhs) {
    Ty ty;
    if (op == BinOp::kMod) {
      if (lhs->ty != Ty::kInt || rhs->ty != Ty::kInt) fail("mod requires integer operands");
      ty = Ty::kInt;
    } else if (op == BinOp::kDiv) {
      ty = Ty::kFloat;
    } else {
      ty = (lhs->ty == Ty::kInt && rhs->ty == Ty::kInt) ? Ty::kInt : Ty::kFloat;
    }
    return make(Node{Node::Binary{op, std::move(lhs), std::move(rhs)}, ty});
  }

  NodePtr parse_unary() {
    if (peek_is("-")) {
      ++cur_;
      NodePtr operand = parse_unary();
      Ty ty = operand->ty;
      return make(Node{Node::Neg{std::move(operand)}, ty});
    }
    return parse_atom();
  }

  std::size_t resolve(const std::string& name) {
    for (std::size_t i = 0; i < params_.size(); ++i) {
      if (params_[i].name == name) {
        if (std::find(referenced.begin(), referenced.end(), name) == referenced.end()) {
          referenced.push_back(name);
        }
        return i;
      }
    }
    throw SchemaError("relation \"" + std::string(text_) + "\" references undeclared parameter \"" +
                      name + "\"");
  }

  NodePtr parse_atom() {
    const Token& t = tokens_[cur_];
    if (t.kind == Token::kNumber) {
      ++cur_;
      Num n;
      if (t.text.find_first_of(".eE") == std::string::npos) {
        std::int64_t v = 0;
        auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size()) {
          fail("bad integer literal " + t.text);
        }
        n.i = v;
        return make(Node{Node::Literal{n}, Ty::kInt});
      }
      double d = 0;
      auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), d);
      if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size()) {
        fail("bad float literal " + t.text);
      }
      n.is_int = false;
      n.f = d;
      return make(Node{Node::Literal{n}, Ty::kFloat});
    }
    if (peek_is("(")) {
      ++cur_;
      NodePtr inner = parse_sum();
      expect(")");
      return inner;
    }
    if (t.kind == Token::kIdent) {
      if (t.text == "len" && tokens_[cur_ + 1].text == "(") {
        cur_ += 2;
        if (tokens_[cur_].kind != Token::kIdent) fail("len() takes a parameter name");
        std::size_t idx = resolve(tokens_[cur_++].text);
        ParamKind k = params_[idx].kind;
        if (k != ParamKind::kString && k != ParamKind::kList && k != ParamKind::kTuple) {
          fail("len() of non-sequence parameter \"" + params_[idx].name + "\"");
        }
        expect(")");
        return make(Node{Node::Len{idx}, Ty::kInt});
      }
      if (t.text == "and" || t.text == "mod") fail("unexpected '" + t.text + "'");
      std::size_t idx = resolve(t.text);
      ++cur_;
      switch (params_[idx].kind) {
        case ParamKind::kInt:
        case ParamKind::kBool:
          return make(Node{Node::Param{idx}, Ty::kInt});
        case ParamKind::kFloat:
          return make(Node{Node::Param{idx}, Ty::kFloat});
        default:
          fail("parameter \"" + params_[idx].name + "\" is not numeric; use len()");
      }
    }
    fail("unexpected '" + t.text + "'");
  }

  std::string_view text_;
  std::span<const ParamSpec> params_;
  std::vector<Token> tokens_;
  std::size_t cur_ = 0;
};

std::size_t sequence_length(const Value& v) {
  if (v.is_list()) return v.as_list().size();
  if (v.is_string()) return code_points(v.as_string()).size();
  return 0;
}

Num int_num(__int128 i) {
  Num n;
  n.i = i;
  return n;
}

Num real_num(long double f) {
  Num n;
  n.is_int = false;
  n.f = f;
  return n;
}

std::optional<Num> eval_num(const Node& node, std::span<const Value> values);

std::optional<Num> eval_binary(const Node::Binary& b, std::span<const Value> values) {
  auto lhs = eval_num(*b.lhs, values);
  auto rhs = eval_num(*b.rhs, values);
  if (!lhs || !rhs) return std::nullopt;
  if (b.op == BinOp::kDiv) {
    long double d = rhs->real();
    if (d == 0) return std::nullopt;
    return real_num(lhs->real() / d);
  }
  if (b.op == BinOp::kMod) {
    if (rhs->i == 0) return std::nullopt;
    __int128 r = lhs->i % rhs->i;
    if (r != 0 && ((r < 0) != (rhs->i < 0))) r += rhs->i;
    return int_num(r);
  }
  if (lhs->is_int && rhs->is_int) {
    __int128 out;
    bool overflow = false;
    switch (b.op) {
      case BinOp::kAdd: overflow = __builtin_add_overflow(lhs->i, rhs->i, &out); break;
      case BinOp::kSub: overflow = __builtin_sub_overflow(lhs->i, rhs->i, &out); break;
      default: overflow = __builtin_mul_overflow(lhs->i, rhs->i, &out); break;
    }
    if (!overflow) return int_num(out);
  }
  long double x = lhs->real(), y = rhs->real();
  switch (b.op) {
    case BinOp::kAdd: return real_num(x + y);
    case BinOp::kSub: return real_num(x - y);
    default: return real_num(x * y);
  }
}

std::optional<Num> eval_num(const Node& node, std::span<const Value> values) {
  return std::visit(
      [&](const auto& n) -> std::optional<Num> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Node::Literal>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, Node::Param>) {
          const Value& v = values[n.index];
          if (v.is_bool()) return int_num(v.as_bool() ? 1 : 0);
          if (v.is_float()) return real_num(v.as_float());
          auto i = v.to_int64();
          if (i) return int_num(*i);
          if (v.is_int()) return real_num(v.as_int().convert_to<long double>());
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, Node::Len>) {
          return int_num(static_cast<__int128>(sequence_length(values[n.index])));
        } else if constexpr (std::is_same_v<T, Node::Neg>) {
          auto x = eval_num(*n.operand, values);
          if (!x) return std::nullopt;
          if (x->is_int) {
            __int128 out;
            if (!__builtin_sub_overflow(static_cast<__int128>(0), x->i, &out)) return int_num(out);
            return real_num(-x->real());
          }
          return real_num(-x->f);
        } else if constexpr (std::is_same_v<T, Node::Binary>) {
          return eval_binary(n, values);
        } else {
          return std::nullopt;  // boolean nodes are not numbers
        }
      },
      node.v);
}

bool compare(CmpOp op, const Num& a, const Num& b) {
  int c;
  if (a.is_int && b.is_int) {
    c = a.i < b.i ? -1 : a.i > b.i ? 1 : 0;
  } else {
    long double x = a.real(), y = b.real();
    if (std::isnan(x) || std::isnan(y)) return op == CmpOp::kNe;
    c = x < y ? -1 : x > y ? 1 : 0;
  }
  switch (op) {
    case CmpOp::kLt: return c < 0;
    case CmpOp::kLe: return c <= 0;
    case CmpOp::kEq: return c == 0;
    case CmpOp::kNe: return c != 0;
    case CmpOp::kGe: return c >= 0;
    case CmpOp::kGt: return c > 0;
  }
  return false;
}

bool eval_bool(const Node& node, std::span<const Value> values) {
  if (const auto* cmp = std::get_if<Node::Compare>(&node.v)) {
    auto a = eval_num(*cmp->lhs, values);
    auto b = eval_num(*cmp->rhs, values);
    if (!a || !b) return false;
    return compare(cmp->op, *a, *b);
  }
  if (const auto* conj = std::get_if<Node::And>(&node.v)) {
    return std::all_of(conj->terms.begin(), conj->terms.end(),
                       [&](const NodePtr& t) { return eval_bool(*t, values); });
  }
  return false;
}

}  // namespace

RelationExpr RelationExpr::parse(std::string_view text, std::span<const ParamSpec> params) {
  RelationParser parser(text, params);
  RelationExpr expr;
  expr.root_ = parser.parse_relation();
  expr.text_ = std::string(text);
  expr.referenced_ = std::move(parser.referenced);
  return expr;
}

bool RelationExpr::evaluate(std::span<const Value> values) const {
  return eval_bool(*root_, values);
}

// ---------------------------------------------------------------------------
// Schema parsing

std::optional<std::size_t> InputSchema::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i].name == name) return i;
  }
  return std::nullopt;
}

namespace {

const std::set<std::string, std::less<>> kParamKeys = {"name", "kind", "bounds", "length",
                                                       "charset", "element"};

std::int64_t int_field(const Value& v, const std::string& what) {
  auto i = v.to_int64();
  if (!i) throw SchemaError(what + " must be a 64-bit integer");
  return *i;
}

double number_field(const Value& v, const std::string& what) {
  if (v.is_float()) return v.as_float();
  if (v.is_int()) return v.as_int().convert_to<double>();
  throw SchemaError(what + " must be a number");
}

std::pair<const Value*, const Value*> pair_field(const Value& v, const std::string& what) {
  if (!v.is_list() || v.as_list().size() != 2) throw SchemaError(what + " must be a 2-element list");
  return {&v.as_list()[0], &v.as_list()[1]};
}

ParamKind parse_kind(const Value& v, const std::string& name) {
  if (!v.is_string()) throw SchemaError("parameter \"" + name + "\": kind must be a string");
  const std::string& s = v.as_string();
  for (ParamKind k : {ParamKind::kInt, ParamKind::kFloat, ParamKind::kBool, ParamKind::kString,
                      ParamKind::kList, ParamKind::kTuple}) {
    if (s == to_string(k)) return k;
  }
  throw SchemaError("parameter \"" + name + "\": unknown kind \"" + s + "\"");
}

ParamSpec parse_param(const Value& v, const std::string& default_name) {
  if (!v.is_map()) throw SchemaError("parameter spec must be a mapping");
  for (const auto& [key, _] : v.as_map()) {
    if (!kParamKeys.contains(key)) throw SchemaError("unknown parameter key \"" + key + "\"");
  }
  ParamSpec spec;
  if (const Value* name = v.find("name")) {
    if (!name->is_string() || name->as_string().empty()) {
      throw SchemaError("parameter name must be a non-empty string");
    }
    spec.name = name->as_string();
  } else if (default_name.empty()) {
    throw SchemaError("parameter without a name");
  } else {
    spec.name = default_name;
  }
  const Value* kind = v.find("kind");
  if (!kind) throw SchemaError("parameter \"" + spec.name + "\": missing kind");
  spec.kind = parse_kind(*kind, spec.name);
  const std::string where = "parameter \"" + spec.name + "\"";

  const Value* bounds = v.find("bounds");
  const Value* length = v.find("length");
  const Value* charset = v.find("charset");
  const Value* element = v.find("element");
  bool sequence = spec.kind == ParamKind::kList || spec.kind == ParamKind::kTuple;

  if (bounds) {
    auto [lo, hi] = pair_field(*bounds, where + " bounds");
    if (spec.kind == ParamKind::kInt) {
      spec.int_bounds = std::pair{int_field(*lo, where + " bounds"), int_field(*hi, where + " bounds")};
      if (spec.int_bounds->first > spec.int_bounds->second) throw SchemaError(where + ": lo > hi");
    } else if (spec.kind == ParamKind::kFloat) {
      spec.float_bounds = std::pair{number_field(*lo, where + " bounds"), number_field(*hi, where + " bounds")};
      auto [flo, fhi] = *spec.float_bounds;
      if (!std::isfinite(flo) || !std::isfinite(fhi)) throw SchemaError(where + ": bounds must be finite");
      if (flo > fhi) throw SchemaError(where + ": lo > hi");
    } else {
      throw SchemaError(where + ": bounds only apply to int and float");
    }
  }
  if (length) {
    if (spec.kind != ParamKind::kString && !sequence) {
      throw SchemaError(where + ": length only applies to string, list and tuple");
    }
    auto [lo, hi] = pair_field(*length, where + " length");
    std::int64_t min_len = int_field(*lo, where + " length");
    std::int64_t max_len = int_field(*hi, where + " length");
    if (min_len < 0 || min_len > max_len) throw SchemaError(where + ": need 0 <= min_len <= max_len");
    spec.length_bounds = std::pair{static_cast<std::size_t>(min_len), static_cast<std::size_t>(max_len)};
  }
  if (charset) {
    if (spec.kind != ParamKind::kString) throw SchemaError(where + ": charset only applies to string");
    if (!charset->is_string()) throw SchemaError(where + ": charset must be a string");
    spec.charset = resolve_charset(charset->as_string());
  }
  if (sequence != (element != nullptr)) {
    throw SchemaError(where + ": element spec is required for list/tuple and only allowed there");
  }
  if (element) spec.element = std::make_shared<const ParamSpec>(parse_param(*element, spec.name + "[]"));
  return spec;
}

Value pair_value(auto a, auto b) { return Value::list({Value(a), Value(b)}); }

Value param_to_value(const ParamSpec& spec) {
  Entries e;
  e.emplace_back("name", spec.name);
  e.emplace_back("kind", std::string(to_string(spec.kind)));
  if (spec.int_bounds) e.emplace_back("bounds", pair_value(spec.int_bounds->first, spec.int_bounds->second));
  if (spec.float_bounds) {
    e.emplace_back("bounds", pair_value(spec.float_bounds->first, spec.float_bounds->second));
  }
  if (spec.length_bounds) {
    e.emplace_back("length", pair_value(static_cast<std::int64_t>(spec.length_bounds->first),
                                        static_cast<std::int64_t>(spec.length_bounds->second)));
  }
  if (spec.charset) {
    std::string joined;
    for (const auto& cp : *spec.charset) joined += cp;
    e.emplace_back("charset", joined);
  }
  if (spec.element) e.emplace_back("element", param_to_value(*spec.element));
  return Value::map(std::move(e));
}

}  // namespace

InputSchema parse_schema(const Value& object) {
  if (!object.is_map()) throw SchemaError("schema must be a mapping");
  for (const auto& [key, _] : object.as_map()) {
    if (key != "params" && key != "relations" && key != "mode") {
      throw SchemaError("unknown schema key \"" + key + "\"");
    }
  }
  InputSchema schema;
  if (const Value* mode = object.find("mode")) {
    if (mode->is_string() && mode->as_string() == "argument_vector") {
      schema.mode = InputMode::kArgumentVector;
    } else if (mode->is_string() && mode->as_string() == "text_stream") {
      schema.mode = InputMode::kTextStream;
    } else {
      throw SchemaError("mode must be \"argument_vector\" or \"text_stream\"");
    }
  }
  const Value* params = object.find("params");
  if (!params || !params->is_list()) throw SchemaError("schema needs a \"params\" list");
  for (const Value& p : params->as_list()) {
    ParamSpec spec = parse_param(p, "");
    if (schema.index_of(spec.name)) throw SchemaError("duplicate parameter name \"" + spec.name + "\"");
    schema.params.push_back(std::move(spec));
  }
  if (const Value* relations = object.find("relations")) {
    if (!relations->is_list()) throw SchemaError("\"relations\" must be a list of strings");
    for (const Value& r : relations->as_list()) {
      if (!r.is_string()) throw SchemaError("\"relations\" must be a list of strings");
      schema.relations.push_back(RelationExpr::parse(r.as_string(), schema.params));
    }
  }
  return schema;
}

InputSchema parse_schema(std::string_view text) {
  try {
    return parse_schema(parse_value(text));
  } catch (const ParseError& e) {
    throw SchemaError(std::string("schema text: ") + e.what());
  }
}

Value schema_to_value(const InputSchema& schema) {
  List params;
  for (const auto& p : schema.params) params.push_back(param_to_value(p));
  List relations;
  for (const auto& r : schema.relations) relations.emplace_back(r.text());
  return Value::map({{"mode", std::string(to_string(schema.mode))},
                     {"params", Value(std::move(params))},
                     {"relations", Value(std::move(relations))}});
}

bool value_matches(const ParamSpec& spec, const Value& value) {
  switch (spec.kind) {
    case ParamKind::kInt: {
      if (!value.is_int()) return false;
      auto [lo, hi] = spec.int_range();
      return value.as_int() >= lo && value.as_int() <= hi;
    }
    case ParamKind::kFloat: {
      if (!value.is_float()) return false;
      auto [lo, hi] = spec.float_range();
      double d = value.as_float();
      return d >= lo && d <= hi;
    }
    case ParamKind::kBool:
      return value.is_bool();
    case ParamKind::kString: {
      if (!value.is_string()) return false;
      auto cps = code_points(value.as_string());
      auto [lo, hi] = spec.length_range();
      if (cps.size() < lo || cps.size() > hi) return false;
      const auto& alphabet = spec.alphabet();
      return std::all_of(cps.begin(), cps.end(), [&](const std::string& cp) {
        return std::find(alphabet.begin(), alphabet.end(), cp) != alphabet.end();
      });
    }
    case ParamKind::kList:
    case ParamKind::kTuple: {
      if (!value.is_list()) return false;
      const List& items = value.as_list();
      auto [lo, hi] = spec.length_range();
      if (items.size() < lo || items.size() > hi) return false;
      return std::all_of(items.begin(), items.end(),
                         [&](const Value& item) { return value_matches(*spec.element, item); });
    }
  }
  return false;
}

bool satisfies(const InputSchema& schema, std::span<const Value> candidate) {
  if (candidate.size() != schema.params.size()) {
    throw InvalidArgument("candidate arity " + std::to_string(candidate.size()) + " != schema arity " +
                          std::to_string(schema.params.size()));
  }
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    if (!value_matches(schema.params[i], candidate[i])) return false;
  }
  return std::all_of(schema.relations.begin(), schema.relations.end(),
                     [&](const RelationExpr& r) { return r.evaluate(candidate); });
}

}  // namespace eqfuzz
