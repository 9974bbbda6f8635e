#include "wvn/gen_expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>
#include <variant>

#include "wvn/error.hpp"
#include "wvn/pairing.hpp"

namespace wvn {

namespace {

enum class BinOp : char { Add = '+', Sub = '-', Mul = '*', Div = '/', Pow = '^' };
enum class Leaf { Index, PairK, PairM };
enum class Builtin { Exp2, Rational, RationalReversed };

const char* builtin_name(Builtin b) {
  switch (b) {
    case Builtin::Exp2:
      return "exp2";
    case Builtin::Rational:
      return "rat";
    case Builtin::RationalReversed:
      return "rrat";
  }
  return "";
}

struct PredLessEq {
  std::uint64_t bound;
  friend bool operator==(const PredLessEq&, const PredLessEq&) = default;
};
struct PredEven {
  friend bool operator==(const PredEven&, const PredEven&) = default;
};
struct PredOdd {
  friend bool operator==(const PredOdd&, const PredOdd&) = default;
};
struct PredInSet {
  std::vector<std::uint64_t> members;  // sorted, unique
  friend bool operator==(const PredInSet&, const PredInSet&) = default;
};
using Predicate = std::variant<PredLessEq, PredEven, PredOdd, PredInSet>;

bool holds(const Predicate& p, std::uint64_t n) {
  return std::visit(
      [n](const auto& q) -> bool {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, PredLessEq>) return n <= q.bound;
        if constexpr (std::is_same_v<T, PredEven>) return n % 2 == 0;
        if constexpr (std::is_same_v<T, PredOdd>) return n % 2 == 1;
        if constexpr (std::is_same_v<T, PredInSet>) {
          return std::binary_search(q.members.begin(), q.members.end(), n);
        }
      },
      p);
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), end);
}

}  // namespace

struct GenExpr::Node {
  struct Number {
    double value;
  };
  struct Var {
    Leaf which;
  };
  struct Negate {
    std::shared_ptr<const Node> operand;
  };
  struct Binary {
    BinOp op;
    std::shared_ptr<const Node> lhs, rhs;
  };
  struct Call {
    Builtin fn;
    std::shared_ptr<const Node> arg;
  };
  struct Cond {
    Predicate pred;
    std::shared_ptr<const Node> then_branch, else_branch;
  };
  std::variant<Number, Var, Negate, Binary, Call, Cond> v;
};

namespace {

using NodePtr = std::shared_ptr<const GenExpr::Node>;
using Node = GenExpr::Node;

NodePtr make(Node::Number x) { return std::make_shared<const Node>(Node{x}); }
NodePtr make(Node::Var x) { return std::make_shared<const Node>(Node{x}); }
NodePtr make(Node::Negate x) { return std::make_shared<const Node>(Node{std::move(x)}); }
NodePtr make(Node::Binary x) { return std::make_shared<const Node>(Node{std::move(x)}); }
NodePtr make(Node::Call x) { return std::make_shared<const Node>(Node{std::move(x)}); }
NodePtr make(Node::Cond x) { return std::make_shared<const Node>(Node{std::move(x)}); }

bool nodes_equal(const Node& a, const Node& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      [&b](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.v);
        if constexpr (std::is_same_v<T, Node::Number>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Node::Var>) {
          return x.which == y.which;
        } else if constexpr (std::is_same_v<T, Node::Negate>) {
          return nodes_equal(*x.operand, *y.operand);
        } else if constexpr (std::is_same_v<T, Node::Binary>) {
          return x.op == y.op && nodes_equal(*x.lhs, *y.lhs) && nodes_equal(*x.rhs, *y.rhs);
        } else if constexpr (std::is_same_v<T, Node::Call>) {
          return x.fn == y.fn && nodes_equal(*x.arg, *y.arg);
        } else {
          return x.pred == y.pred && nodes_equal(*x.then_branch, *y.then_branch) &&
                 nodes_equal(*x.else_branch, *y.else_branch);
        }
      },
      a.v);
}

double eval_node(const Node& node, std::uint64_t n) {
  return std::visit(
      [n](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Node::Number>) {
          return x.value;
        } else if constexpr (std::is_same_v<T, Node::Var>) {
          switch (x.which) {
            case Leaf::Index:
              return static_cast<double>(n);
            case Leaf::PairK:
              return static_cast<double>(pair_decode(n).k);
            case Leaf::PairM:
              return static_cast<double>(pair_decode(n).m);
          }
          return 0.0;
        } else if constexpr (std::is_same_v<T, Node::Negate>) {
          return -eval_node(*x.operand, n);
        } else if constexpr (std::is_same_v<T, Node::Binary>) {
          const double l = eval_node(*x.lhs, n);
          const double r = eval_node(*x.rhs, n);
          switch (x.op) {
            case BinOp::Add:
              return l + r;
            case BinOp::Sub:
              return l - r;
            case BinOp::Mul:
              return l * r;
            case BinOp::Div:
              return l / r;
            case BinOp::Pow:
              return std::pow(l, r);
          }
          return 0.0;
        } else if constexpr (std::is_same_v<T, Node::Call>) {
          const double a = eval_node(*x.arg, n);
          if (x.fn == Builtin::Exp2) return std::exp2(a);
          const double idx = std::nearbyint(a);
          if (!(idx >= 1.0) || idx > 9.0e15) return std::numeric_limits<double>::quiet_NaN();
          const auto i = static_cast<std::uint64_t>(idx);
          return x.fn == Builtin::Rational ? zigzag_rational(i) : zigzag_rational_reversed(i);
        } else {
          return holds(x.pred, n) ? eval_node(*x.then_branch, n) : eval_node(*x.else_branch, n);
        }
      },
      node.v);
}

std::string print_pred(const Predicate& p) {
  return std::visit(
      [](const auto& q) -> std::string {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, PredLessEq>) return "n <= " + std::to_string(q.bound);
        if constexpr (std::is_same_v<T, PredEven>) return "even(n)";
        if constexpr (std::is_same_v<T, PredOdd>) return "odd(n)";
        if constexpr (std::is_same_v<T, PredInSet>) {
          std::string s = "n in {";
          for (std::size_t i = 0; i < q.members.size(); ++i) {
            if (i) s += ", ";
            s += std::to_string(q.members[i]);
          }
          return s + "}";
        }
      },
      p);
}

std::string print_node(const Node& node) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Node::Number>) {
          return format_number(x.value);
        } else if constexpr (std::is_same_v<T, Node::Var>) {
          switch (x.which) {
            case Leaf::Index:
              return "n";
            case Leaf::PairK:
              return "k(n)";
            case Leaf::PairM:
              return "m(n)";
          }
          return "";
        } else if constexpr (std::is_same_v<T, Node::Negate>) {
          return "(-" + print_node(*x.operand) + ")";
        } else if constexpr (std::is_same_v<T, Node::Binary>) {
          return "(" + print_node(*x.lhs) + " " + static_cast<char>(x.op) + " " +
                 print_node(*x.rhs) + ")";
        } else if constexpr (std::is_same_v<T, Node::Call>) {
          return std::string(builtin_name(x.fn)) + "(" + print_node(*x.arg) + ")";
        } else {
          return "(if " + print_pred(x.pred) + " then " + print_node(*x.then_branch) + " else " +
                 print_node(*x.else_branch) + ")";
        }
      },
      node.v);
}

bool node_depends(const Node& node) {
  return std::visit(
      [](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Node::Number>) return false;
        if constexpr (std::is_same_v<T, Node::Var>) return true;
        if constexpr (std::is_same_v<T, Node::Negate>) return node_depends(*x.operand);
        if constexpr (std::is_same_v<T, Node::Binary>) {
          return node_depends(*x.lhs) || node_depends(*x.rhs);
        }
        if constexpr (std::is_same_v<T, Node::Call>) return node_depends(*x.arg);
        if constexpr (std::is_same_v<T, Node::Cond>) return true;
      },
      node.v);
}

enum class Parity { Any, Even, Odd };

void collect_repeated(const Node& node, Parity ctx, std::set<double>& out) {
  if (!node_depends(node)) {
    const double c = eval_node(node, 1);
    if (std::isfinite(c)) out.insert(c);
    return;
  }
  const auto* cond = std::get_if<Node::Cond>(&node.v);
  if (!cond) return;
  const auto& p = cond->pred;
  if (std::holds_alternative<PredLessEq>(p) || std::holds_alternative<PredInSet>(p)) {
    collect_repeated(*cond->else_branch, ctx, out);
    return;
  }
  const bool pred_even = std::holds_alternative<PredEven>(p);
  const Parity then_parity = pred_even ? Parity::Even : Parity::Odd;
  const Parity else_parity = pred_even ? Parity::Odd : Parity::Even;
  if (ctx == Parity::Any || ctx == then_parity) {
    collect_repeated(*cond->then_branch, then_parity, out);
  }
  if (ctx == Parity::Any || ctx == else_parity) {
    collect_repeated(*cond->else_branch, else_parity, out);
  }
}

// Recursive-descent parser over the grammar in the header.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse_all() {
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

  Predicate parse_pred_all() {
    Predicate p = parse_pred();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input after predicate");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      fail(std::string("expected '") + c + "'" +
           (pos_ < text_.size() ? std::string(", found '") + text_[pos_] + "'" : std::string(" at end of input")));
    }
  }

  std::string_view peek_word() {
    skip_ws();
    std::size_t end = pos_;
    while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
      ++end;
    }
    return text_.substr(pos_, end - pos_);
  }

  bool accept_word(std::string_view w) {
    if (peek_word() != w) return false;
    pos_ += w.size();
    return true;
  }

  void expect_word(std::string_view w) {
    if (!accept_word(w)) fail("expected '" + std::string(w) + "'");
  }

  // k(n) / m(n) / even(n) / odd(n) all take exactly the index variable.
  void expect_index_arg() {
    expect('(');
    if (!accept_word("n")) fail("expected 'n' as argument");
    expect(')');
  }

  std::uint64_t parse_uint() {
    skip_ws();
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc{} || ptr == text_.data() + pos_) fail("expected non-negative integer");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Node::Binary{BinOp::Add, lhs, parse_term()});
      } else if (accept('-')) {
        lhs = make(Node::Binary{BinOp::Sub, lhs, parse_term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = make(Node::Binary{BinOp::Mul, lhs, parse_factor()});
      } else if (accept('/')) {
        lhs = make(Node::Binary{BinOp::Div, lhs, parse_factor()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_factor() {
    if (accept('-')) return make(Node::Negate{parse_factor()});
    NodePtr base = parse_base();
    if (accept('^')) return make(Node::Binary{BinOp::Pow, base, parse_factor()});
    return base;
  }

  NodePtr parse_number() {
    skip_ws();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc{} || ptr == text_.data() + pos_) fail("malformed number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return make(Node::Number{v});
  }

  NodePtr parse_base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (accept('(')) {
      NodePtr e = parse_expr();
      expect(')');
      return e;
    }
    const std::size_t word_pos = pos_;
    const std::string_view w = peek_word();
    if (w.empty()) fail(std::string("unexpected character '") + c + "'");
    pos_ += w.size();
    if (w == "n") return make(Node::Var{Leaf::Index});
    if (w == "k" || w == "m") {
      expect_index_arg();
      return make(Node::Var{w == "k" ? Leaf::PairK : Leaf::PairM});
    }
    if (w == "exp2" || w == "rat" || w == "rrat") {
      expect('(');
      NodePtr arg = parse_expr();
      expect(')');
      const Builtin fn = w == "exp2" ? Builtin::Exp2 : (w == "rat" ? Builtin::Rational : Builtin::RationalReversed);
      return make(Node::Call{fn, arg});
    }
    if (w == "if") {
      Predicate p = parse_pred();
      expect_word("then");
      NodePtr t = parse_expr();
      expect_word("else");
      NodePtr e = parse_expr();
      return make(Node::Cond{std::move(p), t, e});
    }
    throw SemanticError("unknown symbol '" + std::string(w) + "'", word_pos);
  }

  Predicate parse_pred() {
    const std::size_t word_pos = pos_;
    const std::string_view w = peek_word();
    if (w == "even" || w == "odd") {
      pos_ += w.size();
      expect_index_arg();
      if (w == "even") return PredEven{};
      return PredOdd{};
    }
    if (w == "n") {
      pos_ += 1;
      if (accept('<')) {
        expect('=');
        return PredLessEq{parse_uint()};
      }
      if (accept_word("in")) {
        expect('{');
        std::vector<std::uint64_t> members{parse_uint()};
        while (accept(',')) members.push_back(parse_uint());
        expect('}');
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        return PredInSet{std::move(members)};
      }
      fail("expected '<=' or 'in' after 'n' in predicate");
    }
    if (w.empty()) fail("expected predicate");
    throw SemanticError("unknown predicate '" + std::string(w) + "'", word_pos);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Cumulative counts of the zig-zag rational enumeration by denominator.
// group(1) = {0, 1, -1}; group(q >= 2) = {+-p/q : 1 <= p < q, gcd(p, q) = 1}.
class RationalTable {
 public:
  static constexpr std::uint64_t kMaxDenominator = 1u << 15;

  RationalTable() : totient_(kMaxDenominator + 1), cumulative_(kMaxDenominator + 1, 0) {
    std::iota(totient_.begin(), totient_.end(), std::uint64_t{0});
    for (std::uint64_t p = 2; p <= kMaxDenominator; ++p) {
      if (totient_[p] != p) continue;  // composite, already reduced
      for (std::uint64_t q = p; q <= kMaxDenominator; q += p) totient_[q] -= totient_[q] / p;
    }
    cumulative_[1] = 3;
    for (std::uint64_t q = 2; q <= kMaxDenominator; ++q) cumulative_[q] = cumulative_[q - 1] + 2 * totient_[q];
  }

  // reversed: numerators q-1, q-2, ..., 1 and the negative value first.
  double term(std::uint64_t n, bool reversed) const {
    if (n == 0 || n > cumulative_.back()) return std::numeric_limits<double>::quiet_NaN();
    if (n <= 3) return n == 1 ? 0.0 : ((n == 2) != reversed ? 1.0 : -1.0);
    const auto it = std::lower_bound(cumulative_.begin() + 1, cumulative_.end(), n);
    const auto q = static_cast<std::uint64_t>(it - cumulative_.begin());
    const std::uint64_t offset = n - cumulative_[q - 1] - 1;  // 0-based within group
    const std::uint64_t rank = offset / 2;
    std::uint64_t seen = 0;
    for (std::uint64_t i = 1; i < q; ++i) {
      const std::uint64_t p = reversed ? q - i : i;
      if (std::gcd(p, q) != 1) continue;
      if (seen++ == rank) {
        const double v = static_cast<double>(p) / static_cast<double>(q);
        return (offset % 2 == 0) != reversed ? v : -v;
      }
    }
    return std::numeric_limits<double>::quiet_NaN();
  }

 private:
  std::vector<std::uint64_t> totient_;
  std::vector<std::uint64_t> cumulative_;
};

const RationalTable& rational_table() {
  static const RationalTable table;
  return table;
}

}  // namespace

double zigzag_rational(std::uint64_t n) { return rational_table().term(n, false); }

double zigzag_rational_reversed(std::uint64_t n) { return rational_table().term(n, true); }

GenExpr::GenExpr() : root_(make(Node::Number{0.0})) {}

GenExpr::GenExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

double GenExpr::eval(std::uint64_t n) const { return eval_node(*root_, n); }

std::string GenExpr::to_string() const { return print_node(*root_); }

bool GenExpr::depends_on_index() const { return node_depends(*root_); }

std::vector<double> GenExpr::infinite_multiplicity_values() const {
  std::set<double> out;
  collect_repeated(*root_, Parity::Any, out);
  return {out.begin(), out.end()};
}

bool operator==(const GenExpr& a, const GenExpr& b) { return nodes_equal(*a.root_, *b.root_); }

GenExpr parse_generator(std::string_view text) { return GenExpr(Parser(text).parse_all()); }

GenExpr indicator_of(std::string_view predicate_text) {
  Predicate p = Parser(predicate_text).parse_pred_all();
  return GenExpr(make(Node::Cond{std::move(p), make(Node::Number{1.0}), make(Node::Number{0.0})}));
}

}  // namespace wvn
