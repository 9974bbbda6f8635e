#pragma once

// Generator expressions: the symbolic tail of an eigenvalue sequence.
//
// Grammar (whitespace insignificant):
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | base ('^' factor)?
//   base   := number | 'n' | 'k(n)' | 'm(n)' | '(' expr ')'
//           | 'exp2(' expr ')' | 'rat(' expr ')' | 'rrat(' expr ')'
//           | 'if' pred 'then' expr 'else' expr
//   pred   := 'n' '<=' int | 'even(n)' | 'odd(n)' | 'n' 'in' '{' int (',' int)* '}'
//
// k(n), m(n) decode n = 2^(k-1) (2m-1). rat(x) is the x-th term of the
// zig-zag enumeration of the rationals in [-1, 1] (x rounded to the nearest
// positive integer); rrat(x) likewise for the reversed zig-zag. '^' is right
// associative.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace wvn {

class GenExpr {
 public:
  struct Node;

  GenExpr();  // constant zero
  explicit GenExpr(std::shared_ptr<const Node> root);

  // Value at index n >= 1. Pure; may return inf/nan for ill-posed
  // expressions, which EigenvalueSequence rejects.
  double eval(std::uint64_t n) const;

  // Fully parenthesized text that parses back to an identical tree.
  std::string to_string() const;

  bool depends_on_index() const;

  // Constants the expression takes for infinitely many n, found by
  // walking conditional branches (n <= P and finite sets only keep the
  // else branch; parity splits are tracked). Sorted, unique.
  std::vector<double> infinite_multiplicity_values() const;

  const Node& root() const { return *root_; }

  friend bool operator==(const GenExpr& a, const GenExpr& b);

 private:
  std::shared_ptr<const Node> root_;
};

GenExpr parse_generator(std::string_view text);

// "if <predicate> then 1 else 0", the indicator generator of an index set.
GenExpr indicator_of(std::string_view predicate_text);

// n-th term (n >= 1) of the zig-zag enumeration of Q intersected with [-1, 1]:
// 0, 1, -1, 1/2, -1/2, 1/3, -1/3, 2/3, -2/3, 1/4, ... (each rational once,
// by increasing denominator, numerators 1, -1, 2, -2, ... in lowest terms).
double zigzag_rational(std::uint64_t n);

// Same set and denominator blocks, each block listed backwards:
// 0, -1, 1, -1/2, 1/2, -2/3, 2/3, -1/3, 1/3, -3/4, 3/4, -1/4, 1/4, ...
double zigzag_rational_reversed(std::uint64_t n);

}  // namespace wvn
