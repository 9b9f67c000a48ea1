#pragma once

// Operator-expression language: parse, canonical print, and lowering into U(h_n).
//
//   expr    = term { ("+" | "-") term }
//   term    = unary { "*" unary }
//   unary   = "-" unary | power
//   power   = primary [ "^" digits ]
//   primary = literal | atom | "Sub" "(" expr ")" | "(" expr ")"
//
// Literals are exact: "3", "3/4", "0.25", with a trailing "i" for imaginary ("1i", "1/2i").
// Atoms: X<j>, Y<j>, Z<j>, Zb<j>, T, A, Adag, Lap. docs/grammar.ebnf is the full grammar.

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "heisenberg/algebra.hpp"

namespace heisenberg {

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position)
    {
    }
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Literal, Atom, Sub, Neg, Add, Subtract, Mul, Pow };

    Kind kind = Kind::Literal;
    Rational magnitude;      // Literal, non-negative
    bool imaginary = false;  // Literal
    std::string name;        // Atom: X, Y, Z, Zb, T, A, Adag, Lap
    unsigned index = 0;      // Atom, 0 for unindexed names
    unsigned exponent = 0;   // Pow
    std::vector<ExprPtr> args;

    static ExprPtr literal(Rational magnitude, bool imaginary = false);
    static ExprPtr atom(std::string name, unsigned index = 0);
    static ExprPtr sub(ExprPtr alpha);
    static ExprPtr neg(ExprPtr e);
    static ExprPtr binary(Kind kind, ExprPtr lhs, ExprPtr rhs);
    static ExprPtr pow(ExprPtr base, unsigned exponent);
};

bool structurally_equal(const Expr& a, const Expr& b);

ExprPtr parse(const std::string& text);
/// Canonical text with the fewest parentheses that re-parse to the same tree.
std::string print(const Expr& e);
/// Largest generator index (at least 1).
std::size_t infer_dimension(const Expr& e);
/// Throws DomainError for indices above n, A/Adag with n != 1, or a non-scalar Sub argument.
AlgebraElement lower(const Expr& e, std::size_t n);

}  // namespace heisenberg
