#pragma once

#include "starq/glue.hpp"
#include "starq/liealg.hpp"
#include "starq/poly.hpp"
#include "starq/uea.hpp"

#include <memory>
#include <stdexcept>
#include <string>

namespace starq {

struct SourcePos {
    int line = 1;
    int col = 1;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, SourcePos pos)
        : std::runtime_error("at " + std::to_string(pos.line) + ":" + std::to_string(pos.col) +
                             ": " + msg),
          pos(pos) {}
    SourcePos pos;
};

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Expression AST: rational literal, variable, unary minus, add, sub, mul,
/// integer power.  parse -> print -> parse is the identity.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Rational, Var, Neg, Add, Sub, Mul, Pow };
    Kind kind;
    Scalar value;     // Rational
    std::string name; // Var
    ExprPtr lhs, rhs; // Add/Sub/Mul; Neg and Pow use lhs
    int exponent = 0; // Pow

    static ExprPtr rational(Scalar v);
    static ExprPtr var(std::string n);
    static ExprPtr neg(ExprPtr e);
    static ExprPtr add(ExprPtr a, ExprPtr b);
    static ExprPtr sub(ExprPtr a, ExprPtr b);
    static ExprPtr mul(ExprPtr a, ExprPtr b);
    static ExprPtr pow(ExprPtr base, int e);
};

ExprPtr parse_expression(const std::string& src);
std::string print_expression(const ExprPtr& e);
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

/// Evaluates in the commutative polynomial ring; unknown variables raise
/// EvalError naming the offender.
Polynomial eval_commutative(const ExprPtr& e, const VarSetPtr& vars);

/// Evaluates as an enveloping-algebra expression: uppercase basis names are
/// noncommutative generators (multiplication keeps the written order); h and
/// declared parameters enter coefficients.  Coordinates are rejected.
EnvElem eval_word(const ExprPtr& e, const LieAlgebra& L, const VarSetPtr& vars);

/// Differential-operator expressions: sums of terms, each a '*'-product of
/// polynomial factors and d/d<var> tokens (optionally powered).  Polynomial
/// factors multiply on the left of the derivatives.
LinDiffOp parse_operator(const std::string& src, const VarSetPtr& vars);

} // namespace starq
