#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cq/jet.hpp"

namespace cq {

enum class UnFn { Exp, Log, Sqrt, Sin, Cos, Sinh, Cosh };

const char* fn_name(UnFn f);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, VarU, VarV, Named, Neg, Add, Sub, Mul, Div, Pow, Call };
    Kind kind;
    double number = 0.0;   // Number
    std::string name;      // Named
    UnFn fn = UnFn::Exp;   // Call
    int exponent = 0;      // Pow
    ExprPtr lhs, rhs;      // children; rhs only for binary nodes
};

struct ExprParseError : std::runtime_error {
    int position;  // 1-based character position
    ExprParseError(const std::string& msg, int pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

struct ExprDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Precedence: ^ > unary - > * / > + -; + - * / left-associative, ^ binds an
// integer literal exponent only.
ExprPtr parse_expression(std::string_view text, const std::set<std::string>& constants = {});

std::string to_string(const Expr& e);

double eval_number(const Expr& e, double u, double v,
                   const std::map<std::string, double>& constants);

JetR eval_jet(const Expr& e, double u, double v,
              const std::map<std::string, double>& constants, int order);

}  // namespace cq
