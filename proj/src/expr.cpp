#include "cq/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace cq {

const char* fn_name(UnFn f) {
    switch (f) {
        case UnFn::Exp: return "exp";
        case UnFn::Log: return "log";
        case UnFn::Sqrt: return "sqrt";
        case UnFn::Sin: return "sin";
        case UnFn::Cos: return "cos";
        case UnFn::Sinh: return "sinh";
        case UnFn::Cosh: return "cosh";
    }
    return "?";
}

namespace {

bool lookup_fn(const std::string& name, UnFn& out) {
    static const std::map<std::string, UnFn> fns = {
        {"exp", UnFn::Exp},   {"log", UnFn::Log},   {"sqrt", UnFn::Sqrt},
        {"sin", UnFn::Sin},   {"cos", UnFn::Cos},   {"sinh", UnFn::Sinh},
        {"cosh", UnFn::Cosh},
    };
    auto it = fns.find(name);
    if (it == fns.end()) return false;
    out = it->second;
    return true;
}

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

class Parser {
public:
    Parser(std::string_view text, const std::set<std::string>& constants)
        : text_(text), constants_(constants) {}

    ExprPtr parse() {
        ExprPtr e = sum();
        skip_ws();
        if (pos_ < text_.size())
            throw ExprParseError("unexpected character '" + std::string(1, text_[pos_]) + "'",
                                 (int)pos_ + 1);
        return e;
    }

private:
    std::string_view text_;
    const std::set<std::string>& constants_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExprPtr sum() {
        ExprPtr e = product();
        for (;;) {
            if (eat('+')) {
                e = make({.kind = Expr::Kind::Add, .lhs = e, .rhs = product()});
            } else if (eat('-')) {
                e = make({.kind = Expr::Kind::Sub, .lhs = e, .rhs = product()});
            } else {
                return e;
            }
        }
    }

    ExprPtr product() {
        ExprPtr e = unary();
        for (;;) {
            if (eat('*')) {
                e = make({.kind = Expr::Kind::Mul, .lhs = e, .rhs = unary()});
            } else if (eat('/')) {
                e = make({.kind = Expr::Kind::Div, .lhs = e, .rhs = unary()});
            } else {
                return e;
            }
        }
    }

    ExprPtr unary() {
        if (eat('-')) return make({.kind = Expr::Kind::Neg, .lhs = unary()});
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (!eat('^')) return base;
        skip_ws();
        int sign = 1;
        if (eat('-')) sign = -1;
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) ++pos_;
        if (pos_ == start)
            throw ExprParseError("expected integer exponent after '^'", (int)start + 1);
        if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
            throw ExprParseError("exponent must be an integer literal", (int)pos_ + 1);
        int exp = sign * std::stoi(std::string(text_.substr(start, pos_ - start)));
        return make({.kind = Expr::Kind::Pow, .exponent = exp, .lhs = base});
    }

    ExprPtr atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ExprParseError("unexpected end of input", (int)pos_ + 1);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = sum();
            if (!eat(')')) throw ExprParseError("expected ')'", (int)pos_ + 1);
            return e;
        }
        if (std::isdigit((unsigned char)c) || c == '.') return number();
        if (std::isalpha((unsigned char)c) || c == '_') return identifier();
        throw ExprParseError("unexpected character '" + std::string(1, c) + "'", (int)pos_ + 1);
    }

    ExprPtr number() {
        size_t start = pos_;
        const char* begin = text_.data() + pos_;
        char* end = nullptr;
        double val = std::strtod(begin, &end);
        if (end == begin) throw ExprParseError("malformed number", (int)start + 1);
        pos_ += (size_t)(end - begin);
        return make({.kind = Expr::Kind::Number, .number = val});
    }

    ExprPtr identifier() {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (name == "u") return make({.kind = Expr::Kind::VarU});
        if (name == "v") return make({.kind = Expr::Kind::VarV});
        UnFn fn;
        if (lookup_fn(name, fn)) {
            if (!eat('('))
                throw ExprParseError("expected '(' after function " + name, (int)pos_ + 1);
            ExprPtr arg = sum();
            if (!eat(')')) throw ExprParseError("expected ')'", (int)pos_ + 1);
            return make({.kind = Expr::Kind::Call, .fn = fn, .lhs = arg});
        }
        if (constants_.count(name)) return make({.kind = Expr::Kind::Named, .name = name});
        throw ExprParseError("unknown identifier " + name, (int)start + 1);
    }
};

int precedence(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

void print(const Expr& e, std::ostringstream& out, int parent_prec) {
    int prec = precedence(e.kind);
    bool paren = prec < parent_prec;
    if (paren) out << '(';
    switch (e.kind) {
        case Expr::Kind::Number: {
            std::ostringstream tmp;
            tmp.precision(17);
            tmp << e.number;
            out << tmp.str();
            break;
        }
        case Expr::Kind::VarU: out << 'u'; break;
        case Expr::Kind::VarV: out << 'v'; break;
        case Expr::Kind::Named: out << e.name; break;
        case Expr::Kind::Neg:
            out << '-';
            print(*e.lhs, out, prec + 1);
            break;
        case Expr::Kind::Add:
            print(*e.lhs, out, prec);
            out << '+';
            print(*e.rhs, out, prec + 1);
            break;
        case Expr::Kind::Sub:
            print(*e.lhs, out, prec);
            out << '-';
            print(*e.rhs, out, prec + 1);
            break;
        case Expr::Kind::Mul:
            print(*e.lhs, out, prec);
            out << '*';
            print(*e.rhs, out, prec + 1);
            break;
        case Expr::Kind::Div:
            print(*e.lhs, out, prec);
            out << '/';
            print(*e.rhs, out, prec + 1);
            break;
        case Expr::Kind::Pow:
            print(*e.lhs, out, prec + 1);
            out << '^' << e.exponent;
            break;
        case Expr::Kind::Call:
            out << fn_name(e.fn) << '(';
            print(*e.lhs, out, 0);
            out << ')';
            break;
    }
    if (paren) out << ')';
}

}  // namespace

ExprPtr parse_expression(std::string_view text, const std::set<std::string>& constants) {
    return Parser(text, constants).parse();
}

std::string to_string(const Expr& e) {
    std::ostringstream out;
    print(e, out, 0);
    return out.str();
}

double eval_number(const Expr& e, double u, double v,
                   const std::map<std::string, double>& constants) {
    switch (e.kind) {
        case Expr::Kind::Number: return e.number;
        case Expr::Kind::VarU: return u;
        case Expr::Kind::VarV: return v;
        case Expr::Kind::Named: return constants.at(e.name);
        case Expr::Kind::Neg: return -eval_number(*e.lhs, u, v, constants);
        case Expr::Kind::Add:
            return eval_number(*e.lhs, u, v, constants) + eval_number(*e.rhs, u, v, constants);
        case Expr::Kind::Sub:
            return eval_number(*e.lhs, u, v, constants) - eval_number(*e.rhs, u, v, constants);
        case Expr::Kind::Mul:
            return eval_number(*e.lhs, u, v, constants) * eval_number(*e.rhs, u, v, constants);
        case Expr::Kind::Div: {
            double d = eval_number(*e.rhs, u, v, constants);
            if (d == 0.0) throw ExprDomainError("division by zero");
            return eval_number(*e.lhs, u, v, constants) / d;
        }
        case Expr::Kind::Pow:
            return std::pow(eval_number(*e.lhs, u, v, constants), e.exponent);
        case Expr::Kind::Call: {
            double a = eval_number(*e.lhs, u, v, constants);
            switch (e.fn) {
                case UnFn::Exp: return std::exp(a);
                case UnFn::Log:
                    if (!(a > 0)) throw ExprDomainError("log of non-positive value");
                    return std::log(a);
                case UnFn::Sqrt:
                    if (!(a > 0)) throw ExprDomainError("sqrt of non-positive value");
                    return std::sqrt(a);
                case UnFn::Sin: return std::sin(a);
                case UnFn::Cos: return std::cos(a);
                case UnFn::Sinh: return std::sinh(a);
                case UnFn::Cosh: return std::cosh(a);
            }
            break;
        }
    }
    throw std::logic_error("eval_number: bad expression node");
}

JetR eval_jet(const Expr& e, double u, double v,
              const std::map<std::string, double>& constants, int order) {
    switch (e.kind) {
        case Expr::Kind::Number: return JetR::constant(e.number, order);
        case Expr::Kind::VarU: return JetR::variable(0, u, order);
        case Expr::Kind::VarV: return JetR::variable(1, v, order);
        case Expr::Kind::Named: return JetR::constant(constants.at(e.name), order);
        case Expr::Kind::Neg: return -eval_jet(*e.lhs, u, v, constants, order);
        case Expr::Kind::Add:
            return eval_jet(*e.lhs, u, v, constants, order) +
                   eval_jet(*e.rhs, u, v, constants, order);
        case Expr::Kind::Sub:
            return eval_jet(*e.lhs, u, v, constants, order) -
                   eval_jet(*e.rhs, u, v, constants, order);
        case Expr::Kind::Mul:
            return eval_jet(*e.lhs, u, v, constants, order) *
                   eval_jet(*e.rhs, u, v, constants, order);
        case Expr::Kind::Div:
            return eval_jet(*e.lhs, u, v, constants, order) /
                   eval_jet(*e.rhs, u, v, constants, order);
        case Expr::Kind::Pow:
            return pow(eval_jet(*e.lhs, u, v, constants, order), e.exponent);
        case Expr::Kind::Call: {
            JetR a = eval_jet(*e.lhs, u, v, constants, order);
            switch (e.fn) {
                case UnFn::Exp: return exp(a);
                case UnFn::Log: return log(a);
                case UnFn::Sqrt: return sqrt(a);
                case UnFn::Sin: return sin(a);
                case UnFn::Cos: return cos(a);
                case UnFn::Sinh: return sinh(a);
                case UnFn::Cosh: return cosh(a);
            }
            break;
        }
    }
    throw std::logic_error("eval_jet: bad expression node");
}

}  // namespace cq
