#include "starq/expr.hpp"

#include <cctype>
#include <sstream>

namespace starq {

ExprPtr Expr::rational(Scalar v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Rational;
    e->value = std::move(v);
    return e;
}

ExprPtr Expr::var(std::string n) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Var;
    e->name = std::move(n);
    return e;
}

ExprPtr Expr::neg(ExprPtr x) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Neg;
    e->lhs = std::move(x);
    return e;
}

ExprPtr Expr::add(ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Add;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

ExprPtr Expr::sub(ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Sub;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

ExprPtr Expr::mul(ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Mul;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

ExprPtr Expr::pow(ExprPtr base, int exp) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Pow;
    e->lhs = std::move(base);
    e->exponent = exp;
    return e;
}

namespace {

struct Token {
    enum class Type { Number, Ident, Deriv, Plus, Minus, Star, Caret, LParen, RParen, End };
    Type type;
    std::string text;
    SourcePos pos;
};

class Lexer {
public:
    Lexer(const std::string& src, bool operator_mode)
        : src_(src), operator_mode_(operator_mode) {}

    Token next() {
        skip_space();
        SourcePos pos{line_, col_};
        if (eof()) return {Token::Type::End, "", pos};
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string text;
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) text += get();
            if (!eof() && peek() == '/') {
                // Rational literal a/b: the slash binds to the digits.
                size_t save_i = i_;
                int save_line = line_, save_col = col_;
                get();
                if (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
                    text += '/';
                    while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
                        text += get();
                } else {
                    i_ = save_i;
                    line_ = save_line;
                    col_ = save_col;
                }
            }
            return {Token::Type::Number, text, pos};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            // d/d<ident> derivative token (operator expressions only).
            if (operator_mode_ && c == 'd' && i_ + 2 < src_.size() && src_[i_ + 1] == '/' &&
                src_[i_ + 2] == 'd') {
                get();
                get();
                get();
                std::string name = lex_ident_body();
                if (name.empty()) throw ParseError("expected variable after d/d", pos);
                return {Token::Type::Deriv, name, pos};
            }
            return {Token::Type::Ident, lex_ident_body(), pos};
        }
        get();
        switch (c) {
        case '+': return {Token::Type::Plus, "+", pos};
        case '-': return {Token::Type::Minus, "-", pos};
        case '*': return {Token::Type::Star, "*", pos};
        case '^': return {Token::Type::Caret, "^", pos};
        case '(': return {Token::Type::LParen, "(", pos};
        case ')': return {Token::Type::RParen, ")", pos};
        default: break;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }

private:
    bool eof() const { return i_ >= src_.size(); }
    char peek() const { return src_[i_]; }
    char get() {
        char c = src_[i_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    void skip_space() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) get();
    }
    std::string lex_ident_body() {
        std::string text;
        while (!eof()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')
                text += get();
            else
                break;
        }
        return text;
    }

    const std::string& src_;
    bool operator_mode_;
    size_t i_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    Parser(const std::string& src, bool operator_mode = false)
        : lex_(src, operator_mode), tok_(lex_.next()) {}

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        while (tok_.type == Token::Type::Plus || tok_.type == Token::Type::Minus) {
            bool plus = tok_.type == Token::Type::Plus;
            advance();
            ExprPtr r = parse_term();
            e = plus ? Expr::add(std::move(e), std::move(r))
                     : Expr::sub(std::move(e), std::move(r));
        }
        return e;
    }

    void expect_end() {
        if (tok_.type != Token::Type::End)
            throw ParseError("unexpected token '" + tok_.text + "'", tok_.pos);
    }

    // Operator grammar pieces (public for parse_operator).
    Token tok() const { return tok_; }
    void advance() { tok_ = lex_.next(); }
    ExprPtr parse_term() {
        ExprPtr e = parse_unary();
        while (tok_.type == Token::Type::Star) {
            advance();
            e = Expr::mul(std::move(e), parse_unary());
        }
        return e;
    }
    ExprPtr parse_unary() {
        if (tok_.type == Token::Type::Minus) {
            advance();
            return Expr::neg(parse_unary());
        }
        return parse_power();
    }
    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (tok_.type == Token::Type::Caret) {
            advance();
            return Expr::pow(std::move(base), parse_exponent());
        }
        return base;
    }
    int parse_exponent() {
        bool paren = false;
        if (tok_.type == Token::Type::LParen) {
            paren = true;
            advance();
        }
        bool negative = false;
        if (tok_.type == Token::Type::Minus) {
            negative = true;
            advance();
        }
        if (tok_.type != Token::Type::Number || tok_.text.find('/') != std::string::npos)
            throw ParseError("exponent must be an integer literal", tok_.pos);
        if (negative) throw ParseError("negative exponent", tok_.pos);
        int e = 0;
        for (char c : tok_.text) {
            e = e * 10 + (c - '0');
            if (e > 1000000) throw ParseError("exponent too large", tok_.pos);
        }
        advance();
        if (paren) {
            if (tok_.type != Token::Type::RParen) throw ParseError("expected ')'", tok_.pos);
            advance();
        }
        return e;
    }
    ExprPtr parse_atom() {
        if (tok_.type == Token::Type::Number) {
            Scalar v = Scalar::parse(tok_.text);
            advance();
            return Expr::rational(std::move(v));
        }
        if (tok_.type == Token::Type::Ident) {
            std::string n = tok_.text;
            advance();
            return Expr::var(std::move(n));
        }
        if (tok_.type == Token::Type::LParen) {
            advance();
            ExprPtr e = parse_expr();
            if (tok_.type != Token::Type::RParen) throw ParseError("expected ')'", tok_.pos);
            advance();
            return e;
        }
        throw ParseError("expected a value, got '" + (tok_.text.empty() ? "end of input" : tok_.text) + "'",
                         tok_.pos);
    }

private:
    Lexer lex_;
    Token tok_;
};

int precedence(Expr::Kind k) {
    switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
    }
}

void print_rec(std::ostream& os, const ExprPtr& e, int parent_prec) {
    int prec = precedence(e->kind);
    bool need = prec < parent_prec;
    if (need) os << '(';
    switch (e->kind) {
    case Expr::Kind::Rational: os << e->value.str(); break;
    case Expr::Kind::Var: os << e->name; break;
    case Expr::Kind::Neg:
        os << '-';
        print_rec(os, e->lhs, prec + 1);
        break;
    case Expr::Kind::Add:
        print_rec(os, e->lhs, prec);
        os << " + ";
        print_rec(os, e->rhs, prec + 1);
        break;
    case Expr::Kind::Sub:
        print_rec(os, e->lhs, prec);
        os << " - ";
        print_rec(os, e->rhs, prec + 1);
        break;
    case Expr::Kind::Mul:
        print_rec(os, e->lhs, prec);
        os << '*';
        print_rec(os, e->rhs, prec + 1);
        break;
    case Expr::Kind::Pow:
        print_rec(os, e->lhs, prec + 1);
        os << '^' << e->exponent;
        break;
    }
    if (need) os << ')';
}

} // namespace

ExprPtr parse_expression(const std::string& src) {
    Parser p(src);
    ExprPtr e = p.parse_expr();
    p.expect_end();
    return e;
}

std::string print_expression(const ExprPtr& e) {
    std::ostringstream os;
    print_rec(os, e, 0);
    return os.str();
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case Expr::Kind::Rational: return a->value == b->value;
    case Expr::Kind::Var: return a->name == b->name;
    case Expr::Kind::Neg: return expr_equal(a->lhs, b->lhs);
    case Expr::Kind::Pow: return a->exponent == b->exponent && expr_equal(a->lhs, b->lhs);
    default: return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
    }
}

Polynomial eval_commutative(const ExprPtr& e, const VarSetPtr& vars) {
    switch (e->kind) {
    case Expr::Kind::Rational: return Polynomial::constant(vars, e->value);
    case Expr::Kind::Var: {
        auto idx = vars->index_of(e->name);
        if (!idx) throw EvalError("unknown variable '" + e->name + "'");
        return Polynomial::variable(vars, *idx);
    }
    case Expr::Kind::Neg: return -eval_commutative(e->lhs, vars);
    case Expr::Kind::Add: return eval_commutative(e->lhs, vars) + eval_commutative(e->rhs, vars);
    case Expr::Kind::Sub: return eval_commutative(e->lhs, vars) - eval_commutative(e->rhs, vars);
    case Expr::Kind::Mul: return eval_commutative(e->lhs, vars) * eval_commutative(e->rhs, vars);
    case Expr::Kind::Pow: return eval_commutative(e->lhs, vars).pow(e->exponent);
    }
    throw EvalError("corrupt expression");
}

namespace {

EnvElem raw_concat(const EnvElem& a, const EnvElem& b) {
    EnvElem out(a.vars());
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out.add_term(w, ca * cb);
        }
    return out;
}

} // namespace

EnvElem eval_word(const ExprPtr& e, const LieAlgebra& L, const VarSetPtr& vars) {
    switch (e->kind) {
    case Expr::Kind::Rational: {
        EnvElem out(vars);
        out.add_term(Word{}, Polynomial::constant(vars, e->value));
        return out;
    }
    case Expr::Kind::Var: {
        for (int i = 0; i < L.dim(); ++i)
            if (L.basis()[static_cast<size_t>(i)] == e->name)
                return EnvElem::generator(vars, i);
        auto idx = vars->index_of(e->name);
        if (idx && !vars->is_coord(*idx)) {
            EnvElem out(vars);
            out.add_term(Word{}, Polynomial::variable(vars, *idx));
            return out;
        }
        if (idx)
            throw EvalError("'" + e->name +
                            "' is a dual coordinate; enveloping expressions use generator names");
        throw EvalError("unknown symbol '" + e->name + "'");
    }
    case Expr::Kind::Neg: return -eval_word(e->lhs, L, vars);
    case Expr::Kind::Add: return eval_word(e->lhs, L, vars) + eval_word(e->rhs, L, vars);
    case Expr::Kind::Sub: return eval_word(e->lhs, L, vars) - eval_word(e->rhs, L, vars);
    case Expr::Kind::Mul: return raw_concat(eval_word(e->lhs, L, vars), eval_word(e->rhs, L, vars));
    case Expr::Kind::Pow: {
        EnvElem base = eval_word(e->lhs, L, vars);
        EnvElem acc(vars);
        acc.add_term(Word{}, Polynomial::one(vars));
        for (int k = 0; k < e->exponent; ++k) acc = raw_concat(acc, base);
        return acc;
    }
    }
    throw EvalError("corrupt expression");
}

LinDiffOp parse_operator(const std::string& src, const VarSetPtr& vars) {
    // Grammar: sum of '*'-products; factors are polynomial atoms or
    // d/d<var> tokens (with optional integer power).  Per term, polynomial
    // factors collect into the coefficient and derivative factors into the
    // multi-index.
    Parser p(src, /*operator_mode=*/true);
    LinDiffOp op(vars);
    bool negate = false;
    for (;;) {
        Polynomial coeff = Polynomial::one(vars);
        Monomial order(vars->size());
        bool any = false;
        for (;;) {
            if (p.tok().type == Token::Type::Minus && !any) {
                negate = !negate;
                p.advance();
                continue;
            }
            if (p.tok().type == Token::Type::Deriv) {
                auto dpos = p.tok().pos;
                auto idx = vars->index_of(p.tok().text);
                if (!idx || !vars->is_coord(*idx))
                    throw ParseError("d/d" + p.tok().text + ": not a coordinate variable", dpos);
                p.advance();
                int e = 1;
                if (p.tok().type == Token::Type::Caret) {
                    p.advance();
                    e = p.parse_exponent();
                }
                order.bump(*idx, e);
            } else {
                ExprPtr atom = p.parse_power();
                try {
                    coeff *= eval_commutative(atom, vars);
                } catch (const EvalError& err) {
                    throw ParseError(err.what(), SourcePos{1, 1});
                }
            }
            any = true;
            if (p.tok().type == Token::Type::Star) {
                p.advance();
                continue;
            }
            break;
        }
        if (negate) coeff = -coeff;
        negate = false;
        if (coeff.degree_in(vars->h_index()) > 0)
            throw ParseError("h may not appear in operator coefficients", SourcePos{1, 1});
        op.add_term(order, coeff);
        if (p.tok().type == Token::Type::Plus) {
            p.advance();
            continue;
        }
        if (p.tok().type == Token::Type::Minus) {
            p.advance();
            negate = true;
            continue;
        }
        p.expect_end();
        break;
    }
    return op;
}

} // namespace starq
