#include "ipls/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "ipls/errors.hpp"

namespace ipls {

ExprPtr make_const(double v) {
    auto e = std::make_shared<ParamExpr>();
    e->kind = ParamExpr::Kind::Const;
    e->value = v;
    return e;
}

ExprPtr make_param(int index) {
    auto e = std::make_shared<ParamExpr>();
    e->kind = ParamExpr::Kind::Param;
    e->index = index;
    return e;
}

ExprPtr make_neg(ExprPtr a) {
    auto e = std::make_shared<ParamExpr>();
    e->kind = ParamExpr::Kind::Neg;
    e->a = std::move(a);
    return e;
}

namespace {

struct Token {
    enum class Type { Number, Ident, Op, End };
    Type type = Type::End;
    double number = 0.0;
    std::string text;
    char op = 0;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        tok_ = Token{};
        tok_.pos = i_;
        if (i_ >= s_.size()) {
            tok_.type = Token::Type::End;
            return;
        }
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_ + 1])))) {
            const char* begin = s_.c_str() + i_;
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            if (end == begin || !std::isfinite(v))
                throw ParseError(i_, "invalid numeric literal");
            tok_.type = Token::Type::Number;
            tok_.number = v;
            i_ += static_cast<std::size_t>(end - begin);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
                ++j;
            tok_.type = Token::Type::Ident;
            tok_.text = s_.substr(i_, j - i_);
            i_ = j;
            return;
        }
        switch (c) {
            case '+': case '-': case '*': case '/': case '^': case '(': case ')':
                tok_.type = Token::Type::Op;
                tok_.op = c;
                ++i_;
                return;
            default:
                throw ParseError(i_, std::string("unexpected character '") + c + "'");
        }
    }

    const std::string& s_;
    std::size_t i_ = 0;
    Token tok_;
};

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& names)
        : lex_(text), names_(names) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        if (lex_.peek().type != Token::Type::End)
            throw ParseError(lex_.peek().pos, "trailing input after expression");
        return e;
    }

private:
    bool is_op(char c) const {
        return lex_.peek().type == Token::Type::Op && lex_.peek().op == c;
    }

    ExprPtr binary(ParamExpr::Kind k, ExprPtr a, ExprPtr b) {
        auto e = std::make_shared<ParamExpr>();
        e->kind = k;
        e->a = std::move(a);
        e->b = std::move(b);
        return e;
    }

    ExprPtr expr() {
        ExprPtr e = term();
        while (is_op('+') || is_op('-')) {
            char op = lex_.take().op;
            e = binary(op == '+' ? ParamExpr::Kind::Add : ParamExpr::Kind::Sub, e, term());
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (is_op('*') || is_op('/')) {
            char op = lex_.take().op;
            e = binary(op == '*' ? ParamExpr::Kind::Mul : ParamExpr::Kind::Div, e, factor());
        }
        return e;
    }

    ExprPtr factor() {
        bool neg = false;
        if (is_op('-')) {
            lex_.take();
            neg = true;
        }
        ExprPtr e = atom();
        if (is_op('^')) {
            std::size_t pos = lex_.take().pos;
            const Token& t = lex_.peek();
            if (t.type != Token::Type::Number)
                throw ParseError(t.pos, "expected integer exponent after '^'");
            double v = t.number;
            if (v != std::floor(v) || v < 0 || v > 1e9)
                throw ParseError(t.pos, "exponent must be a non-negative integer");
            lex_.take();
            auto p = std::make_shared<ParamExpr>();
            p->kind = ParamExpr::Kind::Pow;
            p->power = static_cast<int>(v);
            p->a = e;
            e = p;
            (void)pos;
        }
        return neg ? make_neg(e) : e;
    }

    ExprPtr atom() {
        const Token& t = lex_.peek();
        switch (t.type) {
            case Token::Type::Number: {
                Token tok = lex_.take();
                return make_const(tok.number);
            }
            case Token::Type::Ident: {
                Token tok = lex_.take();
                for (std::size_t k = 0; k < names_.size(); ++k) {
                    if (names_[k] == tok.text) return make_param(static_cast<int>(k) + 1);
                }
                throw UnknownParameter(tok.text);
            }
            case Token::Type::Op:
                if (t.op == '(') {
                    lex_.take();
                    ExprPtr e = expr();
                    if (!is_op(')'))
                        throw ParseError(lex_.peek().pos, "expected ')'");
                    lex_.take();
                    return e;
                }
                throw ParseError(t.pos, "unexpected operator");
            default:
                throw ParseError(t.pos, "unexpected end of expression");
        }
    }

    Lexer lex_;
    const std::vector<std::string>& names_;
};

}  // namespace

ExprPtr parse_expr(const std::string& text, const std::vector<std::string>& param_names) {
    return Parser(text, param_names).parse();
}

RAF eval_raf(const ParamExpr& e, const std::vector<RAF>& params) {
    const int K = params.empty() ? 0 : params.front().K();
    switch (e.kind) {
        case ParamExpr::Kind::Const:
            return RAF::constant(e.value, K);
        case ParamExpr::Kind::Param: {
            if (e.index < 1 || e.index > static_cast<int>(params.size()))
                throw IndexOutOfRange("parameter index out of range in expression");
            return params[static_cast<std::size_t>(e.index - 1)];
        }
        case ParamExpr::Kind::Neg:
            return -eval_raf(*e.a, params);
        case ParamExpr::Kind::Add:
            return eval_raf(*e.a, params) + eval_raf(*e.b, params);
        case ParamExpr::Kind::Sub:
            return eval_raf(*e.a, params) - eval_raf(*e.b, params);
        case ParamExpr::Kind::Mul: {
            if (e.a->kind == ParamExpr::Kind::Const)
                return eval_raf(*e.b, params).scale(e.a->value);
            if (e.b->kind == ParamExpr::Kind::Const)
                return eval_raf(*e.a, params).scale(e.b->value);
            return mul(eval_raf(*e.a, params), eval_raf(*e.b, params), MulMode::Chebyshev);
        }
        case ParamExpr::Kind::Div: {
            RAF num = eval_raf(*e.a, params);
            RAF den = eval_raf(*e.b, params);
            if (den.dev().isZero(0.0) && den.err() == 0.0) {
                if (den.center() == 0.0) throw DivisionByZeroInterval();
                return num.scale(1.0 / den.center());
            }
            return mul(num, reciprocal(den), MulMode::Chebyshev);
        }
        case ParamExpr::Kind::Pow:
            return pow_int(eval_raf(*e.a, params), e.power);
    }
    throw Error("unreachable expression kind");
}

double eval_point(const ParamExpr& e, const Vec& p) {
    switch (e.kind) {
        case ParamExpr::Kind::Const:
            return e.value;
        case ParamExpr::Kind::Param:
            if (e.index < 1 || e.index > static_cast<int>(p.size()))
                throw IndexOutOfRange("parameter index out of range in expression");
            return p(e.index - 1);
        case ParamExpr::Kind::Neg:
            return -eval_point(*e.a, p);
        case ParamExpr::Kind::Add:
            return eval_point(*e.a, p) + eval_point(*e.b, p);
        case ParamExpr::Kind::Sub:
            return eval_point(*e.a, p) - eval_point(*e.b, p);
        case ParamExpr::Kind::Mul:
            return eval_point(*e.a, p) * eval_point(*e.b, p);
        case ParamExpr::Kind::Div:
            return eval_point(*e.a, p) / eval_point(*e.b, p);
        case ParamExpr::Kind::Pow: {
            double base = eval_point(*e.a, p);
            double out = 1.0;
            for (int i = 0; i < e.power; ++i) out *= base;
            return out;
        }
    }
    throw Error("unreachable expression kind");
}

AffinePart extract_affine(const ParamExpr& e, int K) {
    AffinePart out;
    out.lin = Vec::Zero(K);
    switch (e.kind) {
        case ParamExpr::Kind::Const:
            out.affine = true;
            out.c = e.value;
            return out;
        case ParamExpr::Kind::Param:
            if (e.index < 1 || e.index > K)
                throw IndexOutOfRange("parameter index out of range in expression");
            out.affine = true;
            out.lin(e.index - 1) = 1.0;
            return out;
        case ParamExpr::Kind::Neg: {
            AffinePart a = extract_affine(*e.a, K);
            if (!a.affine) return out;
            out.affine = true;
            out.c = -a.c;
            out.lin = -a.lin;
            return out;
        }
        case ParamExpr::Kind::Add:
        case ParamExpr::Kind::Sub: {
            AffinePart a = extract_affine(*e.a, K);
            AffinePart b = extract_affine(*e.b, K);
            if (!a.affine || !b.affine) return out;
            double s = e.kind == ParamExpr::Kind::Add ? 1.0 : -1.0;
            out.affine = true;
            out.c = a.c + s * b.c;
            out.lin = a.lin + s * b.lin;
            return out;
        }
        case ParamExpr::Kind::Mul: {
            AffinePart a = extract_affine(*e.a, K);
            AffinePart b = extract_affine(*e.b, K);
            if (!a.affine || !b.affine) return out;
            bool a_const = a.lin.isZero(0.0);
            bool b_const = b.lin.isZero(0.0);
            if (!a_const && !b_const) return out;
            if (!a_const) std::swap(a, b);
            out.affine = true;
            out.c = a.c * b.c;
            out.lin = a.c * b.lin;
            return out;
        }
        case ParamExpr::Kind::Div: {
            AffinePart a = extract_affine(*e.a, K);
            AffinePart b = extract_affine(*e.b, K);
            if (!a.affine || !b.affine) return out;
            if (!b.lin.isZero(0.0) || b.c == 0.0) return out;
            out.affine = true;
            out.c = a.c / b.c;
            out.lin = a.lin / b.c;
            return out;
        }
        case ParamExpr::Kind::Pow: {
            if (e.power == 0) {
                out.affine = true;
                out.c = 1.0;
                return out;
            }
            AffinePart a = extract_affine(*e.a, K);
            if (!a.affine) return out;
            if (e.power == 1) return a;
            if (!a.lin.isZero(0.0)) return out;
            out.affine = true;
            out.c = 1.0;
            for (int i = 0; i < e.power; ++i) out.c *= a.c;
            return out;
        }
    }
    return out;
}

}  // namespace ipls
