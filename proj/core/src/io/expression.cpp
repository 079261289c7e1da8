#include "mf/io/expression.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace mf::io {

ParseError::ParseError(const std::string& what, std::size_t position)
    : ArgumentError(what + " at position " + std::to_string(position)), position_(position) {}

enum class Op { Num, X, P, Add, Sub, Mul, Div, Pow, Neg, Exp };

struct Expression::Node {
    Op op;
    double value = 0.0;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make(Op op, NodePtr l = nullptr, NodePtr r = nullptr) {
    return std::make_shared<const Expression::Node>(Expression::Node{op, 0.0, std::move(l), std::move(r)});
}
NodePtr num(double v) { return std::make_shared<const Expression::Node>(Expression::Node{Op::Num, v, nullptr, nullptr}); }

bool is_num(const NodePtr& n, double v) { return n->op == Op::Num && n->value == v; }

// Light constant folding keeps derivative trees readable.
NodePtr add(NodePtr a, NodePtr b) {
    if (is_num(a, 0.0)) return b;
    if (is_num(b, 0.0)) return a;
    if (a->op == Op::Num && b->op == Op::Num) return num(a->value + b->value);
    return make(Op::Add, std::move(a), std::move(b));
}
NodePtr sub(NodePtr a, NodePtr b) {
    if (is_num(b, 0.0)) return a;
    if (a->op == Op::Num && b->op == Op::Num) return num(a->value - b->value);
    return make(Op::Sub, std::move(a), std::move(b));
}
NodePtr mul(NodePtr a, NodePtr b) {
    if (is_num(a, 0.0) || is_num(b, 0.0)) return num(0.0);
    if (is_num(a, 1.0)) return b;
    if (is_num(b, 1.0)) return a;
    if (a->op == Op::Num && b->op == Op::Num) return num(a->value * b->value);
    return make(Op::Mul, std::move(a), std::move(b));
}
NodePtr div(NodePtr a, NodePtr b) {
    if (is_num(a, 0.0)) return num(0.0);
    if (is_num(b, 1.0)) return a;
    return make(Op::Div, std::move(a), std::move(b));
}

class Parser {
public:
    Parser(const std::string& text, const std::map<std::string, double>& constants)
        : s_(text), constants_(constants) {}

    NodePtr parse() {
        NodePtr n = sum();
        skip();
        if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr sum() {
        NodePtr n = term();
        for (;;) {
            if (accept('+')) n = make(Op::Add, n, term());
            else if (accept('-')) n = make(Op::Sub, n, term());
            else return n;
        }
    }
    NodePtr term() {
        NodePtr n = unary();
        for (;;) {
            if (accept('*')) n = make(Op::Mul, n, unary());
            else if (accept('/')) n = make(Op::Div, n, unary());
            else return n;
        }
    }
    NodePtr unary() {
        if (accept('-')) return make(Op::Neg, unary());
        if (accept('+')) return unary();
        return power();
    }
    NodePtr power() {
        NodePtr base = atom();
        if (accept('^')) return make(Op::Pow, base, unary());
        return base;
    }
    NodePtr atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr n = sum();
            if (!accept(')')) fail("expected ')'");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s_.c_str() + pos_;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin) fail("malformed number");
            pos_ += static_cast<std::size_t>(end - begin);
            return num(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            const std::string name = s_.substr(start, pos_ - start);
            if (name == "x") return make(Op::X);
            if (name == "p") return make(Op::P);
            if (name == "exp") {
                if (!accept('(')) fail("expected '(' after exp");
                NodePtr arg = sum();
                if (!accept(')')) fail("expected ')'");
                return make(Op::Exp, arg);
            }
            if (auto it = constants_.find(name); it != constants_.end()) return num(it->second);
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        fail(std::string("unexpected '") + c + "'");
    }

    const std::string& s_;
    const std::map<std::string, double>& constants_;
    std::size_t pos_ = 0;
};

cplx eval(const NodePtr& n, double x, double p) {
    switch (n->op) {
        case Op::Num: return n->value;
        case Op::X: return x;
        case Op::P: return p;
        case Op::Add: return eval(n->lhs, x, p) + eval(n->rhs, x, p);
        case Op::Sub: return eval(n->lhs, x, p) - eval(n->rhs, x, p);
        case Op::Mul: return eval(n->lhs, x, p) * eval(n->rhs, x, p);
        case Op::Div: return eval(n->lhs, x, p) / eval(n->rhs, x, p);
        case Op::Neg: return -eval(n->lhs, x, p);
        case Op::Exp: return std::exp(eval(n->lhs, x, p));
        case Op::Pow: {
            const cplx b = eval(n->lhs, x, p);
            if (n->rhs->op == Op::Num && n->rhs->value == std::round(n->rhs->value) && std::abs(n->rhs->value) <= 64) {
                const int k = static_cast<int>(n->rhs->value);
                cplx r = 1.0;
                for (int i = 0; i < std::abs(k); ++i) r *= b;
                return k < 0 ? 1.0 / r : r;
            }
            return std::pow(b, eval(n->rhs, x, p));
        }
    }
    return 0.0;
}

bool constant_tree(const NodePtr& n) {
    if (n->op == Op::X || n->op == Op::P) return false;
    if (n->lhs && !constant_tree(n->lhs)) return false;
    if (n->rhs && !constant_tree(n->rhs)) return false;
    return true;
}

bool poly(const NodePtr& n) {
    switch (n->op) {
        case Op::Num:
        case Op::X:
        case Op::P: return true;
        case Op::Add:
        case Op::Sub:
        case Op::Mul: return poly(n->lhs) && poly(n->rhs);
        case Op::Neg: return poly(n->lhs);
        case Op::Div: return poly(n->lhs) && constant_tree(n->rhs);
        case Op::Exp: return constant_tree(n->lhs);
        case Op::Pow: {
            if (!poly(n->lhs) || !constant_tree(n->rhs)) return false;
            const double e = eval(n->rhs, 0.0, 0.0).real();
            return e >= 0.0 && e == std::round(e) && e <= PolySymbol::kMaxDegree;
        }
    }
    return false;
}

PolySymbol to_poly_rec(const NodePtr& n) {
    switch (n->op) {
        case Op::Num: return PolySymbol::constant(n->value);
        case Op::X: return PolySymbol::x();
        case Op::P: return PolySymbol::p();
        case Op::Add: return to_poly_rec(n->lhs) + to_poly_rec(n->rhs);
        case Op::Sub: return to_poly_rec(n->lhs) - to_poly_rec(n->rhs);
        case Op::Mul: return to_poly_rec(n->lhs) * to_poly_rec(n->rhs);
        case Op::Neg: return cplx(-1.0) * to_poly_rec(n->lhs);
        case Op::Div: return (1.0 / eval(n->rhs, 0.0, 0.0)) * to_poly_rec(n->lhs);
        case Op::Exp: return PolySymbol::constant(eval(n, 0.0, 0.0));
        case Op::Pow: {
            const int k = static_cast<int>(eval(n->rhs, 0.0, 0.0).real());
            const PolySymbol b = to_poly_rec(n->lhs);
            PolySymbol r = PolySymbol::constant(1.0);
            for (int i = 0; i < k; ++i) r = r * b;
            return r;
        }
    }
    return {};
}

NodePtr dx(const NodePtr& n) {
    switch (n->op) {
        case Op::Num:
        case Op::P: return num(0.0);
        case Op::X: return num(1.0);
        case Op::Add: return add(dx(n->lhs), dx(n->rhs));
        case Op::Sub: return sub(dx(n->lhs), dx(n->rhs));
        case Op::Mul: return add(mul(dx(n->lhs), n->rhs), mul(n->lhs, dx(n->rhs)));
        case Op::Div:
            return div(sub(mul(dx(n->lhs), n->rhs), mul(n->lhs, dx(n->rhs))), mul(n->rhs, n->rhs));
        case Op::Neg: {
            NodePtr d = dx(n->lhs);
            return is_num(d, 0.0) ? d : make(Op::Neg, d);
        }
        case Op::Exp: return mul(n, dx(n->lhs));
        case Op::Pow: {
            if (constant_tree(n->rhs)) {
                const double e = eval(n->rhs, 0.0, 0.0).real();
                return mul(mul(num(e), make(Op::Pow, n->lhs, num(e - 1.0))), dx(n->lhs));
            }
            throw ArgumentError("derivative of a power with a non-constant exponent is not supported");
        }
    }
    return num(0.0);
}

bool uses_p(const NodePtr& n) {
    if (n->op == Op::P) return true;
    return (n->lhs && uses_p(n->lhs)) || (n->rhs && uses_p(n->rhs));
}

void print(std::ostringstream& os, const NodePtr& n) {
    switch (n->op) {
        case Op::Num: os << n->value; return;
        case Op::X: os << 'x'; return;
        case Op::P: os << 'p'; return;
        case Op::Neg: os << "(-"; print(os, n->lhs); os << ')'; return;
        case Op::Exp: os << "exp("; print(os, n->lhs); os << ')'; return;
        default: break;
    }
    const char sym = n->op == Op::Add ? '+' : n->op == Op::Sub ? '-' : n->op == Op::Mul ? '*' : n->op == Op::Div ? '/' : '^';
    os << '(';
    print(os, n->lhs);
    os << sym;
    print(os, n->rhs);
    os << ')';
}

}  // namespace

Expression Expression::parse(const std::string& text, const std::map<std::string, double>& constants) {
    return Expression(Parser(text, constants).parse());
}

cplx Expression::evaluate(double x, double p) const { return eval(root_, x, p); }
bool Expression::is_polynomial() const { return poly(root_); }

PolySymbol Expression::to_poly() const {
    if (!is_polynomial()) throw ArgumentError("expression is not a polynomial in x and p");
    return to_poly_rec(root_);
}

Expression Expression::derivative_x() const { return Expression(dx(root_)); }
bool Expression::depends_on_p() const { return uses_p(root_); }

std::string Expression::to_string() const {
    std::ostringstream os;
    os.precision(17);
    print(os, root_);
    return os.str();
}

}  // namespace mf::io
