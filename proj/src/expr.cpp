#include "hermsurf/expr.hpp"

#include "hermsurf/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace hermsurf {

struct Expression::Node {
    enum Kind { Number, Variable, Unary, Binary, Call } kind;
    cplx value = 0.0;
    std::string name;  // variable, function, or operator
    int power = 0;
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using N = Expression::Node;

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse() {
        NodePtr e = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::ConfigError,
                    "expression: " + msg + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }
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
    static NodePtr make(N::Kind k, std::string name, NodePtr a = nullptr, NodePtr b = nullptr) {
        auto n = std::make_shared<N>();
        n->kind = k;
        n->name = std::move(name);
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    NodePtr sum() {
        NodePtr e = product();
        for (;;) {
            if (accept('+')) e = make(N::Binary, "+", e, product());
            else if (accept('-')) e = make(N::Binary, "-", e, product());
            else return e;
        }
    }
    NodePtr product() {
        NodePtr e = unary();
        for (;;) {
            if (accept('*')) e = make(N::Binary, "*", e, unary());
            else if (accept('/')) e = make(N::Binary, "/", e, unary());
            else return e;
        }
    }
    NodePtr unary() {
        if (accept('-')) return make(N::Unary, "-", unary());
        if (accept('+')) return unary();
        return power();
    }
    NodePtr power() {
        NodePtr base = atom();
        if (!accept('^')) return base;
        skip();
        bool neg = accept('-');
        skip();
        const size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("exponent must be an integer literal");
        auto n = std::make_shared<N>();
        n->kind = N::Unary;
        n->name = "^";
        n->a = base;
        n->power = std::atoi(s_.substr(start, pos_ - start).c_str()) * (neg ? -1 : 1);
        return n;
    }
    NodePtr atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (accept('(')) {
            NodePtr e = sum();
            if (!accept(')')) fail("missing ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            const double v = std::strtod(s_.c_str() + pos_, &end);
            pos_ = static_cast<size_t>(end - s_.c_str());
            auto n = std::make_shared<N>();
            n->kind = N::Number;
            n->value = v;
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            const std::string id = s_.substr(start, pos_ - start);
            static const char* funcs[] = {"exp", "log", "sin", "cos", "sqrt", "conj", "re", "im"};
            for (const char* f : funcs)
                if (id == f) {
                    if (!accept('(')) fail("expected '(' after " + id);
                    NodePtr arg = sum();
                    if (!accept(')')) fail("missing ')'");
                    return make(N::Call, id, arg);
                }
            if (id == "i" || id == "pi") {
                auto n = std::make_shared<N>();
                n->kind = N::Number;
                n->value = id == "i" ? kI : cplx(kPi, 0.0);
                return n;
            }
            static const char* vars[] = {"z1", "z2", "zb1", "zb2", "x1", "y1", "x2", "y2", "r2"};
            for (const char* v : vars)
                if (id == v) return make(N::Variable, id);
            pos_ = start;
            fail("unknown identifier '" + id + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

Dual evaluate(const N& n, const std::array<Dual, 2>& z) {
    switch (n.kind) {
        case N::Number: return Dual(n.value);
        case N::Variable: {
            const std::string& v = n.name;
            if (v == "z1") return z[0];
            if (v == "z2") return z[1];
            if (v == "zb1") return conj(z[0]);
            if (v == "zb2") return conj(z[1]);
            if (v == "x1") return real(z[0]);
            if (v == "y1") return imag(z[0]);
            if (v == "x2") return real(z[1]);
            if (v == "y2") return imag(z[1]);
            return z[0] * conj(z[0]) + z[1] * conj(z[1]);
        }
        case N::Unary: {
            const Dual a = evaluate(*n.a, z);
            if (n.name == "-") return -a;
            return n.power >= 0 ? pow(a, n.power) : Dual(1.0) / pow(a, -n.power);
        }
        case N::Binary: {
            const Dual a = evaluate(*n.a, z), b = evaluate(*n.b, z);
            if (n.name == "+") return a + b;
            if (n.name == "-") return a - b;
            if (n.name == "*") return a * b;
            return a / b;
        }
        case N::Call: {
            const Dual a = evaluate(*n.a, z);
            const std::string& f = n.name;
            if (f == "exp") return exp(a);
            if (f == "log") return log(a);
            if (f == "sin") return sin(a);
            if (f == "cos") return cos(a);
            if (f == "sqrt") return sqrt(a);
            if (f == "conj") return conj(a);
            if (f == "re") return real(a);
            return imag(a);
        }
    }
    return Dual(0.0);
}

}  // namespace

Expression Expression::parse(const std::string& text) {
    Expression e;
    e.text_ = text;
    e.root_ = Parser(text).parse();
    return e;
}

Dual Expression::eval(const std::array<Dual, 2>& z) const { return evaluate(*root_, z); }

MetricField metric_from_expressions(const std::string& name, const std::string& g11, const std::string& g12,
                                    const std::string& g22, ChartQuotient quotient) {
    const Expression e11 = Expression::parse(g11), e12 = Expression::parse(g12), e22 = Expression::parse(g22);
    return MetricField(name, AmbientChart{name, quotient},
                       [e11, e12, e22](const std::array<Dual, 2>& z) {
                           return std::array<Dual, 3>{e11.eval(z), e12.eval(z), e22.eval(z)};
                       },
                       false);
}

}  // namespace hermsurf
