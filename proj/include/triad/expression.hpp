#pragma once

// Compiled complex-valued expressions in the wavenumbers k, m, n, used for
// user-supplied triad kernels.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?
//   primary := number | k | m | n | i | pi | func '(' expr ')' | '(' expr ')' | '|' expr '|'
//   func    := sqrt | abs | sgn
//
// Nested absolute-value bars are not supported; use abs() instead.

#include <triad/error.hpp>

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

namespace triad {

class Expression {
public:
    using Complex = std::complex<double>;

    static Expression parse(const std::string& text)
    {
        Parser p{text, 0, {}};
        const int root = p.parseExpr();
        p.skipSpace();
        if (p.pos != text.size()) {
            p.fail("unexpected '" + std::string(1, text[p.pos]) + "'");
        }
        Expression e;
        e.text_ = text;
        e.nodes_ = std::make_shared<const std::vector<Node>>(std::move(p.nodes));
        e.root_ = root;
        return e;
    }

    Complex operator()(long k, long m, long n) const
    {
        return eval(root_, static_cast<double>(k), static_cast<double>(m), static_cast<double>(n));
    }

    const std::string& text() const noexcept { return text_; }

private:
    enum class Op { Constant, VarK, VarM, VarN, Add, Sub, Mul, Div, Pow, Neg, Sqrt, Abs, Sgn };

    struct Node {
        Op op;
        Complex value{};
        int lhs = -1;
        int rhs = -1;
    };

    struct Parser {
        const std::string& src;
        std::size_t pos;
        std::vector<Node> nodes;

        [[noreturn]] void fail(const std::string& msg) const
        {
            throw DomainError("kernel expression: " + msg + " at position " +
                              std::to_string(pos) + " in \"" + src + "\"");
        }

        void skipSpace()
        {
            while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
        }

        bool accept(char c)
        {
            skipSpace();
            if (pos < src.size() && src[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }

        void expect(char c)
        {
            if (!accept(c)) fail(std::string("expected '") + c + "'");
        }

        int add(Node node)
        {
            nodes.push_back(node);
            return static_cast<int>(nodes.size()) - 1;
        }

        int parseExpr()
        {
            int lhs = parseTerm();
            for (;;) {
                if (accept('+')) {
                    lhs = add({Op::Add, {}, lhs, parseTerm()});
                } else if (accept('-')) {
                    lhs = add({Op::Sub, {}, lhs, parseTerm()});
                } else {
                    return lhs;
                }
            }
        }

        int parseTerm()
        {
            int lhs = parseUnary();
            for (;;) {
                if (accept('*')) {
                    lhs = add({Op::Mul, {}, lhs, parseUnary()});
                } else if (accept('/')) {
                    lhs = add({Op::Div, {}, lhs, parseUnary()});
                } else {
                    return lhs;
                }
            }
        }

        int parseUnary()
        {
            if (accept('-')) return add({Op::Neg, {}, parseUnary(), -1});
            if (accept('+')) return parseUnary();
            return parsePower();
        }

        int parsePower()
        {
            const int base = parsePrimary();
            if (accept('^')) return add({Op::Pow, {}, base, parseUnary()});
            return base;
        }

        int parsePrimary()
        {
            skipSpace();
            if (pos >= src.size()) fail("unexpected end of expression");
            const char c = src[pos];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                const char* begin = src.c_str() + pos;
                char* end = nullptr;
                const double v = std::strtod(begin, &end);
                if (end == begin) fail("malformed number");
                pos += static_cast<std::size_t>(end - begin);
                return add({Op::Constant, Complex{v, 0.0}});
            }
            if (accept('(')) {
                const int inner = parseExpr();
                expect(')');
                return inner;
            }
            if (accept('|')) {
                const int inner = parseExpr();
                expect('|');
                return add({Op::Abs, {}, inner, -1});
            }
            if (std::isalpha(static_cast<unsigned char>(c))) {
                std::size_t end = pos;
                while (end < src.size() && std::isalnum(static_cast<unsigned char>(src[end]))) ++end;
                const std::string word = src.substr(pos, end - pos);
                pos = end;
                if (word == "k") return add({Op::VarK});
                if (word == "m") return add({Op::VarM});
                if (word == "n") return add({Op::VarN});
                if (word == "i") return add({Op::Constant, Complex{0.0, 1.0}});
                if (word == "pi") return add({Op::Constant, Complex{std::numbers::pi, 0.0}});
                Op fn;
                if (word == "sqrt") {
                    fn = Op::Sqrt;
                } else if (word == "abs") {
                    fn = Op::Abs;
                } else if (word == "sgn") {
                    fn = Op::Sgn;
                } else {
                    fail("unknown identifier '" + word + "'");
                }
                expect('(');
                const int arg = parseExpr();
                expect(')');
                return add({fn, {}, arg, -1});
            }
            fail(std::string("unexpected '") + c + "'");
        }
    };

    static Complex power(Complex base, Complex exponent)
    {
        if (exponent.imag() == 0.0) {
            const double e = exponent.real();
            if (e == std::round(e) && std::abs(e) <= 64.0) {
                long p = static_cast<long>(std::abs(e));
                Complex result{1.0, 0.0}, b = base;
                while (p > 0) {
                    if (p & 1) result *= b;
                    b *= b;
                    p >>= 1;
                }
                return e < 0 ? 1.0 / result : result;
            }
            if (base.imag() == 0.0 && base.real() >= 0.0) {
                return {std::pow(base.real(), e), 0.0};
            }
        }
        return std::pow(base, exponent);
    }

    Complex eval(int idx, double k, double m, double n) const
    {
        const Node& node = (*nodes_)[static_cast<std::size_t>(idx)];
        switch (node.op) {
        case Op::Constant: return node.value;
        case Op::VarK: return {k, 0.0};
        case Op::VarM: return {m, 0.0};
        case Op::VarN: return {n, 0.0};
        case Op::Add: return eval(node.lhs, k, m, n) + eval(node.rhs, k, m, n);
        case Op::Sub: return eval(node.lhs, k, m, n) - eval(node.rhs, k, m, n);
        case Op::Mul: return eval(node.lhs, k, m, n) * eval(node.rhs, k, m, n);
        case Op::Div: return eval(node.lhs, k, m, n) / eval(node.rhs, k, m, n);
        case Op::Pow: return power(eval(node.lhs, k, m, n), eval(node.rhs, k, m, n));
        case Op::Neg: return -eval(node.lhs, k, m, n);
        case Op::Sqrt: {
            const Complex a = eval(node.lhs, k, m, n);
            if (a.imag() == 0.0 && a.real() >= 0.0) return {std::sqrt(a.real()), 0.0};
            return std::sqrt(a);
        }
        case Op::Abs: return {std::abs(eval(node.lhs, k, m, n)), 0.0};
        case Op::Sgn: {
            const double a = eval(node.lhs, k, m, n).real();
            return {static_cast<double>((a > 0.0) - (a < 0.0)), 0.0};
        }
        }
        return {};
    }

    std::string text_;
    std::shared_ptr<const std::vector<Node>> nodes_;
    int root_ = -1;
};

} // namespace triad
