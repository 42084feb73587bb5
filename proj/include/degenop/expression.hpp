#ifndef DEGENOP_EXPRESSION_HPP
#define DEGENOP_EXPRESSION_HPP

#include <cctype>
#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

namespace degenop {

/// Small arithmetic expression evaluator for CLI data specifications.
/// Grammar: + - * / ^ (right assoc), parentheses, unary minus, the
/// variables x and t, the constant pi, and the usual elementary functions.
class Expression {
public:
    explicit Expression(const std::string& text) {
        Parser p{text, 0};
        root_ = p.parse_sum();
        p.skip_ws();
        if (p.pos != text.size())
            throw std::invalid_argument("expression: trailing input at '" +
                                        text.substr(p.pos) + "'");
    }

    double operator()(double x, double t = 0.0) const { return root_->eval(x, t); }

private:
    struct Node {
        virtual ~Node() = default;
        virtual double eval(double x, double t) const = 0;
    };
    using NodePtr = std::shared_ptr<const Node>;

    struct Constant : Node {
        double v;
        explicit Constant(double c) : v(c) {}
        double eval(double, double) const override { return v; }
    };
    struct Variable : Node {
        bool time;
        explicit Variable(bool is_t) : time(is_t) {}
        double eval(double x, double t) const override { return time ? t : x; }
    };
    struct Binary : Node {
        char op;
        NodePtr a, b;
        Binary(char o, NodePtr l, NodePtr r) : op(o), a(std::move(l)), b(std::move(r)) {}
        double eval(double x, double t) const override {
            double u = a->eval(x, t), v = b->eval(x, t);
            switch (op) {
                case '+': return u + v;
                case '-': return u - v;
                case '*': return u * v;
                case '/': return u / v;
                default: return std::pow(u, v);
            }
        }
    };
    struct Unary : Node {
        std::function<double(double)> f;
        NodePtr a;
        Unary(std::function<double(double)> fn, NodePtr arg) : f(std::move(fn)), a(std::move(arg)) {}
        double eval(double x, double t) const override { return f(a->eval(x, t)); }
    };

    struct Parser {
        const std::string& s;
        std::size_t pos;

        void skip_ws() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool eat(char c) {
            skip_ws();
            if (pos < s.size() && s[pos] == c) { ++pos; return true; }
            return false;
        }

        NodePtr parse_sum() {
            NodePtr n = parse_product();
            for (;;) {
                if (eat('+')) n = std::make_shared<Binary>('+', n, parse_product());
                else if (eat('-')) n = std::make_shared<Binary>('-', n, parse_product());
                else return n;
            }
        }
        NodePtr parse_product() {
            NodePtr n = parse_unary();
            for (;;) {
                if (eat('*')) n = std::make_shared<Binary>('*', n, parse_unary());
                else if (eat('/')) n = std::make_shared<Binary>('/', n, parse_unary());
                else return n;
            }
        }
        NodePtr parse_unary() {
            if (eat('-'))
                return std::make_shared<Unary>([](double v) { return -v; }, parse_unary());
            if (eat('+')) return parse_unary();
            return parse_power();
        }
        NodePtr parse_power() {
            NodePtr base = parse_atom();
            if (eat('^')) return std::make_shared<Binary>('^', base, parse_unary());
            return base;
        }
        NodePtr parse_atom() {
            skip_ws();
            if (pos >= s.size()) throw std::invalid_argument("expression: unexpected end of input");
            char c = s[pos];
            if (c == '(') {
                ++pos;
                NodePtr n = parse_sum();
                if (!eat(')')) throw std::invalid_argument("expression: missing ')'");
                return n;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                std::size_t used = 0;
                double v = std::stod(s.substr(pos), &used);
                pos += used;
                return std::make_shared<Constant>(v);
            }
            if (std::isalpha(static_cast<unsigned char>(c))) {
                std::size_t start = pos;
                while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
                std::string name = s.substr(start, pos - start);
                if (name == "x") return std::make_shared<Variable>(false);
                if (name == "t") return std::make_shared<Variable>(true);
                if (name == "pi") return std::make_shared<Constant>(M_PI);
                if (!eat('(')) throw std::invalid_argument("expression: expected '(' after " + name);
                NodePtr arg = parse_sum();
                if (!eat(')')) throw std::invalid_argument("expression: missing ')'");
                static const std::pair<const char*, double (*)(double)> fns[] = {
                    {"sin", std::sin},   {"cos", std::cos},   {"tan", std::tan},
                    {"exp", std::exp},   {"log", std::log},   {"sqrt", std::sqrt},
                    {"abs", std::fabs},  {"sinh", std::sinh}, {"cosh", std::cosh},
                };
                for (const auto& [fname, fp] : fns)
                    if (name == fname) return std::make_shared<Unary>(fp, arg);
                throw std::invalid_argument("expression: unknown function " + name);
            }
            throw std::invalid_argument(std::string("expression: unexpected character '") + c + "'");
        }
    };

    NodePtr root_;
};

}  // namespace degenop

#endif
