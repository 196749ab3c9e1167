#include "ecir/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "ecir/errors.hpp"

namespace ecir {

namespace {

enum class Op { Number, Var, Add, Sub, Mul, Div, Pow, Neg, Exp, Sin, Cos, Sqrt };

}  // namespace

struct Expression::Node {
    Op op;
    double value = 0.0;  // Op::Number only
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make_node(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double value = 0.0) {
    auto n = std::make_shared<Expression::Node>();
    n->op = op;
    n->value = value;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    NodePtr run() {
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected token");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        std::ostringstream os;
        os << "expression syntax error at offset " << pos_ << ": " << what;
        throw ConfigError(os.str());
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
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

    NodePtr parse_expr() {
        NodePtr lhs;
        if (eat('-')) {
            lhs = make_node(Op::Neg, parse_term());
        } else {
            lhs = parse_term();
        }
        for (;;) {
            if (eat('+')) {
                lhs = make_node(Op::Add, lhs, parse_term());
            } else if (eat('-')) {
                lhs = make_node(Op::Sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            if (eat('*')) {
                lhs = make_node(Op::Mul, lhs, parse_factor());
            } else if (eat('/')) {
                lhs = make_node(Op::Div, lhs, parse_factor());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_factor() {
        NodePtr base = parse_primary();
        if (eat('^')) return make_node(Op::Pow, base, parse_factor());
        return base;
    }

    NodePtr parse_primary() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            NodePtr e = parse_expr();
            if (!eat(')')) fail("unclosed parenthesis");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
        fail("expected number, 's', '(' or function");
    }

    NodePtr parse_number() {
        skip_ws();
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos_ += static_cast<std::size_t>(end - begin);
        return make_node(Op::Number, nullptr, nullptr, v);
    }

    NodePtr parse_name() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string name = text_.substr(start, pos_ - start);
        if (name == "s") return make_node(Op::Var);
        Op op;
        if (name == "exp") {
            op = Op::Exp;
        } else if (name == "sin") {
            op = Op::Sin;
        } else if (name == "cos") {
            op = Op::Cos;
        } else if (name == "sqrt") {
            op = Op::Sqrt;
        } else {
            pos_ = start;
            fail("unknown function '" + name + "'");
        }
        if (!eat('(')) fail("expected '(' after function name");
        NodePtr arg = parse_expr();
        if (!eat(')')) fail("unclosed parenthesis");
        return make_node(op, arg);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

double eval_node(const Expression::Node& n, double s) {
    switch (n.op) {
        case Op::Number: return n.value;
        case Op::Var: return s;
        case Op::Add: return eval_node(*n.lhs, s) + eval_node(*n.rhs, s);
        case Op::Sub: return eval_node(*n.lhs, s) - eval_node(*n.rhs, s);
        case Op::Mul: return eval_node(*n.lhs, s) * eval_node(*n.rhs, s);
        case Op::Div: return eval_node(*n.lhs, s) / eval_node(*n.rhs, s);
        case Op::Pow: return std::pow(eval_node(*n.lhs, s), eval_node(*n.rhs, s));
        case Op::Neg: return -eval_node(*n.lhs, s);
        case Op::Exp: return std::exp(eval_node(*n.lhs, s));
        case Op::Sin: return std::sin(eval_node(*n.lhs, s));
        case Op::Cos: return std::cos(eval_node(*n.lhs, s));
        case Op::Sqrt: return std::sqrt(eval_node(*n.lhs, s));
    }
    return 0.0;
}

void render_node(const Expression::Node& n, std::ostream& os) {
    switch (n.op) {
        case Op::Number: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.17g", n.value);
            os << buf;
            return;
        }
        case Op::Var: os << 's'; return;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div:
        case Op::Pow: {
            const char* sym = n.op == Op::Add   ? " + "
                              : n.op == Op::Sub ? " - "
                              : n.op == Op::Mul ? " * "
                              : n.op == Op::Div ? " / "
                                                : " ^ ";
            os << '(';
            render_node(*n.lhs, os);
            os << sym;
            render_node(*n.rhs, os);
            os << ')';
            return;
        }
        case Op::Neg:
            os << "(0 - ";
            render_node(*n.lhs, os);
            os << ')';
            return;
        case Op::Exp:
        case Op::Sin:
        case Op::Cos:
        case Op::Sqrt: {
            const char* fn = n.op == Op::Exp   ? "exp"
                             : n.op == Op::Sin ? "sin"
                             : n.op == Op::Cos ? "cos"
                                               : "sqrt";
            os << fn << '(';
            render_node(*n.lhs, os);
            os << ')';
            return;
        }
    }
}

}  // namespace

Expression Expression::parse(const std::string& text) {
    Expression e;
    e.root_ = Parser(text).run();
    return e;
}

double Expression::evaluate(double s) const { return eval_node(*root_, s); }

std::string Expression::render() const {
    std::ostringstream os;
    render_node(*root_, os);
    return os.str();
}

}  // namespace ecir
