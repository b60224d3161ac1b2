#include "biharm/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>

namespace biharm::expr {

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    std::size_t begin;
    std::size_t end;
    double number = 0.0;
    std::string text;
};

const char* tok_name(Tok t) {
    switch (t) {
    case Tok::number: return "number";
    case Tok::ident: return "identifier";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::slash: return "'/'";
    case Tok::caret: return "'^'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::end: return "end of input";
    }
    return "?";
}

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::optional<Function> lookup_function(std::string_view name) {
    if (name == "sin") return Function::sin;
    if (name == "cos") return Function::cos;
    if (name == "exp") return Function::exp;
    if (name == "log") return Function::log;
    if (name == "sqrt") return Function::sqrt;
    return std::nullopt;
}

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    const auto operand_start = std::vector<std::string>{"number", "identifier", "'('", "'-'"};
    while (i < s.size()) {
        const char c = s[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        const std::size_t begin = i;
        if (is_digit(c) || (c == '.' && i + 1 < s.size() && is_digit(s[i + 1]))) {
            while (i < s.size() && is_digit(s[i])) ++i;
            if (i < s.size() && s[i] == '.') {
                ++i;
                while (i < s.size() && is_digit(s[i])) ++i;
            }
            if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
                if (j < s.size() && is_digit(s[j])) {
                    i = j;
                    while (i < s.size() && is_digit(s[i])) ++i;
                }
            }
            if (i < s.size() && (is_alpha(s[i]) || s[i] == '.'))
                throw ParseError("lexical error: number immediately followed by '" +
                                     std::string(1, s[i]) + "' (no implicit multiplication)",
                                 i, {"operator", "')'", "end of input"});
            const std::string text(s.substr(begin, i - begin));
            out.push_back({Tok::number, begin, i, std::strtod(text.c_str(), nullptr), text});
            continue;
        }
        if (is_alpha(c)) {
            while (i < s.size() && (is_alpha(s[i]) || is_digit(s[i]))) ++i;
            out.push_back({Tok::ident, begin, i, 0.0, std::string(s.substr(begin, i - begin))});
            continue;
        }
        Tok k;
        switch (c) {
        case '+': k = Tok::plus; break;
        case '-': k = Tok::minus; break;
        case '*': k = Tok::star; break;
        case '/': k = Tok::slash; break;
        case '^': k = Tok::caret; break;
        case '(': k = Tok::lparen; break;
        case ')': k = Tok::rparen; break;
        default:
            throw ParseError("lexical error: unexpected character '" + std::string(1, c) + "'", i,
                             operand_start);
        }
        ++i;
        out.push_back({k, begin, i, 0.0, {}});
    }
    out.push_back({Tok::end, s.size(), s.size(), 0.0, {}});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view src) : tokens_(lex(src)) {}

    NodePtr parse_all() {
        auto root = sum();
        if (peek().kind != Tok::end) {
            std::vector<std::string> expected{"'+'", "'-'", "'*'", "'/'", "'^'"};
            if (depth_ > 0) expected.push_back("')'");
            expected.push_back("end of input");
            fail("unexpected " + std::string(tok_name(peek().kind)), expected);
        }
        return root;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
        std::string msg = "syntax error at offset " + std::to_string(peek().begin) + ": " + what +
                          "; expected one of";
        for (const auto& e : expected) msg += " " + e;
        throw ParseError(msg, peek().begin, std::move(expected));
    }

    static NodePtr make_binary(BinaryOp op, NodePtr l, NodePtr r) {
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::binary;
        n->op = op;
        n->span = {l->span.begin, r->span.end};
        n->children = {std::move(l), std::move(r)};
        return n;
    }

    NodePtr sum() {
        auto left = product();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const auto op = next().kind == Tok::plus ? BinaryOp::add : BinaryOp::sub;
            left = make_binary(op, left, product());
        }
        return left;
    }

    NodePtr product() {
        auto left = unary();
        while (peek().kind == Tok::star || peek().kind == Tok::slash) {
            const auto op = next().kind == Tok::star ? BinaryOp::mul : BinaryOp::div;
            left = make_binary(op, left, unary());
        }
        return left;
    }

    NodePtr unary() {
        if (peek().kind == Tok::minus) {
            const auto begin = next().begin;
            auto operand = unary();
            auto n = std::make_shared<Node>();
            n->kind = NodeKind::negate;
            n->span = {begin, operand->span.end};
            n->children = {std::move(operand)};
            return n;
        }
        return power();
    }

    NodePtr power() {
        auto base = primary();
        if (peek().kind == Tok::caret) {
            next();
            return make_binary(BinaryOp::pow, base, unary());
        }
        return base;
    }

    NodePtr primary() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::number: {
            next();
            auto n = std::make_shared<Node>();
            n->kind = NodeKind::number;
            n->number = t.number;
            n->span = {t.begin, t.end};
            return n;
        }
        case Tok::ident: {
            next();
            if (auto fn = lookup_function(t.text)) {
                if (peek().kind != Tok::lparen)
                    fail("function '" + t.text + "' must be called", {"'('"});
                next();
                ++depth_;
                auto arg = sum();
                --depth_;
                if (peek().kind != Tok::rparen)
                    fail("unclosed call to '" + t.text + "'", {"')'", "operator"});
                const auto end = next().end;
                auto n = std::make_shared<Node>();
                n->kind = NodeKind::call;
                n->fn = *fn;
                n->name = t.text;
                n->span = {t.begin, end};
                n->children = {std::move(arg)};
                return n;
            }
            if (peek().kind == Tok::lparen) {
                pos_ -= 1;
                fail("unknown function '" + t.text + "'", {"sin", "cos", "exp", "log", "sqrt"});
            }
            auto n = std::make_shared<Node>();
            n->kind = NodeKind::identifier;
            n->name = t.text;
            n->span = {t.begin, t.end};
            return n;
        }
        case Tok::lparen: {
            next();
            ++depth_;
            auto inner = sum();
            --depth_;
            if (peek().kind != Tok::rparen) fail("unclosed parenthesis", {"')'", "operator"});
            next();
            return inner;
        }
        default:
            fail("unexpected " + std::string(tok_name(t.kind)),
                 {"number", "identifier", "'('", "'-'"});
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

std::string span_text(SourceSpan s) {
    return "[" + std::to_string(s.begin) + "," + std::to_string(s.end) + ")";
}

Jet apply_function(Function fn, const Jet& a) {
    switch (fn) {
    case Function::sin: return sin(a);
    case Function::cos: return cos(a);
    case Function::exp: return exp(a);
    case Function::log: return log(a);
    case Function::sqrt: return sqrt(a);
    }
    return a;
}

struct JetEvaluator {
    const JetBindings& vars;
    const ParamBindings& params;
    int n_vars;
    int order;

    Jet operator()(const Node& n) const {
        switch (n.kind) {
        case NodeKind::number: return Jet::constant(n.number, n_vars, order);
        case NodeKind::identifier: {
            if (auto it = vars.find(n.name); it != vars.end()) return it->second;
            if (auto it = params.find(n.name); it != params.end())
                return Jet::constant(it->second, n_vars, order);
            throw UnboundIdentifierError(n.name, n.span);
        }
        case NodeKind::negate: return -(*this)(*n.children[0]);
        case NodeKind::call: {
            const Jet arg = (*this)(*n.children[0]);
            return guarded(n, [&] { return apply_function(n.fn, arg); });
        }
        case NodeKind::binary: {
            const Jet l = (*this)(*n.children[0]);
            const Jet r = (*this)(*n.children[1]);
            return guarded(n, [&] {
                switch (n.op) {
                case BinaryOp::add: return l + r;
                case BinaryOp::sub: return l - r;
                case BinaryOp::mul: return l * r;
                case BinaryOp::div: return l / r;
                case BinaryOp::pow: return pow(l, r);
                }
                return l;
            });
        }
        }
        throw UsageError("corrupt expression node");
    }

    template <class F>
    static Jet guarded(const Node& n, F&& op) {
        try {
            return op();
        } catch (const DomainError& e) {
            throw DomainError(std::string(e.what()) + " at " + span_text(n.span), e.value(), n.span);
        } catch (const SingularValueError& e) {
            throw SingularValueError(std::string(e.what()) + " at " + span_text(n.span), e.value());
        }
    }
};

void collect(const Node& n, std::set<std::string>& out) {
    if (n.kind == NodeKind::identifier) out.insert(n.name);
    for (const auto& c : n.children) collect(*c, out);
}

std::string render_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string render(const Node& n) {
    switch (n.kind) {
    case NodeKind::number: return render_number(n.number);
    case NodeKind::identifier: return n.name;
    case NodeKind::negate: return "(-" + render(*n.children[0]) + ")";
    case NodeKind::call: return std::string(function_name(n.fn)) + "(" + render(*n.children[0]) + ")";
    case NodeKind::binary: {
        static const char* ops[] = {" + ", " - ", " * ", " / ", " ^ "};
        return "(" + render(*n.children[0]) + ops[static_cast<int>(n.op)] + render(*n.children[1]) + ")";
    }
    }
    return "?";
}

} // namespace

const char* function_name(Function fn) noexcept {
    switch (fn) {
    case Function::sin: return "sin";
    case Function::cos: return "cos";
    case Function::exp: return "exp";
    case Function::log: return "log";
    case Function::sqrt: return "sqrt";
    }
    return "?";
}

Expr parse(std::string_view source) {
    Parser p(source);
    return Expr(p.parse_all(), std::string(source));
}

Jet eval_jet(const Expr& e, const JetBindings& vars, const ParamBindings& params) {
    if (e.empty()) throw UsageError("evaluating an empty expression");
    int n_vars = 1;
    int order = 0;
    if (!vars.empty()) {
        n_vars = vars.begin()->second.n_vars();
        order = vars.begin()->second.order();
        for (const auto& [name, jet] : vars)
            if (jet.n_vars() != n_vars || jet.order() != order)
                throw UsageError("variable '" + name + "' has a different jet shape");
    }
    return JetEvaluator{vars, params, n_vars, order}(e.root());
}

double eval_real(const Expr& e, const ParamBindings& values) {
    return eval_jet(e, {}, values).value();
}

std::set<std::string> free_symbols(const Expr& e) {
    std::set<std::string> out;
    if (!e.empty()) collect(e.root(), out);
    return out;
}

std::string to_string(const Expr& e) { return e.empty() ? std::string() : render(e.root()); }

bool same_tree(const Node& a, const Node& b) {
    if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
    switch (a.kind) {
    case NodeKind::number:
        if (a.number != b.number) return false;
        break;
    case NodeKind::identifier:
        if (a.name != b.name) return false;
        break;
    case NodeKind::binary:
        if (a.op != b.op) return false;
        break;
    case NodeKind::call:
        if (a.fn != b.fn) return false;
        break;
    case NodeKind::negate: break;
    }
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!same_tree(*a.children[i], *b.children[i])) return false;
    return true;
}

} // namespace biharm::expr
