#include "tmoyal/ast.hpp"

#include <cctype>
#include <map>

namespace tmoyal {

namespace {

AstPtr node(AstNode&& n) { return std::make_shared<const AstNode>(std::move(n)); }

enum class TokKind { number, ident, plus, minus, times, caret, lparen, rparen, comma, end };

struct Token {
    TokKind kind;
    std::size_t offset;
    std::string text;
    Rational value;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            std::string digits = text.substr(i, j - i);
            Rational value = Rational::parse(digits);
            if (j < text.size() && text[j] == '/' && j + 1 < text.size() &&
                std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
                std::size_t k = j + 1;
                while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
                Rational den = Rational::parse(text.substr(j + 1, k - j - 1));
                if (den.is_zero()) throw ParseError(start, "rational with zero denominator");
                value = value / den;
                j = k;
            }
            out.push_back(Token{TokKind::number, start, text.substr(start, j - start), value});
            i = j;
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            std::string name = text.substr(i, j - i);
            if (name.size() == 3 && name[0] == 'w' && j + 1 < text.size() && text[j] == '^' &&
                (text[j + 1] == '1' || text[j + 1] == '2') && sym_lookup(name + "^" + text[j + 1])) {
                name += '^';
                name += text[j + 1];
                j += 2;
            }
            out.push_back(Token{TokKind::ident, start, name, Rational()});
            i = j;
            continue;
        }
        TokKind kind;
        switch (c) {
            case '+': kind = TokKind::plus; break;
            case '-': kind = TokKind::minus; break;
            case '*': kind = TokKind::times; break;
            case '^': kind = TokKind::caret; break;
            case '(': kind = TokKind::lparen; break;
            case ')': kind = TokKind::rparen; break;
            case ',': kind = TokKind::comma; break;
            default:
                throw ParseError(start, std::string("unexpected character '") + c + "'");
        }
        out.push_back(Token{kind, start, text.substr(start, 1), Rational()});
        ++i;
    }
    out.push_back(Token{TokKind::end, text.size(), "", Rational()});
    return out;
}

const std::map<std::string, std::size_t>& function_arities() {
    static const std::map<std::string, std::size_t> table{
        {"star", 2}, {"comm", 2}, {"acomm", 2}, {"gauss", 2},
        {"d1", 1},   {"d2", 1},   {"X1", 1},    {"X2", 1},
    };
    return table;
}

class Parser {
  public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    AstPtr run() {
        AstPtr e = expr();
        expect(TokKind::end, "end of input");
        return e;
    }

  private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }
    bool accept(TokKind k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    void expect(TokKind k, const std::string& what) {
        if (peek().kind != k)
            throw ParseError(peek().offset, "expected " + what);
        ++pos_;
    }

    AstPtr expr() {
        bool negated = accept(TokKind::minus);
        AstPtr lhs = term();
        if (negated) {
            if (lhs->kind == NodeKind::rational)
                lhs = make_rational(Rational() - lhs->number);
            else
                lhs = make_difference(make_rational(Rational(0)), lhs);
        }
        while (peek().kind == TokKind::plus || peek().kind == TokKind::minus) {
            bool plus = advance().kind == TokKind::plus;
            AstPtr rhs = term();
            lhs = plus ? make_sum(lhs, rhs) : make_difference(lhs, rhs);
        }
        return lhs;
    }

    AstPtr term() {
        AstPtr lhs = factor();
        while (accept(TokKind::times)) lhs = make_product(lhs, factor());
        return lhs;
    }

    AstPtr factor() {
        AstPtr base = atom();
        if (accept(TokKind::caret)) {
            const Token& t = peek();
            if (t.kind != TokKind::number || !t.value.is_integer() || t.value.sign() < 0)
                throw ParseError(t.offset, "expected a nonnegative integer exponent");
            if (t.value > Rational(4096)) throw ParseError(t.offset, "exponent too large");
            advance();
            base = make_power(base, static_cast<unsigned>(std::stoul(t.value.str())));
        }
        return base;
    }

    AstPtr atom() {
        const Token& t = peek();
        switch (t.kind) {
            case TokKind::number:
                advance();
                return make_rational(t.value);
            case TokKind::lparen: {
                advance();
                AstPtr e = expr();
                expect(TokKind::rparen, "')'");
                return e;
            }
            case TokKind::ident: {
                advance();
                if (t.text == "i") return make_imaginary();
                auto arity = function_arities().find(t.text);
                if (peek().kind == TokKind::lparen) {
                    if (arity == function_arities().end())
                        throw ParseError(t.offset, "unknown function '" + t.text + "'");
                    advance();
                    std::vector<AstPtr> args;
                    args.push_back(expr());
                    while (accept(TokKind::comma)) args.push_back(expr());
                    expect(TokKind::rparen, "')'");
                    if (args.size() != arity->second)
                        throw ParseError(t.offset, "'" + t.text + "' expects " +
                                                       std::to_string(arity->second) +
                                                       " arguments");
                    return make_call(t.text, std::move(args));
                }
                if (auto s = sym_lookup(t.text)) return make_symbol(*s);
                throw ParseError(t.offset, "unknown symbol '" + t.text + "'");
            }
            default:
                throw ParseError(t.offset, "expected a value");
        }
    }
};

int precedence(const AstNode& n) {
    switch (n.kind) {
        case NodeKind::sum:
        case NodeKind::difference: return 0;
        case NodeKind::product: return 1;
        case NodeKind::power: return 2;
        case NodeKind::rational: return n.number.sign() < 0 ? 0 : 3;
        default: return 3;
    }
}

void render_to(const AstPtr& n, int min_prec, std::string& out) {
    bool wrap = precedence(*n) < min_prec;
    if (wrap) out += '(';
    switch (n->kind) {
        case NodeKind::rational: out += n->number.str(); break;
        case NodeKind::imaginary: out += 'i'; break;
        case NodeKind::symbol: out += sym_name(n->symbol); break;
        case NodeKind::sum:
            render_to(n->children[0], 0, out);
            out += " + ";
            render_to(n->children[1], 1, out);
            break;
        case NodeKind::difference:
            render_to(n->children[0], 0, out);
            out += " - ";
            render_to(n->children[1], 1, out);
            break;
        case NodeKind::product:
            render_to(n->children[0], 1, out);
            out += "*";
            render_to(n->children[1], 2, out);
            break;
        case NodeKind::power:
            render_to(n->children[0], 3, out);
            out += '^';
            out += std::to_string(n->exponent);
            break;
        case NodeKind::call: {
            out += n->callee;
            out += '(';
            for (std::size_t j = 0; j < n->children.size(); ++j) {
                if (j) out += ", ";
                render_to(n->children[j], 0, out);
            }
            out += ')';
            break;
        }
    }
    if (wrap) out += ')';
}

bool is_poly(const Value& v) { return std::holds_alternative<Poly>(v); }

Value v_add(const Value& a, const Value& b) {
    if (is_poly(a) && is_poly(b)) return std::get<Poly>(a) + std::get<Poly>(b);
    return to_density(a) + to_density(b);
}

Value v_sub(const Value& a, const Value& b) {
    if (is_poly(a) && is_poly(b)) return std::get<Poly>(a) - std::get<Poly>(b);
    return to_density(a) - to_density(b);
}

Value v_mul(const Value& a, const Value& b) {
    if (is_poly(a) && is_poly(b)) return std::get<Poly>(a) * std::get<Poly>(b);
    return to_density(a) * to_density(b);
}

Rational constant_weight(const Value& v) {
    if (!is_poly(v)) throw ValueError("gaussian weight must be a rational constant");
    const Poly& p = std::get<Poly>(v);
    if (p.is_zero()) return Rational(0);
    const auto& terms = p.terms();
    if (terms.size() != 1) throw ValueError("gaussian weight must be a rational constant");
    const auto& [mono, coeff] = *terms.begin();
    if (!(mono == Monomial{}) || !coeff.is_real())
        throw ValueError("gaussian weight must be a rational constant");
    return coeff.re;
}

struct Evaluator {
    const Geometry& g;
    StarMethod m;

    Value run(const AstPtr& n) const {
        switch (n->kind) {
            case NodeKind::rational:
                return Poly::constant(g.ord, ComplexRational(n->number));
            case NodeKind::imaginary:
                return Poly::constant(g.ord, ComplexRational::i());
            case NodeKind::symbol:
                return Poly::sym(g.ord, n->symbol);
            case NodeKind::sum: return v_add(run(n->children[0]), run(n->children[1]));
            case NodeKind::difference: return v_sub(run(n->children[0]), run(n->children[1]));
            case NodeKind::product: return v_mul(run(n->children[0]), run(n->children[1]));
            case NodeKind::power: {
                Value base = run(n->children[0]);
                if (is_poly(base)) return std::get<Poly>(base).pow(n->exponent);
                GaussianDensity acc = GaussianDensity::from_poly(g.one());
                for (unsigned j = 0; j < n->exponent; ++j)
                    acc = acc * std::get<GaussianDensity>(base);
                return acc;
            }
            case NodeKind::call: return call(*n);
        }
        throw ValueError("unhandled expression node");
    }

    Value call(const AstNode& n) const {
        const std::string& f = n.callee;
        if (f == "gauss") {
            Rational w = constant_weight(run(n.children[0]));
            Value body = run(n.children[1]);
            if (is_poly(body)) return GaussianDensity(w, std::get<Poly>(body));
            GaussianDensity out(g.ord);
            for (const auto& [s, pref] : std::get<GaussianDensity>(body).parts())
                out.add_part(w + s, pref);
            return out;
        }
        if (f == "star" || f == "comm" || f == "acomm") {
            Value a = run(n.children[0]);
            Value b = run(n.children[1]);
            if (is_poly(a) && is_poly(b)) {
                const Poly& pa = std::get<Poly>(a);
                const Poly& pb = std::get<Poly>(b);
                if (f == "star") return star(g, pa, pb, m);
                if (f == "comm") return star_comm(g, pa, pb, m);
                return star_acomm(g, pa, pb, m);
            }
            GaussianDensity da = to_density(a);
            GaussianDensity db = to_density(b);
            if (f == "star") return star(g, da, db, m);
            if (f == "comm") return star_comm(g, da, db, m);
            return star_acomm(g, da, db, m);
        }
        int axis = (f == "d1" || f == "X1") ? 1 : 2;
        bool frame = f == "X1" || f == "X2";
        Value a = run(n.children[0]);
        if (is_poly(a)) {
            const Poly& p = std::get<Poly>(a);
            return frame ? vf_apply(g, axis, p) : dx(p, axis);
        }
        const GaussianDensity& d = std::get<GaussianDensity>(a);
        return frame ? vf_apply(g, axis, d) : dx(d, axis);
    }
};

} // namespace

AstPtr make_rational(const Rational& value) {
    return node({NodeKind::rational, value, Sym::x1, "", 0, {}});
}

AstPtr make_imaginary() { return node({NodeKind::imaginary, Rational(), Sym::x1, "", 0, {}}); }

AstPtr make_symbol(Sym s) { return node({NodeKind::symbol, Rational(), s, "", 0, {}}); }

AstPtr make_sum(AstPtr lhs, AstPtr rhs) {
    return node({NodeKind::sum, Rational(), Sym::x1, "", 0, {std::move(lhs), std::move(rhs)}});
}

AstPtr make_difference(AstPtr lhs, AstPtr rhs) {
    return node(
        {NodeKind::difference, Rational(), Sym::x1, "", 0, {std::move(lhs), std::move(rhs)}});
}

AstPtr make_product(AstPtr lhs, AstPtr rhs) {
    return node({NodeKind::product, Rational(), Sym::x1, "", 0, {std::move(lhs), std::move(rhs)}});
}

AstPtr make_power(AstPtr base, unsigned exponent) {
    return node({NodeKind::power, Rational(), Sym::x1, "", exponent, {std::move(base)}});
}

AstPtr make_call(const std::string& callee, std::vector<AstPtr> args) {
    auto arity = function_arities().find(callee);
    if (arity == function_arities().end())
        throw ValueError("unknown function '" + callee + "'");
    if (args.size() != arity->second)
        throw ValueError("'" + callee + "' expects " + std::to_string(arity->second) +
                         " arguments");
    return node({NodeKind::call, Rational(), Sym::x1, callee, 0, std::move(args)});
}

bool ast_equal(const AstPtr& a, const AstPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case NodeKind::rational:
            if (!(a->number == b->number)) return false;
            break;
        case NodeKind::symbol:
            if (a->symbol != b->symbol) return false;
            break;
        case NodeKind::power:
            if (a->exponent != b->exponent) return false;
            break;
        case NodeKind::call:
            if (a->callee != b->callee) return false;
            break;
        default: break;
    }
    if (a->children.size() != b->children.size()) return false;
    for (std::size_t j = 0; j < a->children.size(); ++j)
        if (!ast_equal(a->children[j], b->children[j])) return false;
    return true;
}

AstPtr parse_expression(const std::string& text) { return Parser(lex(text)).run(); }

std::string render(const AstPtr& n) {
    std::string out;
    render_to(n, 0, out);
    return out;
}

Value eval_expression(const AstPtr& n, const Geometry& g, StarMethod method) {
    return Evaluator{g, method}.run(n);
}

GaussianDensity to_density(const Value& v) {
    if (std::holds_alternative<GaussianDensity>(v)) return std::get<GaussianDensity>(v);
    return GaussianDensity::from_poly(std::get<Poly>(v));
}

Value value_star(const Geometry& g, const Value& lhs, const Value& rhs, StarMethod method) {
    if (is_poly(lhs) && is_poly(rhs))
        return star(g, std::get<Poly>(lhs), std::get<Poly>(rhs), method);
    return star(g, to_density(lhs), to_density(rhs), method);
}

std::string value_str(const Value& v) {
    return std::visit([](const auto& x) { return x.str(); }, v);
}

} // namespace tmoyal
