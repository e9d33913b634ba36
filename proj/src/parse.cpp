#include "fjl/parse.hpp"

#include <cctype>

namespace fjl::expr {

namespace {

struct Token {
    enum class Kind { Int, Ident, Op, End };
    Kind kind = Kind::End;
    std::string text;
    int column = 0;  // 1-based
};

std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    std::size_t k = 0;
    while (k < src.size()) {
        char ch = src[k];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++k;
            continue;
        }
        Token t;
        t.column = static_cast<int>(k) + 1;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t start = k;
            while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
            t.kind = Token::Kind::Int;
            t.text = src.substr(start, k - start);  // arbitrary precision, kept textual
        } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t start = k;
            while (k < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[k])) || src[k] == '_'))
                ++k;
            t.kind = Token::Kind::Ident;
            t.text = src.substr(start, k - start);
        } else if (std::string("+-*/^(),").find(ch) != std::string::npos) {
            t.kind = Token::Kind::Op;
            t.text = std::string(1, ch);
            ++k;
        } else {
            throw ParseError(t.column, std::string("unexpected character '") + ch + "'");
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.column = static_cast<int>(src.size()) + 1;
    out.push_back(end);
    return out;
}

struct Parser {
    std::vector<Token> toks;
    std::size_t pos = 0;

    const Token& peek() const { return toks[pos]; }
    bool at_op(const char* s) const {
        return peek().kind == Token::Kind::Op && peek().text == s;
    }
    Token take() { return toks[pos++]; }
    void expect_op(const char* s) {
        if (!at_op(s)) throw ParseError(peek().column, std::string("expected '") + s + "'");
        ++pos;
    }

    static AstPtr node(Ast::Tag tag, int column) {
        auto n = std::make_shared<Ast>();
        n->tag = tag;
        n->column = column;
        return n;
    }
    static AstPtr binary(Ast::Tag tag, AstPtr a, AstPtr b, int column) {
        auto n = std::make_shared<Ast>();
        n->tag = tag;
        n->a = std::move(a);
        n->b = std::move(b);
        n->column = column;
        return n;
    }

    AstPtr parse_expr() {
        AstPtr left = parse_term();
        while (at_op("+") || at_op("-")) {
            Token op = take();
            AstPtr right = parse_term();
            left = binary(op.text == "+" ? Ast::Tag::Add : Ast::Tag::Sub, left, right, op.column);
        }
        return left;
    }

    AstPtr parse_term() {
        AstPtr left = parse_unary();
        while (at_op("*") || at_op("/")) {
            Token op = take();
            AstPtr right = parse_unary();
            left = binary(op.text == "*" ? Ast::Tag::Mul : Ast::Tag::Div, left, right, op.column);
        }
        return left;
    }

    AstPtr parse_unary() {
        if (at_op("-")) {
            Token op = take();
            auto n = node(Ast::Tag::Neg, op.column);
            const_cast<Ast*>(n.get())->a = parse_unary();
            return n;
        }
        return parse_power();
    }

    AstPtr parse_power() {
        AstPtr base = parse_atom();
        if (!at_op("^")) return base;
        Token op = take();
        AstPtr exp;
        if (at_op("-")) {
            Token neg = take();
            auto n = node(Ast::Tag::Neg, neg.column);
            const_cast<Ast*>(n.get())->a = parse_power();
            exp = n;
        } else {
            exp = parse_power();  // right associative
        }
        return binary(Ast::Tag::Pow, base, exp, op.column);
    }

    AstPtr parse_atom() {
        const Token& t = peek();
        if (t.kind == Token::Kind::Int) {
            Token tok = take();
            auto n = node(Ast::Tag::Int, tok.column);
            const_cast<Ast*>(n.get())->name = tok.text;
            return n;
        }
        if (t.kind == Token::Kind::Ident) {
            Token tok = take();
            if (at_op("(")) {
                take();
                auto n = node(Ast::Tag::Call, tok.column);
                auto* mut = const_cast<Ast*>(n.get());
                mut->name = tok.text;
                if (!at_op(")")) {
                    mut->args.push_back(parse_expr());
                    while (at_op(",")) {
                        take();
                        mut->args.push_back(parse_expr());
                    }
                }
                expect_op(")");
                return n;
            }
            auto n = node(Ast::Tag::Name, tok.column);
            const_cast<Ast*>(n.get())->name = tok.text;
            return n;
        }
        if (at_op("(")) {
            take();
            AstPtr inner = parse_expr();
            expect_op(")");
            return inner;
        }
        throw ParseError(t.column, "expected an integer, identifier, or '('");
    }
};

/// Exact rational value of a constant subtree; throws if a name appears.
long eval_int(const AstPtr& a);

Rat eval_rat(const AstPtr& a) {
    switch (a->tag) {
        case Ast::Tag::Int:
            return Rat(a->name);
        case Ast::Tag::Neg:
            return -eval_rat(a->a);
        case Ast::Tag::Add:
            return eval_rat(a->a) + eval_rat(a->b);
        case Ast::Tag::Sub:
            return eval_rat(a->a) - eval_rat(a->b);
        case Ast::Tag::Mul:
            return eval_rat(a->a) * eval_rat(a->b);
        case Ast::Tag::Div: {
            Rat d = eval_rat(a->b);
            if (d == 0) throw ParseError(a->column, "division by zero in a constant");
            return eval_rat(a->a) / d;
        }
        case Ast::Tag::Pow: {
            Rat base = eval_rat(a->a);
            long e = eval_int(a->b);
            Rat acc = 1;
            for (long k = 0; k < (e < 0 ? -e : e); ++k) acc *= base;
            if (e < 0) {
                if (acc == 0) throw ParseError(a->column, "division by zero in a constant");
                acc = Rat(1) / acc;
            }
            return acc;
        }
        default:
            throw ParseError(a->column, "expected a rational constant");
    }
}

long eval_int(const AstPtr& a) {
    Rat v = eval_rat(a);
    if (denominator(v) != 1) throw ParseError(a->column, "expected an integer exponent");
    if (numerator(v) > 1000000 || numerator(v) < -1000000)
        throw ParseError(a->column, "integer exponent out of range");
    return static_cast<long>(numerator(v));
}

bool is_z_name(const AstPtr& a) {
    return a->tag == Ast::Tag::Name && (a->name == "z" || a->name == "alpha");
}

/// Coefficient k for a subtree of the shape k*z (z linear, no constant part).
Rat eval_z_coefficient(const AstPtr& a) {
    switch (a->tag) {
        case Ast::Tag::Name:
            if (is_z_name(a)) return Rat(1);
            break;
        case Ast::Tag::Neg:
            return -eval_z_coefficient(a->a);
        case Ast::Tag::Mul:
            if (is_z_name(a->b)) return eval_rat(a->a);
            if (is_z_name(a->a)) return eval_rat(a->b);
            break;
        case Ast::Tag::Div:
            return eval_z_coefficient(a->a) / eval_rat(a->b);
        default:
            break;
    }
    throw ParseError(a->column, "expected an argument of the form k*z");
}

Scalar named_scalar(const std::string& name, int column, bool allow_params) {
    if (name == "i") return Scalar::i();
    if (name == "q") return Scalar::q();
    if (name == "sqrt2") return Scalar::sqrt2();
    if (name == "sqrt3") return Scalar::sqrt3();
    if (name == "sqrt6") return Scalar::sqrt6();
    if (name == "zeta8") return Scalar::zeta8();
    int gen = gens::find(name);
    if (gen >= 0) {
        if (gens::info(gen).rel_degree > 0) return Scalar::from_gen(gen);
        if (allow_params) return Scalar::param(gen);
        throw ParseError(column, "parameter '" + name + "' is not allowed here");
    }
    throw ParseError(column, "unknown identifier '" + name + "'");
}

fun::FunElem eval_fun_node(const AstPtr& a, const fun::RingSpec& spec) {
    using fun::FunElem;
    switch (a->tag) {
        case Ast::Tag::Int:
            return FunElem(spec, Scalar(Rat(a->name)));
        case Ast::Tag::Name: {
            static const std::map<std::string, int> syms = {{"alpha", fun::SYM_ALPHA},
                                                            {"z", fun::SYM_ALPHA},
                                                            {"beta", fun::SYM_BETA},
                                                            {"t", fun::SYM_T},
                                                            {"s", fun::SYM_S},
                                                            {"c", fun::SYM_C}};
            auto it = syms.find(a->name);
            if (it != syms.end()) {
                if (!fun::symbol_allowed(spec, it->second))
                    throw ParseError(a->column, "symbol '" + a->name +
                                                    "' is not a member of ring " + spec.to_string());
                return FunElem::symbol(spec, it->second);
            }
            return FunElem(spec, named_scalar(a->name, a->column, /*allow_params=*/false));
        }
        case Ast::Tag::Call: {
            if (a->args.size() != 1)
                throw ParseError(a->column, "'" + a->name + "' takes exactly one argument");
            if (a->name == "exp") {
                if (spec.kind != fun::RingKind::LaurentExp)
                    throw ParseError(a->column, "exp() requires the Laurent exponential ring");
                Rat k = eval_z_coefficient(a->args[0]) * spec.exp_scale;
                if (denominator(k) != 1)
                    throw ParseError(a->column,
                                     "exp() coefficient is not resolvable in t = e^{z/" +
                                         std::to_string(spec.exp_scale) + "}");
                return FunElem::symbol(spec, fun::SYM_T, static_cast<int>(numerator(k)));
            }
            if (a->name == "sin" || a->name == "cos") {
                if (!is_z_name(a->args[0]))
                    throw ParseError(a->column, "'" + a->name + "' argument must be z");
                int sym = (a->name == "sin") ? fun::SYM_S : fun::SYM_C;
                if (!fun::symbol_allowed(spec, sym))
                    throw ParseError(a->column, "'" + a->name + "' requires the trig ring");
                return FunElem::symbol(spec, sym);
            }
            throw ParseError(a->column, "unknown function '" + a->name + "'");
        }
        case Ast::Tag::Add:
            return eval_fun_node(a->a, spec) + eval_fun_node(a->b, spec);
        case Ast::Tag::Sub:
            return eval_fun_node(a->a, spec) - eval_fun_node(a->b, spec);
        case Ast::Tag::Mul:
            return eval_fun_node(a->a, spec) * eval_fun_node(a->b, spec);
        case Ast::Tag::Div:
            return eval_fun_node(a->a, spec) / eval_fun_node(a->b, spec);
        case Ast::Tag::Pow:
            return eval_fun_node(a->a, spec).pow(eval_int(a->b));
        case Ast::Tag::Neg:
            return -eval_fun_node(a->a, spec);
    }
    throw ParseError(a->column, "malformed expression");
}

bool is_jet_var(const std::string& name) {
    static const char* names[] = {"x", "y", "z", "w", "u", "v", "x2", "y2", "w2", "f", "g", "h"};
    for (const char* n : names)
        if (name == n) return true;
    return false;
}

/// Affine exponent in the parameters n, m, l; null if the subtree is not affine.
bool eval_affine(const AstPtr& a, Affine& out) {
    switch (a->tag) {
        case Ast::Tag::Int:
            try {
                out = Affine(eval_int(a));
            } catch (const ParseError&) {
                return false;
            }
            return true;
        case Ast::Tag::Name:
            if (a->name == "n") {
                out = Affine::n();
                return true;
            }
            if (a->name == "m") {
                out = Affine::m();
                return true;
            }
            if (a->name == "l") {
                out = Affine::l();
                return true;
            }
            return false;
        case Ast::Tag::Neg: {
            Affine inner;
            if (!eval_affine(a->a, inner)) return false;
            out = Affine(0) - inner;
            return true;
        }
        case Ast::Tag::Add:
        case Ast::Tag::Sub: {
            Affine lhs, rhs;
            if (!eval_affine(a->a, lhs) || !eval_affine(a->b, rhs)) return false;
            out = (a->tag == Ast::Tag::Add) ? lhs + rhs : lhs - rhs;
            return true;
        }
        case Ast::Tag::Mul: {
            Affine lhs, rhs;
            if (!eval_affine(a->a, lhs) || !eval_affine(a->b, rhs)) return false;
            if (!lhs.is_concrete() && !rhs.is_concrete()) return false;
            out = lhs.times(rhs);
            return true;
        }
        default:
            return false;
    }
}

jets::JetExpr eval_jet_node(const AstPtr& a) {
    using jets::JetExpr;
    switch (a->tag) {
        case Ast::Tag::Int:
            return JetExpr(Scalar(Rat(a->name)));
        case Ast::Tag::Name:
            if (is_jet_var(a->name)) return JetExpr::var(jets::declare_var(a->name));
            return JetExpr(named_scalar(a->name, a->column, /*allow_params=*/true));
        case Ast::Tag::Call: {
            if (a->args.size() != 1 || a->args[0]->tag != Ast::Tag::Name ||
                !is_jet_var(a->args[0]->name))
                throw ParseError(a->column,
                                 "'" + a->name + "' takes a single jet-variable argument");
            int v = jets::declare_var(a->args[0]->name);
            if (a->name == "d") return JetExpr::jet(v, 1);
            if (a->name == "d2") return JetExpr::jet(v, 2);
            if (a->name == "d3") return JetExpr::jet(v, 3);
            if (a->name == "lam1") return JetExpr::lam(v, 1);
            if (a->name == "lam2") return JetExpr::lam(v, 2);
            throw ParseError(a->column, "unknown function '" + a->name + "'");
        }
        case Ast::Tag::Add:
            return eval_jet_node(a->a) + eval_jet_node(a->b);
        case Ast::Tag::Sub:
            return eval_jet_node(a->a) - eval_jet_node(a->b);
        case Ast::Tag::Mul:
            return eval_jet_node(a->a) * eval_jet_node(a->b);
        case Ast::Tag::Div:
            return eval_jet_node(a->a) / eval_jet_node(a->b);
        case Ast::Tag::Pow: {
            Affine e;
            if (!eval_affine(a->b, e))
                throw ParseError(a->b->column, "exponent must be affine in n, m, l");
            jets::JetExpr base = eval_jet_node(a->a);
            if (e.is_concrete()) return base.pow(e.c0);
            return base.pow_affine(e);
        }
        case Ast::Tag::Neg:
            return -eval_jet_node(a->a);
    }
    throw ParseError(a->column, "malformed expression");
}

}  // namespace

AstPtr parse(const std::string& src) {
    Parser p{tokenize(src)};
    AstPtr out = p.parse_expr();
    if (p.peek().kind != Token::Kind::End)
        throw ParseError(p.peek().column, "unexpected trailing input");
    return out;
}

fun::FunElem eval_fun(const AstPtr& ast, const fun::RingSpec& spec) {
    return eval_fun_node(ast, spec);
}

fun::FunElem eval_fun(const std::string& src, const fun::RingSpec& spec) {
    return eval_fun_node(parse(src), spec);
}

jets::JetExpr eval_jet(const AstPtr& ast) { return eval_jet_node(ast); }

jets::JetExpr eval_jet(const std::string& src) { return eval_jet_node(parse(src)); }

}  // namespace fjl::expr
