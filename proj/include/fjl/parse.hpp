#ifndef FJL_PARSE_HPP
#define FJL_PARSE_HPP

#include <memory>
#include <string>
#include <vector>

#include "fjl/funring.hpp"
#include "fjl/jet.hpp"

namespace fjl::expr {

/// Infix expression AST shared by the function-ring and jet evaluators.
/// Atoms: integers, named identifiers, calls (d, d2, d3, lam1, lam2, exp,
/// sin, cos); operators + - * / ^ with the usual precedence, ^ right
/// associative and binding tighter than unary minus.
struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

struct Ast {
    enum class Tag { Int, Name, Call, Add, Sub, Mul, Div, Pow, Neg };
    Tag tag;
    std::string name;  // identifier, call name, or integer digits (arbitrary precision)
    std::vector<AstPtr> args;  // Call arguments
    AstPtr a, b;               // operands
    int column = 0;            // 1-based position of the token that opened this node
};

/// Parses a full expression; trailing input is an error.  Throws ParseError
/// with the 1-based column of the offending token.
AstPtr parse(const std::string& src);

/// Evaluates into the structured function ring.  Identifiers: alpha, beta,
/// z (alias of alpha), t, s, c; coefficient names i, q, sqrt2, sqrt3, sqrt6,
/// zeta8 and any adjoined radical; forms exp(k*z), sin(z), cos(z).
/// Exponents must be concrete integers.
fun::FunElem eval_fun(const AstPtr& ast, const fun::RingSpec& spec);
fun::FunElem eval_fun(const std::string& src, const fun::RingSpec& spec);

/// Evaluates into the jet algebra.  Identifiers: declared jet variables
/// (x, y, z, w, u, v, x2, y2, w2, f, g, h), jets d(x), d2(x), d3(x), log
/// forms lam1(x), lam2(x), exponent parameters n, m, l, coefficient
/// parameters k1, k2, c1, c2, and the coefficient names above.  Exponents
/// may be affine in n, m, l.
jets::JetExpr eval_jet(const AstPtr& ast);
jets::JetExpr eval_jet(const std::string& src);

}  // namespace fjl::expr

#endif
