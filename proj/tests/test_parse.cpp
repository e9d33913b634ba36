#include <doctest.h>

#include <random>

#include "fjl/parse.hpp"

using namespace fjl;
using namespace fjl::fun;
using namespace fjl::expr;

namespace {

const RingSpec kPoly{RingKind::Poly, 1};
const RingSpec kLaurent{RingKind::LaurentExp, 1};
const RingSpec kTrig{RingKind::Trig, 1};

}  // namespace

TEST_CASE("grammar basics in the function rings") {
    CHECK(eval_fun("alpha^2 + 1", kPoly) ==
          FunElem::symbol(kPoly, SYM_ALPHA).pow(2) + FunElem(kPoly, Scalar(1)));
    // z aliases alpha
    CHECK(eval_fun("z^3", kPoly) == eval_fun("alpha^3", kPoly));
    CHECK(eval_fun("exp(3*z)", kLaurent) == FunElem::symbol(kLaurent, SYM_T, 3));
    CHECK(eval_fun("exp(-z)", kLaurent) == FunElem::symbol(kLaurent, SYM_T, -1));
    RingSpec scaled{RingKind::LaurentExp, 4};
    CHECK(eval_fun("exp(8/4*z)", scaled) == FunElem::symbol(scaled, SYM_T, 8));
    CHECK(eval_fun("t^-2", kLaurent) == FunElem::symbol(kLaurent, SYM_T, -2));
    CHECK(eval_fun("sin(z)^2 + cos(z)^2", kTrig) == FunElem(kTrig, Scalar(1)));
    CHECK(eval_fun("s^2 + c^2", kTrig) == FunElem(kTrig, Scalar(1)));
    // named constants
    CHECK(eval_fun("sqrt2*sqrt3", kPoly) == FunElem(kPoly, Scalar::sqrt6()));
    CHECK(eval_fun("zeta8^4", kPoly) == FunElem(kPoly, Scalar(-1)));
    // precedence: unary minus below power, ^ right associative
    CHECK(eval_fun("-alpha^2", kPoly) == -FunElem::symbol(kPoly, SYM_ALPHA).pow(2));
    CHECK(eval_fun("2^3^2", kPoly) == FunElem(kPoly, Scalar(512)));
    CHECK(eval_fun("1/2*i", kPoly) == FunElem(kPoly, Scalar::i() / Scalar(2)));
}

TEST_CASE("grammar basics in the jet algebra") {
    using jets::JetExpr;
    int x = jets::declare_var("x");
    CHECK(eval_jet("x^(n-1)*d(x)") ==
          JetExpr::var_pow(x, Affine::n() - Affine(1)) * JetExpr::jet(x, 1));
    CHECK(eval_jet("n*x") == JetExpr(Scalar::param(GEN_N)) * JetExpr::var(x));
    CHECK(eval_jet("d2(x) - d(x)^2/x") ==
          JetExpr::jet(x, 2) - JetExpr::jet(x, 1).pow(2) / JetExpr::var(x));
    CHECK(eval_jet("lam1(x)") == JetExpr::lam(x, 1));
    CHECK(eval_jet("x^(n+m-2)") == JetExpr::var_pow(x, Affine::n() + Affine::m() - Affine(2)));
}

TEST_CASE("parse errors carry the offending column") {
    auto column_of = [](const std::string& src) {
        try {
            parse(src);
        } catch (const ParseError& e) {
            return e.column;
        }
        return std::size_t(0);
    };
    CHECK(column_of("f = 9*alpha^") == 3);   // '=' is not an operator
    CHECK(column_of("9*alpha^") == 9);       // dangling power
    CHECK(column_of("(2 + 3") == 7);         // unclosed paren
    CHECK(column_of("2 + @") == 5);          // stray character
    CHECK(column_of("2 + 3 7") == 7);        // trailing input
    CHECK_THROWS_AS(eval_fun("nosuchname + 1", kPoly), ParseError);
    CHECK_THROWS_AS(eval_fun("alpha^beta", kPoly), ParseError);
    CHECK_THROWS_AS(eval_fun("t + 1", kPoly), ParseError);
    CHECK_THROWS_AS(eval_fun("exp(z^2)", kLaurent), ParseError);
    CHECK_THROWS_AS(eval_jet("x^(n*m)"), ParseError);
}

TEST_CASE("print/parse round trip on randomized ring elements") {
    // Property suite: every canonical form the printers emit must re-parse
    // to an equal value, in both evaluation contexts.
    std::mt19937 rng(778899);
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_int_distribution<int> exp(0, 4);
    std::uniform_int_distribution<int> texp(-4, 4);
    std::uniform_int_distribution<int> terms(1, 4);
    const RingSpec specs[3] = {kPoly, {RingKind::LaurentExp, 3}, kTrig};

    auto random_scalar = [&]() {
        Scalar c = Scalar(coeff(rng)) + Scalar(Rat(coeff(rng), 3));
        if (pick(rng) == 0) c += Scalar::i() * Scalar(coeff(rng));
        if (pick(rng) == 0) c += Scalar::sqrt3() * Scalar(coeff(rng));
        if (pick(rng) == 0) c *= Scalar::q();
        return c;
    };
    auto random_fun = [&](const RingSpec& spec) {
        FunElem acc(spec);
        int k = terms(rng);
        for (int j = 0; j < k; ++j) {
            FunElem term(spec, random_scalar());
            switch (spec.kind) {
                case RingKind::Poly:
                    term *= FunElem::symbol(spec, SYM_ALPHA).pow(exp(rng));
                    term *= FunElem::symbol(spec, SYM_BETA).pow(exp(rng));
                    break;
                case RingKind::LaurentExp:
                    term *= FunElem::symbol(spec, SYM_T, texp(rng));
                    break;
                case RingKind::Trig:
                    term *= FunElem::symbol(spec, SYM_S).pow(exp(rng));
                    term *= FunElem::symbol(spec, SYM_C).pow(exp(rng));
                    break;
            }
            acc += term;
        }
        return acc;
    };

    int x = jets::declare_var("x");
    int y = jets::declare_var("y");
    auto random_jet = [&]() {
        using jets::JetExpr;
        std::uniform_int_distribution<int> aff(-2, 2);
        JetExpr acc(0);
        int k = terms(rng);
        for (int j = 0; j < k; ++j) {
            JetExpr term(random_scalar());
            term = term * JetExpr::var_pow(x, Affine(exp(rng) - 2, aff(rng), 0, 0));
            term = term * JetExpr::var_pow(y, Affine(exp(rng), 0, 0, 0));
            if (pick(rng) == 0) term = term * JetExpr::jet(x, 1).pow(exp(rng) % 3);
            if (pick(rng) == 0) term = term * JetExpr::jet(y, 2);
            if (pick(rng) == 0) term = term * JetExpr::lam(x, 1);
            acc += term;
        }
        return acc;
    };

    int failures = 0;
    for (int iter = 0; iter < 1000; ++iter) {
        const RingSpec& spec = specs[iter % 3];
        FunElem a = random_fun(spec);
        FunElem b = random_fun(spec);
        FunElem e = b.is_zero() ? a : a / b;
        if (eval_fun(e.to_string(), spec) != e) ++failures;

        jets::JetExpr ja = random_jet();
        jets::JetExpr jb = random_jet();
        jets::JetExpr je = jb.is_zero() ? ja : ja / jb;
        if (eval_jet(je.to_string()) != je) ++failures;
    }
    CHECK(failures == 0);
}
