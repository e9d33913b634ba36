#include <doctest.h>

#include <random>

#include "fjl/jet.hpp"

using namespace fjl;
using namespace fjl::jets;

namespace {

int X() { return declare_var("x"); }
int Y() { return declare_var("y"); }
int W() { return declare_var("w"); }
int U() { return declare_var("u"); }

Scalar N() { return Scalar::param(GEN_N); }

}  // namespace

TEST_CASE("total derivative of symbolic powers") {
    JetExpr xn = JetExpr::var_pow(X(), Affine::n());
    JetExpr d1 = xn.derivative();
    // d(x^n) = n x^{n-1} dx
    JetExpr expect = JetExpr(N()) * JetExpr::var_pow(X(), Affine::n() - Affine(1)) *
                     JetExpr::jet(X(), 1);
    CHECK(d1 == expect);

    // second application: Leibniz on x^{n-1} dx
    JetExpr d2 = d1.derivative();
    JetExpr expect2 =
        JetExpr(N()) * ((JetExpr(N()) - JetExpr(1)) *
                            JetExpr::var_pow(X(), Affine::n() - Affine(2)) *
                            JetExpr::jet(X(), 1).pow(2) +
                        JetExpr::var_pow(X(), Affine::n() - Affine(1)) * JetExpr::jet(X(), 2));
    CHECK(d2 == expect2);
}

TEST_CASE("quotient rule") {
    JetExpr u = JetExpr::var(U()), w = JetExpr::var(W());
    JetExpr q = u / w;
    JetExpr d = q.derivative();
    JetExpr expect = (JetExpr::jet(U(), 1) * w - u * JetExpr::jet(W(), 1)) / (w * w);
    CHECK(d == expect);
}

TEST_CASE("third-order jets appear transiently, fourth order throws") {
    JetExpr x = JetExpr::var(X());
    JetExpr d3 = x.derivative().derivative().derivative();
    CHECK(d3 == JetExpr::jet(X(), 3));
    CHECK(d3.max_jet_order() == 3);
    CHECK_THROWS_AS(d3.derivative(), OrderOverflow);
}

TEST_CASE("weighted second jet") {
    // dee2(x, n) = d2x + (n-1)(dx)^2/x
    JetExpr e = dee2(X(), N());
    JetExpr expect = JetExpr::jet(X(), 2) +
                     (JetExpr(N()) - JetExpr(1)) * JetExpr::jet(X(), 1).pow(2) / JetExpr::var(X());
    CHECK(e == expect);
    // kappa = 1 collapses to the plain second jet
    CHECK(dee2(X(), Scalar(1)) == JetExpr::jet(X(), 2));
}

TEST_CASE("valuation with symbolic exponents") {
    Assumptions a8 = Assumptions::n_at_least(8);
    JetExpr e = JetExpr::var_pow(X(), Affine::n() - Affine(1)) * JetExpr::jet(X(), 1);
    CHECK(e.valuation(X(), a8) == Affine::n() - Affine(1));
    CHECK((JetExpr::jet(X(), 1) / JetExpr::var(X())).valuation(X()) == Affine(-1));

    // x^n + x^2: the minimum needs the assumption n >= 2 to resolve
    JetExpr s = JetExpr::var_pow(X(), Affine::n()) + JetExpr::var(X()).pow(2);
    CHECK(s.valuation(X(), a8) == Affine(2));
    CHECK_THROWS_AS(s.valuation(X(), Assumptions::none()), IncomparableExponents);
    CHECK_THROWS_AS(JetExpr(0).valuation(X(), a8), ZeroExpression);
}

TEST_CASE("chart substitution x -> 1/w") {
    auto m = JetExpr::chart_map({{X(), JetExpr(1) / JetExpr::var(W())}});
    JetExpr w = JetExpr::var(W());
    CHECK(JetExpr::jet(X(), 1).substitute(m) == -JetExpr::jet(W(), 1) / (w * w));
    CHECK(JetExpr::jet(X(), 2).substitute(m) ==
          -JetExpr::jet(W(), 2) / (w * w) + JetExpr(2) * JetExpr::jet(W(), 1).pow(2) / (w * w * w));
    // symbolic power through the chart: x^n -> w^{-n}
    CHECK(JetExpr::var_pow(X(), Affine::n()).substitute(m) ==
          JetExpr::var_pow(W(), -Affine::n()));
}

TEST_CASE("chart functoriality on random expressions") {
    // d(substitute(e)) == substitute(d(e)) for the chart x=1/w, y=u/w
    auto m = JetExpr::chart_map({{X(), JetExpr(1) / JetExpr::var(W())},
                                 {Y(), JetExpr::var(U()) / JetExpr::var(W())}},
                                3);
    std::mt19937 rng(20260826);
    std::uniform_int_distribution<int> pick(0, 5), coeff(-4, 4), ex(1, 3);
    for (int iter = 0; iter < 1000; ++iter) {
        JetExpr e(0);
        int terms = 1 + pick(rng) % 3;
        for (int t = 0; t < terms; ++t) {
            JetExpr f{Scalar(Rat(coeff(rng)))};
            switch (pick(rng)) {
                case 0: f *= JetExpr::var(X()).pow(ex(rng)); break;
                case 1: f *= JetExpr::var(Y()).pow(ex(rng)); break;
                case 2: f *= JetExpr::jet(X(), 1); break;
                case 3: f *= JetExpr::jet(Y(), 1); break;
                case 4: f *= JetExpr::jet(X(), 2); break;
                default: f *= JetExpr::var(X()) * JetExpr::var(Y()); break;
            }
            e += f;
        }
        CAPTURE(iter);
        REQUIRE(e.derivative().substitute(m) == e.substitute(m).derivative());
    }
}

TEST_CASE("Leibniz property on random pairs") {
    std::mt19937 rng(987123);
    std::uniform_int_distribution<int> pick(0, 4), coeff(-5, 5);
    auto gen = [&]() {
        JetExpr e(0);
        for (int t = 0; t < 2; ++t) {
            JetExpr f{Scalar(Rat(coeff(rng)))};
            switch (pick(rng)) {
                case 0: f *= JetExpr::var(X()); break;
                case 1: f *= JetExpr::var_pow(X(), Affine::n()); break;
                case 2: f *= JetExpr::jet(X(), 1); break;
                case 3: f *= JetExpr::var(Y()).pow(2); break;
                default: f *= JetExpr::jet(Y(), 1) / JetExpr::var(Y()); break;
            }
            e += f;
        }
        return e;
    };
    for (int iter = 0; iter < 1000; ++iter) {
        JetExpr a = gen(), b = gen();
        CAPTURE(iter);
        REQUIRE((a * b).derivative() == a.derivative() * b + a * b.derivative());
    }
}

TEST_CASE("log normal form") {
    Assumptions none = Assumptions::none();
    JetExpr x = JetExpr::var(X()), dx = JetExpr::jet(X(), 1), d2x = JetExpr::jet(X(), 2);

    auto [ok1, n1] = (dx / x).log_normal_form(X(), none);
    CHECK(ok1);
    CHECK(n1 == JetExpr::lam(X(), 1));

    auto [ok2, n2] = (dx / (x * x)).log_normal_form(X(), none);
    CHECK_FALSE(ok2);
    CHECK(n2 == JetExpr::lam(X(), 1) / x);

    auto [ok3, n3] = (d2x / x - (dx / x).pow(2)).log_normal_form(X(), none);
    CHECK(ok3);
    CHECK(n3 == JetExpr::lam(X(), 2));

    // round trip: substituting lam1 -> dx/x, lam2 -> d2x/x - (dx/x)^2 recovers the input
    std::map<Sym, JetExpr> back{
        {{static_cast<std::uint16_t>(X()), Kind::Lam1}, dx / x},
        {{static_cast<std::uint16_t>(X()), Kind::Lam2}, d2x / x - (dx / x).pow(2)},
    };
    JetExpr probe = d2x * dx / x + x.pow(3) * dx;
    auto [okp, np] = probe.log_normal_form(X(), none);
    CHECK(okp);
    CHECK(np.substitute(back) == probe);
}

TEST_CASE("parameter specialization") {
    JetExpr e = JetExpr(N()) * JetExpr::var_pow(X(), Affine::n() - Affine(1)) *
                JetExpr::jet(X(), 1);
    JetExpr at8 = e.subst_param(GEN_N, 8);
    CHECK(at8 == JetExpr(8) * JetExpr::var(X()).pow(7) * JetExpr::jet(X(), 1));
    CHECK(at8.valuation(X()) == Affine(7));
}

TEST_CASE("printer output is canonical") {
    JetExpr e = JetExpr(N()) * JetExpr::var_pow(X(), Affine::n() - Affine(1)) *
                JetExpr::jet(X(), 1);
    CHECK(e.to_string() == "n*x^(n-1)*d(x)");
    CHECK(JetExpr::jet(X(), 1).pow(2).to_string() == "d(x)^2");
    // pure base-variable denominators fold into Laurent exponents
    CHECK((JetExpr::jet(X(), 1) / JetExpr::var(X())).to_string() == "x^(-1)*d(x)");
    CHECK(JetExpr(0).to_string() == "0");
}

TEST_CASE("valuation is additive on random products") {
    // Property suite: val_x(a*b) = val_x(a) + val_x(b) on randomized nonzero
    // fractions with concrete Laurent exponents (the coefficient ring is a
    // domain, so lowest-degree parts cannot cancel).
    std::mt19937 rng(31415926);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> lexp(-3, 3);
    std::uniform_int_distribution<int> jexp(0, 2);
    std::uniform_int_distribution<int> terms(1, 3);
    auto random_poly = [&]() {
        JetExpr acc(0);
        while (acc.is_zero()) {
            int k = terms(rng);
            for (int j = 0; j < k; ++j) {
                long c = coeff(rng);
                if (c == 0) c = 1;
                JetExpr term(c);
                term = term * JetExpr::var_pow(X(), Affine(lexp(rng)));
                term = term * JetExpr::var_pow(Y(), Affine(lexp(rng)));
                term = term * JetExpr::jet(X(), 1).pow(jexp(rng));
                term = term * JetExpr::jet(Y(), 2).pow(jexp(rng));
                acc += term;
            }
        }
        return acc;
    };
    int failures = 0;
    for (int iter = 0; iter < 1000; ++iter) {
        JetExpr a = random_poly() / random_poly();
        JetExpr b = random_poly() / random_poly();
        Affine va = a.valuation(X());
        Affine vb = b.valuation(X());
        Affine vab = (a * b).valuation(X());
        if (!(vab == va + vb)) ++failures;
    }
    CHECK(failures == 0);
}
