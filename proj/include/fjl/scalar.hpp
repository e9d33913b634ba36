#ifndef FJL_SCALAR_HPP
#define FJL_SCALAR_HPP

#include <boost/multiprecision/gmp.hpp>

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fjl/errors.hpp"

namespace fjl {

using Rat = boost::multiprecision::mpq_rational;

/// Generator indices of the fixed coefficient tower Q -> Q(i) -> Q(i,q) -> Q(i,q,s),
/// q^4 = 2 and s^2 = 3, followed by the formal parameters.  Radical symbols with a
/// single monomial relation (e.g. w^n = -1) are adjoined behind these at runtime.
enum : int {
    GEN_I = 0,
    GEN_Q = 1,
    GEN_S = 2,
    GEN_N = 3,
    GEN_M = 4,
    GEN_L = 5,
    GEN_K1 = 6,
    GEN_K2 = 7,
    GEN_C1 = 8,
    GEN_C2 = 9,
    GEN_FIXED_COUNT = 10,
};

struct GeneratorInfo {
    std::string name;
    int rel_degree = 0;  // 0: free parameter; else gen^rel_degree -> rel_value
    Rat rel_value = 0;
};

/// Process-global generator registry.  Append-only; indices are stable.
namespace gens {
int adjoin_radical(const std::string& name, int degree, const Rat& value);
int find(const std::string& name);  // -1 if unknown
GeneratorInfo info(int idx);
int count();
}  // namespace gens

/// A monomial in the generators: sorted (generator, exponent) pairs, exponents > 0.
using Mono = std::vector<std::pair<int, unsigned>>;

/// Sparse polynomial over Q in the generators, terms sorted descending by monomial.
using Poly = std::vector<std::pair<Mono, Rat>>;

namespace poly {
int mono_cmp(const Mono& a, const Mono& b);
Poly zero();
Poly constant(const Rat& c);
Poly generator(int idx, unsigned exp = 1);
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly neg(const Poly& a);
Poly mul(const Poly& a, const Poly& b);
Poly mul_rat(const Poly& a, const Rat& c);
Poly pow(const Poly& a, unsigned e);
bool is_zero(const Poly& a);
/// Applies all generator relations (i^2 -> -1, q^4 -> 2, ...); keeps terms sorted.
Poly reduce(const Poly& a);
/// gcd over K[params] where K is the bounded-generator quotient field; result is
/// primitive with leading K-coefficient 1.
Poly gcd(const Poly& a, const Poly& b);
Poly exact_div(const Poly& a, const Poly& d);
/// Multiplicative inverse of a polynomial involving only bounded generators.
Poly k_inverse(const Poly& a);
}  // namespace poly

/// Exact element of the coefficient tower: canonical fraction of reduced polynomials.
class Scalar {
public:
    Scalar() : num_(poly::zero()), den_(poly::constant(1)) {}
    Scalar(int v) : Scalar(Rat(v)) {}
    Scalar(long v) : Scalar(Rat(v)) {}
    explicit Scalar(const Rat& v) : num_(poly::constant(v)), den_(poly::constant(1)) {}
    Scalar(Poly num, Poly den);  // normalizes

    static Scalar i() { return from_gen(GEN_I); }
    static Scalar q() { return from_gen(GEN_Q); }
    static Scalar s() { return from_gen(GEN_S); }
    static Scalar param(int gen_idx) { return from_gen(gen_idx); }
    static Scalar from_gen(int idx, unsigned exp = 1);
    static Scalar sqrt2() { return from_gen(GEN_Q, 2); }
    static Scalar sqrt3() { return from_gen(GEN_S); }
    static Scalar sqrt6();
    static Scalar zeta8();  // (1+i)q^2/2, a primitive 8th root of unity

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return poly::is_zero(num_); }
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
    Scalar inverse() const;
    Scalar pow(long e) const;

    bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Replaces a free parameter generator by an exact rational value.
    Scalar subst_param(int gen_idx, const Rat& value) const;
    bool uses_generator(int gen_idx) const;

    /// Rational value if the scalar is a plain rational, throws otherwise.
    Rat as_rational() const;

    std::complex<double> eval_numeric(const std::map<int, Rat>& params) const;

    std::string to_string() const;
    std::string to_tex() const;

private:
    Poly num_, den_;
};

std::string poly_to_string(const Poly& p, bool tex = false);

}  // namespace fjl

#endif
