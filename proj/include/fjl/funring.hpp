#ifndef FJL_FUNRING_HPP
#define FJL_FUNRING_HPP

#include <array>
#include <complex>
#include <map>
#include <string>

#include "fjl/errors.hpp"
#include "fjl/scalar.hpp"

namespace fjl::fun {

/// Structured coefficient rings for the explicit-solution catalog.
///   Poly       polynomials in free entire generators alpha, beta (alpha' = beta' = 1)
///   LaurentExp Laurent polynomials in t = e^{z/exp_scale}, so t' = t/exp_scale
///   Trig       polynomials in s = sin z, c = cos z modulo s^2 + c^2 - 1
enum class RingKind { Poly, LaurentExp, Trig };

enum : int { SYM_ALPHA = 0, SYM_BETA = 1, SYM_T = 2, SYM_S = 3, SYM_C = 4, SYM_COUNT = 5 };

struct RingSpec {
    RingKind kind = RingKind::Poly;
    long exp_scale = 1;  // only meaningful for LaurentExp

    bool operator==(const RingSpec& o) const {
        return kind == o.kind && (kind != RingKind::LaurentExp || exp_scale == o.exp_scale);
    }
    bool operator!=(const RingSpec& o) const { return !(*this == o); }
    std::string to_string() const;
};

/// Exponent vector over (alpha, beta, t, s, c); only t may go negative.
using FMono = std::array<int, SYM_COUNT>;
using FPoly = std::map<FMono, Scalar>;

std::string symbol_name(int sym);
bool symbol_allowed(const RingSpec& spec, int sym);

/// Canonical fraction of reduced polynomials in one of the structured rings.
/// Trig polynomials are kept s-reduced (s-exponent <= 1 via s^2 -> 1 - c^2),
/// which makes zero-detection exact; the quotient is an integral domain, so
/// cross-multiplied equality is sound.
class FunElem {
public:
    FunElem() : FunElem(RingSpec{}) {}
    explicit FunElem(RingSpec spec);
    FunElem(RingSpec spec, const Scalar& c);
    FunElem(RingSpec spec, FPoly num, FPoly den);  // normalizes

    static FunElem symbol(RingSpec spec, int sym, int exp = 1);

    const RingSpec& spec() const { return spec_; }
    const FPoly& num() const { return num_; }
    const FPoly& den() const { return den_; }
    bool is_zero() const { return num_.empty(); }
    bool is_constant() const;
    /// The constant value when is_constant(); throws otherwise.
    Scalar constant_value() const;

    FunElem operator+(const FunElem& o) const;
    FunElem operator-(const FunElem& o) const;
    FunElem operator-() const;
    FunElem operator*(const FunElem& o) const;
    FunElem operator/(const FunElem& o) const;
    FunElem& operator+=(const FunElem& o) { return *this = *this + o; }
    FunElem& operator-=(const FunElem& o) { return *this = *this - o; }
    FunElem& operator*=(const FunElem& o) { return *this = *this * o; }
    FunElem inverse() const;
    FunElem pow(long e) const;

    bool operator==(const FunElem& o) const;
    bool operator!=(const FunElem& o) const { return !(*this == o); }

    /// Derivation with respect to z: alpha' = beta' = 1, t' = t/exp_scale,
    /// s' = c, c' = -s; extended by Leibniz and the quotient rule.
    FunElem derive() const;

    /// Substitutes the alpha generator by another ring element (Poly kind).
    FunElem subst_alpha(const FunElem& image) const;

    /// Numeric evaluation at a point with alpha = beta = z, t = e^{z/scale},
    /// s = sin z, c = cos z.  Adjoined radicals take their principal branch.
    std::complex<double> eval(const std::complex<double>& z) const;

    std::string to_string() const;

private:
    RingSpec spec_;
    FPoly num_, den_;
};

}  // namespace fjl::fun

#endif
