#ifndef FJL_AFFINE_HPP
#define FJL_AFFINE_HPP

#include <optional>
#include <string>

#include "fjl/errors.hpp"
#include "fjl/scalar.hpp"

namespace fjl {

/// Integer affine form a + b*n + c*m + d*l used for symbolic exponents and
/// valuations.  Comparison against another form is only decided under an
/// explicit assumption set.
struct Affine {
    long c0 = 0, cn = 0, cm = 0, cl = 0;

    Affine() = default;
    Affine(long constant) : c0(constant) {}
    Affine(long a, long b, long c, long d) : c0(a), cn(b), cm(c), cl(d) {}

    static Affine n(long coeff = 1) { return {0, coeff, 0, 0}; }
    static Affine m(long coeff = 1) { return {0, 0, coeff, 0}; }
    static Affine l(long coeff = 1) { return {0, 0, 0, coeff}; }

    bool is_concrete() const { return cn == 0 && cm == 0 && cl == 0; }
    bool is_zero() const { return c0 == 0 && is_concrete(); }

    Affine operator+(const Affine& o) const { return {c0 + o.c0, cn + o.cn, cm + o.cm, cl + o.cl}; }
    Affine operator-(const Affine& o) const { return {c0 - o.c0, cn - o.cn, cm - o.cm, cl - o.cl}; }
    Affine operator-() const { return {-c0, -cn, -cm, -cl}; }
    Affine operator*(long k) const { return {c0 * k, cn * k, cm * k, cl * k}; }
    bool operator==(const Affine& o) const = default;

    /// Product of affine forms; defined only when one factor is concrete.
    Affine times(const Affine& o) const {
        if (o.is_concrete()) return *this * o.c0;
        if (is_concrete()) return o * c0;
        throw Error("product of two non-concrete affine exponents");
    }

    Scalar to_scalar() const {
        return Scalar(Rat(c0)) + Scalar::param(GEN_N) * Scalar(Rat(cn)) +
               Scalar::param(GEN_M) * Scalar(Rat(cm)) + Scalar::param(GEN_L) * Scalar(Rat(cl));
    }

    /// Deterministic total order used for canonical monomial sorting (not a
    /// magnitude comparison).
    int lex_cmp(const Affine& o) const {
        if (c0 != o.c0) return c0 < o.c0 ? -1 : 1;
        if (cn != o.cn) return cn < o.cn ? -1 : 1;
        if (cm != o.cm) return cm < o.cm ? -1 : 1;
        if (cl != o.cl) return cl < o.cl ? -1 : 1;
        return 0;
    }

    std::string to_string() const;
};

/// Lower bounds on the integer parameters, e.g. "n >= 8".  No defaults.
struct Assumptions {
    std::optional<long> n_min, m_min, l_min;

    static Assumptions none() { return {}; }
    static Assumptions n_at_least(long v) { return {v, std::nullopt, std::nullopt}; }
};

enum class Cmp { Less, Equal, Greater, Incomparable };

/// Sign of a - b over all parameter values admitted by the assumptions.
Cmp affine_cmp(const Affine& a, const Affine& b, const Assumptions& asms);

}  // namespace fjl

#endif
