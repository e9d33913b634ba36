#ifndef FJL_JET_HPP
#define FJL_JET_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fjl/affine.hpp"
#include "fjl/scalar.hpp"

namespace fjl::jets {

enum class Kind : std::uint8_t { Base = 0, D1 = 1, D2 = 2, D3 = 3, Lam1 = 4, Lam2 = 5 };

struct Sym {
    std::uint16_t var = 0;
    Kind kind = Kind::Base;

    std::uint32_t code() const {
        return (static_cast<std::uint32_t>(var) << 3) | static_cast<std::uint32_t>(kind);
    }
    bool operator==(const Sym& o) const { return code() == o.code(); }
    bool operator<(const Sym& o) const { return code() < o.code(); }
};

/// Declares (or looks up) a base variable in the jet alphabet.
int declare_var(const std::string& name);
int var_id(const std::string& name);  // throws on unknown names
std::string var_name(int id);

using JTerm = std::pair<Sym, Affine>;
using JMono = std::vector<JTerm>;  // sorted by symbol code, exponents nonzero
using JPoly = std::vector<std::pair<JMono, Scalar>>;

/// Rational expression in base variables and their jets.  Base variables carry
/// affine symbolic exponents (Laurent style); jets carry concrete nonnegative
/// exponents, with jet-monomial denominators kept as explicit fractions.
class JetExpr {
public:
    JetExpr() : num_(), den_{{JMono{}, Scalar(1)}} {}
    JetExpr(long v) : JetExpr(Scalar(v)) {}
    explicit JetExpr(const Scalar& c);
    JetExpr(JPoly num, JPoly den);  // normalizes

    static JetExpr var(int v);
    static JetExpr jet(int v, int order);  // order 1..3
    static JetExpr lam(int v, int which);  // d log v (1) and d^2 log v (2)
    static JetExpr var_pow(int v, const Affine& e);

    const JPoly& num() const { return num_; }
    const JPoly& den() const { return den_; }
    bool is_zero() const { return num_.empty(); }
    bool den_is_one() const;

    JetExpr operator+(const JetExpr& o) const;
    JetExpr operator-(const JetExpr& o) const;
    JetExpr operator-() const;
    JetExpr operator*(const JetExpr& o) const;
    JetExpr operator/(const JetExpr& o) const;
    JetExpr& operator+=(const JetExpr& o) { return *this = *this + o; }
    JetExpr& operator-=(const JetExpr& o) { return *this = *this - o; }
    JetExpr& operator*=(const JetExpr& o) { return *this = *this * o; }
    JetExpr inverse() const;
    JetExpr pow(long e) const;
    /// Symbolic power; requires a single-term expression with unit coefficient
    /// unless the exponent is concrete.
    JetExpr pow_affine(const Affine& e) const;

    /// Canonical equality (cross-multiplied).
    bool operator==(const JetExpr& o) const;
    bool operator!=(const JetExpr& o) const { return !(*this == o); }

    /// Total derivative: Leibniz + quotient rule, d(d^k v) = d^{k+1} v.
    JetExpr derivative() const;

    /// Replaces symbols by expressions (jets of substituted base variables must
    /// be included in the map; see chart_map).
    JetExpr substitute(const std::map<Sym, JetExpr>& images) const;

    /// Builds a substitution map for a coordinate chart: each base-variable
    /// image is differentiated for the jet symbols up to max_order.
    static std::map<Sym, JetExpr> chart_map(const std::map<int, JetExpr>& base_images,
                                            int max_order = 2);

    bool contains(const Sym& s) const;
    int max_jet_order(int v = -1) const;  // highest D-order present (v = -1: any variable)

    /// Minimum v-exponent of the numerator minus that of the denominator.
    Affine valuation(int v, const Assumptions& asms = Assumptions::none()) const;

    /// Substitutes dv -> v*lam1, d2v -> v*(lam2 + lam1^2); flag is true iff the
    /// result has nonnegative v-valuation under the assumptions.
    std::pair<bool, JetExpr> log_normal_form(int v, const Assumptions& asms) const;

    /// Specializes the exponent parameters (and matching scalar parameters).
    JetExpr subst_param(int scalar_gen, long value) const;

    /// Single designated power rewrite: every factor v^(a + k*p) (p the exponent
    /// parameter scalar_gen) becomes v^a * repl^k.  Used to apply a defining
    /// equation such as w^n -> x^n + y^n + 1 exactly once, not as ideal reduction.
    JetExpr substitute_power(int v, int scalar_gen, const JetExpr& repl) const;

    std::string to_string() const;
    std::string to_tex() const;

private:
    JPoly num_, den_;
};

/// The weighted second jet: d2(v) + (kappa - 1) (dv)^2 / v.
JetExpr dee2(int v, const Scalar& kappa);

std::string poly_to_string(const JPoly& p, bool tex = false);

}  // namespace fjl::jets

#endif
