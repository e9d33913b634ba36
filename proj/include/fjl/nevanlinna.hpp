#ifndef FJL_NEVANLINNA_HPP
#define FJL_NEVANLINNA_HPP

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fjl/errors.hpp"
#include "fjl/solutions.hpp"

namespace fjl::nev {

using Cx = std::complex<double>;

struct ZeroPole {
    Cx location;
    int mult = 1;
};

/// Evaluable meromorphic model with exact zero/pole enumerators.  Two
/// classes are supported: rational functions of z, and Laurent-polynomial
/// ratios in u = e^{lambda z} (lambda may be complex, e.g. i for trig
/// components).  Mixed z-and-exponential denominators are rejected.
class MeroFunction {
public:
    enum class Kind { RationalZ, ExpPoly };

    /// coeffs ascending in z; den must not be identically zero.
    static MeroFunction rational(std::vector<Cx> num, std::vector<Cx> den);
    /// Laurent coefficient maps in u = e^{lambda z}.
    static MeroFunction exp_poly(std::map<int, Cx> num, std::map<int, Cx> den, Cx lambda);
    /// Converts a catalog component (alpha and beta evaluate to z; trig
    /// components become Laurent ratios in e^{iz}).
    static MeroFunction from_component(const fun::FunElem& f);

    Kind kind() const { return kind_; }
    Cx lambda() const { return lambda_; }
    bool is_constant() const;

    Cx eval(const Cx& z) const;
    MeroFunction derivative() const;
    MeroFunction operator/(const MeroFunction& o) const;
    MeroFunction minus_const(const Cx& a) const;
    MeroFunction reciprocal() const;

    /// All poles / zeros in |z| <= r(1 + 1e-12), with multiplicities.
    std::vector<ZeroPole> poles_in(double r) const;
    std::vector<ZeroPole> zeros_in(double r) const;

private:
    Kind kind_ = Kind::RationalZ;
    std::vector<Cx> rnum_, rden_;   // RationalZ, ascending in z
    std::map<int, Cx> enum_, eden_; // ExpPoly, Laurent in u
    Cx lambda_ = 1.0;
};

struct Proximity {
    double value = 0.0;
    double error = 0.0;    // estimate from sample doubling
    double r_used = 0.0;   // r after near-pole perturbation, if any
};

/// Trapezoidal circle average of log+ |fn|.  Throws PoleOnCircle when a pole
/// lies on |z| = r; samples within 1e-7 * max(1, r) of a pole perturb
/// r -> r(1 + 1e-6).
Proximity proximity(const MeroFunction& fn, double r, int samples);

/// Logarithmically averaged count of poles (target empty) or a-points.
double counting(const MeroFunction& fn, double r, std::optional<Cx> target = std::nullopt);

/// T(r) = m(r) + N(r) at the (possibly perturbed) radius.
struct CharacteristicRow {
    double r = 0.0;       // grid radius requested
    double r_used = 0.0;  // radius actually sampled
    double m = 0.0, n = 0.0, t = 0.0;
    double err = 0.0;
};
CharacteristicRow characteristic(const MeroFunction& fn, double r, int samples);

struct NevanlinnaProfile {
    std::string label;
    int samples = 0;
    std::vector<CharacteristicRow> rows;
};
NevanlinnaProfile profile(const MeroFunction& fn, const std::vector<double>& grid, int samples,
                          const std::string& label = "");

/// Component profiles for a catalog entry plus the comparison report of the
/// growth-relation checks (pairwise ratios and the Cartan sandwich with a
/// fitted constant; asymptotic statements are soft by design).
struct ComparisonReport {
    NevanlinnaProfile f, g, h;
    std::vector<double> ratio_fg, ratio_fh, ratio_gh;  // per grid row, T ratios
    double sandwich_constant = 0.0;  // smallest C with T/3 - C <= T_F <= sum T + C
    bool fg_within_5pc = false;      // |T(r,f)/T(r,g) - 1| <= 0.05 at the last radius
};
ComparisonReport characteristic_profile(const sol::SolutionEntry& entry,
                                        const std::vector<double>& grid, int samples);

/// m(r, fn'/fn) against log(r T(r, fn)); flag raised when the tail ratio
/// exceeds the bound.
struct LogDerivRow {
    double r = 0.0;
    double m_logderiv = 0.0;
    double log_rt = 0.0;
};
struct LogDerivReport {
    std::vector<LogDerivRow> rows;
    bool flagged = false;
};
LogDerivReport logderiv_check(const MeroFunction& fn, const std::vector<double>& grid,
                              int samples, double bound = 10.0);

/// max over the grid of |T(r, 1/(fn - a)) - T(r, fn) + log|c||, where c is
/// the leading Laurent coefficient of fn - a at z = 0; Jensen's formula makes
/// this the bounded error term of the first main theorem.
double fmt_deviation(const MeroFunction& fn, const Cx& a, const std::vector<double>& grid,
                     int samples);

}  // namespace fjl::nev

#endif
