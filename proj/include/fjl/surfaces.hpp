#ifndef FJL_SURFACES_HPP
#define FJL_SURFACES_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fjl/errors.hpp"
#include "fjl/scalar.hpp"

namespace fjl::geo {

/// One monomial c * X^a Y^b Z^c W^d of a projective surface equation.
struct SurfaceTerm {
    Scalar coeff;
    std::array<int, 4> exp{};  // exponents of X, Y, Z, W
};

/// Homogeneous surface in P^3 with at most 4 terms, each involving at most
/// 2 of the variables (the shape of all surfaces handled here; the
/// structured singularity solver relies on it).
class MonomialSurface {
public:
    explicit MonomialSurface(std::vector<SurfaceTerm> terms);

    /// X^n + Y^n + Z^n - W^n.
    static MonomialSurface fermat(int n);
    /// X^n + Y^n + Z^{n-1}W - W^n (smooth deformation).
    static MonomialSurface deformed_smooth(int n);
    /// X^n + Y^{n-1}W + Z^{n-1}W - W^n (isolated singularities on W = 0).
    static MonomialSurface deformed_singular(int n);

    int degree() const { return degree_; }
    const std::vector<SurfaceTerm>& terms() const { return terms_; }

    Scalar eval(const std::array<Scalar, 4>& p) const;
    Scalar partial(int var, const std::array<Scalar, 4>& p) const;
    std::string to_string() const;

private:
    std::vector<SurfaceTerm> terms_;
    int degree_ = 0;
};

enum class SingStatus { Smooth, IsolatedSingular, Unknown };

struct SingularPoint {
    std::array<Scalar, 4> coords;  // projective representative, pivot = 1
    std::string label;             // "[0:...:1:0]" rendering
};

struct SingularityVerdict {
    SingStatus status = SingStatus::Unknown;
    std::vector<SingularPoint> points;  // nonempty iff IsolatedSingular
    std::string detail;                 // human-readable reason for Unknown
};

/// Exhaustive case analysis on which projective coordinates vanish: in each
/// stratum the gradient system collapses to sums of monomials in the nonzero
/// variables, decided by single-monomial contradictions and binomial root
/// extraction.  Every reported point is re-substituted into the equation and
/// all four partials exactly; structures the matcher cannot decide yield
/// Unknown rather than an error.
SingularityVerdict singular_locus(const MonomialSurface& surface);

/// Genus of a smooth complete intersection of degrees (d1, d2) in P^3:
/// 1 + d1 d2 (d1 + d2 - 4) / 2.
long ci_genus(long d1, long d2);

/// Genus of the smooth plane curve of degree n: (n-1)(n-2)/2.
long fermat_plane_genus(long n);

enum class Existence { None, Exists, Open };
const char* existence_name(Existence e);

/// Decision table for the unit equation with exponents (n, m, l).
struct VerdictRecord {
    long n = 0, m = 0, l = 0;
    Existence meromorphic = Existence::Open;
    Existence entire = Existence::Open;
    std::vector<std::string> meromorphic_citations;
    std::vector<std::string> entire_citations;
};

/// Requires n >= m >= l >= 1.  Meromorphic solutions are ruled out when
/// 1/n + 1/m + 1/l <= 3/8; entire ones when n = m = l >= 6 or the sum is
/// below 1/2.  Exists verdicts always name a verified witness.
VerdictRecord threshold_verdict(long n, long m, long l);

struct GapTriple {
    long n = 0, m = 0, l = 0;
    Rat sum;
    bool flagged = false;
};

/// All n >= m >= l >= 8 with n <= bound and 25/72 <= 1/n + 1/m + 1/l <= 3/8,
/// the minimal cases (all exponents <= 9) flagged.  Requires bound >= 9.
std::vector<GapTriple> gap_enumeration(long bound);

/// Verifies that phi = (x^{n-1}, y^n/w, z^n/w, w^{n-1}) pulls the degree-n
/// Fermat form back to x^{n(n-1)} + y^{n(n-1)} + z^{n(n-1)} + w^{n(n-1)} as a
/// Laurent-monomial identity, with exponents formal in n (quadratic
/// polynomials) or at a concrete n >= 2.  phi2_delta shifts the power of the
/// second coordinate in the middle terms (used by mutation tests; the
/// identity must fail for any nonzero shift).
bool shioda_cover_check(std::optional<long> n = std::nullopt, int phi2_delta = 0);

}  // namespace fjl::geo

#endif
