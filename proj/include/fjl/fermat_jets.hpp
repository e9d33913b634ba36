#ifndef FJL_FERMAT_JETS_HPP
#define FJL_FERMAT_JETS_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fjl/jet.hpp"

namespace fjl::fermat {

using jets::JetExpr;
using jets::Sym;

/// Exponent variant of the defining equation x^n + y^n + z^n = 1 versus the
/// generalized x^n + y^m + z^l = -1 (with coefficients n, m, l on the derived
/// relations).
enum class Variant { Fermat, Generalized };

// Affine surface coordinates, the chart coordinates at infinity
// (x = 1/w, y = u/w, z = v/w), and the second standard chart (x2, y2, w2).
int vx();
int vy();
int vz();
int vw();
int vu();
int vv();
int vx2();
int vy2();
int vw2();

/// Exponent attached to a coordinate: n for all three in the plain variant,
/// (n, m, l) respectively in the generalized one.
Scalar kappa_of(Variant variant, int axis);  // axis 0,1,2 for x,y,z
Affine kappa_affine(Variant variant, int axis);

/// D^2 v = d^2 v + (kappa - 1)(dv)^2 / v for the variant's exponent.
JetExpr weighted_jet(Variant variant, int axis);

struct JetRelation {
    JetExpr expr;
    std::string tag;  // first_order | second_order | defining_equation
};

/// First and second derived relations of the defining equation.
std::pair<JetRelation, JetRelation> derive_relations(Variant variant);

struct PhiBundle {
    Variant variant = Variant::Fermat;
    JetExpr det3;                      // |x y z; dx dy dz; D2x D2y D2z|
    JetExpr m_xyz;                     // log-scaled 3x3 determinant
    JetExpr m_yz, m_zx, m_xy;          // log-scaled 2x2 minors
    JetExpr n_yz, n_zx, n_xy;          // the 2x2 determinant numerators
    JetExpr ratio_x, ratio_y, ratio_z; // the three representatives of Phi
};

/// Assembles the determinant ratios and minors; verifies the internal
/// identities (cofactor expansion, row scaling, ratio agreement).
PhiBundle build_phi(Variant variant);

/// x*N_yz + y*N_zx + z*N_xy = det3 (pure cofactor expansion).
bool cofactor_identity(const PhiBundle& b);
/// det3 = xyz * M_xyz (row scaling).
bool row_scaling_identity(const PhiBundle& b);
/// The three ratios agree after eliminating (dz, d2z) via the two relations.
bool ratios_agree(const PhiBundle& b);
/// Weighted-average step: sum of kappa_i v_i^{kappa_i} * ratio_i equals det3, so
/// that a single rewrite of the defining sum identifies Phi with det3.
bool weighted_average_identity(const PhiBundle& b);

/// Phi * x^{n-1} = (dy d2z - dz d2y) + (n-1+delta) dy dz (dlog z - dlog y);
/// delta = 0 is the paper's coefficient, nonzero values are mutation probes.
bool expansion_46_check(const PhiBundle& b, long delta = 0);

struct PoleReport {
    std::string target;
    std::string divisor;  // "w", "x", "y", or "z"
    Affine valuation;
    bool log_pole = false;
    std::optional<long> holomorphy_threshold;  // least n0 with valuation >= 0
    std::optional<long> vanishing_threshold;   // least n0 with valuation >= 1
};

/// Substitution images for the chart at infinity (4 coordinates to 3).
std::map<Sym, JetExpr> infinity_chart();

std::vector<PoleReport> pole_report_xyz_phi(Variant variant);
std::vector<PoleReport> pole_report_xy_over_z_phi();
std::vector<PoleReport> pole_report(const std::string& target);

/// The expression xyz*Phi (first-representative form) in affine coordinates.
JetExpr omega_xyz(Variant variant);
/// The expression (x2 y2 / w2)*Phi built in the second standard chart.
JetExpr omega_xyw();
/// Transport (x, y, z, 1) -> (x, y, 1, w) between the two standard charts.
std::map<Sym, JetExpr> transport_map();
std::map<Sym, JetExpr> transport_map_inverse();

/// Monomial -w2^{n-6} relating the two sides of the chart correspondence.
JetExpr remark_46_factor();
/// Both sides of the chart correspondence (the right one carrying the monomial
/// factor), reduced to the independent jets of the second chart: dependent
/// jets eliminated, defining equation rewritten once.
std::pair<JetExpr, JetExpr> remark_46_reduced_sides();
/// xyz*Phi_{xyz} corresponds to -w2^{n-6} * (xy/w)*Phi_{xyw} under the chart
/// transport; literal equality of the two expressions fails by exactly that
/// monomial (the sides have different valuations along z = 0).
bool remark_46_correspondence();
/// The transport applied twice is the identity.
bool transport_involution();

}  // namespace fjl::fermat

#endif
