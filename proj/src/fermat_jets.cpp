#include "fjl/fermat_jets.hpp"

#include <array>

namespace fjl::fermat {

using jets::Kind;

int vx() { static int id = jets::declare_var("x"); return id; }
int vy() { static int id = jets::declare_var("y"); return id; }
int vz() { static int id = jets::declare_var("z"); return id; }
int vw() { static int id = jets::declare_var("w"); return id; }
int vu() { static int id = jets::declare_var("u"); return id; }
int vv() { static int id = jets::declare_var("v"); return id; }
int vx2() { static int id = jets::declare_var("x2"); return id; }
int vy2() { static int id = jets::declare_var("y2"); return id; }
int vw2() { static int id = jets::declare_var("w2"); return id; }

namespace {

std::array<int, 3> axes() { return {vx(), vy(), vz()}; }

int exponent_gen(Variant variant, int axis) {
    if (variant == Variant::Fermat) return GEN_N;
    return axis == 0 ? GEN_N : axis == 1 ? GEN_M : GEN_L;
}

// D^2 v = d^2 v + (kappa - 1)(dv)^2 / v for an arbitrary variable.
JetExpr weighted(int v, const Scalar& kappa) {
    return JetExpr::jet(v, 2) +
           (JetExpr(kappa) - JetExpr(1)) * JetExpr::jet(v, 1).pow(2) / JetExpr::var(v);
}

// Solves the two derived relations sum c_i v_i^{e_i} dv_i = 0 (and its D^2
// analogue) for the jets of vars[solve]; returns substitution images for
// d(vars[solve]) and d2(vars[solve]).
std::map<Sym, JetExpr> eliminate_axis(const std::array<int, 3>& vars,
                                      const std::array<Scalar, 3>& coeffs,
                                      const std::array<Affine, 3>& exps,
                                      const std::array<Scalar, 3>& kappas, int solve) {
    if (coeffs[solve].is_zero())
        throw EliminationFailure("relation coefficient of the solved variable is zero");
    JetExpr lead = JetExpr(coeffs[solve]) * JetExpr::var_pow(vars[solve], exps[solve]);
    JetExpr d_sum(0), dd_sum(0);
    for (int i = 0; i < 3; ++i) {
        if (i == solve) continue;
        JetExpr c = JetExpr(coeffs[i]) * JetExpr::var_pow(vars[i], exps[i]);
        d_sum += c * JetExpr::jet(vars[i], 1);
        dd_sum += c * weighted(vars[i], kappas[i]);
    }
    JetExpr d_img = -d_sum / lead;
    JetExpr dd_weighted = -dd_sum / lead;
    JetExpr d2_img = dd_weighted - (JetExpr(kappas[solve]) - JetExpr(1)) * d_img.pow(2) /
                                       JetExpr::var(vars[solve]);
    auto u = static_cast<std::uint16_t>(vars[solve]);
    return {{{u, Kind::D1}, d_img}, {{u, Kind::D2}, d2_img}};
}

std::map<Sym, JetExpr> relation_elimination(Variant variant, int solve = 2) {
    std::array<Scalar, 3> coeffs, kappas;
    std::array<Affine, 3> exps;
    for (int i = 0; i < 3; ++i) {
        kappas[i] = kappa_of(variant, i);
        exps[i] = kappa_affine(variant, i) - Affine(1);
        coeffs[i] = variant == Variant::Fermat ? Scalar(1) : kappas[i];
    }
    return eliminate_axis(axes(), coeffs, exps, kappas, solve);
}

std::optional<long> least_n_with(const Affine& val, long target) {
    if (val.cn <= 0 || val.cm != 0 || val.cl != 0) return std::nullopt;
    long need = target - val.c0;
    long t = need <= 0 ? 0 : (need + val.cn - 1) / val.cn;
    return t;
}

PoleReport make_report(std::string target, std::string divisor, const Affine& val,
                       bool log_pole = false) {
    PoleReport r;
    r.target = std::move(target);
    r.divisor = std::move(divisor);
    r.valuation = val;
    r.log_pole = log_pole;
    r.holomorphy_threshold = least_n_with(val, 0);
    r.vanishing_threshold = least_n_with(val, 1);
    return r;
}

}  // namespace

Scalar kappa_of(Variant variant, int axis) { return Scalar::param(exponent_gen(variant, axis)); }

Affine kappa_affine(Variant variant, int axis) {
    switch (exponent_gen(variant, axis)) {
        case GEN_M: return Affine::m();
        case GEN_L: return Affine::l();
        default: return Affine::n();
    }
}

JetExpr weighted_jet(Variant variant, int axis) {
    return weighted(axes()[axis], kappa_of(variant, axis));
}

std::pair<JetRelation, JetRelation> derive_relations(Variant variant) {
    JetExpr first(0), second(0);
    for (int i = 0; i < 3; ++i) {
        JetExpr c = variant == Variant::Fermat ? JetExpr(1) : JetExpr(kappa_of(variant, i));
        JetExpr vpow = JetExpr::var_pow(axes()[i], kappa_affine(variant, i) - Affine(1));
        first += c * vpow * JetExpr::jet(axes()[i], 1);
        second += c * vpow * weighted_jet(variant, i);
    }
    return {{first, "first_order"}, {second, "second_order"}};
}

PhiBundle build_phi(Variant variant) {
    PhiBundle b;
    b.variant = variant;
    JetExpr x = JetExpr::var(vx()), y = JetExpr::var(vy()), z = JetExpr::var(vz());
    JetExpr dx = JetExpr::jet(vx(), 1), dy = JetExpr::jet(vy(), 1), dz = JetExpr::jet(vz(), 1);
    JetExpr Dx = weighted_jet(variant, 0), Dy = weighted_jet(variant, 1),
            Dz = weighted_jet(variant, 2);

    b.n_yz = dy * Dz - dz * Dy;
    b.n_zx = dz * Dx - dx * Dz;
    b.n_xy = dx * Dy - dy * Dx;
    b.det3 = x * b.n_yz + y * b.n_zx + z * b.n_xy;

    b.m_yz = (dy / y) * (Dz / z) - (dz / z) * (Dy / y);
    b.m_zx = (dz / z) * (Dx / x) - (dx / x) * (Dz / z);
    b.m_xy = (dx / x) * (Dy / y) - (dy / y) * (Dx / x);
    b.m_xyz = b.m_yz + b.m_zx + b.m_xy;  // expansion of the 3x3 along the row of ones

    auto denom = [&](int axis) {
        JetExpr c = variant == Variant::Fermat ? JetExpr(1) : JetExpr(kappa_of(variant, axis));
        return c * JetExpr::var_pow(axes()[axis], kappa_affine(variant, axis) - Affine(1));
    };
    b.ratio_x = b.n_yz / denom(0);
    b.ratio_y = b.n_zx / denom(1);
    b.ratio_z = b.n_xy / denom(2);

    if (!cofactor_identity(b) || !row_scaling_identity(b) || !ratios_agree(b) ||
        !weighted_average_identity(b))
        throw Error("determinant-ratio construction failed an internal identity");
    return b;
}

bool cofactor_identity(const PhiBundle& b) {
    JetExpr lhs = JetExpr::var(vx()) * b.n_yz + JetExpr::var(vy()) * b.n_zx +
                  JetExpr::var(vz()) * b.n_xy;
    return lhs == b.det3;
}

bool row_scaling_identity(const PhiBundle& b) {
    JetExpr xyz = JetExpr::var(vx()) * JetExpr::var(vy()) * JetExpr::var(vz());
    return b.det3 == xyz * b.m_xyz;
}

bool ratios_agree(const PhiBundle& b) {
    auto images = relation_elimination(b.variant);
    JetExpr d1 = (b.ratio_x - b.ratio_y).substitute(images);
    JetExpr d2 = (b.ratio_x - b.ratio_z).substitute(images);
    return d1.is_zero() && d2.is_zero();
}

bool weighted_average_identity(const PhiBundle& b) {
    JetExpr sum(0);
    const JetExpr* ratios[3] = {&b.ratio_x, &b.ratio_y, &b.ratio_z};
    for (int i = 0; i < 3; ++i) {
        JetExpr c = b.variant == Variant::Fermat ? JetExpr(1) : JetExpr(kappa_of(b.variant, i));
        sum += c * JetExpr::var_pow(axes()[i], kappa_affine(b.variant, i)) * *ratios[i];
    }
    return sum == b.det3;
}

bool expansion_46_check(const PhiBundle& b, long delta) {
    if (b.variant != Variant::Fermat) throw Error("expansion check is for the plain variant");
    JetExpr y = JetExpr::var(vy()), z = JetExpr::var(vz());
    JetExpr dy = JetExpr::jet(vy(), 1), dz = JetExpr::jet(vz(), 1);
    JetExpr d2y = JetExpr::jet(vy(), 2), d2z = JetExpr::jet(vz(), 2);
    JetExpr coeff = JetExpr(Scalar::param(GEN_N)) - JetExpr(1) + JetExpr(delta);
    JetExpr rhs = (dy * d2z - dz * d2y) + coeff * dy * dz * (dz / z - dy / y);
    return b.n_yz == rhs;  // n_yz is Phi * x^{n-1}
}

std::map<Sym, JetExpr> infinity_chart() {
    JetExpr w = JetExpr::var(vw());
    return JetExpr::chart_map({{vx(), JetExpr(1) / w},
                               {vy(), JetExpr::var(vu()) / w},
                               {vz(), JetExpr::var(vv()) / w}});
}

JetExpr omega_xyz(Variant variant) {
    PhiBundle b = build_phi(variant);
    JetExpr xyz = JetExpr::var(vx()) * JetExpr::var(vy()) * JetExpr::var(vz());
    return xyz * b.ratio_x;
}

std::vector<PoleReport> pole_report_xyz_phi(Variant variant) {
    PhiBundle b = build_phi(variant);
    std::string name = variant == Variant::Fermat ? "xyz*Phi" : "xyz*Phi(generalized)";
    JetExpr xyz = JetExpr::var(vx()) * JetExpr::var(vy()) * JetExpr::var(vz());
    JetExpr via_z = xyz * b.ratio_z;  // manifestly regular at x = 0 and y = 0
    JetExpr via_x = xyz * b.ratio_x;  // manifestly regular at z = 0

    std::vector<PoleReport> out;
    out.push_back(make_report(name, "x", via_z.valuation(vx())));
    out.push_back(make_report(name, "y", via_z.valuation(vy())));
    out.push_back(make_report(name, "z", via_x.valuation(vz())));

    auto chart = infinity_chart();
    out.push_back(make_report(name, "w", via_x.substitute(chart).valuation(vw())));

    // intermediate orders from the expansion of N_yz, as in the pole analysis
    JetExpr dy = JetExpr::jet(vy(), 1), dz = JetExpr::jet(vz(), 1);
    JetExpr d2y = JetExpr::jet(vy(), 2), d2z = JetExpr::jet(vz(), 2);
    JetExpr t1 = dy * d2z - dz * d2y;
    JetExpr t2 = dy * dz * (dz / JetExpr::var(vz()) - dy / JetExpr::var(vy()));
    out.push_back(make_report("dy*d2z-dz*d2y", "w", t1.substitute(chart).valuation(vw())));
    out.push_back(
        make_report("dy*dz*(dlog(z)-dlog(y))", "w", t2.substitute(chart).valuation(vw())));
    out.push_back(make_report("numerator(" + name + ")", "w",
                              (xyz * b.n_yz).substitute(chart).valuation(vw())));
    return out;
}

std::vector<PoleReport> pole_report_xy_over_z_phi() {
    PhiBundle b = build_phi(Variant::Fermat);
    const std::string name = "(xy/z)*Phi";
    JetExpr x = JetExpr::var(vx()), y = JetExpr::var(vy()), z = JetExpr::var(vz());
    JetExpr expr = (x * y / z) * b.ratio_x;
    JetExpr via_z = (x * y / z) * b.ratio_z;  // regular at x = 0 and y = 0

    std::vector<PoleReport> out;
    out.push_back(make_report(name, "x", via_z.valuation(vx())));
    out.push_back(make_report(name, "y", via_z.valuation(vy())));

    auto [is_log, normal] = expr.log_normal_form(vz(), Assumptions::none());
    out.push_back(make_report(name, "z", normal.valuation(vz()), is_log));

    out.push_back(make_report(name, "w", expr.substitute(infinity_chart()).valuation(vw())));
    return out;
}

std::vector<PoleReport> pole_report(const std::string& target) {
    if (target == "xyz*Phi") return pole_report_xyz_phi(Variant::Fermat);
    if (target == "xyz*Phi(generalized)") return pole_report_xyz_phi(Variant::Generalized);
    if (target == "(xy/z)*Phi") return pole_report_xy_over_z_phi();
    throw Error("unknown pole-report target: " + target);
}

JetExpr omega_xyw() {
    // Second standard chart: defining equation x2^n + y2^n + 1 = w2^n, relation
    // x2^{n-1}dx2 + y2^{n-1}dy2 - w2^{n-1}dw2 = 0; same first Cramer ratio.
    Scalar n = Scalar::param(GEN_N);
    JetExpr y2 = JetExpr::var(vy2()), w2 = JetExpr::var(vw2());
    JetExpr Dy2 = weighted(vy2(), n), Dw2 = weighted(vw2(), n);
    JetExpr n_yw = JetExpr::jet(vy2(), 1) * Dw2 - JetExpr::jet(vw2(), 1) * Dy2;
    JetExpr phi = n_yw / JetExpr::var_pow(vx2(), Affine::n() - Affine(1));
    return JetExpr::var(vx2()) * y2 / w2 * phi;
}

std::map<Sym, JetExpr> transport_map() {
    JetExpr w2 = JetExpr::var(vw2());
    return JetExpr::chart_map({{vx(), JetExpr::var(vx2()) / w2},
                               {vy(), JetExpr::var(vy2()) / w2},
                               {vz(), JetExpr(1) / w2}});
}

std::map<Sym, JetExpr> transport_map_inverse() {
    JetExpr z = JetExpr::var(vz());
    return JetExpr::chart_map({{vx2(), JetExpr::var(vx()) / z},
                               {vy2(), JetExpr::var(vy()) / z},
                               {vw2(), JetExpr(1) / z}});
}

JetExpr remark_46_factor() {
    // The two charts' jet differentials agree only up to this monomial: the
    // right side vanishes to order n-6 along z = 0 (the second chart's plane
    // at infinity) while the left side is regular there.
    return -JetExpr::var_pow(vw2(), Affine::n() - Affine(6));
}

std::pair<JetExpr, JetExpr> remark_46_reduced_sides() {
    // Eliminate the dependent jets with the second chart's derived relations,
    // then rewrite w2^n by the defining equation (single designated rewrite).
    Scalar n = Scalar::param(GEN_N);
    Affine e = Affine::n() - Affine(1);
    auto images = eliminate_axis({vx2(), vy2(), vw2()}, {Scalar(1), Scalar(1), Scalar(-1)},
                                 {e, e, e}, {n, n, n}, 2);
    JetExpr defsum = JetExpr::var_pow(vx2(), Affine::n()) +
                     JetExpr::var_pow(vy2(), Affine::n()) + JetExpr(1);
    auto reduce = [&](const JetExpr& side) {
        return side.substitute(images).substitute_power(vw2(), GEN_N, defsum);
    };
    JetExpr transported = omega_xyz(Variant::Fermat).substitute(transport_map());
    return {reduce(transported), reduce(remark_46_factor() * omega_xyw())};
}

bool remark_46_correspondence() {
    auto [lhs, rhs] = remark_46_reduced_sides();
    return lhs == rhs;
}

bool transport_involution() {
    auto fwd = transport_map();
    auto bwd = transport_map_inverse();
    for (int v : {vx(), vy(), vz()}) {
        for (JetExpr e : {JetExpr::var(v), JetExpr::jet(v, 1), JetExpr::jet(v, 2)}) {
            if (!(e.substitute(fwd).substitute(bwd) == e)) return false;
        }
    }
    return true;
}

}  // namespace fjl::fermat
