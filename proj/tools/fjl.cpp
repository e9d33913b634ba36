// fjl: command-line front end for the verification engine.  Every command
// emits a deterministic report (JSON or human-readable); exit code 0 means
// all checks passed, 1 means at least one failed, 2 means a usage or parse
// error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>

#include "fjl/errors.hpp"
#include "fjl/fermat_jets.hpp"
#include "fjl/nevanlinna.hpp"
#include "fjl/ode_reduction.hpp"
#include "fjl/parse.hpp"
#include "fjl/solutions.hpp"
#include "fjl/surfaces.hpp"

using Json = nlohmann::ordered_json;
using namespace fjl;

namespace {

constexpr const char* kSchema = "fjl-report/1";
constexpr const char* kEngine = "fjl 1.0.0";

struct Output {
    bool json = false;
    bool pretty = false;
};

/// Accumulates check lines for a report.  A "typo flag" marks a check that
/// passes against the corrected form of a misprinted source display; it
/// counts as a pass with an attached note.
class Report {
public:
    Report(std::string command, Json inputs)
        : command_(std::move(command)), inputs_(std::move(inputs)),
          start_(std::chrono::steady_clock::now()) {}

    void add(const std::string& name, bool ok, const std::string& detail,
             const std::string& typo_flag = "") {
        Json c;
        c["name"] = name;
        c["status"] = !ok ? "fail" : (typo_flag.empty() ? "pass" : "pass-with-note");
        c["detail"] = detail;
        if (!typo_flag.empty() && ok) c["typo_flag"] = typo_flag;
        checks_.push_back(std::move(c));
        (ok ? (typo_flag.empty() ? passed_ : notes_) : failed_)++;
    }

    void attach(const std::string& key, Json value) { extras_[key] = std::move(value); }

    int failed() const { return failed_; }

    int emit(const Output& out) const {
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start_)
                        .count();
        if (out.json) {
            Json rep;
            rep["schema"] = kSchema;
            rep["engine"] = kEngine;
            rep["command"] = command_;
            rep["inputs"] = inputs_;
            rep["checks"] = checks_;
            for (const auto& [k, v] : extras_.items()) rep[k] = v;
            rep["summary"] = {{"checks", checks_.size()},
                              {"passed", passed_ + notes_},
                              {"failed", failed_},
                              {"notes", notes_}};
            rep["timing_ms"] = ms;
            std::printf("%s\n", rep.dump(out.pretty ? 2 : -1).c_str());
        } else {
            for (const auto& c : checks_) {
                std::string status = c["status"];
                const char* tag = status == "fail"          ? "FAIL"
                                  : status == "pass-with-note" ? "note"
                                                               : "pass";
                std::printf("[%s] %s — %s\n", tag, c["name"].get<std::string>().c_str(),
                            c["detail"].get<std::string>().c_str());
            }
            for (const auto& [k, v] : extras_.items()) {
                if (v.is_string())
                    std::printf("%s:\n%s", k.c_str(), v.get<std::string>().c_str());
                else
                    std::printf("%s: %s\n", k.c_str(), v.dump(2).c_str());
            }
            std::printf("%zu checks: %d passed, %d failed, %d notes (%.0f ms)\n",
                        checks_.size(), passed_ + notes_, failed_, notes_, ms);
        }
        return failed_ > 0 ? 1 : 0;
    }

private:
    std::string command_;
    Json inputs_;
    Json checks_ = Json::array();
    Json extras_ = Json::object();
    int passed_ = 0, failed_ = 0, notes_ = 0;
    std::chrono::steady_clock::time_point start_;
};

const fermat::PoleReport& find_pole(const std::vector<fermat::PoleReport>& reports,
                                    const std::string& target, const std::string& divisor) {
    for (const auto& r : reports)
        if (r.target == target && r.divisor == divisor) return r;
    throw Error("no pole report for " + target + " along " + divisor);
}

std::string canonical_target(std::string t) {
    if (t == "xyzPhi" || t == "xyz*Phi") return "xyz*Phi";
    if (t == "xyzPhiGeneralized" || t == "xyz*Phi(generalized)" || t == "generalized")
        return "xyz*Phi(generalized)";
    if (t == "xyOverZPhi" || t == "(xy/z)*Phi" || t == "xyOverZ") return "(xy/z)*Phi";
    throw Error("unknown pole-report target: " + t +
                " (expected xyzPhi, generalized, or xyOverZPhi)");
}

/// "n>=9" (also m, l); whitespace tolerated.
Assumptions parse_assume(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto ge = s.find(">=");
    if (ge == std::string::npos || ge == 0)
        throw Error("cannot parse assumption '" + text + "' (expected e.g. n>=9)");
    std::string var = s.substr(0, ge);
    long bound = std::stol(s.substr(ge + 2));
    Assumptions a;
    if (var == "n")
        a.n_min = bound;
    else if (var == "m")
        a.m_min = bound;
    else if (var == "l")
        a.l_min = bound;
    else
        throw Error("assumption variable must be n, m, or l");
    return a;
}

std::vector<double> parse_grid(const std::string& csv) {
    std::vector<double> grid;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) grid.push_back(std::stod(tok));
    if (grid.empty()) throw Error("empty radius grid");
    return grid;
}

Json pole_row_json(const fermat::PoleReport& r) {
    Json row;
    row["target"] = r.target;
    row["divisor"] = r.divisor;
    row["valuation"] = r.valuation.to_string();
    row["log_pole"] = r.log_pole;
    if (r.holomorphy_threshold) row["holomorphy_threshold"] = *r.holomorphy_threshold;
    if (r.vanishing_threshold) row["vanishing_threshold"] = *r.vanishing_threshold;
    return row;
}

// ---------------------------------------------------------------------------
// verify-paper
// ---------------------------------------------------------------------------

void determinant_checks(Report& rep) {
    using namespace fermat;
    PhiBundle b = build_phi(Variant::Fermat);
    rep.add("cofactor expansion x*N_yz + y*N_zx + z*N_xy = det3", cofactor_identity(b),
            "formal exponent n");
    rep.add("row scaling det3 = xyz * M_xyz", row_scaling_identity(b), "formal exponent n");
    rep.add("the three ratio representatives of Phi agree", ratios_agree(b),
            "after eliminating (dz, d2z) with the derived relations");
    rep.add("weighted-average rewrite identifies Phi with det3", weighted_average_identity(b),
            "sum of kappa_i v_i^kappa_i ratio_i = det3");

    jets::JetExpr xyz =
        jets::JetExpr::var(vx()) * jets::JetExpr::var(vy()) * jets::JetExpr::var(vz());
    jets::JetExpr cof = jets::JetExpr::var(vx()) * b.n_yz + jets::JetExpr::var(vy()) * b.n_zx +
                        jets::JetExpr::var(vz()) * b.n_xy;
    bool sweep = true;
    for (long n = 2; n <= 12; ++n) {
        sweep = sweep && b.det3.subst_param(GEN_N, n) == (xyz * b.m_xyz).subst_param(GEN_N, n);
        sweep = sweep && cof.subst_param(GEN_N, n) == b.det3.subst_param(GEN_N, n);
    }
    rep.add("determinant identities specialized at n = 2..12", sweep,
            "cofactor and row-scaling identities per concrete exponent");

    rep.add("expansion of x^{n-1}*Phi carries coefficient (n-1)", expansion_46_check(b),
            "dy d2z - dz d2y + (n-1) dy dz (dlog z - dlog y)");
    rep.add("expansion coefficient mutations +-1 are rejected",
            !expansion_46_check(b, 1) && !expansion_46_check(b, -1),
            "perturbed coefficients fail as required");
}

void pole_checks(Report& rep, std::optional<long> n_spec) {
    using namespace fermat;
    auto reports = pole_report("xyz*Phi");
    const auto& at_w = find_pole(reports, "xyz*Phi", "w");
    rep.add("valuation of xyz*Phi along w = 0 is n - 8",
            at_w.valuation == Affine::n() - Affine(8) && !at_w.log_pole &&
                at_w.holomorphy_threshold == 8 && at_w.vanishing_threshold == 9,
            "holomorphic from n = 8, vanishing from n = 9");
    bool axes = true;
    for (const char* d : {"x", "y", "z"})
        axes = axes && find_pole(reports, "xyz*Phi", d).valuation == Affine(0);
    rep.add("xyz*Phi is regular along the coordinate divisors", axes,
            "valuation 0 along x, y, z");
    rep.add("intermediate pole orders in the chart at infinity",
            find_pole(reports, "dy*d2z-dz*d2y", "w").valuation == Affine(-3) &&
                find_pole(reports, "dy*dz*(dlog(z)-dlog(y))", "w").valuation == Affine(-4) &&
                find_pole(reports, "numerator(xyz*Phi)", "w").valuation == Affine(-7),
            "orders 3, 4 for the two expansion terms; 7 for the numerator");

    auto gen = pole_report("xyz*Phi(generalized)");
    const auto& gw = find_pole(gen, "xyz*Phi(generalized)", "w");
    rep.add("generalized form: valuation n - 9 without the leading cancellation",
            gw.valuation == Affine::n() - Affine(9) && gw.holomorphy_threshold == 9 &&
                find_pole(gen, "numerator(xyz*Phi(generalized))", "w").valuation == Affine(-8),
            "numerator order 8; thresholds shift to 9 and 10");

    auto half = pole_report("(xy/z)*Phi");
    const auto& hz = find_pole(half, "(xy/z)*Phi", "z");
    const auto& hw = find_pole(half, "(xy/z)*Phi", "w");
    rep.add("(xy/z)*Phi has a logarithmic pole along z = 0",
            hz.log_pole && hz.valuation == Affine(0), "log-normal form with valuation 0");
    rep.add("valuation of (xy/z)*Phi along w = 0 is n - 6",
            hw.valuation == Affine::n() - Affine(6) && hw.holomorphy_threshold == 6 &&
                hw.vanishing_threshold == 7,
            "holomorphic from n = 6, vanishing from n = 7");

    rep.add("chart transport matches the two representatives",
            remark_46_correspondence() && transport_involution(),
            "sides agree exactly up to the monomial factor -w2^{n-6}; transport is an "
            "involution");

    if (n_spec) {
        bool hol = at_w.holomorphy_threshold && *n_spec >= *at_w.holomorphy_threshold;
        bool van = at_w.vanishing_threshold && *n_spec >= *at_w.vanishing_threshold;
        rep.add("xyz*Phi specialization at n = " + std::to_string(*n_spec), true,
                std::string("holomorphic=") + (hol ? "true" : "false") +
                    ", vanishing=" + (van ? "true" : "false"));
    }
}

void ode_checks(Report& rep) {
    using namespace ode;
    for (const StepReport& step : verify_reduction_chain()) {
        std::string flag;
        if (step.name == "dlog_expansion")
            flag = "the source display omits the differential operator before the log "
                   "factor; the corrected form (d ln) is what passes";
        rep.add("reduction chain: " + step.name, step.passed, step.note, flag);
    }
    rep.add("logarithmic p-identity with formal exponent", p_identity_formal(),
            "(ln(g'/f'))' + (n-1)(ln(g/f))' = p h^{n-2} / (fg f'g')");
    rep.add("p-identity coefficient perturbations are rejected",
            !p_identity_formal(1) && !p_identity_formal(-1), "(n-1) +- 1 fails as required");
    rep.add("p-identity specializations n = 6 and n = 8",
            verify_p_identity(6) && verify_p_identity(8), "coefficients 5 and 7 respectively");
    rep.add("expanded n = 8 display", p_display_check(false) && !p_display_check(true),
            "p h^6 = fgf'g'' - f''fgg' + 7(g')^2ff' - 7(f')^2gg'",
            "the printed third term carries a second derivative where the identity "
            "requires the first; the corrected display is what passes");
    rep.add("Wronskian correspondence factors 36 and 64",
            verify_wronskian_correspondence(6) && verify_wronskian_correspondence(8),
            "W(f^n, g^n, h^n) = n^2 p (fgh)^{n-2} under constraint elimination");
    rep.add("Wronskian coefficient mutation rejected", !wronskian_identity_formal(1),
            "n^2 + 1 fails as required");
}

void catalog_checks(Report& rep) {
    std::vector<std::string> family_failures;
    for (const sol::SolutionEntry& e : sol::catalog()) {
        bool family = e.name.rfind("modified_green_", 0) == 0;
        try {
            fun::FunElem residual = sol::check_solution(e);
            if (family) {
                if (!residual.is_zero()) family_failures.push_back(e.name);
                continue;
            }
            rep.add("catalog residual: " + e.name, residual.is_zero(),
                    residual.is_zero() ? "f^n + g^m + h^l - 1 = 0 exactly"
                                       : "nonzero residual: " + residual.to_string());
        } catch (const Error& err) {
            if (family)
                family_failures.push_back(e.name);
            else
                rep.add("catalog residual: " + e.name, false, err.what());
        }
    }
    std::string fams = "exponents (4, 4, n) for n = 2..12";
    if (!family_failures.empty()) {
        fams = "failing entries:";
        for (const std::string& n : family_failures) fams += " " + n;
    }
    rep.add("catalog residuals: modified quartic family", family_failures.empty(), fams);

    const auto& trivial = sol::find_entry("trivial_family");
    const auto& quintic = sol::find_entry("gundersen_tohge");
    fermat::PhiBundle b = fermat::build_phi(fermat::Variant::Fermat);
    rep.add("pullback of M_xyz vanishes on the trivial family",
            sol::pullback(b.m_xyz, trivial).is_zero(), "degenerate directions drop the rank");
    rep.add("pullback of xyz*Phi is nonzero for the quintic entry",
            !sol::pullback(fermat::omega_xyz(fermat::Variant::Fermat), quintic).is_zero(),
            "the jet differential does not annihilate the quintic curve");
    auto brackets = sol::resolve_gt_bracketing();
    rep.add("quintic coefficient bracketing is resolved computationally",
            brackets.primary_zero && !brackets.alternate_zero,
            "the shipped reading has residual 0; the alternate reading does not");
}

void nevanlinna_checks(Report& rep, int samples, unsigned long seed) {
    using nev::Cx;
    using nev::MeroFunction;
    auto ez = MeroFunction::exp_poly({{1, 1.0}}, {{0, 1.0}}, 1.0);
    auto prox = nev::proximity(ez, std::numbers::pi, 1 << 14);
    rep.add("proximity m(pi, e^z) = 1", std::abs(prox.value - 1.0) <= 1e-6,
            "2^14 samples, error estimate " + std::to_string(prox.error));

    std::vector<double> grid{5.0, 10.0, 20.0, 35.0, 50.0};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mod(0.5, 2.0), arg(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        Cx a = std::polar(mod(rng), arg(rng));
        worst = std::max(worst, nev::fmt_deviation(ez, a, grid, samples));
    }
    rep.add("first main theorem deviation within 1.0", worst <= 1.0,
            "max over r in [5, 50] and 5 randomized targets: " + std::to_string(worst));

    auto profile = nev::characteristic_profile(sol::find_entry("green"), {5.0, 10.0, 20.0},
                                               samples);
    bool exact = true;
    for (const auto* p : {&profile.f, &profile.g, &profile.h})
        for (const auto& row : p->rows) exact = exact && row.t == row.m + row.n;
    rep.add("characteristic rows satisfy T = m + N exactly", exact,
            "quartic exponential entry over r in {5, 10, 20}");
    rep.add("quartic exponential pair has matching growth", profile.fg_within_5pc,
            "|T(20, f)/T(20, g) - 1| = " + std::to_string(std::abs(profile.ratio_fg.back() - 1.0)));
    auto ld = nev::logderiv_check(ez, {5.0, 10.0, 20.0}, samples);
    rep.add("logarithmic derivative stays below the growth bound", !ld.flagged,
            "m(r, f'/f) compared with log(r T(r, f))");
}

void surface_checks(Report& rep) {
    using namespace geo;
    bool fermat_smooth = true;
    for (int n = 3; n <= 10; ++n)
        fermat_smooth = fermat_smooth &&
                        singular_locus(MonomialSurface::fermat(n)).status == SingStatus::Smooth;
    rep.add("diagonal surfaces are smooth for degrees 3..10", fermat_smooth,
            "Jacobian criterion by chart case analysis");
    rep.add("degree-9 deformation with one mixed term is smooth",
            singular_locus(MonomialSurface::deformed_smooth(9)).status == SingStatus::Smooth,
            "X^9 + Y^9 + Z^8 W - W^9");
    auto nodal = singular_locus(MonomialSurface::deformed_singular(9));
    rep.add("degree-9 deformation with two mixed terms has exactly 8 nodes",
            nodal.status == SingStatus::IsolatedSingular && nodal.points.size() == 8,
            "[0 : w : 1 : 0] with w^8 = -1, re-substituted exactly");
    rep.add("genus formulas",
            ci_genus(2, 2) == 1 && ci_genus(3, 3) == 10 && ci_genus(9, 9) == 568 &&
                fermat_plane_genus(3) == 1,
            "complete intersections (2,2), (3,3), (9,9) and the plane cubic");
    auto gap = gap_enumeration(12);
    std::vector<std::array<long, 3>> flagged;
    for (const GapTriple& t : gap)
        if (t.flagged) flagged.push_back({t.n, t.m, t.l});
    rep.add("gap enumeration flags the three minimal cases",
            flagged == std::vector<std::array<long, 3>>{{8, 8, 8}, {9, 8, 8}, {9, 9, 8}},
            "(8,8,8), (9,8,8), (9,9,8) out of the 25/72..3/8 window with l >= 8");
    auto v888 = threshold_verdict(8, 8, 8);
    auto v777 = threshold_verdict(7, 7, 7);
    auto v666 = threshold_verdict(6, 6, 6);
    auto v555 = threshold_verdict(5, 5, 5);
    rep.add("decision table pinned verdicts",
            v888.meromorphic == Existence::None && v777.meromorphic == Existence::Open &&
                v666.entire == Existence::None && v666.meromorphic == Existence::Exists &&
                v555.entire == Existence::Exists,
            "(8,8,8) none; (7,7,7) open; (6,6,6) entire none, meromorphic exists; (5,5,5) "
            "entire exists");
    rep.add("power-map covering identity",
            shioda_cover_check() && shioda_cover_check(2) && shioda_cover_check(3) &&
                shioda_cover_check(4) && shioda_cover_check(5) && shioda_cover_check(6) &&
                !shioda_cover_check(std::nullopt, -1),
            "formal and n = 2..6; exponent mutation rejected",
            "the printed pullback exponent reads (n-1)^n where the verified identity "
            "needs n(n-1); the corrected exponent is what passes");
}

int cmd_verify_paper(const Output& out, std::optional<long> n_spec, int samples,
                     unsigned long seed) {
    Json inputs;
    inputs["catalog"] = sol::default_catalog_path();
    inputs["samples"] = samples;
    inputs["seed"] = seed;
    if (n_spec) inputs["n"] = *n_spec;
    Report rep("verify-paper", inputs);
    determinant_checks(rep);
    pole_checks(rep, n_spec);
    ode_checks(rep);
    catalog_checks(rep);
    nevanlinna_checks(rep, samples, seed);
    surface_checks(rep);
    return rep.emit(out);
}

// ---------------------------------------------------------------------------
// check-solution
// ---------------------------------------------------------------------------

int cmd_check_solution(const Output& out, const std::string& which, bool with_pullback) {
    std::vector<sol::SolutionEntry> entries;
    if (std::filesystem::exists(which))
        entries = sol::load_catalog(which);
    else
        entries.push_back(sol::find_entry(which));

    Report rep("check-solution", Json{{"input", which}});
    for (const sol::SolutionEntry& e : entries) {
        std::string label = "residual: " + e.name;
        try {
            fun::FunElem residual = sol::check_solution(e);
            bool constant = e.f.is_constant() && e.g.is_constant() && e.h.is_constant();
            rep.add(label, residual.is_zero(),
                    residual.is_zero() ? "f^n + g^m + h^l - 1 = 0 exactly"
                                       : "nonzero residual: " + residual.to_string(),
                    constant ? "all three components are constants (trivial-constant "
                               "solution)"
                             : "");
        } catch (const Error& err) {
            rep.add(label, false, err.what());
            continue;
        }
        if (!with_pullback) continue;
        bool plain = e.n == e.m && e.m == e.l;
        auto variant = plain ? fermat::Variant::Fermat : fermat::Variant::Generalized;
        fermat::PhiBundle b = fermat::build_phi(variant);
        try {
            fun::FunElem m_xyz = sol::pullback(b.m_xyz, e);
            fun::FunElem omega = sol::pullback(fermat::omega_xyz(variant), e);
            rep.add("pullback M_xyz: " + e.name, true,
                    m_xyz.is_zero() ? "0" : m_xyz.to_string());
            rep.add("pullback xyz*Phi: " + e.name, true,
                    omega.is_zero() ? "0" : omega.to_string());
        } catch (const DivisionByZeroElement&) {
            rep.add("pullback: " + e.name, true,
                    "curve lies in a degenerate locus; pullback undefined");
        }
    }
    return rep.emit(out);
}

// ---------------------------------------------------------------------------
// pole-order, ode-check, nevanlinna, surface, verdict
// ---------------------------------------------------------------------------

int cmd_pole_order(const Output& out, const std::string& target_arg,
                   const std::string& assume, std::optional<long> n_val) {
    std::string target = canonical_target(target_arg);
    Json inputs{{"target", target}};
    if (!assume.empty()) inputs["assume"] = assume;
    if (n_val) inputs["n"] = *n_val;
    Report rep("pole-order", inputs);

    Json rows = Json::array();
    for (const fermat::PoleReport& r : fermat::pole_report(target)) {
        Json row = pole_row_json(r);
        if (n_val) row["valuation_at_n"] = r.valuation.c0 + r.valuation.cn * *n_val;
        rows.push_back(row);
        std::string detail = "valuation " + r.valuation.to_string() +
                             (r.log_pole ? " (logarithmic)" : "");
        if (!assume.empty() && r.target == target && r.divisor == "w") {
            Assumptions a = parse_assume(assume);
            long bound = a.n_min.value_or(a.m_min.value_or(a.l_min.value_or(0)));
            bool hol = r.holomorphy_threshold && bound >= *r.holomorphy_threshold;
            bool van = r.vanishing_threshold && bound >= *r.vanishing_threshold;
            detail += std::string("; under ") + assume + ": holomorphic at infinity: " +
                      (hol ? "true" : "false") +
                      ", vanishing at infinity: " + (van ? "true" : "false");
        }
        rep.add(r.target + " along " + r.divisor, true, detail);
    }
    rep.attach("rows", rows);
    return rep.emit(out);
}

int cmd_ode_check(const Output& out, std::optional<long> n_val) {
    Json inputs = Json::object();
    if (n_val) inputs["n"] = *n_val;
    Report rep("ode-check", inputs);
    for (const ode::StepReport& step : ode::verify_reduction_chain())
        rep.add("reduction chain: " + step.name, step.passed, step.note);
    rep.add("logarithmic p-identity with formal exponent", ode::p_identity_formal(),
            "(ln(g'/f'))' + (n-1)(ln(g/f))' = p h^{n-2} / (fg f'g')");
    if (n_val) {
        if (*n_val != 6 && *n_val != 8)
            throw Error("p-identity specialization supports n = 6 or n = 8");
        rep.add("p-identity at n = " + std::to_string(*n_val), ode::verify_p_identity(*n_val),
                "coefficient " + std::to_string(*n_val - 1));
        rep.add("Wronskian correspondence at n = " + std::to_string(*n_val),
                ode::verify_wronskian_correspondence(*n_val),
                "factor " + std::to_string(*n_val * *n_val));
    }
    return rep.emit(out);
}

int cmd_nevanlinna(const Output& out, const std::string& entry_arg, const std::string& grid_csv,
                   int samples) {
    // Accept catalog names, allowing a trailing exponent suffix (green4 -> green).
    const sol::SolutionEntry* entry = nullptr;
    for (const sol::SolutionEntry& e : sol::catalog())
        if (e.name == entry_arg || (entry_arg.rfind(e.name, 0) == 0 && !e.name.empty()))
            if (!entry || e.name.size() > entry->name.size()) entry = &e;
    if (!entry) throw Error("no catalog entry matching '" + entry_arg + "'");

    std::vector<double> grid = parse_grid(grid_csv);
    Report rep("nevanlinna",
               Json{{"entry", entry->name}, {"grid", grid_csv}, {"samples", samples}});
    auto profile = nev::characteristic_profile(*entry, grid, samples);

    std::string csv = "r,T_f,T_g,T_h,ratio_fg\n";
    for (std::size_t k = 0; k < profile.f.rows.size(); ++k) {
        char line[160];
        std::snprintf(line, sizeof line, "%.6g,%.9g,%.9g,%.9g,%.9g\n", profile.f.rows[k].r,
                      profile.f.rows[k].t, profile.g.rows[k].t, profile.h.rows[k].t,
                      profile.ratio_fg[k]);
        csv += line;
    }
    bool exact = true;
    for (const auto* p : {&profile.f, &profile.g, &profile.h})
        for (const auto& row : p->rows) exact = exact && row.t == row.m + row.n;
    rep.add("characteristic rows satisfy T = m + N exactly", exact,
            std::to_string(profile.f.rows.size()) + " grid radii");
    rep.add("Cartan sandwich with fitted constant", true,
            "constant " + std::to_string(profile.sandwich_constant));
    rep.attach("csv", csv);
    return rep.emit(out);
}

int cmd_surface(const Output& out, const std::string& kind, long n, long bound) {
    Report rep("surface", Json{{"kind", kind}, {"n", n}, {"bound", bound}});
    if (kind == "gap") {
        Json rows = Json::array();
        for (const geo::GapTriple& t : geo::gap_enumeration(bound)) {
            std::ostringstream sum;
            sum << t.sum;
            rows.push_back(Json{{"n", t.n}, {"m", t.m}, {"l", t.l}, {"sum", sum.str()},
                                {"flagged", t.flagged}});
        }
        rep.add("gap enumeration", true,
                std::to_string(rows.size()) + " triples with bound " + std::to_string(bound));
        rep.attach("triples", rows);
        return rep.emit(out);
    }
    if (kind == "shioda") {
        rep.add("power-map covering identity",
                geo::shioda_cover_check() && geo::shioda_cover_check(n),
                "formal and n = " + std::to_string(n));
        return rep.emit(out);
    }

    geo::MonomialSurface surface = [&] {
        if (kind == "fermat") return geo::MonomialSurface::fermat(static_cast<int>(n));
        if (kind == "smooth-deformation")
            return geo::MonomialSurface::deformed_smooth(static_cast<int>(n));
        if (kind == "nodal-deformation")
            return geo::MonomialSurface::deformed_singular(static_cast<int>(n));
        throw Error("unknown surface kind '" + kind +
                    "' (fermat, smooth-deformation, nodal-deformation, gap, shioda)");
    }();
    auto verdict = geo::singular_locus(surface);
    const char* status = verdict.status == geo::SingStatus::Smooth ? "smooth"
                         : verdict.status == geo::SingStatus::IsolatedSingular
                             ? "isolated-singular"
                             : "unknown";
    Json points = Json::array();
    for (const geo::SingularPoint& p : verdict.points) points.push_back(p.label);
    rep.add("singular locus of " + surface.to_string(),
            verdict.status != geo::SingStatus::Unknown,
            std::string(status) +
                (verdict.points.empty() ? "" : ", " + std::to_string(verdict.points.size()) +
                                                   " points") +
                (verdict.detail.empty() ? "" : "; " + verdict.detail));
    rep.attach("points", points);
    return rep.emit(out);
}

int cmd_verdict(const Output& out, long n, long m, long l) {
    Report rep("verdict", Json{{"n", n}, {"m", m}, {"l", l}});
    geo::VerdictRecord v = geo::threshold_verdict(n, m, l);
    auto join = [](const std::vector<std::string>& tags) {
        std::string s;
        for (const std::string& t : tags) s += (s.empty() ? "" : ", ") + t;
        return s.empty() ? std::string("(none)") : s;
    };
    rep.add("meromorphic solutions", true,
            std::string(geo::existence_name(v.meromorphic)) + "; cite " +
                join(v.meromorphic_citations));
    rep.add("entire solutions", true,
            std::string(geo::existence_name(v.entire)) + "; cite " + join(v.entire_citations));
    Json record;
    record["meromorphic"] = geo::existence_name(v.meromorphic);
    record["meromorphic_citations"] = v.meromorphic_citations;
    record["entire"] = geo::existence_name(v.entire);
    record["entire_citations"] = v.entire_citations;
    rep.attach("verdict", record);
    return rep.emit(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact symbolic and numeric checks for Fermat-type functional equations"};
    app.require_subcommand(1);
    app.fallthrough();  // let global flags appear after the subcommand

    Output out;
    std::string catalog_path;
    app.add_flag("--json", out.json, "emit a JSON report");
    app.add_flag("--pretty", out.pretty, "pretty-print JSON");
    app.add_option("--catalog", catalog_path, "solution catalog fixture path");

    long n_opt = -1, m_opt = -1, l_opt = -1, bound = 12;
    int samples = 2048;
    unsigned long seed = 20260826UL;
    std::string assume, grid = "5,10,20", target, entry, kind = "fermat";
    bool with_pullback = false;

    auto* vp = app.add_subcommand("verify-paper", "run the full verification suite");
    vp->add_option("--n", n_opt, "also report thresholds specialized at this exponent");
    vp->add_option("--samples", samples, "circle samples for the numeric checks");
    vp->add_option("--seed", seed, "seed for randomized target points");

    auto* cs = app.add_subcommand("check-solution", "verify a catalog entry or fixture file");
    cs->add_option("entry", entry, "catalog entry name or fixture path")->required();
    cs->add_flag("--pullback", with_pullback, "also pull back M_xyz and xyz*Phi");

    auto* po = app.add_subcommand("pole-order", "valuations and pole thresholds");
    po->add_option("target", target, "xyzPhi | generalized | xyOverZPhi")->required();
    po->add_option("--assume", assume, "exponent assumption, e.g. n>=9");
    po->add_option("--n", n_opt, "evaluate the valuation at a concrete exponent");

    auto* oc = app.add_subcommand("ode-check", "reduction-chain and identity checks");
    oc->add_option("--n", n_opt, "specialize at n (6 or 8)");

    auto* nv = app.add_subcommand("nevanlinna", "characteristic profile for a catalog entry");
    nv->add_option("entry", entry, "catalog entry name")->required();
    nv->add_option("--grid", grid, "comma-separated radii");
    nv->add_option("--samples", samples, "circle samples per radius");

    auto* sf = app.add_subcommand("surface", "singular locus, gap enumeration, covering map");
    sf->add_option("kind", kind, "fermat | smooth-deformation | nodal-deformation | gap | shioda")
        ->required();
    sf->add_option("--n", n_opt, "surface degree / covering exponent");
    sf->add_option("--bound", bound, "enumeration bound for gap");

    auto* vd = app.add_subcommand("verdict", "decision table for exponents (n, m, l)");
    vd->add_option("n", n_opt, "largest exponent")->required();
    vd->add_option("m", m_opt, "middle exponent")->required();
    vd->add_option("l", l_opt, "smallest exponent")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (!catalog_path.empty()) setenv("FJL_CATALOG", catalog_path.c_str(), 1);

    try {
        if (vp->parsed())
            return cmd_verify_paper(out, n_opt >= 0 ? std::optional<long>(n_opt) : std::nullopt,
                                    samples, seed);
        if (cs->parsed()) return cmd_check_solution(out, entry, with_pullback);
        if (po->parsed())
            return cmd_pole_order(out, target, assume,
                                  n_opt >= 0 ? std::optional<long>(n_opt) : std::nullopt);
        if (oc->parsed())
            return cmd_ode_check(out, n_opt >= 0 ? std::optional<long>(n_opt) : std::nullopt);
        if (nv->parsed()) return cmd_nevanlinna(out, entry, grid, samples);
        if (sf->parsed()) return cmd_surface(out, kind, n_opt >= 0 ? n_opt : 9, bound);
        if (vd->parsed()) return cmd_verdict(out, n_opt, m_opt, l_opt);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
