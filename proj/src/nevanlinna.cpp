#include "fjl/nevanlinna.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fjl::nev {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Roots of a complex polynomial (ascending coefficients) via the companion
/// matrix.  Trailing near-zero leading coefficients are stripped relative to
/// the largest coefficient.
std::vector<Cx> poly_roots(std::vector<Cx> coeffs) {
    double scale = 0.0;
    for (const Cx& c : coeffs) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return {};
    while (!coeffs.empty() && std::abs(coeffs.back()) < 1e-13 * scale) coeffs.pop_back();
    if (coeffs.size() <= 1) return {};
    int deg = static_cast<int>(coeffs.size()) - 1;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    for (int k = 0; k < deg; ++k) {
        comp(k, deg - 1) = -coeffs[k] / coeffs[deg];
        if (k + 1 < deg) comp(k + 1, k) = 1.0;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, /*computeEigenvectors=*/false);
    std::vector<Cx> roots;
    roots.reserve(deg);
    for (int k = 0; k < deg; ++k) roots.push_back(solver.eigenvalues()(k));
    return roots;
}

/// Clusters numerically coincident roots into (location, multiplicity) pairs.
std::vector<ZeroPole> cluster(std::vector<Cx> roots) {
    std::vector<ZeroPole> out;
    for (const Cx& r : roots) {
        bool merged = false;
        for (ZeroPole& zp : out) {
            double tol = 1e-6 * std::max(1.0, std::abs(zp.location));
            if (std::abs(zp.location - r) < tol) {
                ++zp.mult;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back({r, 1});
    }
    return out;
}

/// Removes common root content between a fraction's zero and pole lists.
void cancel_common(std::vector<ZeroPole>& zeros, std::vector<ZeroPole>& poles) {
    for (ZeroPole& z : zeros) {
        for (ZeroPole& p : poles) {
            double tol = 1e-6 * std::max(1.0, std::abs(z.location));
            if (p.mult > 0 && z.mult > 0 && std::abs(z.location - p.location) < tol) {
                int c = std::min(z.mult, p.mult);
                z.mult -= c;
                p.mult -= c;
            }
        }
    }
    auto prune = [](std::vector<ZeroPole>& v) {
        v.erase(std::remove_if(v.begin(), v.end(), [](const ZeroPole& zp) { return zp.mult == 0; }),
                v.end());
    };
    prune(zeros);
    prune(poles);
}

std::vector<Cx> conv(const std::vector<Cx>& a, const std::vector<Cx>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Cx> out(a.size() + b.size() - 1, Cx(0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::map<int, Cx> lconv(const std::map<int, Cx>& a, const std::map<int, Cx>& b) {
    std::map<int, Cx> out;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) out[i + j] += x * y;
    return out;
}

std::vector<Cx> vec_sub(std::vector<Cx> a, const std::vector<Cx>& b, const Cx& scale) {
    if (a.size() < b.size()) a.resize(b.size(), Cx(0.0));
    for (std::size_t k = 0; k < b.size(); ++k) a[k] -= scale * b[k];
    return a;
}

std::map<int, Cx> map_sub(std::map<int, Cx> a, const std::map<int, Cx>& b, const Cx& scale) {
    for (const auto& [k, v] : b) a[k] -= scale * v;
    return a;
}

bool map_is_zero(const std::map<int, Cx>& m) {
    double scale = 0.0;
    for (const auto& [k, v] : m) {
        (void)k;
        scale = std::max(scale, std::abs(v));
    }
    return scale < 1e-300;
}

/// Laurent map -> ascending coefficient vector and the power-of-u shift.
std::pair<std::vector<Cx>, int> laurent_to_poly(const std::map<int, Cx>& m) {
    if (m.empty()) return {{}, 0};
    int lo = m.begin()->first, hi = m.rbegin()->first;
    std::vector<Cx> out(hi - lo + 1, Cx(0.0));
    for (const auto& [k, v] : m) out[k - lo] = v;
    return {out, lo};
}

}  // namespace

MeroFunction MeroFunction::rational(std::vector<Cx> num, std::vector<Cx> den) {
    MeroFunction f;
    f.kind_ = Kind::RationalZ;
    f.rnum_ = std::move(num);
    f.rden_ = std::move(den);
    bool den_zero = true;
    for (const Cx& c : f.rden_)
        if (std::abs(c) > 0.0) den_zero = false;
    if (f.rden_.empty() || den_zero)
        throw UnsupportedFunctionClass("rational model with zero denominator");
    return f;
}

MeroFunction MeroFunction::exp_poly(std::map<int, Cx> num, std::map<int, Cx> den, Cx lambda) {
    MeroFunction f;
    f.kind_ = Kind::ExpPoly;
    f.enum_ = std::move(num);
    f.eden_ = std::move(den);
    f.lambda_ = lambda;
    if (map_is_zero(f.eden_))
        throw UnsupportedFunctionClass("exponential model with zero denominator");
    if (lambda == Cx(0.0)) throw UnsupportedFunctionClass("exponential model with lambda = 0");
    return f;
}

MeroFunction MeroFunction::from_component(const fun::FunElem& f) {
    const fun::RingSpec& spec = f.spec();
    auto scalar_at = [](const Scalar& c) { return c.eval_numeric({}); };
    switch (spec.kind) {
        case fun::RingKind::Poly: {
            // alpha and beta both evaluate to z
            auto poly_of = [&](const fun::FPoly& p) {
                std::vector<Cx> out;
                for (const auto& [m, c] : p) {
                    std::size_t deg = static_cast<std::size_t>(m[fun::SYM_ALPHA] + m[fun::SYM_BETA]);
                    if (out.size() <= deg) out.resize(deg + 1, Cx(0.0));
                    out[deg] += scalar_at(c);
                }
                return out;
            };
            return rational(poly_of(f.num()), poly_of(f.den()));
        }
        case fun::RingKind::LaurentExp: {
            auto map_of = [&](const fun::FPoly& p) {
                std::map<int, Cx> out;
                for (const auto& [m, c] : p) out[m[fun::SYM_T]] += scalar_at(c);
                return out;
            };
            return exp_poly(map_of(f.num()), map_of(f.den()),
                            Cx(1.0 / static_cast<double>(spec.exp_scale), 0.0));
        }
        case fun::RingKind::Trig: {
            // s = (u - u^{-1}) / 2i, c = (u + u^{-1}) / 2 with u = e^{iz}
            const std::map<int, Cx> su = {{1, Cx(0.0, -0.5)}, {-1, Cx(0.0, 0.5)}};
            const std::map<int, Cx> cu = {{1, Cx(0.5, 0.0)}, {-1, Cx(0.5, 0.0)}};
            auto map_of = [&](const fun::FPoly& p) {
                std::map<int, Cx> out;
                for (const auto& [m, c] : p) {
                    std::map<int, Cx> term = {{0, scalar_at(c)}};
                    for (int k = 0; k < m[fun::SYM_S]; ++k) term = lconv(term, su);
                    for (int k = 0; k < m[fun::SYM_C]; ++k) term = lconv(term, cu);
                    for (const auto& [e, v] : term) out[e] += v;
                }
                return out;
            };
            return exp_poly(map_of(f.num()), map_of(f.den()), Cx(0.0, 1.0));
        }
    }
    throw UnsupportedFunctionClass("unknown ring kind");
}

bool MeroFunction::is_constant() const {
    if (kind_ == Kind::RationalZ) {
        auto deg = [](const std::vector<Cx>& p) {
            int d = -1;
            double scale = 0.0;
            for (const Cx& c : p) scale = std::max(scale, std::abs(c));
            for (int k = 0; k < static_cast<int>(p.size()); ++k)
                if (std::abs(p[k]) > 1e-13 * scale) d = k;
            return d;
        };
        return deg(rnum_) <= 0 && deg(rden_) <= 0;
    }
    // ExpPoly: constant iff numerator and denominator are (numerically)
    // single monomials in u with the same exponent, or the numerator is zero.
    auto single_exp = [](const std::map<int, Cx>& m, int& k_out) {
        double scale = 0.0;
        for (const auto& [k, v] : m) {
            (void)k;
            scale = std::max(scale, std::abs(v));
        }
        int found = 0;
        for (const auto& [k, v] : m) {
            if (scale == 0.0 || std::abs(v) <= 1e-13 * scale) continue;
            if (found++ == 0) k_out = k;
        }
        return found;  // number of significant exponents
    };
    int kn = 0, kd = 0;
    int nn = single_exp(enum_, kn);
    int nd = single_exp(eden_, kd);
    if (nn == 0) return true;
    return nn == 1 && nd == 1 && kn == kd;
}

Cx MeroFunction::eval(const Cx& z) const {
    if (kind_ == Kind::RationalZ) {
        auto horner = [&](const std::vector<Cx>& p) {
            Cx acc(0.0);
            for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
            return acc;
        };
        return horner(rnum_) / horner(rden_);
    }
    Cx u = std::exp(lambda_ * z);
    auto at = [&](const std::map<int, Cx>& m) {
        Cx acc(0.0);
        for (const auto& [k, v] : m) acc += v * std::pow(u, k);
        return acc;
    };
    return at(enum_) / at(eden_);
}

MeroFunction MeroFunction::derivative() const {
    if (kind_ == Kind::RationalZ) {
        auto d = [](const std::vector<Cx>& p) {
            std::vector<Cx> out;
            for (std::size_t k = 1; k < p.size(); ++k)
                out.push_back(static_cast<double>(k) * p[k]);
            return out;
        };
        std::vector<Cx> top = vec_sub(conv(d(rnum_), rden_), conv(rnum_, d(rden_)), Cx(1.0));
        return rational(std::move(top), conv(rden_, rden_));
    }
    auto d = [&](const std::map<int, Cx>& m) {
        std::map<int, Cx> out;
        for (const auto& [k, v] : m)
            if (k != 0) out[k] = lambda_ * static_cast<double>(k) * v;
        return out;
    };
    std::map<int, Cx> top = map_sub(lconv(d(enum_), eden_), lconv(enum_, d(eden_)), Cx(1.0));
    return exp_poly(std::move(top), lconv(eden_, eden_), lambda_);
}

MeroFunction MeroFunction::operator/(const MeroFunction& o) const {
    if (kind_ != o.kind_)
        throw UnsupportedFunctionClass("mixed z-rational and exponential models");
    if (kind_ == Kind::RationalZ)
        return rational(conv(rnum_, o.rden_), conv(rden_, o.rnum_));
    if (std::abs(lambda_ - o.lambda_) > 1e-12)
        throw UnsupportedFunctionClass("mixed exponential lattices");
    return exp_poly(lconv(enum_, o.eden_), lconv(eden_, o.enum_), lambda_);
}

MeroFunction MeroFunction::minus_const(const Cx& a) const {
    if (kind_ == Kind::RationalZ) return rational(vec_sub(rnum_, rden_, a), rden_);
    return exp_poly(map_sub(enum_, eden_, a), eden_, lambda_);
}

MeroFunction MeroFunction::reciprocal() const {
    if (kind_ == Kind::RationalZ) return rational(rden_, rnum_);
    return exp_poly(eden_, enum_, lambda_);
}

std::vector<ZeroPole> MeroFunction::zeros_in(double r) const {
    std::vector<ZeroPole> zeros, poles;
    double rcap = r * (1.0 + 1e-12);
    if (kind_ == Kind::RationalZ) {
        zeros = cluster(poly_roots(rnum_));
        poles = cluster(poly_roots(rden_));
        cancel_common(zeros, poles);
    } else {
        auto lattice = [&](const std::map<int, Cx>& m) {
            auto [coeffs, shift] = laurent_to_poly(m);
            (void)shift;  // u = 0 is never attained by e^{lambda z}
            std::vector<ZeroPole> pts;
            for (const ZeroPole& root : cluster(poly_roots(coeffs))) {
                if (std::abs(root.location) < 1e-300) continue;
                Cx logr = std::log(root.location);
                double kmax = (std::abs(lambda_) * rcap + std::abs(logr)) / kTwoPi + 2.0;
                for (long k = -static_cast<long>(kmax); k <= static_cast<long>(kmax); ++k) {
                    Cx z = (logr + Cx(0.0, kTwoPi * static_cast<double>(k))) / lambda_;
                    if (std::abs(z) <= rcap) pts.push_back({z, root.mult});
                }
            }
            return pts;
        };
        zeros = lattice(enum_);
        poles = lattice(eden_);
        cancel_common(zeros, poles);
    }
    std::vector<ZeroPole> out;
    for (const ZeroPole& z : zeros)
        if (std::abs(z.location) <= rcap) out.push_back(z);
    return out;
}

std::vector<ZeroPole> MeroFunction::poles_in(double r) const { return reciprocal().zeros_in(r); }

Proximity proximity(const MeroFunction& fn, double r, int samples) {
    if (r <= 0.0 || samples < 8) throw Error("proximity needs r > 0 and at least 8 samples");
    std::vector<ZeroPole> poles = fn.poles_in(r * (1.0 + 1e-3));
    for (const ZeroPole& p : poles)
        if (std::abs(std::abs(p.location) - r) < 1e-8 * std::max(1.0, r)) throw PoleOnCircle();

    double r_used = r;
    for (int attempt = 0; attempt < 4; ++attempt) {
        bool near_pole = false;
        for (int j = 0; j < samples && !near_pole; ++j) {
            double th = kTwoPi * j / samples;
            Cx z = std::polar(r_used, th);
            for (const ZeroPole& p : poles)
                if (std::abs(z - p.location) < 1e-7 * std::max(1.0, r)) near_pole = true;
        }
        if (!near_pole) break;
        r_used *= 1.0 + 1e-6;
    }

    auto average = [&](int n) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            double th = kTwoPi * j / n;
            double a = std::abs(fn.eval(std::polar(r_used, th)));
            if (std::isfinite(a) && a > 1.0) acc += std::log(a);
        }
        return acc / n;
    };
    double full = average(samples);
    double half = average(samples / 2);
    return {full, std::abs(full - half), r_used};
}

double counting(const MeroFunction& fn, double r, std::optional<Cx> target) {
    if (r <= 0.0) throw Error("counting needs r > 0");
    std::vector<ZeroPole> pts =
        target ? fn.minus_const(*target).zeros_in(r) : fn.poles_in(r);
    double acc = 0.0;
    for (const ZeroPole& p : pts) {
        double d = std::abs(p.location);
        if (d < 1e-12)
            acc += p.mult * std::log(r);
        else if (d <= r)
            acc += p.mult * std::log(r / d);
    }
    return acc;
}

CharacteristicRow characteristic(const MeroFunction& fn, double r, int samples) {
    Proximity m = proximity(fn, r, samples);
    double n = counting(fn, m.r_used);
    return {r, m.r_used, m.value, n, m.value + n, m.error};
}

NevanlinnaProfile profile(const MeroFunction& fn, const std::vector<double>& grid, int samples,
                          const std::string& label) {
    NevanlinnaProfile out;
    out.label = label;
    out.samples = samples;
    for (double r : grid) out.rows.push_back(characteristic(fn, r, samples));
    return out;
}

ComparisonReport characteristic_profile(const sol::SolutionEntry& entry,
                                        const std::vector<double>& grid, int samples) {
    MeroFunction mf = MeroFunction::from_component(entry.f);
    MeroFunction mg = MeroFunction::from_component(entry.g);
    MeroFunction mh = MeroFunction::from_component(entry.h);
    ComparisonReport rep;
    rep.f = profile(mf, grid, samples, entry.name + ".f");
    rep.g = profile(mg, grid, samples, entry.name + ".g");
    rep.h = profile(mh, grid, samples, entry.name + ".h");

    auto ratio = [](double a, double b) {
        if (std::abs(b) < 1e-12) return std::abs(a) < 1e-12 ? 1.0 : std::numeric_limits<double>::infinity();
        return a / b;
    };
    double c_needed = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        double tf = rep.f.rows[k].t, tg = rep.g.rows[k].t, th = rep.h.rows[k].t;
        rep.ratio_fg.push_back(ratio(tf, tg));
        rep.ratio_fh.push_back(ratio(tf, th));
        rep.ratio_gh.push_back(ratio(tg, th));
        // Cartan characteristic of [f, g, h, 1] via the max formula.
        double r_used = rep.f.rows[k].r_used;
        double acc = 0.0;
        for (int j = 0; j < samples; ++j) {
            Cx z = std::polar(r_used, kTwoPi * j / samples);
            double m = 1.0;
            for (const MeroFunction* fn : {&mf, &mg, &mh}) {
                double a = std::abs(fn->eval(z));
                if (std::isfinite(a)) m = std::max(m, a);
            }
            acc += std::log(m);
        }
        double t_cartan = acc / samples;
        double sum = tf + tg + th;
        c_needed = std::max(c_needed, sum / 3.0 - t_cartan);
        c_needed = std::max(c_needed, t_cartan - sum);
    }
    rep.sandwich_constant = c_needed;
    if (!grid.empty()) rep.fg_within_5pc = std::abs(rep.ratio_fg.back() - 1.0) <= 0.05;
    return rep;
}

LogDerivReport logderiv_check(const MeroFunction& fn, const std::vector<double>& grid,
                              int samples, double bound) {
    MeroFunction ld = fn.derivative() / fn;
    LogDerivReport rep;
    for (double r : grid) {
        Proximity m = proximity(ld, r, samples);
        CharacteristicRow row = characteristic(fn, r, samples);
        rep.rows.push_back({r, m.value, std::log(std::max(1.0 + 1e-9, r * row.t))});
    }
    if (!rep.rows.empty()) {
        const LogDerivRow& tail = rep.rows.back();
        if (tail.log_rt > 1e-6 && tail.m_logderiv / tail.log_rt > bound) rep.flagged = true;
    }
    return rep;
}

double fmt_deviation(const MeroFunction& fn, const Cx& a, const std::vector<double>& grid,
                     int samples) {
    MeroFunction diff = fn.minus_const(a);
    MeroFunction shifted = diff.reciprocal();

    // Jensen's formula gives T(r, 1/(f-a)) = T(r, f-a) - log|c| exactly,
    // where c is the leading Laurent coefficient of f - a at z = 0.  The
    // bounded quantity is therefore the difference with that constant
    // removed.  Estimate log|c| from small-circle averages of log|f-a|:
    // avg(rho) = log|c| + ord * log(rho), so two radii determine both.
    auto small_avg = [&](double rho) {
        double acc = 0.0;
        const int k = 16;
        for (int j = 0; j < k; ++j)
            acc += std::log(std::abs(diff.eval(std::polar(rho, kTwoPi * j / k))));
        return acc / k;
    };
    double a1 = small_avg(1e-4), a2 = small_avg(2e-4);
    double ord = std::round((a2 - a1) / std::log(2.0));
    double log_c = a1 - ord * std::log(1e-4);

    double worst = 0.0;
    for (double r : grid) {
        CharacteristicRow tf = characteristic(fn, r, samples);
        CharacteristicRow ts = characteristic(shifted, r, samples);
        worst = std::max(worst, std::abs(ts.t - tf.t + log_c));
    }
    return worst;
}

}  // namespace fjl::nev
