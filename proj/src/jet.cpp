#include "fjl/jet.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace fjl::jets {

namespace {

std::mutex g_var_mutex;
std::vector<std::string> g_vars;

// Term order: lower symbol code first inside a monomial (maintained sorted);
// between monomials, the one whose first differing symbol has the lower code
// sorts first, ties broken by exponent lex order, then by length.
int jmono_cmp(const JMono& a, const JMono& b) {
    size_t k = std::min(a.size(), b.size());
    for (size_t i = 0; i < k; ++i) {
        if (!(a[i].first == b[i].first)) return a[i].first < b[i].first ? -1 : 1;
        int c = a[i].second.lex_cmp(b[i].second);
        if (c != 0) return -c;
    }
    if (a.size() != b.size()) return a.size() > b.size() ? -1 : 1;
    return 0;
}

JMono jmono_mul(const JMono& a, const JMono& b) {
    JMono out;
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            Affine e = a[i].second + b[j].second;
            if (!e.is_zero()) out.emplace_back(a[i].first, e);
            ++i, ++j;
        }
    }
    return out;
}

JPoly canonicalize(JPoly p) {
    std::sort(p.begin(), p.end(), [](const auto& x, const auto& y) {
        return jmono_cmp(x.first, y.first) < 0;
    });
    JPoly out;
    for (auto& t : p) {
        if (t.second.is_zero()) continue;
        if (!out.empty() && jmono_cmp(out.back().first, t.first) == 0) {
            out.back().second += t.second;
            if (out.back().second.is_zero()) out.pop_back();
        } else {
            out.push_back(std::move(t));
        }
    }
    return out;
}

JPoly jpoly_add(const JPoly& a, const JPoly& b) {
    JPoly r = a;
    r.insert(r.end(), b.begin(), b.end());
    return canonicalize(std::move(r));
}

JPoly jpoly_neg(JPoly a) {
    for (auto& t : a) t.second = -t.second;
    return a;
}

JPoly jpoly_mul(const JPoly& a, const JPoly& b) {
    JPoly r;
    r.reserve(a.size() * b.size());
    for (const auto& ta : a)
        for (const auto& tb : b)
            r.emplace_back(jmono_mul(ta.first, tb.first), ta.second * tb.second);
    return canonicalize(std::move(r));
}

const JPoly& jpoly_one() {
    static const JPoly one{{JMono{}, Scalar(1)}};
    return one;
}

bool jpoly_is_one(const JPoly& p) {
    return p.size() == 1 && p[0].first.empty() && p[0].second == Scalar(1);
}

Sym deriv_sym(const Sym& s) {
    switch (s.kind) {
        case Kind::Base: return {s.var, Kind::D1};
        case Kind::D1: return {s.var, Kind::D2};
        case Kind::D2: return {s.var, Kind::D3};
        case Kind::Lam1: return {s.var, Kind::Lam2};
        default:
            throw OrderOverflow("derivative would exceed jet order 3 at " + var_name(s.var));
    }
}

JPoly jpoly_derivative(const JPoly& p) {
    JPoly r;
    for (const auto& [mono, coeff] : p) {
        for (size_t i = 0; i < mono.size(); ++i) {
            const auto& [s, e] = mono[i];
            JMono rest;
            rest.reserve(mono.size() + 1);
            for (size_t j = 0; j < mono.size(); ++j) {
                if (j == i) {
                    Affine down = e - Affine(1);
                    if (!down.is_zero()) rest.emplace_back(s, down);
                } else {
                    rest.push_back(mono[j]);
                }
            }
            JMono d{{deriv_sym(s), Affine(1)}};
            r.emplace_back(jmono_mul(rest, d), coeff * Scalar(e.to_scalar()));
        }
    }
    return canonicalize(std::move(r));
}

// Pulls the largest common monomial factor out of den (and num where jets
// force it): base exponents must agree across all den terms; jet exponents
// can only shift by what every term of both polynomials carries.
void strip_common(JPoly& num, JPoly& den) {
    if (den.empty() || den[0].first.empty()) return;
    JMono shift;
    for (const auto& [s, e] : den[0].first) {
        bool everywhere_den = true;
        Affine mn = e;
        for (const auto& [mono, c] : den) {
            (void)c;
            auto it = std::find_if(mono.begin(), mono.end(),
                                   [&](const JTerm& t) { return t.first == s; });
            if (it == mono.end()) { everywhere_den = false; break; }
            if (s.kind == Kind::Base) {
                if (!(it->second == mn)) { everywhere_den = false; break; }
            } else if (it->second.c0 < mn.c0) {
                mn = it->second;
            }
        }
        if (!everywhere_den) continue;
        if (s.kind != Kind::Base) {
            // keep numerator jet exponents nonnegative
            for (const auto& [mono, c] : num) {
                (void)c;
                auto it = std::find_if(mono.begin(), mono.end(),
                                       [&](const JTerm& t) { return t.first == s; });
                long have = it == mono.end() ? 0 : it->second.c0;
                if (have < mn.c0) mn = Affine(have);
            }
        }
        if (!mn.is_zero()) shift.emplace_back(s, -mn);
    }
    if (shift.empty()) return;
    for (auto& t : num) t.first = jmono_mul(t.first, shift);
    for (auto& t : den) t.first = jmono_mul(t.first, shift);
}

}  // namespace

int declare_var(const std::string& name) {
    std::lock_guard<std::mutex> lock(g_var_mutex);
    for (size_t i = 0; i < g_vars.size(); ++i)
        if (g_vars[i] == name) return static_cast<int>(i);
    g_vars.push_back(name);
    return static_cast<int>(g_vars.size() - 1);
}

int var_id(const std::string& name) {
    std::lock_guard<std::mutex> lock(g_var_mutex);
    for (size_t i = 0; i < g_vars.size(); ++i)
        if (g_vars[i] == name) return static_cast<int>(i);
    throw Error("unknown jet variable: " + name);
}

std::string var_name(int id) {
    std::lock_guard<std::mutex> lock(g_var_mutex);
    if (id < 0 || id >= static_cast<int>(g_vars.size())) throw Error("bad jet variable id");
    return g_vars[id];
}

JetExpr::JetExpr(const Scalar& c) : den_(jpoly_one()) {
    if (!c.is_zero()) num_.push_back({JMono{}, c});
}

JetExpr::JetExpr(JPoly num, JPoly den) {
    num_ = canonicalize(std::move(num));
    den_ = canonicalize(std::move(den));
    if (den_.empty()) throw ZeroDenominator("jet expression with zero denominator");
    if (num_.empty()) {
        den_ = jpoly_one();
        return;
    }
    strip_common(num_, den_);
    Scalar lead = den_[0].second;
    if (!(lead == Scalar(1))) {
        Scalar inv = lead.inverse();
        for (auto& t : num_) t.second *= inv;
        for (auto& t : den_) t.second *= inv;
    }
}

JetExpr JetExpr::var(int v) {
    return JetExpr(JPoly{{JMono{{Sym{static_cast<std::uint16_t>(v), Kind::Base}, Affine(1)}},
                          Scalar(1)}},
                   jpoly_one());
}

JetExpr JetExpr::jet(int v, int order) {
    if (order < 1 || order > 3) throw OrderOverflow("jet order out of range");
    Kind k = order == 1 ? Kind::D1 : order == 2 ? Kind::D2 : Kind::D3;
    return JetExpr(JPoly{{JMono{{Sym{static_cast<std::uint16_t>(v), k}, Affine(1)}}, Scalar(1)}},
                   jpoly_one());
}

JetExpr JetExpr::lam(int v, int which) {
    if (which < 1 || which > 2) throw Error("log-jet index out of range");
    Kind k = which == 1 ? Kind::Lam1 : Kind::Lam2;
    return JetExpr(JPoly{{JMono{{Sym{static_cast<std::uint16_t>(v), k}, Affine(1)}}, Scalar(1)}},
                   jpoly_one());
}

JetExpr JetExpr::var_pow(int v, const Affine& e) {
    if (e.is_zero()) return JetExpr(1);
    return JetExpr(JPoly{{JMono{{Sym{static_cast<std::uint16_t>(v), Kind::Base}, e}}, Scalar(1)}},
                   jpoly_one());
}

bool JetExpr::den_is_one() const { return jpoly_is_one(den_); }

JetExpr JetExpr::operator+(const JetExpr& o) const {
    if (den_ == o.den_) return JetExpr(jpoly_add(num_, o.num_), den_);
    return JetExpr(jpoly_add(jpoly_mul(num_, o.den_), jpoly_mul(o.num_, den_)),
                   jpoly_mul(den_, o.den_));
}

JetExpr JetExpr::operator-(const JetExpr& o) const { return *this + (-o); }

JetExpr JetExpr::operator-() const {
    JetExpr r = *this;
    r.num_ = jpoly_neg(std::move(r.num_));
    return r;
}

JetExpr JetExpr::operator*(const JetExpr& o) const {
    return JetExpr(jpoly_mul(num_, o.num_), jpoly_mul(den_, o.den_));
}

JetExpr JetExpr::operator/(const JetExpr& o) const { return *this * o.inverse(); }

JetExpr JetExpr::inverse() const {
    if (is_zero()) throw ZeroDenominator("inverse of zero jet expression");
    return JetExpr(den_, num_);
}

JetExpr JetExpr::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    JetExpr r(1), b = *this;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

JetExpr JetExpr::pow_affine(const Affine& e) const {
    if (e.is_concrete()) return pow(e.c0);
    if (num_.size() != 1 || !den_is_one())
        throw Error("symbolic power of a non-monomial expression");
    if (!(num_[0].second == Scalar(1)))
        throw Error("symbolic power of a monomial with non-unit coefficient");
    JMono mono;
    for (const auto& [s, ex] : num_[0].first) {
        Affine r = ex.times(e);
        if (s.kind != Kind::Base && !r.is_concrete())
            throw Error("symbolic exponent on a jet symbol");
        if (!r.is_zero()) mono.emplace_back(s, r);
    }
    return JetExpr(JPoly{{mono, Scalar(1)}}, jpoly_one());
}

bool JetExpr::operator==(const JetExpr& o) const {
    return jpoly_add(jpoly_mul(num_, o.den_), jpoly_neg(jpoly_mul(o.num_, den_))).empty();
}

JetExpr JetExpr::derivative() const {
    JPoly dn = jpoly_derivative(num_);
    if (den_is_one()) return JetExpr(std::move(dn), jpoly_one());
    JPoly dd = jpoly_derivative(den_);
    return JetExpr(jpoly_add(jpoly_mul(dn, den_), jpoly_neg(jpoly_mul(num_, dd))),
                   jpoly_mul(den_, den_));
}

JetExpr JetExpr::substitute(const std::map<Sym, JetExpr>& images) const {
    auto sub_poly = [&](const JPoly& p) {
        JetExpr acc(0);
        for (const auto& [mono, coeff] : p) {
            JetExpr term{coeff};
            for (const auto& [s, e] : mono) {
                auto it = images.find(s);
                if (it == images.end()) {
                    term *= JetExpr(JPoly{{JMono{{s, e}}, Scalar(1)}}, jpoly_one());
                } else {
                    term *= it->second.pow_affine(e);
                }
            }
            acc += term;
        }
        return acc;
    };
    return sub_poly(num_) / sub_poly(den_);
}

std::map<Sym, JetExpr> JetExpr::chart_map(const std::map<int, JetExpr>& base_images,
                                          int max_order) {
    std::map<Sym, JetExpr> m;
    for (const auto& [v, img] : base_images) {
        auto u = static_cast<std::uint16_t>(v);
        m[{u, Kind::Base}] = img;
        JetExpr d = img;
        for (int k = 1; k <= max_order; ++k) {
            d = d.derivative();
            Kind kind = k == 1 ? Kind::D1 : k == 2 ? Kind::D2 : Kind::D3;
            m[{u, kind}] = d;
        }
    }
    return m;
}

bool JetExpr::contains(const Sym& s) const {
    auto in = [&](const JPoly& p) {
        for (const auto& [mono, c] : p) {
            (void)c;
            for (const auto& t : mono)
                if (t.first == s) return true;
        }
        return false;
    };
    return in(num_) || in(den_);
}

int JetExpr::max_jet_order(int v) const {
    int best = 0;
    auto scan = [&](const JPoly& p) {
        for (const auto& [mono, c] : p) {
            (void)c;
            for (const auto& [s, e] : mono) {
                (void)e;
                if (v >= 0 && s.var != v) continue;
                int ord = 0;
                if (s.kind == Kind::D1) ord = 1;
                else if (s.kind == Kind::D2) ord = 2;
                else if (s.kind == Kind::D3) ord = 3;
                best = std::max(best, ord);
            }
        }
    };
    scan(num_);
    scan(den_);
    return best;
}

namespace {

Affine min_base_exp(const JPoly& p, int v, const Assumptions& asms) {
    Sym target{static_cast<std::uint16_t>(v), Kind::Base};
    bool have = false;
    Affine best;
    for (const auto& [mono, c] : p) {
        (void)c;
        Affine e(0);
        for (const auto& t : mono)
            if (t.first == target) e = t.second;
        if (!have) {
            best = e;
            have = true;
            continue;
        }
        switch (affine_cmp(e, best, asms)) {
            case Cmp::Less: best = e; break;
            case Cmp::Incomparable:
                throw IncomparableExponents("cannot order exponents " + e.to_string() + " and " +
                                            best.to_string() + " under the given assumptions");
            default: break;
        }
    }
    return best;
}

}  // namespace

Affine JetExpr::valuation(int v, const Assumptions& asms) const {
    if (is_zero()) throw ZeroExpression("valuation of the zero expression");
    return min_base_exp(num_, v, asms) - min_base_exp(den_, v, asms);
}

std::pair<bool, JetExpr> JetExpr::log_normal_form(int v, const Assumptions& asms) const {
    auto u = static_cast<std::uint16_t>(v);
    if (contains({u, Kind::D3}))
        throw OrderOverflow("log normal form is only defined through jet order 2");
    JetExpr l1 = lam(v, 1), l2 = lam(v, 2), base = var(v);
    std::map<Sym, JetExpr> m{
        {{u, Kind::D1}, base * l1},
        {{u, Kind::D2}, base * (l2 + l1 * l1)},
    };
    JetExpr normal = substitute(m);
    if (normal.is_zero()) return {true, normal};
    Cmp c = affine_cmp(normal.valuation(v, asms), Affine(0), asms);
    if (c == Cmp::Incomparable)
        throw IncomparableExponents("valuation sign at " + var_name(v) +
                                    " is undetermined under the given assumptions");
    return {c != Cmp::Less, normal};
}

JetExpr JetExpr::subst_param(int scalar_gen, long value) const {
    auto sub_poly = [&](const JPoly& p) {
        JPoly out;
        for (const auto& [mono, coeff] : p) {
            JMono m;
            for (auto [s, e] : mono) {
                if (scalar_gen == GEN_N) e = Affine(e.c0 + e.cn * value, 0, e.cm, e.cl);
                else if (scalar_gen == GEN_M) e = Affine(e.c0 + e.cm * value, e.cn, 0, e.cl);
                else if (scalar_gen == GEN_L) e = Affine(e.c0 + e.cl * value, e.cn, e.cm, 0);
                if (!e.is_zero()) m.emplace_back(s, e);
            }
            out.emplace_back(std::move(m), coeff.subst_param(scalar_gen, Rat(value)));
        }
        return out;
    };
    return JetExpr(sub_poly(num_), sub_poly(den_));
}

JetExpr JetExpr::substitute_power(int v, int scalar_gen, const JetExpr& repl) const {
    Sym target{static_cast<std::uint16_t>(v), Kind::Base};
    auto coeff_of = [&](const Affine& e) {
        if (scalar_gen == GEN_N) return e.cn;
        if (scalar_gen == GEN_M) return e.cm;
        return e.cl;
    };
    auto sub_poly = [&](const JPoly& p) {
        JetExpr acc(0);
        for (const auto& [mono, coeff] : p) {
            JetExpr term{coeff};
            for (const auto& [s, e] : mono) {
                if (s == target && coeff_of(e) != 0) {
                    long k = coeff_of(e);
                    Affine rest = e;
                    if (scalar_gen == GEN_N) rest.cn = 0;
                    else if (scalar_gen == GEN_M) rest.cm = 0;
                    else rest.cl = 0;
                    if (!rest.is_zero())
                        term *= JetExpr(JPoly{{JMono{{s, rest}}, Scalar(1)}}, jpoly_one());
                    term *= repl.pow(k);
                } else {
                    term *= JetExpr(JPoly{{JMono{{s, e}}, Scalar(1)}}, jpoly_one());
                }
            }
            acc += term;
        }
        return acc;
    };
    return sub_poly(num_) / sub_poly(den_);
}

namespace {

std::string sym_to_string(const Sym& s, bool tex) {
    std::string v = var_name(s.var);
    switch (s.kind) {
        case Kind::Base: return v;
        case Kind::D1: return tex ? "d" + v : "d(" + v + ")";
        case Kind::D2: return tex ? "d^2" + v : "d2(" + v + ")";
        case Kind::D3: return tex ? "d^3" + v : "d3(" + v + ")";
        case Kind::Lam1: return tex ? "\\lambda_1(" + v + ")" : "lam1(" + v + ")";
        case Kind::Lam2: return tex ? "\\lambda_2(" + v + ")" : "lam2(" + v + ")";
    }
    return "?";
}

std::string exp_to_string(const Affine& e, bool tex) {
    std::string body = e.to_string();
    if (tex) return "^{" + body + "}";
    if (e.is_concrete() && e.c0 > 0) return "^" + body;
    return "^(" + body + ")";
}

bool scalar_needs_parens(const std::string& s) {
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '+' || c == '/' || c == ' ' || (c == '-' && i > 0)) return true;
    }
    return false;
}

}  // namespace

std::string poly_to_string(const JPoly& p, bool tex) {
    if (p.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [mono, coeff] : p) {
        std::string cs = tex ? coeff.to_tex() : coeff.to_string();
        bool neg = cs.size() > 1 && cs[0] == '-' && !scalar_needs_parens(cs.substr(1));
        if (neg) cs = cs.substr(1);
        if (first) {
            if (neg) out << "-";
        } else {
            out << (neg ? " - " : " + ");
        }
        first = false;
        bool unit = cs == "1";
        if (scalar_needs_parens(cs)) cs = "(" + cs + ")";
        if (unit && mono.empty()) {
            out << "1";
            continue;
        }
        bool lead = true;
        if (!unit) {
            out << cs;
            lead = false;
        }
        for (const auto& [s, e] : mono) {
            if (!lead) out << (tex ? " " : "*");
            lead = false;
            out << sym_to_string(s, tex);
            if (!(e == Affine(1))) out << exp_to_string(e, tex);
        }
    }
    return out.str();
}

std::string JetExpr::to_string() const {
    if (den_is_one()) return poly_to_string(num_, false);
    std::string n = poly_to_string(num_, false);
    std::string d = poly_to_string(den_, false);
    if (num_.size() > 1) n = "(" + n + ")";
    if (den_.size() > 1 || den_[0].first.size() > 1 || !(den_[0].second == Scalar(1)))
        d = "(" + d + ")";
    return n + "/" + d;
}

std::string JetExpr::to_tex() const {
    if (den_is_one()) return poly_to_string(num_, true);
    return "\\frac{" + poly_to_string(num_, true) + "}{" + poly_to_string(den_, true) + "}";
}

JetExpr dee2(int v, const Scalar& kappa) {
    return JetExpr::jet(v, 2) +
           (JetExpr(kappa) - JetExpr(1)) * JetExpr::jet(v, 1).pow(2) / JetExpr::var(v);
}

}  // namespace fjl::jets
