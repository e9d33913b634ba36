#include "fjl/funring.hpp"

#include <sstream>

namespace fjl::fun {

namespace {

const FMono kUnit = {0, 0, 0, 0, 0};

void add_term(FPoly& p, const FMono& m, const Scalar& c) {
    auto it = p.find(m);
    if (it == p.end()) {
        if (!c.is_zero()) p.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
}

FPoly poly_add(const FPoly& a, const FPoly& b) {
    FPoly out = a;
    for (const auto& [m, c] : b) add_term(out, m, c);
    return out;
}

FPoly poly_neg(const FPoly& a) {
    FPoly out;
    for (const auto& [m, c] : a) out.emplace(m, -c);
    return out;
}

FPoly poly_mul(const FPoly& a, const FPoly& b) {
    FPoly out;
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            FMono m;
            for (int k = 0; k < SYM_COUNT; ++k) m[k] = ma[k] + mb[k];
            add_term(out, m, ca * cb);
        }
    }
    return out;
}

FPoly poly_scale(const FPoly& a, const Scalar& c) {
    FPoly out;
    if (c.is_zero()) return out;
    for (const auto& [m, k] : a) out.emplace(m, k * c);
    return out;
}

/// Rewrites s^e with e >= 2 using s^2 -> 1 - c^2 until every term has s-exponent <= 1.
FPoly reduce_trig(FPoly p) {
    bool changed = true;
    while (changed) {
        changed = false;
        FPoly out;
        for (const auto& [m, c] : p) {
            if (m[SYM_S] >= 2) {
                FMono lo = m;
                lo[SYM_S] -= 2;
                FMono hi = lo;
                hi[SYM_C] += 2;
                add_term(out, lo, c);
                add_term(out, hi, -c);
                changed = true;
            } else {
                add_term(out, m, c);
            }
        }
        p = std::move(out);
    }
    return p;
}

void check_symbols(const RingSpec& spec, const FPoly& p) {
    for (const auto& [m, c] : p) {
        (void)c;
        for (int k = 0; k < SYM_COUNT; ++k) {
            if (m[k] != 0 && !symbol_allowed(spec, k))
                throw UnsupportedFunctionClass("symbol '" + symbol_name(k) +
                                               "' is not a member of ring " + spec.to_string());
            if (m[k] < 0 && k != SYM_T)
                throw UnsupportedFunctionClass("negative exponent on non-unit symbol '" +
                                               symbol_name(k) + "'");
        }
    }
}

std::string fun_gen_name(int gen) {
    // The trig symbol s shadows the sqrt(3) generator in the catalog grammar,
    // so coefficients spell that generator out.
    if (gen == GEN_S) return "sqrt3";
    return gens::info(gen).name;
}

std::string fun_poly_to_string(const Poly& p) {
    if (p.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [mono, c] : p) {
        Rat coeff = c;
        if (first) {
            if (coeff < 0) {
                out << "-";
                coeff = -coeff;
            }
        } else {
            out << (coeff < 0 ? " - " : " + ");
            if (coeff < 0) coeff = -coeff;
        }
        first = false;
        bool need_coeff = (coeff != 1) || mono.empty();
        if (need_coeff) {
            out << numerator(coeff);
            if (denominator(coeff) != 1) out << "/" << denominator(coeff);
        }
        bool first_factor = !need_coeff;
        for (const auto& [gen, e] : mono) {
            if (!first_factor || need_coeff) out << "*";
            first_factor = false;
            out << fun_gen_name(gen);
            if (e != 1) out << "^" << e;
        }
    }
    return out.str();
}

std::string fun_scalar_to_string(const Scalar& c) {
    bool den_one = c.den().size() == 1 && c.den()[0].first.empty() && c.den()[0].second == 1;
    if (den_one) return fun_poly_to_string(c.num());
    return "(" + fun_poly_to_string(c.num()) + ")/(" + fun_poly_to_string(c.den()) + ")";
}

bool coeff_needs_parens(const std::string& s) {
    for (std::size_t k = 0; k < s.size(); ++k) {
        char ch = s[k];
        if (ch == '+' || ch == ' ') return true;
        if (ch == '-' && k > 0) return true;
    }
    return false;
}

}  // namespace

std::string RingSpec::to_string() const {
    switch (kind) {
        case RingKind::Poly:
            return "poly";
        case RingKind::LaurentExp:
            return "laurent " + std::to_string(exp_scale);
        case RingKind::Trig:
            return "trig";
    }
    return "?";
}

std::string symbol_name(int sym) {
    static const char* names[SYM_COUNT] = {"alpha", "beta", "t", "s", "c"};
    return names[sym];
}

bool symbol_allowed(const RingSpec& spec, int sym) {
    switch (spec.kind) {
        case RingKind::Poly:
            return sym == SYM_ALPHA || sym == SYM_BETA;
        case RingKind::LaurentExp:
            return sym == SYM_T;
        case RingKind::Trig:
            return sym == SYM_S || sym == SYM_C;
    }
    return false;
}

FunElem::FunElem(RingSpec spec) : spec_(spec), num_(), den_{{kUnit, Scalar(1)}} {}

FunElem::FunElem(RingSpec spec, const Scalar& c) : spec_(spec), den_{{kUnit, Scalar(1)}} {
    if (!c.is_zero()) num_.emplace(kUnit, c);
}

FunElem::FunElem(RingSpec spec, FPoly num, FPoly den) : spec_(spec) {
    check_symbols(spec, num);
    check_symbols(spec, den);
    if (spec.kind == RingKind::Trig) {
        num = reduce_trig(std::move(num));
        den = reduce_trig(std::move(den));
    }
    if (den.empty()) throw ZeroDenominator("function-ring denominator reduces to zero");
    if (num.empty()) {
        num_ = {};
        den_ = {{kUnit, Scalar(1)}};
        return;
    }
    // Cancel the common monomial factor (a unit shift for t, a legitimate
    // fraction-field cancellation for the other symbols).
    FMono shift;
    bool first = true;
    for (const FPoly* p : {&num, &den}) {
        for (const auto& [m, c] : *p) {
            (void)c;
            if (first) {
                shift = m;
                first = false;
            } else {
                for (int k = 0; k < SYM_COUNT; ++k) shift[k] = std::min(shift[k], m[k]);
            }
        }
    }
    auto shifted = [&](const FPoly& p) {
        FPoly out;
        for (const auto& [m, c] : p) {
            FMono mm;
            for (int k = 0; k < SYM_COUNT; ++k) mm[k] = m[k] - shift[k];
            out.emplace(mm, c);
        }
        return out;
    };
    num_ = shifted(num);
    den_ = shifted(den);
    Scalar lead = den_.rbegin()->second;
    if (!lead.is_one()) {
        Scalar inv = lead.inverse();
        num_ = poly_scale(num_, inv);
        den_ = poly_scale(den_, inv);
    }
}

FunElem FunElem::symbol(RingSpec spec, int sym, int exp) {
    FPoly num, den;
    FMono m = kUnit;
    m[sym] = exp;
    if (exp >= 0 || sym == SYM_T) {
        num.emplace(m, Scalar(1));
        den.emplace(kUnit, Scalar(1));
    } else {
        m[sym] = -exp;
        num.emplace(kUnit, Scalar(1));
        den.emplace(m, Scalar(1));
    }
    return FunElem(spec, std::move(num), std::move(den));
}

bool FunElem::is_constant() const {
    if (num_.empty()) return true;
    return num_.size() == 1 && num_.begin()->first == kUnit && den_.size() == 1 &&
           den_.begin()->first == kUnit;
}

Scalar FunElem::constant_value() const {
    if (num_.empty()) return Scalar(0);
    if (!is_constant()) throw Error("function-ring element is not constant");
    return num_.begin()->second / den_.begin()->second;
}

FunElem FunElem::operator+(const FunElem& o) const {
    if (spec_ != o.spec_) throw Error("mixed function rings in arithmetic");
    return FunElem(spec_, poly_add(poly_mul(num_, o.den_), poly_mul(o.num_, den_)),
                   poly_mul(den_, o.den_));
}

FunElem FunElem::operator-(const FunElem& o) const { return *this + (-o); }

FunElem FunElem::operator-() const {
    FunElem out = *this;
    out.num_ = poly_neg(out.num_);
    return out;
}

FunElem FunElem::operator*(const FunElem& o) const {
    if (spec_ != o.spec_) throw Error("mixed function rings in arithmetic");
    return FunElem(spec_, poly_mul(num_, o.num_), poly_mul(den_, o.den_));
}

FunElem FunElem::operator/(const FunElem& o) const { return *this * o.inverse(); }

FunElem FunElem::inverse() const {
    if (num_.empty()) throw ZeroDenominator("inverse of the zero function-ring element");
    return FunElem(spec_, den_, num_);
}

FunElem FunElem::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FunElem acc(spec_, Scalar(1));
    FunElem base = *this;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

bool FunElem::operator==(const FunElem& o) const {
    if (spec_ != o.spec_) return false;
    FPoly diff = poly_add(poly_mul(num_, o.den_), poly_neg(poly_mul(o.num_, den_)));
    if (spec_.kind == RingKind::Trig) diff = reduce_trig(std::move(diff));
    return diff.empty();
}

FunElem FunElem::derive() const {
    auto derive_poly = [&](const FPoly& p) {
        FPoly out;
        for (const auto& [m, c] : p) {
            for (int k = 0; k < SYM_COUNT; ++k) {
                if (m[k] == 0) continue;
                Scalar coeff = c * Scalar(static_cast<long>(m[k]));
                FMono base = m;
                base[k] -= 1;
                switch (k) {
                    case SYM_ALPHA:
                    case SYM_BETA:
                        add_term(out, base, coeff);
                        break;
                    case SYM_T: {
                        FMono mt = base;
                        mt[SYM_T] += 1;
                        add_term(out, mt, coeff / Scalar(spec_.exp_scale));
                        break;
                    }
                    case SYM_S: {
                        FMono mc = base;
                        mc[SYM_C] += 1;
                        add_term(out, mc, coeff);
                        break;
                    }
                    case SYM_C: {
                        FMono ms = base;
                        ms[SYM_S] += 1;
                        add_term(out, ms, -coeff);
                        break;
                    }
                }
            }
        }
        return out;
    };
    FPoly dn = derive_poly(num_);
    FPoly dd = derive_poly(den_);
    // (n/d)' = (n' d - n d') / d^2
    FPoly top = poly_add(poly_mul(dn, den_), poly_neg(poly_mul(num_, dd)));
    return FunElem(spec_, std::move(top), poly_mul(den_, den_));
}

FunElem FunElem::subst_alpha(const FunElem& image) const {
    if (image.spec_ != spec_) throw Error("mixed function rings in substitution");
    auto subst_poly = [&](const FPoly& p) {
        FunElem acc(spec_);
        for (const auto& [m, c] : p) {
            FunElem term(spec_, c);
            for (int k = 0; k < SYM_COUNT; ++k) {
                if (m[k] == 0) continue;
                FunElem factor = (k == SYM_ALPHA) ? image : symbol(spec_, k);
                term *= factor.pow(m[k]);
            }
            acc += term;
        }
        return acc;
    };
    return subst_poly(num_) / subst_poly(den_);
}

std::complex<double> FunElem::eval(const std::complex<double>& z) const {
    std::array<std::complex<double>, SYM_COUNT> vals = {
        z, z, std::exp(z / static_cast<double>(spec_.exp_scale)), std::sin(z), std::cos(z)};
    auto eval_poly = [&](const FPoly& p) {
        std::complex<double> acc(0.0, 0.0);
        for (const auto& [m, c] : p) {
            std::complex<double> term = c.eval_numeric({});
            for (int k = 0; k < SYM_COUNT; ++k) {
                if (m[k] == 0) continue;
                term *= std::pow(vals[k], m[k]);
            }
            acc += term;
        }
        return acc;
    };
    std::complex<double> d = eval_poly(den_);
    if (d == std::complex<double>(0.0, 0.0))
        throw ZeroDenominator("function-ring denominator vanishes at the sample point");
    return eval_poly(num_) / d;
}

std::string FunElem::to_string() const {
    auto poly_str = [](const FPoly& p) {
        if (p.empty()) return std::string("0");
        std::ostringstream out;
        bool first = true;
        for (const auto& [m, c] : p) {
            if (!first) out << " + ";
            first = false;
            std::string cs = fun_scalar_to_string(c);
            bool unit = (m == kUnit);
            bool coeff_one = (cs == "1");
            if (unit || !coeff_one) out << (coeff_needs_parens(cs) ? "(" + cs + ")" : cs);
            bool first_factor = unit || !coeff_one;
            for (int k = 0; k < SYM_COUNT; ++k) {
                if (m[k] == 0) continue;
                if (first_factor) out << "*";
                first_factor = true;
                out << symbol_name(k);
                if (m[k] != 1) out << "^" << m[k];
            }
        }
        return out.str();
    };
    bool den_one = den_.size() == 1 && den_.begin()->first == kUnit && den_.begin()->second.is_one();
    if (den_one) return poly_str(num_);
    return "(" + poly_str(num_) + ")/(" + poly_str(den_) + ")";
}

}  // namespace fjl::fun
