#include "fjl/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <numbers>
#include <sstream>

namespace fjl {

namespace {

std::mutex g_gens_mutex;

std::vector<GeneratorInfo>& generator_table() {
    static std::vector<GeneratorInfo> table = {
        {"i", 2, Rat(-1)}, {"q", 4, Rat(2)}, {"s", 2, Rat(3)},
        {"n", 0, Rat(0)},  {"m", 0, Rat(0)}, {"l", 0, Rat(0)},
        {"k1", 0, Rat(0)}, {"k2", 0, Rat(0)}, {"c1", 0, Rat(0)}, {"c2", 0, Rat(0)},
    };
    return table;
}

}  // namespace

namespace gens {

int adjoin_radical(const std::string& name, int degree, const Rat& value) {
    if (degree < 1) throw Error("radical relation needs a concrete positive degree");
    std::lock_guard<std::mutex> lock(g_gens_mutex);
    auto& table = generator_table();
    for (std::size_t k = 0; k < table.size(); ++k) {
        if (table[k].name == name) {
            if (table[k].rel_degree != degree || table[k].rel_value != value)
                throw Error("radical '" + name + "' already adjoined with a different relation");
            return static_cast<int>(k);
        }
    }
    table.push_back({name, degree, value});
    return static_cast<int>(table.size()) - 1;
}

int find(const std::string& name) {
    std::lock_guard<std::mutex> lock(g_gens_mutex);
    auto& table = generator_table();
    for (std::size_t k = 0; k < table.size(); ++k)
        if (table[k].name == name) return static_cast<int>(k);
    return -1;
}

GeneratorInfo info(int idx) {
    std::lock_guard<std::mutex> lock(g_gens_mutex);
    return generator_table().at(static_cast<std::size_t>(idx));
}

int count() {
    std::lock_guard<std::mutex> lock(g_gens_mutex);
    return static_cast<int>(generator_table().size());
}

}  // namespace gens

namespace poly {

int mono_cmp(const Mono& a, const Mono& b) {
    // Walk generators in ascending index; higher exponent first.
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() || ib < b.size()) {
        int ga = ia < a.size() ? a[ia].first : std::numeric_limits<int>::max();
        int gb = ib < b.size() ? b[ib].first : std::numeric_limits<int>::max();
        if (ga < gb) return 1;   // a has the lower generator with positive exponent
        if (gb < ga) return -1;
        if (a[ia].second != b[ib].second) return a[ia].second > b[ib].second ? 1 : -1;
        ++ia, ++ib;
    }
    return 0;
}

namespace {

struct TermLess {
    bool operator()(const std::pair<Mono, Rat>& x, const std::pair<Mono, Rat>& y) const {
        return mono_cmp(x.first, y.first) > 0;
    }
};

void sort_and_merge(Poly& p) {
    std::sort(p.begin(), p.end(), TermLess{});
    Poly out;
    out.reserve(p.size());
    for (auto& term : p) {
        if (!out.empty() && mono_cmp(out.back().first, term.first) == 0)
            out.back().second += term.second;
        else
            out.push_back(std::move(term));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& t) { return t.second == 0; }),
              out.end());
    p = std::move(out);
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono out;
    out.reserve(a.size() + b.size());
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() || ib < b.size()) {
        if (ib == b.size() || (ia < a.size() && a[ia].first < b[ib].first))
            out.push_back(a[ia++]);
        else if (ia == a.size() || b[ib].first < a[ia].first)
            out.push_back(b[ib++]);
        else {
            out.emplace_back(a[ia].first, a[ia].second + b[ib].second);
            ++ia, ++ib;
        }
    }
    return out;
}

}  // namespace

Poly zero() { return {}; }

Poly constant(const Rat& c) {
    if (c == 0) return {};
    return {{Mono{}, c}};
}

Poly generator(int idx, unsigned exp) {
    if (exp == 0) return constant(1);
    return reduce(Poly{{Mono{{idx, exp}}, Rat(1)}});
}

Poly reduce(const Poly& a) {
    Poly out;
    out.reserve(a.size());
    for (const auto& [mono, coeff] : a) {
        Mono m;
        Rat c = coeff;
        for (const auto& [gen, exp] : mono) {
            GeneratorInfo info = gens::info(gen);
            unsigned e = exp;
            if (info.rel_degree > 0 && e >= static_cast<unsigned>(info.rel_degree)) {
                unsigned k = e / static_cast<unsigned>(info.rel_degree);
                e %= static_cast<unsigned>(info.rel_degree);
                for (unsigned j = 0; j < k; ++j) c *= info.rel_value;
            }
            if (e > 0) m.emplace_back(gen, e);
        }
        if (c != 0) out.emplace_back(std::move(m), std::move(c));
    }
    sort_and_merge(out);
    return out;
}

Poly add(const Poly& a, const Poly& b) {
    Poly out = a;
    out.insert(out.end(), b.begin(), b.end());
    sort_and_merge(out);
    return out;
}

Poly neg(const Poly& a) {
    Poly out = a;
    for (auto& t : out) t.second = -t.second;
    return out;
}

Poly sub(const Poly& a, const Poly& b) { return add(a, neg(b)); }

Poly mul(const Poly& a, const Poly& b) {
    Poly out;
    out.reserve(a.size() * b.size());
    for (const auto& ta : a)
        for (const auto& tb : b)
            out.emplace_back(mono_mul(ta.first, tb.first), ta.second * tb.second);
    return reduce(out);
}

Poly mul_rat(const Poly& a, const Rat& c) {
    if (c == 0) return {};
    Poly out = a;
    for (auto& t : out) t.second *= c;
    return out;
}

Poly pow(const Poly& a, unsigned e) {
    Poly result = constant(1);
    Poly base = a;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

bool is_zero(const Poly& a) { return a.empty(); }

namespace {

bool is_param(int gen) { return gens::info(gen).rel_degree == 0; }

bool k_constant(const Poly& p) {
    for (const auto& [mono, c] : p)
        for (const auto& [gen, e] : mono)
            if (is_param(gen)) return false;
    return true;
}

int max_param(const Poly& p) {
    int best = -1;
    for (const auto& [mono, c] : p)
        for (const auto& [gen, e] : mono)
            if (is_param(gen)) best = std::max(best, gen);
    return best;
}

unsigned deg_in(const Mono& m, int v) {
    for (const auto& [gen, e] : m)
        if (gen == v) return e;
    return 0;
}

unsigned deg_in(const Poly& p, int v) {
    unsigned d = 0;
    for (const auto& [mono, c] : p) d = std::max(d, deg_in(mono, v));
    return d;
}

Mono mono_without(const Mono& m, int v) {
    Mono out;
    for (const auto& t : m)
        if (t.first != v) out.push_back(t);
    return out;
}

Poly coeff_of(const Poly& p, int v, unsigned k) {
    Poly out;
    for (const auto& [mono, c] : p)
        if (deg_in(mono, v) == k) out.emplace_back(mono_without(mono, v), c);
    sort_and_merge(out);
    return out;
}

Poly shift_var(const Poly& p, int v, unsigned k) {
    if (k == 0) return p;
    return mul(p, Poly{{Mono{{v, k}}, Rat(1)}});
}

// All bounded-generator monomials over the generators present in `gens_used`,
// exponents below each relation degree.
void enumerate_basis(const std::vector<int>& gens_used, std::size_t pos, Mono cur,
                     std::vector<Mono>& out) {
    if (pos == gens_used.size()) {
        std::sort(cur.begin(), cur.end());
        out.push_back(cur);
        return;
    }
    int g = gens_used[pos];
    int d = gens::info(g).rel_degree;
    for (int e = 0; e < d; ++e) {
        Mono next = cur;
        if (e > 0) next.emplace_back(g, static_cast<unsigned>(e));
        enumerate_basis(gens_used, pos + 1, std::move(next), out);
    }
}

}  // namespace

Poly k_inverse(const Poly& a) {
    Poly p = reduce(a);
    if (is_zero(p)) throw ZeroDenominator();
    if (!k_constant(p)) throw Error("k_inverse: polynomial involves free parameters");
    // Plain rational fast path.
    if (p.size() == 1 && p[0].first.empty()) return constant(Rat(1) / p[0].second);

    std::vector<int> used;
    for (const auto& [mono, c] : p)
        for (const auto& [gen, e] : mono)
            if (std::find(used.begin(), used.end(), gen) == used.end()) used.push_back(gen);
    std::sort(used.begin(), used.end());

    std::vector<Mono> basis;
    enumerate_basis(used, 0, {}, basis);
    const std::size_t dim = basis.size();
    auto index_of = [&](const Mono& m) -> std::size_t {
        for (std::size_t k = 0; k < dim; ++k)
            if (mono_cmp(basis[k], m) == 0) return k;
        throw Error("k_inverse: monomial outside the enumerated basis");
    };

    // Column j of M is p * basis[j] expressed in the basis; solve M x = e_{1}.
    std::vector<std::vector<Rat>> m(dim, std::vector<Rat>(dim + 1, Rat(0)));
    for (std::size_t j = 0; j < dim; ++j) {
        Poly col = mul(p, Poly{{basis[j], Rat(1)}});
        for (const auto& [mono, c] : col) m[index_of(mono)][j] = c;
    }
    m[index_of(Mono{})][dim] = 1;

    for (std::size_t col = 0, row = 0; col < dim && row < dim; ++col) {
        std::size_t piv = row;
        while (piv < dim && m[piv][col] == 0) ++piv;
        if (piv == dim) continue;
        std::swap(m[piv], m[row]);
        Rat inv = Rat(1) / m[row][col];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < dim; ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rat factor = m[r][col];
            for (std::size_t ccol = 0; ccol <= dim; ++ccol) m[r][ccol] -= factor * m[row][ccol];
        }
        ++row;
    }
    Poly inv;
    for (std::size_t r = 0; r < dim; ++r) {
        std::size_t lead = 0;
        while (lead < dim && m[r][lead] == 0) ++lead;
        if (lead == dim) {
            if (m[r][dim] != 0) throw Error("k_inverse: element is a zero divisor");
            continue;
        }
        if (m[r][dim] != 0) inv.emplace_back(basis[lead], m[r][dim]);
    }
    sort_and_merge(inv);
    return inv;
}

namespace {

Poly monicize(const Poly& p) {
    if (is_zero(p)) return p;
    // Extract the K-part of the leading term's parameter-monomial and scale it to 1.
    Mono lead_params;
    for (const auto& [gen, e] : p[0].first)
        if (is_param(gen)) lead_params.emplace_back(gen, e);
    Poly lead_k;
    for (const auto& [mono, c] : p) {
        Mono params, bounded;
        for (const auto& t : mono)
            (is_param(t.first) ? params : bounded).push_back(t);
        if (mono_cmp(params, lead_params) == 0) lead_k.emplace_back(std::move(bounded), c);
    }
    sort_and_merge(lead_k);
    return mul(p, k_inverse(lead_k));
}

Poly prem(Poly a, const Poly& b, int v) {
    const unsigned db = deg_in(b, v);
    const Poly lcb = coeff_of(b, v, db);
    unsigned guard = deg_in(a, v) + 2;
    while (!is_zero(a) && deg_in(a, v) >= db) {
        if (guard-- == 0) throw Error("prem: no degree progress");
        unsigned da = deg_in(a, v);
        Poly lca = coeff_of(a, v, da);
        a = sub(mul(a, lcb), shift_var(mul(lca, b), v, da - db));
    }
    return a;
}

}  // namespace

Poly exact_div(const Poly& a, const Poly& d) {
    if (is_zero(d)) throw ZeroDenominator();
    if (is_zero(a)) return zero();
    Mono lead_params;
    for (const auto& [gen, e] : d[0].first)
        if (is_param(gen)) lead_params.emplace_back(gen, e);
    Poly lead_k;
    for (const auto& [mono, c] : d) {
        Mono params, bounded;
        for (const auto& t : mono)
            (is_param(t.first) ? params : bounded).push_back(t);
        if (mono_cmp(params, lead_params) == 0) lead_k.emplace_back(std::move(bounded), c);
    }
    sort_and_merge(lead_k);
    Poly inv_lead = k_inverse(lead_k);
    Poly dm = mul(d, inv_lead);  // leading term: lead_params with K-coefficient 1

    Poly rem = a;
    Poly quot;
    unsigned guard = 4 * (a.size() + 4) * (d.size() + 4);
    while (!is_zero(rem)) {
        if (guard-- == 0) throw Error("exact_div: nontermination");
        // Leading term of rem.
        Mono rem_params, rem_bounded;
        for (const auto& t : rem[0].first)
            (is_param(t.first) ? rem_params : rem_bounded).push_back(t);
        // Parameter part must be divisible.
        Mono qm;
        {
            std::size_t ia = 0;
            bool ok = true;
            for (const auto& [gen, e] : rem_params) {
                unsigned de = deg_in(lead_params, gen);
                if (de > e) { ok = false; break; }
                if (e - de > 0) qm.emplace_back(gen, e - de);
                ++ia;
            }
            for (const auto& [gen, e] : lead_params)
                if (deg_in(rem_params, gen) < e) ok = false;
            if (!ok) throw Error("exact_div: division is not exact");
        }
        Poly t{{mono_mul(qm, rem_bounded), rem[0].second}};
        quot = add(quot, t);
        rem = sub(rem, mul(t, dm));
    }
    return reduce(mul(quot, inv_lead));
}

Poly gcd(const Poly& pa, const Poly& pb) {
    Poly a = reduce(pa), b = reduce(pb);
    if (is_zero(a)) return monicize(b);
    if (is_zero(b)) return monicize(a);
    if (k_constant(a) || k_constant(b)) return constant(1);
    int v = std::max(max_param(a), max_param(b));
    if (v < 0) return constant(1);

    auto content = [&](const Poly& p) {
        Poly c = zero();
        for (unsigned k = 0; k <= deg_in(p, v); ++k) {
            Poly ck = coeff_of(p, v, k);
            if (!is_zero(ck)) c = gcd(c, ck);
            if (!is_zero(c) && c.size() == 1 && c[0].first.empty()) break;  // already a unit
        }
        return c;
    };

    Poly ca = content(a), cb = content(b);
    Poly c = gcd(ca, cb);
    Poly A = exact_div(a, ca);
    Poly B = exact_div(b, cb);
    if (deg_in(A, v) == 0 || deg_in(B, v) == 0) return monicize(c);
    if (deg_in(A, v) < deg_in(B, v)) std::swap(A, B);
    unsigned guard = deg_in(A, v) + 2;
    while (true) {
        if (guard-- == 0) throw Error("gcd: no degree progress");
        Poly r = prem(A, B, v);
        if (is_zero(r)) break;
        if (deg_in(r, v) == 0) return monicize(c);  // coprime in v
        r = exact_div(r, content(r));
        A = B;
        B = r;
    }
    return monicize(mul(c, exact_div(B, content(B))));
}

}  // namespace poly

// --- Scalar -----------------------------------------------------------------

Scalar::Scalar(Poly num, Poly den) {
    num_ = poly::reduce(num);
    den_ = poly::reduce(den);
    if (poly::is_zero(den_)) throw ZeroDenominator();
    if (poly::is_zero(num_)) {
        den_ = poly::constant(1);
        return;
    }
    Poly g = poly::gcd(num_, den_);
    if (!(g.size() == 1 && g[0].first.empty() && g[0].second == 1)) {
        num_ = poly::exact_div(num_, g);
        den_ = poly::exact_div(den_, g);
    }
    // Scale so the denominator's leading K-coefficient is 1.
    Mono lead_params;
    for (const auto& [gen, e] : den_[0].first)
        if (gens::info(gen).rel_degree == 0) lead_params.emplace_back(gen, e);
    Poly lead_k;
    for (const auto& [mono, c] : den_) {
        Mono params, bounded;
        for (const auto& t : mono)
            (gens::info(t.first).rel_degree == 0 ? params : bounded).push_back(t);
        if (poly::mono_cmp(params, lead_params) == 0) lead_k.emplace_back(std::move(bounded), c);
    }
    std::sort(lead_k.begin(), lead_k.end(), [](const auto& x, const auto& y) {
        return poly::mono_cmp(x.first, y.first) > 0;
    });
    Poly inv = poly::k_inverse(lead_k);
    num_ = poly::mul(num_, inv);
    den_ = poly::mul(den_, inv);
}

Scalar Scalar::from_gen(int idx, unsigned exp) {
    return Scalar(poly::generator(idx, exp), poly::constant(1));
}

Scalar Scalar::sqrt6() { return Scalar(poly::mul(poly::generator(GEN_Q, 2), poly::generator(GEN_S)), poly::constant(1)); }

Scalar Scalar::zeta8() {
    // (1+i)q^2/2: squares to i, fourth power -1.
    Poly one_plus_i = poly::add(poly::constant(1), poly::generator(GEN_I));
    return Scalar(poly::mul(one_plus_i, poly::generator(GEN_Q, 2)), poly::constant(2));
}

bool Scalar::is_one() const {
    return num_.size() == 1 && num_[0].first.empty() && num_[0].second == 1 &&
           den_.size() == 1 && den_[0].first.empty() && den_[0].second == 1;
}

Scalar Scalar::operator+(const Scalar& o) const {
    return Scalar(poly::add(poly::mul(num_, o.den_), poly::mul(o.num_, den_)),
                  poly::mul(den_, o.den_));
}

Scalar Scalar::operator-(const Scalar& o) const {
    return Scalar(poly::sub(poly::mul(num_, o.den_), poly::mul(o.num_, den_)),
                  poly::mul(den_, o.den_));
}

Scalar Scalar::operator-() const {
    Scalar out = *this;
    out.num_ = poly::neg(out.num_);
    return out;
}

Scalar Scalar::operator*(const Scalar& o) const {
    return Scalar(poly::mul(num_, o.num_), poly::mul(den_, o.den_));
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (o.is_zero()) throw ZeroDenominator();
    return Scalar(poly::mul(num_, o.den_), poly::mul(den_, o.num_));
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw ZeroDenominator();
    return Scalar(den_, num_);
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar result(1);
    Scalar base = *this;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}

namespace {
Poly subst_param_in(const Poly& p, int gen_idx, const Rat& value) {
    Poly out;
    for (const auto& [mono, c] : p) {
        Mono m;
        Rat coeff = c;
        for (const auto& [gen, e] : mono) {
            if (gen == gen_idx) {
                for (unsigned k = 0; k < e; ++k) coeff *= value;
            } else {
                m.emplace_back(gen, e);
            }
        }
        out.emplace_back(std::move(m), std::move(coeff));
    }
    return poly::reduce(out);
}
}  // namespace

Scalar Scalar::subst_param(int gen_idx, const Rat& value) const {
    if (gens::info(gen_idx).rel_degree != 0)
        throw Error("subst_param: generator is not a free parameter");
    return Scalar(subst_param_in(num_, gen_idx, value), subst_param_in(den_, gen_idx, value));
}

bool Scalar::uses_generator(int gen_idx) const {
    for (const Poly* p : {&num_, &den_})
        for (const auto& [mono, c] : *p)
            for (const auto& [gen, e] : mono)
                if (gen == gen_idx) return true;
    return false;
}

Rat Scalar::as_rational() const {
    if (!(den_.size() == 1 && den_[0].first.empty() && den_[0].second == 1))
        throw Error("scalar is not a plain rational");
    if (num_.empty()) return Rat(0);
    if (num_.size() == 1 && num_[0].first.empty()) return num_[0].second;
    throw Error("scalar is not a plain rational");
}

std::complex<double> Scalar::eval_numeric(const std::map<int, Rat>& params) const {
    auto eval_poly = [&](const Poly& p) {
        std::complex<double> acc(0.0, 0.0);
        for (const auto& [mono, c] : p) {
            std::complex<double> term(static_cast<double>(c), 0.0);
            for (const auto& [gen, e] : mono) {
                GeneratorInfo info = gens::info(gen);
                std::complex<double> g;
                if (gen == GEN_I) {
                    g = {0.0, 1.0};
                } else if (gen == GEN_Q) {
                    g = {std::pow(2.0, 0.25), 0.0};
                } else if (gen == GEN_S) {
                    g = {std::sqrt(3.0), 0.0};
                } else if (info.rel_degree == 0) {
                    auto it = params.find(gen);
                    if (it == params.end()) throw UnassignedParameter(info.name);
                    g = {static_cast<double>(it->second), 0.0};
                } else {
                    // Principal branch of the adjoined radical.
                    g = std::pow(std::complex<double>(static_cast<double>(info.rel_value), 0.0),
                                 1.0 / info.rel_degree);
                }
                for (unsigned k = 0; k < e; ++k) term *= g;
            }
            acc += term;
        }
        return acc;
    };
    std::complex<double> d = eval_poly(den_);
    if (d == std::complex<double>(0.0, 0.0)) throw ZeroDenominator();
    return eval_poly(num_) / d;
}

std::string poly_to_string(const Poly& p, bool tex) {
    if (p.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [mono, c] : p) {
        Rat coeff = c;
        if (first) {
            if (coeff < 0) { out << "-"; coeff = -coeff; }
        } else {
            out << (coeff < 0 ? " - " : " + ");
            if (coeff < 0) coeff = -coeff;
        }
        first = false;
        bool need_coeff = (coeff != 1) || mono.empty();
        if (need_coeff) {
            if (denominator(coeff) == 1) out << numerator(coeff);
            else if (tex) out << "\\frac{" << numerator(coeff) << "}{" << denominator(coeff) << "}";
            else out << numerator(coeff) << "/" << denominator(coeff);
        }
        bool first_factor = !need_coeff;
        for (const auto& [gen, e] : mono) {
            if (!first_factor || need_coeff) out << (tex ? " " : "*");
            first_factor = false;
            out << gens::info(gen).name;
            if (e != 1) {
                if (tex) out << "^{" << e << "}";
                else out << "^" << e;
            }
        }
    }
    return out.str();
}

std::string Scalar::to_string() const {
    bool den_one = den_.size() == 1 && den_[0].first.empty() && den_[0].second == 1;
    if (den_one) return poly_to_string(num_);
    return "(" + poly_to_string(num_) + ")/(" + poly_to_string(den_) + ")";
}

std::string Scalar::to_tex() const {
    bool den_one = den_.size() == 1 && den_[0].first.empty() && den_[0].second == 1;
    if (den_one) return poly_to_string(num_, true);
    return "\\frac{" + poly_to_string(num_, true) + "}{" + poly_to_string(den_, true) + "}";
}

}  // namespace fjl
