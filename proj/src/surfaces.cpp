#include "fjl/surfaces.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "fjl/solutions.hpp"

namespace fjl::geo {

namespace {

int term_degree(const SurfaceTerm& t) { return t.exp[0] + t.exp[1] + t.exp[2] + t.exp[3]; }

int term_support(const SurfaceTerm& t) {
    int vars = 0;
    for (int e : t.exp)
        if (e > 0) ++vars;
    return vars;
}

}  // namespace

MonomialSurface::MonomialSurface(std::vector<SurfaceTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty() || terms_.size() > 4)
        throw Error("surface needs between 1 and 4 monomial terms");
    degree_ = term_degree(terms_.front());
    for (const SurfaceTerm& t : terms_) {
        if (t.coeff.is_zero()) throw Error("surface term with zero coefficient");
        if (term_degree(t) != degree_) throw Error("surface equation is not homogeneous");
        if (term_support(t) > 2)
            throw Error("surface term involves more than 2 variables");
        for (int e : t.exp)
            if (e < 0) throw Error("surface term with negative exponent");
    }
    if (degree_ < 2) throw Error("surface degree must be at least 2");
}

MonomialSurface MonomialSurface::fermat(int n) {
    return MonomialSurface({{Scalar(1), {n, 0, 0, 0}},
                            {Scalar(1), {0, n, 0, 0}},
                            {Scalar(1), {0, 0, n, 0}},
                            {Scalar(-1), {0, 0, 0, n}}});
}

MonomialSurface MonomialSurface::deformed_smooth(int n) {
    return MonomialSurface({{Scalar(1), {n, 0, 0, 0}},
                            {Scalar(1), {0, n, 0, 0}},
                            {Scalar(1), {0, 0, n - 1, 1}},
                            {Scalar(-1), {0, 0, 0, n}}});
}

MonomialSurface MonomialSurface::deformed_singular(int n) {
    return MonomialSurface({{Scalar(1), {n, 0, 0, 0}},
                            {Scalar(1), {0, n - 1, 0, 1}},
                            {Scalar(1), {0, 0, n - 1, 1}},
                            {Scalar(-1), {0, 0, 0, n}}});
}

Scalar MonomialSurface::eval(const std::array<Scalar, 4>& p) const {
    Scalar acc(0);
    for (const SurfaceTerm& t : terms_) {
        Scalar v = t.coeff;
        for (int j = 0; j < 4; ++j)
            if (t.exp[j] > 0) v *= p[j].pow(t.exp[j]);
        acc += v;
    }
    return acc;
}

Scalar MonomialSurface::partial(int var, const std::array<Scalar, 4>& p) const {
    Scalar acc(0);
    for (const SurfaceTerm& t : terms_) {
        if (t.exp[var] == 0) continue;
        Scalar v = t.coeff * Scalar(t.exp[var]);
        for (int j = 0; j < 4; ++j) {
            int e = t.exp[j] - (j == var ? 1 : 0);
            if (e > 0) v *= p[j].pow(e);
        }
        acc += v;
    }
    return acc;
}

std::string MonomialSurface::to_string() const {
    static const char* names = "XYZW";
    std::string out;
    for (const SurfaceTerm& t : terms_) {
        if (!out.empty()) out += " + ";
        std::string coeff = t.coeff.to_string();
        if (coeff != "1") out += "(" + coeff + ")*";
        bool first = true;
        for (int j = 0; j < 4; ++j) {
            if (t.exp[j] == 0) continue;
            if (!first) out += "*";
            out += names[j];
            if (t.exp[j] > 1) out += "^" + std::to_string(t.exp[j]);
            first = false;
        }
        if (first) out += "1";
    }
    return out;
}

namespace {

/// k-th roots of unity representable in the coefficient tower Q(i, 2^{1/4},
/// sqrt 3): every k dividing 24.
std::optional<Scalar> root_of_unity(int k) {
    switch (k) {
        case 1: return Scalar(1);
        case 2: return Scalar(-1);
        case 3: return (Scalar(-1) + Scalar::i() * Scalar::sqrt3()) / Scalar(2);
        case 4: return Scalar::i();
        case 6: return (Scalar(1) + Scalar::i() * Scalar::sqrt3()) / Scalar(2);
        case 8: return Scalar::zeta8();
        case 12: return (Scalar::sqrt3() + Scalar::i()) / Scalar(2);
        case 24:
            return ((Scalar::sqrt6() + Scalar::sqrt2()) +
                    Scalar::i() * (Scalar::sqrt6() - Scalar::sqrt2())) /
                   Scalar(4);
        default: return std::nullopt;
    }
}

std::string radical_name(int degree, const Rat& value) {
    std::ostringstream os;
    os << value;
    std::string v = os.str();
    for (char& c : v) {
        if (c == '-') c = 'm';
        if (c == '/') c = '_';
    }
    return "rt" + std::to_string(degree) + "_" + v;
}

/// A gradient equation restricted to a stratum: monomials in the free
/// (nonzero, non-pivot) variables only.
using StratumEq = std::vector<std::pair<Scalar, std::array<int, 4>>>;

std::string point_label(const std::array<Scalar, 4>& p) {
    std::string out = "[";
    for (int j = 0; j < 4; ++j) {
        if (j) out += ":";
        out += p[j].to_string();
    }
    return out + "]";
}

}  // namespace

SingularityVerdict singular_locus(const MonomialSurface& surface) {
    SingularityVerdict verdict;
    std::vector<SingularPoint> points;

    for (int zero_mask = 0; zero_mask < 15; ++zero_mask) {
        // Coordinates in zero_mask vanish, the rest are nonzero; the highest
        // nonzero coordinate is normalized to 1.
        int pivot = -1;
        std::vector<int> free_vars;
        for (int j = 3; j >= 0; --j) {
            if (zero_mask & (1 << j)) continue;
            if (pivot < 0)
                pivot = j;
            else
                free_vars.insert(free_vars.begin(), j);
        }

        // Restrict each partial derivative to the stratum.
        std::vector<StratumEq> eqs;
        for (int i = 0; i < 4; ++i) {
            std::map<std::array<int, 4>, Scalar> acc;
            for (const SurfaceTerm& t : surface.terms()) {
                if (t.exp[i] == 0) continue;
                std::array<int, 4> e = t.exp;
                e[i] -= 1;
                bool drops = false;
                for (int j = 0; j < 4; ++j)
                    if ((zero_mask & (1 << j)) && e[j] > 0) drops = true;
                if (drops) continue;
                e[pivot] = 0;
                acc[e] += t.coeff * Scalar(t.exp[i]);
            }
            StratumEq eq;
            for (auto& [e, c] : acc)
                if (!c.is_zero()) eq.push_back({c, e});
            if (!eq.empty()) eqs.push_back(std::move(eq));
        }

        // A single surviving monomial with nonzero coefficient cannot vanish
        // on the stratum (all its variables are nonzero there).
        bool contradiction = false;
        for (const StratumEq& eq : eqs)
            if (eq.size() == 1) contradiction = true;
        if (contradiction) continue;

        auto record_point = [&](const Scalar& value) {
            std::array<Scalar, 4> p;
            for (int j = 0; j < 4; ++j) p[j] = Scalar(0);
            p[pivot] = Scalar(1);
            if (!free_vars.empty()) p[free_vars[0]] = value;
            bool exact = surface.eval(p).is_zero();
            for (int i = 0; i < 4 && exact; ++i) exact = surface.partial(i, p).is_zero();
            if (!exact) {
                verdict.detail = "candidate point failed exact re-substitution";
                return false;
            }
            points.push_back({p, point_label(p)});
            return true;
        };

        if (eqs.empty()) {
            if (!free_vars.empty()) {
                verdict.status = SingStatus::Unknown;
                verdict.detail = "positive-dimensional singular stratum";
                return verdict;
            }
            if (!record_point(Scalar(0))) {
                verdict.status = SingStatus::Unknown;
                return verdict;
            }
            continue;
        }

        if (free_vars.size() != 1) {
            verdict.status = SingStatus::Unknown;
            verdict.detail = "multivariate gradient stratum beyond the structure matcher";
            return verdict;
        }

        // One free variable v with every equation a Laurent polynomial in v:
        // solve the first (binomial) equation by root extraction, then check
        // the candidates against the remaining equations.
        int v = free_vars[0];
        if (eqs[0].size() != 2) {
            verdict.status = SingStatus::Unknown;
            verdict.detail = "leading stratum equation is not a binomial";
            return verdict;
        }
        auto [c_lo, e_lo] = eqs[0][0];
        auto [c_hi, e_hi] = eqs[0][1];
        if (e_lo[v] > e_hi[v]) {
            std::swap(c_lo, c_hi);
            std::swap(e_lo, e_hi);
        }
        int k = e_hi[v] - e_lo[v];
        Scalar rhs = -c_lo / c_hi;  // v^k = rhs
        Rat rhs_rat;
        try {
            rhs_rat = rhs.as_rational();
        } catch (const Error&) {
            verdict.status = SingStatus::Unknown;
            verdict.detail = "binomial ratio leaves the rational field";
            return verdict;
        }
        std::optional<Scalar> zeta = root_of_unity(k);
        if (!zeta || rhs_rat == 0) {
            verdict.status = SingStatus::Unknown;
            verdict.detail = "root extraction of order " + std::to_string(k) + " unsupported";
            return verdict;
        }
        Scalar base = rhs_rat == 1 ? Scalar(1)
                                   : Scalar::from_gen(gens::adjoin_radical(
                                         radical_name(k, rhs_rat), k, rhs_rat));
        Scalar cand = base;
        for (int j = 0; j < k; ++j, cand *= *zeta) {
            bool ok = true;
            for (const StratumEq& eq : eqs) {
                Scalar acc(0);
                for (const auto& [c, e] : eq) acc += c * cand.pow(e[v]);
                if (!acc.is_zero()) ok = false;
            }
            if (!ok) continue;
            if (!record_point(cand)) {
                verdict.status = SingStatus::Unknown;
                return verdict;
            }
        }
    }

    verdict.points = std::move(points);
    verdict.status =
        verdict.points.empty() ? SingStatus::Smooth : SingStatus::IsolatedSingular;
    return verdict;
}

long ci_genus(long d1, long d2) {
    if (d1 < 1 || d2 < 1) throw Error("complete-intersection degrees must be positive");
    long p = d1 * d2 * (d1 + d2 - 4);
    if (p % 2 != 0)
        throw NonIntegerGenus("(" + std::to_string(d1) + ", " + std::to_string(d2) + ")");
    return 1 + p / 2;
}

long fermat_plane_genus(long n) {
    if (n < 1) throw Error("plane-curve degree must be positive");
    return (n - 1) * (n - 2) / 2;
}

const char* existence_name(Existence e) {
    switch (e) {
        case Existence::None: return "none";
        case Existence::Exists: return "exists";
        default: return "open";
    }
}

namespace {

/// Catalog witness with the given (sorted) exponents; trivial-family entries
/// never count.  need_entire restricts to entire witnesses.
const sol::SolutionEntry* find_witness(long n, long m, long l, bool need_entire) {
    for (const sol::SolutionEntry& e : sol::catalog()) {
        if (e.classification == "trivial") continue;
        if (need_entire && e.classification != "entire") continue;
        std::array<long, 3> have{e.n, e.m, e.l}, want{n, m, l};
        std::sort(have.begin(), have.end());
        std::sort(want.begin(), want.end());
        if (have == want) return &e;
    }
    return nullptr;
}

}  // namespace

VerdictRecord threshold_verdict(long n, long m, long l) {
    if (!(n >= m && m >= l && l >= 1))
        throw Error("threshold_verdict expects n >= m >= l >= 1");
    VerdictRecord rec;
    rec.n = n;
    rec.m = m;
    rec.l = l;
    Rat sum = Rat(1, n) + Rat(1, m) + Rat(1, l);

    if (sum <= Rat(3, 8)) {
        rec.meromorphic = Existence::None;
        rec.meromorphic_citations.push_back("THM-7.1");
        if (n == m && m == l) rec.meromorphic_citations.push_back("THM-1.2");
    } else if (n == 7 && m == 7 && l == 7) {
        rec.meromorphic = Existence::Open;
        rec.meromorphic_citations.push_back("OPEN-N7");
    } else if (n == 6 && m == 6 && l == 6) {
        rec.meromorphic = Existence::Exists;
        rec.meromorphic_citations.push_back("LIT-GU98");
    } else if (const auto* w = find_witness(n, m, l, /*need_entire=*/false)) {
        rec.meromorphic = Existence::Exists;
        rec.meromorphic_citations.push_back("CATALOG:" + w->name);
    } else {
        rec.meromorphic = Existence::Open;
    }

    if (n == m && m == l && n >= 6) {
        rec.entire = Existence::None;
        rec.entire_citations.push_back("THM-1.1");
    } else if (sum < Rat(1, 2)) {
        rec.entire = Existence::None;
        rec.entire_citations.push_back("TODA");
    } else if (const auto* w = find_witness(n, m, l, /*need_entire=*/true)) {
        rec.entire = Existence::Exists;
        rec.entire_citations.push_back("CATALOG:" + w->name);
    } else if (m == 4 && l == 4 && n >= 2) {
        // The quartic exponential family extends to every third exponent; the
        // catalog materializes it only up to 12.
        rec.entire = Existence::Exists;
        rec.entire_citations.push_back("CATALOG:modified_green_family");
    } else {
        rec.entire = Existence::Open;
    }
    return rec;
}

std::vector<GapTriple> gap_enumeration(long bound) {
    if (bound < 9) throw Error("gap enumeration needs bound >= 9");
    std::vector<GapTriple> out;
    for (long n = 8; n <= bound; ++n)
        for (long m = 8; m <= n; ++m)
            for (long l = 8; l <= m; ++l) {
                Rat sum = Rat(1, n) + Rat(1, m) + Rat(1, l);
                if (sum < Rat(25, 72) || sum > Rat(3, 8)) continue;
                out.push_back({n, m, l, sum, n <= 9});
            }
    return out;
}

namespace {

/// Exponent polynomial a + b n + c n^2 (enough for products of two
/// n-affine exponents).
struct QExp {
    long a = 0, b = 0, c = 0;
    bool operator==(const QExp&) const = default;
    auto operator<=>(const QExp&) const = default;
    long at(long n) const { return a + b * n + c * n * n; }
};

}  // namespace

bool shioda_cover_check(std::optional<long> n, int phi2_delta) {
    if (n && *n < 2) throw Error("covering map needs exponent >= 2");

    // phi = (x^{n-1}, y^n/w, z^n/w, w^{n-1}); each composed term is a single
    // Laurent monomial, so the identity reduces to exponent bookkeeping.
    using Monomial = std::array<QExp, 4>;  // exponents of x, y, z, w
    const QExp deg{0, -1, 1};              // n(n-1)
    long d = phi2_delta;

    std::vector<Monomial> lhs(4), rhs(4);
    lhs[0][0] = deg;                              // phi_1^n
    lhs[1][1] = QExp{0, d - 1, 1};                // phi_4 * phi_2^{n-1+d}: y-part
    lhs[1][3] = QExp{-d, 0, 0};                   //   w-part: (n-1) - (n-1+d)
    lhs[2][2] = QExp{0, d - 1, 1};                // phi_4 * phi_3^{n-1+d}
    lhs[2][3] = QExp{-d, 0, 0};
    lhs[3][3] = deg;                              // phi_4^n
    for (int j = 0; j < 4; ++j) rhs[j][j] = deg;  // x,y,z,w ^ n(n-1)

    auto balance_formal = [&] {
        std::map<Monomial, long> count;
        for (const Monomial& t : lhs) ++count[t];
        for (const Monomial& t : rhs) --count[t];
        for (const auto& [t, c] : count)
            if (c != 0) return false;
        return true;
    };
    auto balance_at = [&](long nv) {
        std::map<std::array<long, 4>, long> count;
        auto value = [&](const Monomial& t) {
            std::array<long, 4> v;
            for (int j = 0; j < 4; ++j) v[j] = t[j].at(nv);
            return v;
        };
        for (const Monomial& t : lhs) ++count[value(t)];
        for (const Monomial& t : rhs) --count[value(t)];
        for (const auto& [t, c] : count)
            if (c != 0) return false;
        return true;
    };
    return n ? balance_at(*n) : balance_formal();
}

}  // namespace fjl::geo
