#include "fjl/solutions.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#include "fjl/fermat_jets.hpp"
#include "fjl/parse.hpp"

namespace fjl::sol {

namespace {

long tied_exponent(const SolutionEntry& entry, char tied) {
    switch (tied) {
        case 'n':
            return entry.n;
        case 'm':
            return entry.m;
        case 'l':
            return entry.l;
    }
    throw Error("unknown exponent tie");
}

void register_radicals(const SolutionEntry& entry) {
    for (const RadicalSpec& r : entry.radicals) {
        long degree = r.tied ? tied_exponent(entry, r.tied) : r.degree;
        gens::adjoin_radical(r.name, static_cast<int>(degree), r.value);
    }
}

void verify_radical_relations(const SolutionEntry& entry) {
    for (const RadicalSpec& r : entry.radicals) {
        long expected = r.tied ? tied_exponent(entry, r.tied) : r.degree;
        int gen = gens::find(r.name);
        if (gen < 0 || gens::info(gen).rel_degree != expected ||
            gens::info(gen).rel_value != r.value)
            throw ExponentRelationMissing(r.name);
    }
}

}  // namespace

fun::FunElem check_solution(const SolutionEntry& entry) {
    verify_radical_relations(entry);
    fun::FunElem one(entry.ring, Scalar(1));
    return entry.f.pow(entry.n) + entry.g.pow(entry.m) + entry.h.pow(entry.l) - one;
}

fun::FunElem pullback(const jets::JetExpr& e, const SolutionEntry& entry) {
    using fun::FunElem;
    jets::JetExpr spec = e.subst_param(GEN_N, entry.n)
                             .subst_param(GEN_M, entry.m)
                             .subst_param(GEN_L, entry.l);

    struct Component {
        int var;
        FunElem f0, f1, f2, f3;
    };
    auto mk = [&](int var, const FunElem& f) {
        FunElem d1 = f.derive();
        FunElem d2 = d1.derive();
        return Component{var, f, d1, d2, d2.derive()};
    };
    const Component comps[3] = {mk(fermat::vx(), entry.f), mk(fermat::vy(), entry.g),
                                mk(fermat::vz(), entry.h)};

    auto component_of = [&](int var) -> const Component& {
        for (const Component& c : comps)
            if (c.var == var) return c;
        throw Error("pullback is defined on expressions in x, y, z only");
    };

    auto symbol_value = [&](const jets::Sym& s) -> FunElem {
        const Component& c = component_of(s.var);
        switch (s.kind) {
            case jets::Kind::Base:
                return c.f0;
            case jets::Kind::D1:
                return c.f1;
            case jets::Kind::D2:
                return c.f2;
            case jets::Kind::D3:
                return c.f3;
            case jets::Kind::Lam1:
                return c.f1 / c.f0;
            case jets::Kind::Lam2: {
                FunElem l1 = c.f1 / c.f0;
                return c.f2 / c.f0 - l1 * l1;
            }
        }
        throw Error("unknown jet symbol");
    };

    auto pull_poly = [&](const jets::JPoly& p) -> FunElem {
        FunElem acc(entry.ring);
        for (const auto& [mono, coeff] : p) {
            FunElem term(entry.ring, coeff);
            for (const auto& [sym, exp] : mono) {
                if (!exp.is_concrete()) throw UnassignedParameter("exponent " + exp.to_string());
                term *= symbol_value(sym).pow(exp.c0);
            }
            acc += term;
        }
        return acc;
    };

    try {
        FunElem den = pull_poly(spec.den());
        if (den.is_zero()) throw DivisionByZeroElement();
        return pull_poly(spec.num()) / den;
    } catch (const ZeroDenominator&) {
        throw DivisionByZeroElement();
    }
}

namespace {

std::string substitute_token(const std::string& line, const std::string& token,
                             const std::string& value) {
    std::string out;
    std::size_t k = 0;
    while (k < line.size()) {
        if (line.compare(k, token.size(), token) == 0) {
            out += value;
            k += token.size();
        } else {
            out += line[k++];
        }
    }
    return out;
}

SolutionEntry parse_record(const std::vector<std::string>& lines, int first_line_no) {
    SolutionEntry entry;
    bool have_ring = false;
    std::string f_src, g_src, h_src;
    for (const std::string& line : lines) {
        std::istringstream in(line);
        std::string key;
        in >> key;
        auto rest = [&]() {
            std::string tail;
            std::getline(in, tail);
            std::size_t start = tail.find_first_not_of(" \t");
            return start == std::string::npos ? std::string() : tail.substr(start);
        };
        if (key == "entry") {
            in >> entry.name;
        } else if (key == "exponents") {
            if (!(in >> entry.n >> entry.m >> entry.l) || entry.n < 1 || entry.m < 1 ||
                entry.l < 1)
                throw Error("catalog record '" + entry.name + "': bad exponents line");
        } else if (key == "ring") {
            std::string kind;
            in >> kind;
            if (kind == "poly") {
                entry.ring = {fun::RingKind::Poly, 1};
            } else if (kind == "trig") {
                entry.ring = {fun::RingKind::Trig, 1};
            } else if (kind == "laurent") {
                long scale = 1;
                if (!(in >> scale) || scale < 1)
                    throw Error("catalog record '" + entry.name + "': bad laurent scale");
                entry.ring = {fun::RingKind::LaurentExp, scale};
            } else {
                throw Error("catalog record '" + entry.name + "': unknown ring '" + kind + "'");
            }
            have_ring = true;
        } else if (key == "radical") {
            RadicalSpec r;
            std::string degree_tok, value_tok;
            if (!(in >> r.name >> degree_tok >> value_tok))
                throw Error("catalog record '" + entry.name + "': bad radical line");
            if (degree_tok == "n" || degree_tok == "m" || degree_tok == "l")
                r.tied = degree_tok[0];
            else
                r.degree = std::stol(degree_tok);
            r.value = Rat(value_tok);
            entry.radicals.push_back(std::move(r));
        } else if (key == "f") {
            f_src = rest();
        } else if (key == "g") {
            g_src = rest();
        } else if (key == "h") {
            h_src = rest();
        } else if (key == "class") {
            in >> entry.classification;
        } else if (key == "note") {
            entry.note = rest();
        } else {
            throw Error("catalog line " + std::to_string(first_line_no) + ": unknown key '" +
                        key + "'");
        }
    }
    if (entry.name.empty() || !have_ring || f_src.empty() || g_src.empty() || h_src.empty())
        throw Error("catalog record starting at line " + std::to_string(first_line_no) +
                    " is incomplete");
    register_radicals(entry);
    entry.f = expr::eval_fun(f_src, entry.ring);
    entry.g = expr::eval_fun(g_src, entry.ring);
    entry.h = expr::eval_fun(h_src, entry.ring);
    return entry;
}

}  // namespace

std::vector<SolutionEntry> parse_catalog_text(const std::string& text) {
    std::vector<SolutionEntry> out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::vector<std::string> record;
    int record_start = 0;
    bool in_record = false;
    auto flush = [&]() {
        // Optional template expansion: "expand <param> <lo> <hi>".
        std::string param;
        long lo = 0, hi = -1;
        std::vector<std::string> body;
        for (const std::string& l : record) {
            std::istringstream ls(l);
            std::string key;
            ls >> key;
            if (key == "expand") {
                if (!(ls >> param >> lo >> hi) || param.empty() || lo > hi)
                    throw Error("catalog line " + std::to_string(record_start) +
                                ": bad expand line");
            } else {
                body.push_back(l);
            }
        }
        if (param.empty()) {
            out.push_back(parse_record(body, record_start));
        } else {
            for (long v = lo; v <= hi; ++v) {
                std::vector<std::string> inst;
                inst.reserve(body.size());
                for (const std::string& l : body)
                    inst.push_back(substitute_token(l, "$" + param, std::to_string(v)));
                out.push_back(parse_record(inst, record_start));
            }
        }
        record.clear();
        in_record = false;
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        std::string trimmed = line.substr(start);
        if (!trimmed.empty() && trimmed.back() == '\r') trimmed.pop_back();
        if (trimmed.empty() || trimmed[0] == '#') continue;
        if (trimmed.rfind("entry", 0) == 0 && !in_record) {
            in_record = true;
            record_start = line_no;
            record.push_back(trimmed);
        } else if (trimmed == "end") {
            if (!in_record) throw Error("catalog line " + std::to_string(line_no) + ": stray end");
            flush();
        } else {
            if (!in_record)
                throw Error("catalog line " + std::to_string(line_no) + ": text outside a record");
            record.push_back(trimmed);
        }
    }
    if (in_record)
        throw Error("catalog record starting at line " + std::to_string(record_start) +
                    " is missing its end line");
    return out;
}

std::vector<SolutionEntry> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open catalog fixture: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_catalog_text(buf.str());
}

std::string default_catalog_path() {
    if (const char* env = std::getenv("FJL_CATALOG"); env && *env) return env;
#ifdef FJL_SOURCE_CATALOG
    return FJL_SOURCE_CATALOG;
#else
    return "data/catalog.txt";
#endif
}

const std::vector<SolutionEntry>& catalog() {
    static std::vector<SolutionEntry> entries = load_catalog(default_catalog_path());
    return entries;
}

const SolutionEntry& find_entry(const std::string& name) {
    for (const SolutionEntry& e : catalog())
        if (e.name == name) return e;
    throw Error("no catalog entry named '" + name + "'");
}

std::string gt_alternate_g_expr() {
    // Same coefficient with the brace closed before the trailing i instead.
    return "(1/6)*(((sqrt6-2)+(3*sqrt2-2*sqrt3)*i)*t + 2 - "
           "((sqrt6+2)-(3*sqrt2+2*sqrt3*i))*t^-1)";
}

BracketResolution resolve_gt_bracketing() {
    const SolutionEntry& primary = find_entry("gundersen_tohge");
    BracketResolution res;
    res.primary_zero = check_solution(primary).is_zero();
    SolutionEntry alt = primary;
    alt.g = expr::eval_fun(gt_alternate_g_expr(), alt.ring);
    res.alternate_residual = check_solution(alt);
    res.alternate_zero = res.alternate_residual.is_zero();
    return res;
}

}  // namespace fjl::sol
