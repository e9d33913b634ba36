#include "fjl/affine.hpp"

#include <sstream>

namespace fjl {

namespace {

// Whether d >= 0 for every admissible parameter assignment.
bool nonneg_everywhere(const Affine& d, const Assumptions& asms) {
    if (d.cn < 0 || d.cm < 0 || d.cl < 0) return false;
    long value = d.c0;
    struct Part { long coeff; const std::optional<long>& bound; };
    for (const Part& p : {Part{d.cn, asms.n_min}, Part{d.cm, asms.m_min}, Part{d.cl, asms.l_min}}) {
        if (p.coeff == 0) continue;
        if (!p.bound) return false;  // unbounded below
        value += p.coeff * *p.bound;
    }
    return value >= 0;
}

}  // namespace

Cmp affine_cmp(const Affine& a, const Affine& b, const Assumptions& asms) {
    Affine d = a - b;
    if (d.is_zero()) return Cmp::Equal;
    bool ge = nonneg_everywhere(d, asms);
    bool le = nonneg_everywhere(-d, asms);
    if (ge && le) return Cmp::Equal;  // pinned to zero by the bounds (cannot happen with d != 0)
    if (ge) return Cmp::Greater;
    if (le) return Cmp::Less;
    return Cmp::Incomparable;
}

std::string Affine::to_string() const {
    std::ostringstream out;
    bool first = true;
    auto emit = [&](long coeff, const char* name) {
        if (coeff == 0) return;
        if (first) {
            if (coeff < 0) out << "-";
        } else {
            out << (coeff < 0 ? "-" : "+");
        }
        first = false;
        long mag = coeff < 0 ? -coeff : coeff;
        if (mag != 1 || !*name) out << mag;
        if (*name) {
            if (mag != 1) out << "*";
            out << name;
        }
    };
    emit(cn, "n");
    emit(cm, "m");
    emit(cl, "l");
    if (c0 != 0 || first) {
        if (first) {
            out << c0;
        } else {
            out << (c0 < 0 ? "-" : "+") << (c0 < 0 ? -c0 : c0);
        }
    }
    return out.str();
}

}  // namespace fjl
