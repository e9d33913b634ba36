#ifndef FJL_SOLUTIONS_HPP
#define FJL_SOLUTIONS_HPP

#include <string>
#include <vector>

#include "fjl/funring.hpp"
#include "fjl/jet.hpp"

namespace fjl::sol {

/// An adjoined root of a rational number: name^degree = value.  When the
/// degree is tied to one of the entry exponents ('n', 'm', 'l'), a mismatch
/// between the registered relation and the entry raises
/// ExponentRelationMissing at check time.
struct RadicalSpec {
    std::string name;
    char tied = 0;  // 'n', 'm', 'l', or 0 for a fixed degree
    long degree = 0;
    Rat value = 0;
};

struct SolutionEntry {
    std::string name;
    long n = 0, m = 0, l = 0;
    fun::RingSpec ring;
    std::vector<RadicalSpec> radicals;
    fun::FunElem f, g, h;
    std::string classification;  // "entire", "meromorphic", or "trivial"
    std::string note;
};

/// Residual f^n + g^m + h^l - 1 in canonical form; zero iff the entry solves
/// the unit equation exactly.
fun::FunElem check_solution(const SolutionEntry& entry);

/// Pullback along the curve z |-> (f, g, h): substitutes x -> f, dx -> f',
/// d2x -> f'' (and the log forms accordingly), same for y -> g, z -> h, with
/// the exponent parameters specialized to the entry's.  Throws
/// DivisionByZeroElement if a denominator pulls back to zero.
fun::FunElem pullback(const jets::JetExpr& e, const SolutionEntry& entry);

/// Loads a catalog fixture.  Records run from "entry <name>" to "end"; an
/// "expand <param> <lo> <hi>" line instantiates the record once per value
/// with every "$<param>" token substituted.
std::vector<SolutionEntry> load_catalog(const std::string& path);
std::vector<SolutionEntry> parse_catalog_text(const std::string& text);

/// FJL_CATALOG env override, else the source-tree fixture.
std::string default_catalog_path();
const std::vector<SolutionEntry>& catalog();
const SolutionEntry& find_entry(const std::string& name);

/// The unit-equation example with the unbalanced brace admits two readings
/// of one coefficient; the shipped catalog stores the reading whose residual
/// is zero.  The alternate reading is kept here for the resolution check.
std::string gt_alternate_g_expr();

struct BracketResolution {
    bool primary_zero = false;
    bool alternate_zero = false;
    fun::FunElem alternate_residual;
};
BracketResolution resolve_gt_bracketing();

}  // namespace fjl::sol

#endif
