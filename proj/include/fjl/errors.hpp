#ifndef FJL_ERRORS_HPP
#define FJL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fjl {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroDenominator : Error {
    explicit ZeroDenominator(const std::string& msg = "denominator reduces to zero")
        : Error(msg) {}
};

struct UnassignedParameter : Error {
    explicit UnassignedParameter(const std::string& name)
        : Error("parameter '" + name + "' has no assigned value") {}
};

struct OrderOverflow : Error {
    explicit OrderOverflow(const std::string& msg = "jet order above 3 required") : Error(msg) {}
};

struct ZeroExpression : Error {
    explicit ZeroExpression(const std::string& msg = "operation undefined on the zero expression")
        : Error(msg) {}
};

struct IncomparableExponents : Error {
    explicit IncomparableExponents(const std::string& detail)
        : Error("exponent comparison is assumption-dependent: " + detail) {}
};

struct EliminationFailure : Error {
    explicit EliminationFailure(const std::string& detail)
        : Error("cannot eliminate jets from relations: " + detail) {}
};

struct ConstraintRequired : Error {
    ConstraintRequired() : Error("operation requires the field constraint to be installed") {}
};

struct ExponentRelationMissing : Error {
    explicit ExponentRelationMissing(const std::string& detail)
        : Error("radical relation does not match entry exponents: " + detail) {}
};

struct ParseError : Error {
    std::size_t column;
    ParseError(std::size_t col, const std::string& what)
        : Error("parse error at column " + std::to_string(col) + ": " + what), column(col) {}
};

struct PoleOnCircle : Error {
    PoleOnCircle() : Error("a pole lies on the sampling circle") {}
};

struct UnsupportedFunctionClass : Error {
    explicit UnsupportedFunctionClass(const std::string& detail)
        : Error("function falls outside the supported evaluable classes: " + detail) {}
};

struct NonIntegerGenus : Error {
    explicit NonIntegerGenus(const std::string& detail)
        : Error("genus formula did not produce an integer: " + detail) {}
};

struct DivisionByZeroElement : Error {
    DivisionByZeroElement()
        : Error("curve lies in a coordinate plane or degenerate locus") {}
};

}  // namespace fjl

#endif
