#ifndef SCARR_ERRORS_HPP
#define SCARR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scarr {

// Base class for all workbench errors. Input-shaped problems (bad spec
// files, undeclared symbols) and convention bugs (EigenExtractionFailure)
// both derive from here; values like Inconsistent / NoSolution / Diverges
// are returned, not thrown.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class UnknownSymbol : public Error {
public:
    explicit UnknownSymbol(const std::string& name)
        : Error("unknown symbol: " + name) {}
};

class DivisionByNonDeclared : public Error {
public:
    explicit DivisionByNonDeclared(const std::string& what)
        : Error("division by expression not provably nonvanishing: " + what) {}
};

class OddCoordinate : public Error {
public:
    explicit OddCoordinate(const std::string& name)
        : Error("even differentiation with respect to odd coordinate: " + name) {}
};

class EvenCoordinate : public Error {
public:
    explicit EvenCoordinate(const std::string& name)
        : Error("odd derivative with respect to even coordinate: " + name) {}
};

class ChartMismatch : public Error {
public:
    ChartMismatch() : Error("operands live on different charts") {}
};

class NonInvertibleJacobian : public Error {
public:
    explicit NonInvertibleJacobian(const std::string& why)
        : Error("coordinate map is not invertible: " + why) {}
};

class SubstitutionUnsupported : public Error {
public:
    explicit SubstitutionUnsupported(const std::string& why)
        : Error("substitution not representable in the coefficient ring: " + why) {}
};

class UnsupportedOddDimension : public Error {
public:
    explicit UnsupportedOddDimension(std::size_t m)
        : Error("operation requires exactly one odd coordinate, chart has " +
                std::to_string(m)) {}
};

class UnsupportedCoefficients : public Error {
public:
    explicit UnsupportedCoefficients(const std::string& why)
        : Error("coefficients outside the supported ring: " + why) {}
};

class DualFormInvalid : public Error {
public:
    DualFormInvalid() : Error("one-form does not pair to 1 with the odd generator") {}
};

class EigenExtractionFailure : public Error {
public:
    explicit EigenExtractionFailure(const std::string& why)
        : Error("covariant derivative of the odd generator is not a multiple of it: " + why) {}
};

class LiftVerificationFailure : public Error {
public:
    explicit LiftVerificationFailure(const std::string& why)
        : Error("lifted reduced Killing field failed the full check: " + why) {}
};

class NonIntegerWeight : public Error {
public:
    explicit NonIntegerWeight(const std::string& what)
        : Error("rescaling weight is not an integer power of s: " + what) {}
};

class ParityViolation : public Error {
public:
    explicit ParityViolation(const std::string& what)
        : Error("parity violation: " + what) {}
};

class SymmetryConflict : public Error {
public:
    explicit SymmetryConflict(const std::string& what)
        : Error("metric entry conflicts with graded symmetry: " + what) {}
};

// Parse errors carry position information for the CLI to render.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, std::size_t column, const std::string& msg)
        : Error("syntax error at " + std::to_string(line) + ":" +
                std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace scarr

#endif
