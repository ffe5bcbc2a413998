#pragma once

#include <stdexcept>
#include <string>

namespace siltkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define SILTKIT_DEFINE_ERROR(Name)                                            \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}  \
    }

SILTKIT_DEFINE_ERROR(InvalidArgument);
SILTKIT_DEFINE_ERROR(NonAdmissible);
SILTKIT_DEFINE_ERROR(MalformedRelation);
SILTKIT_DEFINE_ERROR(UnknownVertex);
SILTKIT_DEFINE_ERROR(ZeroModule);
SILTKIT_DEFINE_ERROR(ChainConditionViolated);
SILTKIT_DEFINE_ERROR(TruncationUnsound);
SILTKIT_DEFINE_ERROR(CharacteristicUnsupported);
SILTKIT_DEFINE_ERROR(IndecomposabilityUndetermined);
SILTKIT_DEFINE_ERROR(MutationNotVerified);
SILTKIT_DEFINE_ERROR(PositiveCohomology);
SILTKIT_DEFINE_ERROR(SimpleNotOneDimensional);
SILTKIT_DEFINE_ERROR(IdempotentLiftMissing);
SILTKIT_DEFINE_ERROR(NotAugmentable);
SILTKIT_DEFINE_ERROR(NotInAmbient);

#undef SILTKIT_DEFINE_ERROR

/// Hom-pattern violation at (i, j, m) with the offending dimension.
class PatternFailed : public Error {
public:
    PatternFailed(std::size_t i, std::size_t j, int m, std::size_t dim, const std::string& what)
        : Error("PatternFailed: " + what), i_(i), j_(j), m_(m), dim_(dim) {}

    std::size_t i() const { return i_; }
    std::size_t j() const { return j_; }
    int m() const { return m_; }
    std::size_t dim() const { return dim_; }

private:
    std::size_t i_, j_;
    int m_;
    std::size_t dim_;
};

/// Raised by the input parsers; carries a 1-based source position.
class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& message)
        : Error("ParseError: " + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column), message_(message) {}

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    int line_;
    int column_;
    std::string message_;
};

} // namespace siltkit
