#ifndef LSQ_ERRORS_HPP
#define LSQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lsq {

// 1-based position in a source text; (0,0) means "no position known".
struct SourcePos {
    int line = 0;
    int column = 0;
    bool known() const { return line > 0 && column > 0; }
    std::string to_string() const;
};

// Base class for every error the library raises.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Lexing/parsing failure. Always carries a position.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string &msg, SourcePos pos);
    SourcePos pos;
};

enum class TypeErrorKind {
    TypeMismatch,
    UnboundVariable,
    AnnotationRequired,
    NonLinearUseOfSpanVariable,
};

class TypeError : public Error {
public:
    TypeError(TypeErrorKind kind, const std::string &msg);
    TypeErrorKind kind;
};

enum class ReduceErrorKind {
    StuckTerm,
    ZeroNorm,
    FuelExhausted,
    NotCanonical,
};

class ReduceError : public Error {
public:
    ReduceError(ReduceErrorKind kind, const std::string &msg);
    ReduceErrorKind kind;
};

enum class DataErrorKind {
    BadShape,
    BadLength,
    UnknownName,
    NonPositive,
};

class DataError : public Error {
public:
    DataError(DataErrorKind kind, const std::string &msg);
    DataErrorKind kind;
};

} // namespace lsq

#endif
