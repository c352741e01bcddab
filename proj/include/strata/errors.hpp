#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace strata {

enum class Errc {
    DuplicateId,
    DanglingReference,
    SelfLink,
    InvalidValue,
    SyntaxError,
    WrongLayer,
    NotALink,
    NoProjection,
    IdNotQuotable,
    UnknownElement,
    NoRequirements,
    NotAccessible,
};

const char* errc_name(Errc code);

/// Library error carrying a machine-readable code and the offending subject.
class Error : public std::runtime_error {
public:
    Error(Errc code, std::string subject, const std::string& message)
        : std::runtime_error(message), code_(code), subject_(std::move(subject)) {}

    Errc code() const { return code_; }
    const std::string& subject() const { return subject_; }

private:
    Errc code_;
    std::string subject_;
};

/// Raised by build_model. Records which input element was at fault so a parser
/// can map the failure back to a source line.
class BuildError : public Error {
public:
    enum class Kind { Component, Link, Projection, Requirement, Model };

    BuildError(Errc code, std::string subject, const std::string& message, Kind kind,
               std::size_t index)
        : Error(code, std::move(subject), message), kind_(kind), index_(index) {}

    Kind kind() const { return kind_; }
    std::size_t index() const { return index_; }

private:
    Kind kind_;
    std::size_t index_;
};

/// Text-format error with a 1-based source position. `cause` is SyntaxError
/// for grammar problems, or the underlying build error code when a parsed
/// model fails referential checks.
class ParseError : public Error {
public:
    ParseError(int line, int col, const std::string& message,
               Errc cause = Errc::SyntaxError)
        : Error(Errc::SyntaxError,
                std::to_string(line) + ":" + std::to_string(col),
                std::to_string(line) + ":" + std::to_string(col) + ": " + message),
          line_(line), col_(col), cause_(cause) {}

    int line() const { return line_; }
    int col() const { return col_; }
    Errc cause() const { return cause_; }

private:
    int line_;
    int col_;
    Errc cause_;
};

}  // namespace strata
