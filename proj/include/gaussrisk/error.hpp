#pragma once

#include <stdexcept>
#include <string>

namespace gaussrisk {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Too few samples of a class to estimate its moments.
class InsufficientData : public Error {
public:
    using Error::Error;
};

/// sqrt(w' S w) fell below the degeneracy threshold; the objectives would divide by it.
class DegenerateProjection : public Error {
public:
    using Error::Error;
};

/// A moment model that violates positive semidefiniteness.
class InvalidModel : public Error {
public:
    using Error::Error;
};

class SingularModel : public Error {
public:
    using Error::Error;
};

/// The discriminant direction vanished (equal class means).
class DegenerateModel : public Error {
public:
    using Error::Error;
};

class NoInitializer : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace gaussrisk
