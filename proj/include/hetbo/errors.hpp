#ifndef HETBO_ERRORS_HPP
#define HETBO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hetbo {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotSymmetricError : public Error {
public:
    using Error::Error;
};

class NotPositiveDefiniteError : public Error {
public:
    using Error::Error;
};

class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

class NonFiniteObjectiveError : public Error {
public:
    using Error::Error;
};

class NonPositiveVarianceError : public Error {
public:
    using Error::Error;
};

class EMDivergedError : public Error {
public:
    using Error::Error;
};

class EmptyDomainError : public Error {
public:
    using Error::Error;
};

class OutOfDomainError : public Error {
public:
    using Error::Error;
};

class PoolExhaustedError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// Parent of every data-file problem; the CLI maps these to exit code 3.
class DataError : public Error {
public:
    using Error::Error;
};

class FileNotFoundError : public DataError {
public:
    using DataError::DataError;
};

class MalformedRowError : public DataError {
public:
    MalformedRowError(const std::string& what, int line)
        : DataError(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class InsufficientDataError : public DataError {
public:
    using DataError::DataError;
};

} // namespace hetbo

#endif // HETBO_ERRORS_HPP
