#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sentcause {

/// Error categories; each maps onto one CLI exit code.
enum class ErrorKind {
    Config,     ///< exit 1
    Data,       ///< exit 2 (parse, duplicate key, insufficient data)
    Numerical,  ///< exit 3 (singular design)
    Io,         ///< exit 4
};

[[nodiscard]] int exit_code_for(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Malformed input row. `line` is 1-based and counts the header.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& msg);
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DuplicateKeyError : public Error {
public:
    explicit DuplicateKeyError(const std::string& msg) : Error(ErrorKind::Data, msg) {}
};

class InsufficientDataError : public Error {
public:
    explicit InsufficientDataError(const std::string& msg) : Error(ErrorKind::Data, msg) {}
};

/// Listwise deletion left fewer rows than required.
class InsufficientOverlapError : public InsufficientDataError {
public:
    explicit InsufficientOverlapError(const std::string& msg) : InsufficientDataError(msg) {}
};

/// Violated input precondition that is not a parse failure (e.g. index dates outside the calendar).
class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(ErrorKind::Data, msg) {}
};

class SingularDesignError : public Error {
public:
    explicit SingularDesignError(const std::string& msg) : Error(ErrorKind::Numerical, msg) {}
};

class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& msg)
        : Error(ErrorKind::Config, msg), field_(std::move(field)) {}
    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class IoError : public Error {
public:
    IoError(std::string path, const std::string& msg)
        : Error(ErrorKind::Io, msg), path_(std::move(path)) {}
    [[nodiscard]] const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace sentcause
