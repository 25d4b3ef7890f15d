#pragma once

#include <stdexcept>
#include <string>

namespace dcs {

// All user-facing failures carry a stable diagnostic code (E-PARSE, E-ELAB,
// E-CAP, E-IO, E-VERIFY) so scripts can match on them.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& message)
        : Error("E-PARSE",
                std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

class ElaborationError : public Error {
public:
    explicit ElaborationError(const std::string& message) : Error("E-ELAB", message) {}
};

class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& message) : Error("E-CAP", message) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error("E-IO", message) {}
};

class VerifyError : public Error {
public:
    explicit VerifyError(const std::string& message) : Error("E-VERIFY", message) {}
};

} // namespace dcs
