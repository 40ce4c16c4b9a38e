#pragma once

#include <stdexcept>
#include <string>

namespace hyperlet {

/// Base class for all errors thrown by this library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent input data (bad files, unknown ids, contract violations).
class data_error : public error {
public:
    using error::error;
};

/// Input text that failed to parse; carries the 1-based line number.
class parse_error : public data_error {
public:
    parse_error(int line, const std::string& message)
        : data_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Numerical failure (non-PSD kernel, zero-norm normalization, solver breakdown).
class numeric_error : public error {
public:
    using error::error;
};

}  // namespace hyperlet
