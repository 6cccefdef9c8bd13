#pragma once

#include <stdexcept>
#include <string>

namespace finfo {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid argument or violated precondition (bad distribution, shape mismatch, bad config).
class validation_error : public error {
public:
    explicit validation_error(const std::string& msg) : error(msg) {}
};

/// Input series too short for the requested window/lag combination.
class insufficient_data_error : public error {
public:
    explicit insufficient_data_error(const std::string& msg) : error(msg) {}
};

/// Degenerate numeric input: zero k-NN distances, collapsed sample range, etc.
class degenerate_input_error : public error {
public:
    explicit degenerate_input_error(const std::string& msg) : error(msg) {}
};

/// Two series that must share a time index do not.
class alignment_error : public error {
public:
    explicit alignment_error(const std::string& msg) : error(msg) {}
};

/// File parsing / ingestion failure; carries the offending line when known.
class ingestion_error : public error {
public:
    explicit ingestion_error(const std::string& msg, long line = -1)
        : error(line >= 0 ? msg + " (line " + std::to_string(line) + ")" : msg), line_(line) {}

    long line() const noexcept { return line_; }

private:
    long line_;
};

/// Requested analytic quantity is not defined for the given generator kind.
class unsupported_quantity_error : public error {
public:
    explicit unsupported_quantity_error(const std::string& msg) : error(msg) {}
};

} // namespace finfo
