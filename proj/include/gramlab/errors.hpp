#ifndef GRAMLAB_ERRORS_HPP
#define GRAMLAB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gramlab {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two objects that must agree in size do not.
class DimensionError : public Error {
public:
    DimensionError(const std::string& msg, std::size_t got, std::size_t expected)
        : Error(msg + " (got " + std::to_string(got) + ", expected " +
                std::to_string(expected) + ")"),
          got(got),
          expected(expected) {}

    std::size_t got;
    std::size_t expected;
};

class IndexError : public Error {
public:
    using Error::Error;
};

/// A matrix that must be invertible is singular. `offending` optionally
/// names the index subset whose Gram determinant vanished.
class SingularityError : public Error {
public:
    explicit SingularityError(const std::string& msg,
                              std::vector<std::size_t> offending = {})
        : Error(offending.empty() ? msg : msg + " (offending subset " +
                                              format_subset(offending) + ")"),
          offending(std::move(offending)) {}

    std::vector<std::size_t> offending;

private:
    static std::string format_subset(const std::vector<std::size_t>& s) {
        std::string out = "{";
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(s[i]);
        }
        return out + "}";
    }
};

/// A subset expansion was requested above the configured order cap.
class CapacityError : public Error {
public:
    CapacityError(std::size_t order, std::size_t cap)
        : Error("order " + std::to_string(order) +
                " exceeds the subset-expansion cap " + std::to_string(cap)),
          order(order),
          cap(cap) {}

    std::size_t order;
    std::size_t cap;
};

class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// The vector family cannot produce a usable ratio series (the reduced
/// Gram determinant stayed zero for the whole run).
class DegenerateFamilyError : public Error {
public:
    using Error::Error;
};

/// Text input (CSV cell, config value) failed to parse. Coordinates are
/// 1-based when they refer to a file.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t row = 0, std::size_t col = 0)
        : Error(locate(msg, row, col)), row(row), col(col) {}

    std::size_t row;
    std::size_t col;

private:
    static std::string locate(const std::string& msg, std::size_t row, std::size_t col) {
        if (row == 0) return msg;
        std::string out = msg + " at row " + std::to_string(row);
        if (col != 0) out += ", column " + std::to_string(col);
        return out;
    }
};

/// Two routes that must produce the same value disagreed. This always
/// indicates a bug or a numerically hopeless input, never a user error.
class IdentityMismatchError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace gramlab

#endif
