#ifndef FZOPT_ERRORS_HPP
#define FZOPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fzopt {

/// Bad user input: malformed spaces, wrong arities, out-of-range values.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Bad external data: missing files, header mismatches, unparsable cells.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numeric failure: non-finite values where finite ones are required.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace fzopt

#endif
