#pragma once

#include <stdexcept>
#include <string>

namespace frobenius {

// Family violates Delta(Z) != 0 / j(Z) nonconstant.
class DegenerateFamily : public std::invalid_argument {
public:
    explicit DegenerateFamily(const std::string& what) : std::invalid_argument(what) {}
};

// Input lies outside the range where the counted identity is stated
// (ell < 17, p <= T, ...).
class HypothesisViolation : public std::domain_error {
public:
    explicit HypothesisViolation(const std::string& what) : std::domain_error(what) {}
};

// Malformed JSON spec or config document.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace frobenius
