#pragma once

#include <stdexcept>
#include <string>

namespace pathcross {

// Input outside an operation's contract (bad interval, negative c, ...).
// Mapped to exit code 2 by the CLI.
using domain_error = std::domain_error;

// Request exceeds a hard size or resolution limit. Mapped to exit code 3.
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input (CSV, g-spec, rules). Mapped to exit code 2.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pathcross
