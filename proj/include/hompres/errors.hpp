#pragma once

#include <stdexcept>
#include <string>

namespace hompres {

// Input text could not be parsed. `line` is 1-based, 0 when unknown.
struct parse_error : std::runtime_error {
    int line;
    explicit parse_error(const std::string& msg, int line_number = 0)
        : std::runtime_error(line_number > 0 ? "line " + std::to_string(line_number) + ": " + msg
                                             : msg),
          line(line_number) {}
};

// An exhaustive search or sweep would exceed the configured budget.
struct bound_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hompres
