#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

namespace sfcsim {

class TomlError : public std::runtime_error {
public:
    TomlError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Parses the TOML subset the scenario schema uses into a JSON value:
// [table] and [[array-of-tables]] headers, dotted keys, basic strings,
// integers, floats, booleans, arrays, and inline tables. Dates, multi-line
// strings, and literal strings are not supported.
nlohmann::json parse_toml(const std::string& text);

nlohmann::json load_toml_file(const std::string& path);

}  // namespace sfcsim
