#pragma once

#include <string>

#include <json.hpp>

namespace latspec {

using Json = nlohmann::ordered_json;

/// One invocation of the command-line tool.
struct OutputRecord {
    std::string command;
    Json inputs = Json::object();
    Json results = Json::object();
    Json diagnostics = Json::array();
};

/// Floats in %.17g; non-finite floats as the strings "inf", "-inf", "nan".
/// Single line, newline-terminated.
std::string to_json(OutputRecord const& rec);

/// RFC 4180. A results entry named "table" (array of objects) becomes one row
/// per element; otherwise the flattened results form a single row.
std::string to_csv(OutputRecord const& rec);

OutputRecord parse_record(std::string const& text);

/// %.17g, or "inf"/"-inf"/"nan".
std::string format_double(double x);

} // namespace latspec
