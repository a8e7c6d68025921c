#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>
#include <stdexcept>

namespace sfl::toml {

// Minimal reader/writer for the subset of TOML the config documents use:
// comments, [table] headers, [[array-of-tables]] headers, and key = value
// with integer, float, boolean, string, or flat array values.

struct Value;
using Array = std::vector<Value>;

struct Value {
    std::variant<int64_t, double, bool, std::string, Array> v;

    bool is_int() const { return std::holds_alternative<int64_t>(v); }
    bool is_number() const { return is_int() || std::holds_alternative<double>(v); }
    bool is_array() const { return std::holds_alternative<Array>(v); }

    double as_double() const {
        if (is_int()) return double(std::get<int64_t>(v));
        if (std::holds_alternative<double>(v)) return std::get<double>(v);
        throw std::runtime_error("value is not a number");
    }
    int64_t as_int() const {
        if (is_int()) return std::get<int64_t>(v);
        throw std::runtime_error("value is not an integer");
    }
    bool as_bool() const {
        if (std::holds_alternative<bool>(v)) return std::get<bool>(v);
        throw std::runtime_error("value is not a boolean");
    }
    const std::string& as_string() const {
        if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
        throw std::runtime_error("value is not a string");
    }
    const Array& as_array() const {
        if (is_array()) return std::get<Array>(v);
        throw std::runtime_error("value is not an array");
    }
};

using Table = std::map<std::string, Value>;

struct Document {
    Table root;                                        // keys before any header
    std::map<std::string, Table> tables;               // [name]
    std::map<std::string, std::vector<Table>> arrays;  // [[name]]

    bool has_table(const std::string& n) const { return tables.count(n) > 0; }
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line)
        : std::runtime_error("parse error at line " + std::to_string(line) + ": " + msg),
          line_no(line) {}
    int line_no;
};

Document parse(const std::string& text);
Document parse_file(const std::string& path);

std::string serialize(const Document& doc);

}  // namespace sfl::toml
