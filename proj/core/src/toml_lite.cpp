#include "sfl/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sfl::toml {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// strip a trailing comment that is not inside a string literal
std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

Value parse_scalar(const std::string& tok, int line) {
    if (tok.empty()) throw ParseError("empty value", line);
    if (tok == "true") return Value{true};
    if (tok == "false") return Value{false};
    if (tok.front() == '"') {
        if (tok.size() < 2 || tok.back() != '"')
            throw ParseError("unterminated string", line);
        return Value{tok.substr(1, tok.size() - 2)};
    }
    // try integer first, then float
    {
        int64_t iv = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), iv);
        if (ec == std::errc() && p == tok.data() + tok.size()) return Value{iv};
    }
    {
        char* end = nullptr;
        double dv = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() + tok.size()) return Value{dv};
    }
    throw ParseError("cannot parse value '" + tok + "'", line);
}

Value parse_value(const std::string& raw, int line) {
    std::string tok = trim(raw);
    if (!tok.empty() && tok.front() == '[') {
        if (tok.back() != ']') throw ParseError("unterminated array", line);
        Array arr;
        std::string inner = tok.substr(1, tok.size() - 2);
        std::string cur;
        bool in_str = false;
        for (char c : inner) {
            if (c == '"') in_str = !in_str;
            if (c == ',' && !in_str) {
                if (!trim(cur).empty()) arr.push_back(parse_scalar(trim(cur), line));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!trim(cur).empty()) arr.push_back(parse_scalar(trim(cur), line));
        return Value{arr};
    }
    return parse_scalar(tok, line);
}

}  // namespace

Document parse(const std::string& text) {
    Document doc;
    Table* current = &doc.root;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;

        if (line.front() == '[') {
            bool is_array = line.size() >= 2 && line[1] == '[';
            size_t open = is_array ? 2 : 1;
            size_t close = line.find(is_array ? "]]" : "]", open);
            if (close == std::string::npos)
                throw ParseError("malformed table header", line_no);
            std::string name = trim(line.substr(open, close - open));
            if (name.empty()) throw ParseError("empty table name", line_no);
            if (is_array) {
                doc.arrays[name].emplace_back();
                current = &doc.arrays[name].back();
            } else {
                if (doc.tables.count(name))
                    throw ParseError("duplicate table [" + name + "]", line_no);
                current = &doc.tables[name];
            }
            continue;
        }

        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key = value", line_no);
        std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ParseError("empty key", line_no);
        if (current->count(key))
            throw ParseError("duplicate key '" + key + "'", line_no);
        (*current)[key] = parse_value(line.substr(eq + 1), line_no);
    }
    return doc;
}

Document parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

namespace {

void write_scalar(std::ostream& os, const Value& v) {
    if (std::holds_alternative<int64_t>(v.v)) {
        os << std::get<int64_t>(v.v);
    } else if (std::holds_alternative<double>(v.v)) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(v.v));
        std::string s = buf;
        // keep floats recognizable as floats on reload
        if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
            s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
            s += ".0";
        os << s;
    } else if (std::holds_alternative<bool>(v.v)) {
        os << (std::get<bool>(v.v) ? "true" : "false");
    } else if (std::holds_alternative<std::string>(v.v)) {
        os << '"' << std::get<std::string>(v.v) << '"';
    } else {
        const Array& arr = std::get<Array>(v.v);
        os << '[';
        for (size_t i = 0; i < arr.size(); ++i) {
            if (i) os << ", ";
            write_scalar(os, arr[i]);
        }
        os << ']';
    }
}

void write_table(std::ostream& os, const Table& t) {
    for (const auto& [k, v] : t) {
        os << k << " = ";
        write_scalar(os, v);
        os << '\n';
    }
}

}  // namespace

std::string serialize(const Document& doc) {
    std::ostringstream os;
    write_table(os, doc.root);
    for (const auto& [name, t] : doc.tables) {
        os << '[' << name << "]\n";
        write_table(os, t);
        os << '\n';
    }
    for (const auto& [name, vec] : doc.arrays) {
        for (const Table& t : vec) {
            os << "[[" << name << "]]\n";
            write_table(os, t);
            os << '\n';
        }
    }
    return os.str();
}

}  // namespace sfl::toml
