#pragma once

#include <cstdio>
#include <string>
#include <vector>
#include <fstream>
#include <stdexcept>

namespace sfl {

// Fixed numeric formatting so CSV bodies are byte-identical across reruns.
inline std::string fmt_double(double v, const char* spec = "%.10g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

// %.17g round-trips doubles exactly
inline std::string fmt_double_exact(double v) { return fmt_double(v, "%.17g"); }

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : ncols_(header.size()) {
        append_row(header);
    }

    void append_row(const std::vector<std::string>& cells) {
        if (cells.size() != ncols_)
            throw std::invalid_argument("csv row width mismatch");
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) body_ += ',';
            body_ += cells[i];
        }
        body_ += '\n';
    }

    const std::string& body() const { return body_; }

    void write_file(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + path);
        out << body_;
    }

private:
    size_t ncols_;
    std::string body_;
};

}  // namespace sfl
