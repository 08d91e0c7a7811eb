#include "oplab/report.hpp"

#include <cstdio>

#include "oplab/errors.hpp"

namespace oplab {

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
    if (width_ == 0) throw Error("csv: empty header");
    rows_.push_back(std::move(header));
}

void CsvWriter::add_row(std::vector<std::string> cells) {
    if (cells.size() != width_) throw Error("csv: row width mismatch");
    rows_.push_back(std::move(cells));
}

std::string CsvWriter::str() const {
    std::string out;
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

std::string CsvWriter::num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string CsvWriter::num(std::size_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%zu", v);
    return buf;
}

}  // namespace oplab
