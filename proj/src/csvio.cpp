#include "bohmflow/csvio.hpp"

#include <cmath>
#include <cstdio>

namespace bohmflow {

std::string fmt9(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw IoError("cannot open '" + path + "' for writing");
}

void CsvWriter::header(const std::vector<std::string>& names) { row(names); }

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (const auto& c : cells) cell(c);
    end_row();
}

void CsvWriter::cell(const std::string& s) {
    if (!first_in_row_) out_ << ',';
    out_ << s;
    first_in_row_ = false;
}

void CsvWriter::cell(double v) { cell(fmt9(v)); }

void CsvWriter::cell(long long v) { cell(std::to_string(v)); }

void CsvWriter::end_row() {
    out_ << '\n';
    first_in_row_ = true;
    if (!out_) throw IoError("write failure on CSV output");
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("write failure on '" + path + "'");
}

} // namespace bohmflow
