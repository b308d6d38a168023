#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace bohmflow {

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// 9-significant-digit formatting, fixed across the code base so CSV
/// outputs diff bit-stably.
std::string fmt9(double v);

/// Minimal CSV emitter: comma separators, LF endings, fmt9 numbers.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);

    void header(const std::vector<std::string>& names);
    void row(const std::vector<std::string>& cells);

    void cell(const std::string& s);
    void cell(double v);
    void cell(long long v);
    void end_row();

  private:
    std::ofstream out_;
    bool first_in_row_ = true;
};

void write_text_file(const std::string& path, const std::string& text);

} // namespace bohmflow
