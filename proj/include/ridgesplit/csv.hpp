#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace ridgesplit {

/// A double rendered with 17 significant digits (%.17g), enough to
/// round-trip any IEEE-754 binary64 value.
std::string format_double(double value);

/// RFC-4180 field quoting: fields containing commas, quotes or newlines are
/// wrapped in double quotes with embedded quotes doubled.
std::string csv_escape(const std::string& field);

/// Minimal CSV emitter: header row first, CRLF-free newlines, escaped fields.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);

    void write_row(const std::vector<std::string>& fields);
    bool good() const { return out_.good(); }

    static std::string cell(const std::string& s) { return s; }
    static std::string cell(const char* s) { return s; }
    static std::string cell(double v) { return format_double(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(long v) { return std::to_string(v); }
    static std::string cell(long long v) { return std::to_string(v); }
    static std::string cell(std::uint64_t v) { return std::to_string(v); }

  private:
    std::ofstream out_;
};

}  // namespace ridgesplit
