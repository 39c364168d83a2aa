// io.hpp
// Deterministic text output: numbers at 12 significant digits, CSV with a
// header row and optional "# " provenance comments, and the flat key=value
// config-file format used by the CLI.  Written files re-parse to the same
// values and re-emit byte-identically.

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace mpe {

// 12 significant digits, %g style; -0 is normalized to 0.
std::string format_double(double v);

class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void comment(const std::string& text);            // "# text"
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);

  private:
    std::ostream& out_;
};

struct CsvTable {
    std::vector<std::string> comments;  // without the "# " prefix
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Parses what CsvWriter emits; throws std::runtime_error on malformed input.
CsvTable parse_csv(std::istream& in);

void write_csv(std::ostream& out, const CsvTable& table);

// Flat "key = value" config file; '#' starts a comment, blank lines are
// skipped.  Duplicate keys and lines without '=' are errors.
std::map<std::string, std::string> parse_config_file(std::istream& in);

}  // namespace mpe
