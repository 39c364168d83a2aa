#include "mpe/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mpe {

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // collapse -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void CsvWriter::comment(const std::string& text) {
    out_ << "# " << text << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ << ",";
        out_ << columns[i];
    }
    out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ",";
        out_ << format_double(values[i]);
    }
    out_ << "\n";
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, sep)) fields.push_back(field);
    if (!line.empty() && line.back() == sep) fields.emplace_back();
    return fields;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

CsvTable parse_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0) {
            table.comments.push_back(line.substr(2));
            continue;
        }
        if (line[0] == '#') {
            table.comments.push_back(line.substr(1));
            continue;
        }
        if (!have_header) {
            table.columns = split(line, ',');
            have_header = true;
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != table.columns.size())
            throw std::runtime_error("parse_csv: row width does not match header");
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) {
            std::size_t used = 0;
            double v;
            try {
                v = std::stod(f, &used);
            } catch (const std::exception&) {
                throw std::runtime_error("parse_csv: non-numeric field '" + f + "'");
            }
            if (used != f.size())
                throw std::runtime_error("parse_csv: non-numeric field '" + f + "'");
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw std::runtime_error("parse_csv: missing header row");
    return table;
}

void write_csv(std::ostream& out, const CsvTable& table) {
    CsvWriter w(out);
    for (const auto& c : table.comments) w.comment(c);
    w.header(table.columns);
    for (const auto& r : table.rows) w.row(r);
}

std::map<std::string, std::string> parse_config_file(std::istream& in) {
    std::map<std::string, std::string> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string entry = trim(line);
        if (entry.empty()) continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected 'key = value'");
        const std::string key = trim(entry.substr(0, eq));
        const std::string value = trim(entry.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": empty key or value");
        if (values.count(key))
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": duplicate key '" + key + "'");
        values[key] = value;
    }
    return values;
}

}  // namespace mpe
