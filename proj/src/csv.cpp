#include "voicegraph/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "voicegraph/errors.hpp"

namespace vg::csv {

std::string format_value(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::vector<std::string> split_line(const std::string& line, char delimiter) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == delimiter) {
            cells.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    cells.push_back(cur);
    return cells;
}

static std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

Table read(const std::filesystem::path& path, char delimiter) {
    const auto lines = read_lines(path);
    Table table;
    bool have_header = false;
    for (const auto& line : lines) {
        if (line.empty() || line.front() == '#') continue;
        auto cells = split_line(line, delimiter);
        if (!have_header) {
            table.header = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw WrongColumnCount("row with " + std::to_string(cells.size()) +
                                   " columns, header has " + std::to_string(table.header.size()) +
                                   " in " + path.string());
        }
        table.rows.push_back(std::move(cells));
    }
    if (!have_header) throw DataError("empty file: " + path.string());
    return table;
}

Table read_auto(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    std::string header;
    for (const auto& line : lines) {
        if (!line.empty() && line.front() != '#') {
            header = line;
            break;
        }
    }
    if (header.empty()) throw DataError("empty file: " + path.string());
    const auto commas = std::count(header.begin(), header.end(), ',');
    const auto semis = std::count(header.begin(), header.end(), ';');
    return read(path, semis > commas ? ';' : ',');
}

void write(const std::filesystem::path& path, const std::vector<std::string>& header,
           const std::vector<std::vector<std::string>>& rows,
           const std::vector<std::string>& trailing_comments) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path.string());
    auto emit = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    };
    emit(header);
    for (const auto& row : rows) emit(row);
    for (const auto& comment : trailing_comments) out << "# " << comment << '\n';
}

double parse_number(const std::string& cell, const std::string& context) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || end != begin + cell.size() || !std::isfinite(v)) {
        throw NonNumericCell("non-numeric cell '" + cell + "' in " + context);
    }
    return v;
}

} // namespace vg::csv
