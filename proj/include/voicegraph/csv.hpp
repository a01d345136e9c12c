#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace vg::csv {

// All numeric output goes through this: 10 significant digits, locale-free.
std::string format_value(double v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows; // each row has header.size() cells
};

// Reads a delimited file. Lines starting with '#' are skipped. Cell counts are
// validated against the header.
Table read(const std::filesystem::path& path, char delimiter);

// Detects ',' vs ';' from the header line (whichever occurs more often).
Table read_auto(const std::filesystem::path& path);

// Writes header + rows with ',' and LF line endings.
void write(const std::filesystem::path& path, const std::vector<std::string>& header,
           const std::vector<std::vector<std::string>>& rows,
           const std::vector<std::string>& trailing_comments = {});

// Strict double parser; throws NonNumericCell (with context) on anything that
// is not a finite number.
double parse_number(const std::string& cell, const std::string& context);

std::vector<std::string> split_line(const std::string& line, char delimiter);

} // namespace vg::csv
