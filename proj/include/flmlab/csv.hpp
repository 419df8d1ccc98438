#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace flmlab {

// Header row plus data rows; '.' decimals, '\n' line ends, doubles at 17
// significant digits. Cells containing ',', '"' or a newline are quoted.
class CsvTable {
public:
    CsvTable() = default;
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);
    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }
    std::string str() const;

    static std::string cell(double v);
    static std::string cell(long long v);
    static std::string cell(unsigned long long v);
    static std::string cell(int v) { return cell(static_cast<long long>(v)); }
    static std::string cell(long v) { return cell(static_cast<long long>(v)); }
    static std::string cell(unsigned long v) { return cell(static_cast<unsigned long long>(v)); }
    static std::string cell(bool v) { return v ? "1" : "0"; }
    static std::string cell(const std::string& v) { return v; }
    static std::string cell(const char* v) { return v; }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

// FNV-1a of the bytes, as 16 lowercase hex digits.
std::string checksum_hex(const std::string& bytes);

// Writes through a temporary file and a rename, so readers never see a
// partial file.
void write_file_atomic(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

} // namespace flmlab
