#pragma once

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace zcsync::cli {

enum class Format { Csv, Json, Both };

// Comma-separated rows with a header line; '\n' line endings; doubles with
// 17 significant digits (negative zero printed as 0).
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    CsvTable& row();
    CsvTable& add(long v);
    CsvTable& add(double v);
    CsvTable& add(const std::string& v);

    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string format_double(double v);

// Writes to a temporary sibling file, then renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

// Emits CSV and/or JSON to `out` (stdout when empty). With Format::Both and
// a path, the CSV goes to <stem>.csv and the JSON to <stem>.json.
void emit(const std::optional<CsvTable>& csv, const std::optional<nlohmann::ordered_json>& json, Format format,
          const std::string& out);

} // namespace zcsync::cli
