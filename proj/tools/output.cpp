#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace zcsync::cli {

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row() {
    rows_.emplace_back();
    return *this;
}

CsvTable& CsvTable::add(long v) {
    rows_.back().push_back(std::to_string(v));
    return *this;
}

CsvTable& CsvTable::add(double v) {
    rows_.back().push_back(format_double(v));
    return *this;
}

CsvTable& CsvTable::add(const std::string& v) {
    rows_.back().push_back(v);
    return *this;
}

std::string CsvTable::str() const {
    std::string s;
    auto line = [&s](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) s += ',';
            s += cells[i];
        }
        s += '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return s;
}

std::string format_double(double v) {
    if (v == 0.0) v = 0.0; // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f << content;
        if (!f.flush()) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void emit(const std::optional<CsvTable>& csv, const std::optional<nlohmann::ordered_json>& json, Format format,
          const std::string& out) {
    const bool want_csv = csv && format != Format::Json;
    const bool want_json = json && format != Format::Csv;
    const std::string json_text = want_json ? json->dump(2) + "\n" : std::string{};

    if (out.empty()) {
        if (want_csv) std::cout << csv->str();
        if (want_csv && want_json) std::cout << '\n';
        if (want_json) std::cout << json_text;
        std::cout.flush();
        return;
    }
    std::filesystem::path path(out);
    if (want_csv && want_json) {
        auto stem = path;
        if (stem.extension() == ".csv" || stem.extension() == ".json") stem.replace_extension();
        auto csv_path = stem;
        csv_path += ".csv";
        auto json_path = stem;
        json_path += ".json";
        write_atomic(csv_path, csv->str());
        write_atomic(json_path, json_text);
    } else if (want_csv) {
        write_atomic(path, csv->str());
    } else if (want_json) {
        write_atomic(path, json_text);
    }
}

} // namespace zcsync::cli
