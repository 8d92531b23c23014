#include "cvq/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace cvq {

std::string format_g12(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char ch : field) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

void write_csv_atomic(const std::string& path, const CsvTable& table) {
    namespace fs = std::filesystem;
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        auto emit = [&out](const std::vector<std::string>& row) {
            for (size_t i = 0; i < row.size(); ++i) {
                if (i) out << ',';
                out << csv_escape(row[i]);
            }
            out << '\n';
        };
        emit(table.header);
        for (const auto& row : table.rows) emit(row);
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    fs::rename(tmp, path);
}

std::vector<std::string> record_to_row(const SweepRecord& record) {
    return {format_g12(record.s), format_g12(record.r), record.strategy, record.metric,
            format_g12(record.value)};
}

} // namespace cvq
