#pragma once

#include <string>
#include <vector>

#include "cvq/sweep.hpp"

namespace cvq {

// shortest round-trip-ish formatting used everywhere numbers leave the library
std::string format_g12(double value);

std::string csv_escape(const std::string& field);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// writes to <path>.tmp first, then renames over the target, LF line endings
void write_csv_atomic(const std::string& path, const CsvTable& table);

std::vector<std::string> record_to_row(const SweepRecord& record);

inline const std::vector<std::string> kSweepHeader{"s", "r", "strategy", "metric", "value"};

} // namespace cvq
