/*
   Copyright 2026 The erwlil Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "erwlil/cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "erwlil/errors.hpp"

namespace erwlil::cli {

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, std::vector<std::string> columns)
    : path_(path), columns_(std::move(columns)), stream_(path, std::ios::binary | std::ios::trunc) {
    require(static_cast<bool>(stream_), "output file writable: " + path);
    std::string header;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) header += ',';
        header += columns_[i];
    }
    stream_ << header << '\n';
}

void CsvWriter::write_line(const std::string& line, std::size_t cells) {
    if (cells != columns_.size()) {
        throw std::logic_error("CSV row width " + std::to_string(cells) + " != " + std::to_string(columns_.size()));
    }
    stream_ << line << '\n';
    ++rows_;
}

void CsvWriter::close() {
    stream_.close();
    if (stream_.fail()) throw std::runtime_error("failed writing " + path_);
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    throw InvalidArgument("constraint violated: CSV has a '" + name + "' column");
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "CSV file readable: " + path);
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        return cells;
    };
    CsvTable t;
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), "CSV has a header row: " + path);
    t.columns = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split(line);
        require(cells.size() == t.columns.size(), "CSV rows match the header width: " + path);
        t.rows.push_back(std::move(cells));
    }
    return t;
}

}  // namespace erwlil::cli
