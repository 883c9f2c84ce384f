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

#pragma once

// Minimal CSV I/O: header row, LF endings, floats at 17 significant digits.

#include <cstdint>
#include <fstream>
#include <string>
#include <type_traits>
#include <vector>

namespace erwlil::cli {

/// 17 significant digits; "nan", "inf" and "-inf" for non-finite values.
std::string format_real(double v);

class CsvWriter {
public:
    CsvWriter(const std::string& path, std::vector<std::string> columns);

    template <class... Ts>
    void row(const Ts&... cells) {
        static_assert(sizeof...(Ts) > 0);
        std::string line;
        bool first = true;
        auto put = [&](const auto& c) {
            if (!first) line += ',';
            first = false;
            line += cell(c);
        };
        (put(cells), ...);
        write_line(line, sizeof...(Ts));
    }

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    std::size_t rows() const noexcept { return rows_; }
    const std::string& path() const noexcept { return path_; }

    /// Flushes and closes; throws if the stream failed.
    void close();

private:
    template <class T>
    static std::string cell(const T& v) {
        if constexpr (std::is_floating_point_v<T>) {
            return format_real(v);
        } else if constexpr (std::is_integral_v<T>) {
            return std::to_string(v);
        } else {
            return std::string(v);
        }
    }
    void write_line(const std::string& line, std::size_t cells);

    std::string path_;
    std::vector<std::string> columns_;
    std::ofstream stream_;
    std::size_t rows_ = 0;
};

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    /// Index of a column; throws InvalidArgument if absent.
    std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

}  // namespace erwlil::cli
