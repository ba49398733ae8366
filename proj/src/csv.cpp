#include "entroute/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace entroute {

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.9g", value);
    return buffer;
}

CsvBuilder::CsvBuilder(std::vector<std::string> header) : columns_(header.size()) {
    if (header.empty()) {
        throw std::invalid_argument("csv needs at least one column");
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i > 0) {
            buffer_ += ',';
        }
        buffer_ += header[i];
    }
    buffer_ += '\n';
}

CsvBuilder& CsvBuilder::begin_row() {
    close_row();
    row_open_ = true;
    row_cells_ = 0;
    return *this;
}

CsvBuilder& CsvBuilder::add(const std::string& value) {
    if (!row_open_) {
        throw std::logic_error("csv cell added outside a row");
    }
    if (row_cells_ > 0) {
        buffer_ += ',';
    }
    buffer_ += value;
    ++row_cells_;
    return *this;
}

CsvBuilder& CsvBuilder::add(double value) {
    return add(format_double(value));
}

CsvBuilder& CsvBuilder::add(std::int64_t value) {
    return add(std::to_string(value));
}

CsvBuilder& CsvBuilder::add(int value) {
    return add(std::to_string(value));
}

void CsvBuilder::close_row() {
    if (!row_open_) {
        return;
    }
    if (row_cells_ != columns_) {
        throw std::logic_error("csv row has wrong cell count");
    }
    buffer_ += '\n';
    row_open_ = false;
}

const std::string& CsvBuilder::content() {
    close_row();
    return buffer_;
}

void CsvBuilder::write(const std::string& path) {
    close_row();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out << buffer_;
    if (!out) {
        throw std::runtime_error("failed writing output file: " + path);
    }
}

} // namespace entroute
