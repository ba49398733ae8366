#ifndef ENTROUTE_CSV_HPP
#define ENTROUTE_CSV_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace entroute {

/// Formats a double with 9 significant digits (%.9g), the serialization
/// used in every CSV the tool emits.
std::string format_double(double value);

/// In-memory CSV builder. Content is assembled first and written in one
/// shot so failed runs never leave partial files behind.
class CsvBuilder {
public:
    explicit CsvBuilder(std::vector<std::string> header);

    CsvBuilder& begin_row();
    CsvBuilder& add(const std::string& value);
    CsvBuilder& add(double value);
    CsvBuilder& add(std::int64_t value);
    CsvBuilder& add(int value);

    const std::string& content();

    /// Writes the assembled document to `path`; throws std::runtime_error
    /// on I/O failure.
    void write(const std::string& path);

private:
    std::string buffer_;
    std::size_t columns_;
    std::size_t row_cells_ = 0;
    bool row_open_ = false;

    void close_row();
};

} // namespace entroute

#endif // ENTROUTE_CSV_HPP
