#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace sykh {

using Json = nlohmann::ordered_json;

/// Column-oriented result table. All columns must have the same length.
class Table {
public:
    struct Column {
        std::string name;
        std::variant<std::vector<double>, std::vector<std::string>> values;
    };

    void add_column(std::string name, std::vector<double> values);
    void add_column(std::string name, std::vector<std::string> values);

    std::size_t rows() const;
    const std::vector<Column>& columns() const { return columns_; }
    const std::vector<double>& numbers(const std::string& name) const;
    /// Appends another table's rows; column names and kinds must match.
    void append(const Table& other);

private:
    std::vector<Column> columns_;
    void check_length(std::size_t n) const;
};

/// 12 significant digits; nan and inf spelled out.
std::string format_number(double v);

std::string to_csv(const Table& table);
Json table_to_json(const Table& table, const Json& meta);
/// Inverse of table_to_json for the columns part (null reads back as NaN).
Table table_from_json(const Json& doc);

}  // namespace sykh
