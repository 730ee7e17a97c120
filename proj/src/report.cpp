#include "sykh/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sykh {

void Table::check_length(std::size_t n) const {
    if (!columns_.empty() && n != rows())
        throw std::invalid_argument("table: column length " + std::to_string(n) + " does not match " +
                                    std::to_string(rows()));
}

void Table::add_column(std::string name, std::vector<double> values) {
    check_length(values.size());
    columns_.push_back({std::move(name), std::move(values)});
}

void Table::add_column(std::string name, std::vector<std::string> values) {
    check_length(values.size());
    columns_.push_back({std::move(name), std::move(values)});
}

std::size_t Table::rows() const {
    if (columns_.empty()) return 0;
    return std::visit([](const auto& v) { return v.size(); }, columns_.front().values);
}

const std::vector<double>& Table::numbers(const std::string& name) const {
    for (const auto& c : columns_)
        if (c.name == name) return std::get<std::vector<double>>(c.values);
    throw std::out_of_range("table: no column " + name);
}

void Table::append(const Table& other) {
    if (columns_.empty()) {
        columns_ = other.columns_;
        return;
    }
    if (other.columns_.size() != columns_.size()) throw std::invalid_argument("table: column mismatch");
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (columns_[c].name != other.columns_[c].name || columns_[c].values.index() != other.columns_[c].values.index())
            throw std::invalid_argument("table: column mismatch at " + columns_[c].name);
        std::visit(
            [&](auto& mine) {
                using V = std::decay_t<decltype(mine)>;
                const auto& theirs = std::get<V>(other.columns_[c].values);
                mine.insert(mine.end(), theirs.begin(), theirs.end());
            },
            columns_[c].values);
    }
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string to_csv(const Table& table) {
    std::ostringstream os;
    const auto& cols = table.columns();
    for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << csv_field(cols[c].name);
    os << '\n';
    for (std::size_t r = 0; r < table.rows(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c) os << ',';
            if (const auto* d = std::get_if<std::vector<double>>(&cols[c].values))
                os << format_number((*d)[r]);
            else
                os << csv_field(std::get<std::vector<std::string>>(cols[c].values)[r]);
        }
        os << '\n';
    }
    return os.str();
}

Json table_to_json(const Table& table, const Json& meta) {
    Json doc;
    doc["meta"] = meta;
    Json cols = Json::object();
    for (const auto& c : table.columns()) {
        Json arr = Json::array();
        if (const auto* d = std::get_if<std::vector<double>>(&c.values)) {
            for (double v : *d) {
                if (std::isfinite(v))
                    arr.push_back(v);
                else
                    arr.push_back(nullptr);
            }
        } else {
            for (const auto& s : std::get<std::vector<std::string>>(c.values)) arr.push_back(s);
        }
        cols[c.name] = std::move(arr);
    }
    doc["columns"] = std::move(cols);
    return doc;
}

Table table_from_json(const Json& doc) {
    Table t;
    for (const auto& [name, arr] : doc.at("columns").items()) {
        const bool text = !arr.empty() && arr.front().is_string();
        if (text) {
            t.add_column(name, arr.get<std::vector<std::string>>());
            continue;
        }
        std::vector<double> v;
        for (const auto& x : arr) v.push_back(x.is_null() ? std::numeric_limits<double>::quiet_NaN() : x.get<double>());
        t.add_column(name, std::move(v));
    }
    return t;
}

}  // namespace sykh
