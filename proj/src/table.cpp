#include "qrk/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "qrk/error.hpp"

namespace qrk {

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const Cell& c) {
    if (auto d = std::get_if<double>(&c)) return format_double(*d);
    return quote(std::get<std::string>(c));
}

// One CSV record; `pos` advances past the line end.
std::vector<std::string> read_record(const std::string& text, std::size_t& pos, std::vector<bool>& quoted) {
    std::vector<std::string> fields;
    quoted.clear();
    std::string cur;
    bool in_quotes = false, was_quoted = false;
    while (pos < text.size()) {
        char c = text[pos++];
        if (in_quotes) {
            if (c == '"') {
                if (pos < text.size() && text[pos] == '"') {
                    cur += '"';
                    ++pos;
                } else {
                    in_quotes = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            in_quotes = was_quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            quoted.push_back(was_quoted);
            cur.clear();
            was_quoted = false;
        } else if (c == '\n') {
            break;
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (in_quotes) throw UsageError("unterminated quoted CSV field");
    fields.push_back(cur);
    quoted.push_back(was_quoted);
    return fields;
}

Cell parse_cell(const std::string& s, bool quoted) {
    if (quoted) return s;
    if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (!s.empty() && end == s.c_str() + s.size()) return v;
    return s;
}

nlohmann::json to_j(const Cell& c) {
    if (auto d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return nullptr;
        return *d;
    }
    return std::get<std::string>(c);
}

Cell from_j(const nlohmann::json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (j.is_number()) return j.get<double>();
    if (j.is_boolean()) return j.get<bool>() ? 1.0 : 0.0;
    return j.get<std::string>();
}

}  // namespace

int Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

double Table::number(std::size_t row, const std::string& name) const {
    int c = column(name);
    if (c < 0) throw UsageError("missing column " + name);
    if (row >= rows.size() || static_cast<std::size_t>(c) >= rows[row].size()) throw UsageError("short row in table");
    if (auto d = std::get_if<double>(&rows[row][c])) return *d;
    throw UsageError("non-numeric value in column " + name);
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + quote(t.columns[i]);
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& t) {
    nlohmann::ordered_json doc;
    doc["meta"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.meta) doc["meta"][k] = to_j(v);
    doc["columns"] = t.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) r[t.columns[i]] = to_j(row[i]);
        doc["rows"].push_back(std::move(r));
    }
    return doc.dump(2) + "\n";
}

Table parse_csv(const std::string& text) {
    Table t;
    std::size_t pos = 0;
    std::vector<bool> quoted;
    if (text.empty()) throw UsageError("empty CSV");
    t.columns = read_record(text, pos, quoted);
    while (pos < text.size()) {
        auto fields = read_record(text, pos, quoted);
        if (fields.size() == 1 && fields[0].empty() && !quoted[0]) continue;
        if (fields.size() != t.columns.size())
            throw UsageError("CSV row with " + std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(t.columns.size()));
        std::vector<Cell> row;
        for (std::size_t i = 0; i < fields.size(); ++i) row.push_back(parse_cell(fields[i], quoted[i]));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table parse_json(const std::string& text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad JSON: ") + e.what());
    }
    Table t;
    if (doc.contains("meta"))
        for (auto it = doc["meta"].begin(); it != doc["meta"].end(); ++it) t.meta.emplace_back(it.key(), from_j(it.value()));
    if (doc.contains("columns")) t.columns = doc["columns"].get<std::vector<std::string>>();
    for (const auto& r : doc.value("rows", nlohmann::ordered_json::array())) {
        if (t.columns.empty())
            for (auto it = r.begin(); it != r.end(); ++it) t.columns.push_back(it.key());
        std::vector<Cell> row;
        for (const auto& c : t.columns) row.push_back(r.contains(c) ? from_j(r[c]) : Cell(std::numeric_limits<double>::quiet_NaN()));
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace qrk
