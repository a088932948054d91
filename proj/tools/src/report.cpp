#include "report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace kgcli {

Cell num_cell(double v) { return {true, v, {}}; }
Cell str_cell(std::string s) { return {false, 0.0, std::move(s)}; }

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

std::string cell_text(const Cell& c) { return c.is_num ? fmt_num(c.num) : c.str; }

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (const char ch : s) {
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(ch) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                out += buf;
            } else {
                out += ch;
            }
        }
    }
    return out;
}

std::string json_cell(const Cell& c) {
    return c.is_num ? fmt_num(c.num) : "\"" + json_escape(c.str) + "\"";
}

void json_object(std::string& out, const std::vector<std::pair<std::string, Cell>>& kv,
                 const char* indent) {
    out += "{";
    bool first = true;
    for (const auto& [k, v] : kv) {
        if (!first) out += ",";
        first = false;
        out += "\n";
        out += indent;
        out += "\"" + json_escape(k) + "\": " + json_cell(v);
    }
    if (!first) {
        out += "\n";
        out += indent + 2; // dedent two spaces for the closing brace
    }
    out += "}";
}

} // namespace

std::string render_csv(const Report& r) {
    std::string out = "# kummer-gap " + r.command + "\n";
    for (const auto& [k, v] : r.params) out += "# " + k + " = " + cell_text(v) + "\n";
    for (size_t i = 0; i < r.columns.size(); ++i) {
        if (i) out += ",";
        out += r.columns[i];
    }
    out += "\n";
    for (const auto& row : r.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += cell_text(row[i]);
        }
        out += "\n";
    }
    for (const auto& [k, v] : r.status) out += "# " + k + " = " + cell_text(v) + "\n";
    return out;
}

std::string render_json(const Report& r) {
    std::string out = "{\n  \"command\": \"" + json_escape(r.command) + "\",\n  \"params\": ";
    json_object(out, r.params, "    ");
    out += ",\n  \"columns\": [";
    for (size_t i = 0; i < r.columns.size(); ++i) {
        if (i) out += ", ";
        out += "\"" + json_escape(r.columns[i]) + "\"";
    }
    out += "],\n  \"rows\": [";
    for (size_t j = 0; j < r.rows.size(); ++j) {
        if (j) out += ",";
        out += "\n    [";
        for (size_t i = 0; i < r.rows[j].size(); ++i) {
            if (i) out += ", ";
            out += json_cell(r.rows[j][i]);
        }
        out += "]";
    }
    out += r.rows.empty() ? "],\n" : "\n  ],\n";
    out += "  \"status\": ";
    json_object(out, r.status, "    ");
    out += "\n}\n";
    return out;
}

int emit(const Report& r, const std::string& format, const std::string& out_path) {
    const std::string text = format == "json" ? render_json(r) : render_csv(r);
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        std::cerr << "kummer-gap: cannot open " << out_path << " for writing\n";
        return 1;
    }
    f << text;
    return f.good() ? 0 : 1;
}

} // namespace kgcli
