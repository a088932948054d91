#pragma once
#include <string>
#include <utility>
#include <vector>

namespace kgcli {

struct Cell {
    bool is_num;
    double num;
    std::string str;
};

Cell num_cell(double v);
Cell str_cell(std::string s);

struct Report {
    std::string command;
    std::vector<std::pair<std::string, Cell>> params;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> status;
};

// 12 significant digits, locale-free
std::string fmt_num(double v);

std::string render_csv(const Report& r);
std::string render_json(const Report& r);

// write to stdout or out_path; returns 0, or 1 when the file cannot be written
int emit(const Report& r, const std::string& format, const std::string& out_path);

} // namespace kgcli
