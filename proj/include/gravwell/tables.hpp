#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gravwell {

struct Cell
{
    enum class Type
    {
        real,
        integer,
        text
    };
    Type type = Type::real;
    double value = 0;
    std::string text;

    static Cell real(double v) { return {Type::real, v, {}}; }
    static Cell integer(long v) { return {Type::integer, static_cast<double>(v), {}}; }
    static Cell label(std::string s) { return {Type::text, 0, std::move(s)}; }
};

struct Table
{
    std::string label;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Fixed scientific notation with 15 significant digits.
std::string format_real(double v);
std::string format_cell(Cell const& c);

void write_csv(Table const& t, std::ostream& os);

/// Path for one of several tables: stem_label.ext; the path itself when single.
std::string table_path(std::string const& out, std::string const& label, bool multiple);

/// Writes every table; throws Error on I/O failure.
void write_tables(std::vector<Table> const& tables, std::string const& out);

} // namespace gravwell
