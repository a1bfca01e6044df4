#include "gravwell/tables.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gravwell/errors.hpp"

namespace gravwell {

std::string format_real(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.14e", v == 0 ? 0.0 : v);
    return buf;
}

std::string format_cell(Cell const& c)
{
    switch (c.type)
    {
    case Cell::Type::integer:
        return std::to_string(static_cast<long>(c.value));
    case Cell::Type::text:
        return c.text;
    default:
        return format_real(c.value);
    }
}

void write_csv(Table const& t, std::ostream& os)
{
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (auto const& row : t.rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << format_cell(row[i]);
        os << '\n';
    }
}

std::string table_path(std::string const& out, std::string const& label, bool multiple)
{
    if (!multiple)
        return out;
    std::filesystem::path p(out);
    std::string const stem = p.stem().string();
    std::string ext = p.extension().string();
    if (ext.empty())
        ext = ".csv";
    return (p.parent_path() / (stem + "_" + label + ext)).string();
}

void write_tables(std::vector<Table> const& tables, std::string const& out)
{
    bool const multiple = tables.size() > 1;
    for (auto const& t : tables)
    {
        std::string const path = table_path(out, t.label, multiple);
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw Error("out: cannot open '" + path + "' for writing");
        write_csv(t, f);
        if (!f)
            throw Error("out: write to '" + path + "' failed");
    }
}

} // namespace gravwell
