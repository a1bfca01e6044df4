#include "gravwell.h"

#include <exception>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "gravwell/absorption.hpp"
#include "gravwell/airy.hpp"
#include "gravwell/config.hpp"
#include "gravwell/errors.hpp"
#include "gravwell/parallel.hpp"
#include "gravwell/tables.hpp"

struct gw_config
{
    gravwell::ConfigStore store;
    gravwell::RunConfig resolved;
    bool valid = false;
};

struct gw_tableset
{
    std::vector<gravwell::Table> tables;
    std::vector<std::vector<std::vector<std::string>>> text;
    std::string csv;
};

namespace {

thread_local std::string t_last_error;

gw_status fail(gw_status s, std::string msg)
{
    t_last_error = std::move(msg);
    return s;
}

template <class F>
gw_status guarded(F&& f)
{
    try
    {
        f();
        t_last_error.clear();
        return GW_OK;
    }
    catch (gravwell::ValidationError const& e)
    {
        return fail(GW_ERR_VALIDATION, e.what());
    }
    catch (gravwell::DomainError const& e)
    {
        return fail(GW_ERR_DOMAIN, e.what());
    }
    catch (gravwell::OverflowError const& e)
    {
        return fail(GW_ERR_OVERFLOW, e.what());
    }
    catch (gravwell::ConvergenceError const& e)
    {
        return fail(GW_ERR_NUMERICAL, e.what());
    }
    catch (gravwell::Error const& e)
    {
        return fail(GW_ERR_IO, e.what());
    }
    catch (std::bad_alloc const&)
    {
        return fail(GW_ERR_INTERNAL, "out of memory");
    }
    catch (std::exception const& e)
    {
        return fail(GW_ERR_INTERNAL, e.what());
    }
    catch (...)
    {
        return fail(GW_ERR_INTERNAL, "unknown error");
    }
}

bool table_ok(gw_tableset const* ts, size_t t)
{
    return ts && t < ts->tables.size();
}

} // namespace

extern "C" {

const char* gw_last_error(void)
{
    return t_last_error.c_str();
}

const char* gw_status_name(gw_status s)
{
    switch (s)
    {
    case GW_OK: return "ok";
    case GW_ERR_ARGUMENT: return "argument error";
    case GW_ERR_VALIDATION: return "validation error";
    case GW_ERR_DOMAIN: return "domain error";
    case GW_ERR_OVERFLOW: return "overflow error";
    case GW_ERR_NUMERICAL: return "numerical error";
    case GW_ERR_IO: return "i/o error";
    default: return "internal error";
    }
}

gw_status gw_config_create(gw_config** out)
{
    if (!out)
        return fail(GW_ERR_ARGUMENT, "gw_config_create: null output pointer");
    return guarded([&] { *out = new gw_config; });
}

void gw_config_destroy(gw_config* cfg)
{
    delete cfg;
}

gw_status gw_config_set(gw_config* cfg, const char* key, const char* value)
{
    if (!cfg || !key || !value)
        return fail(GW_ERR_ARGUMENT, "gw_config_set: null argument");
    return guarded([&] {
        cfg->valid = false;
        cfg->store.set(key, value);
    });
}

gw_status gw_config_load_file(gw_config* cfg, const char* path)
{
    if (!cfg || !path)
        return fail(GW_ERR_ARGUMENT, "gw_config_load_file: null argument");
    return guarded([&] {
        cfg->valid = false;
        cfg->store.load_file(path);
    });
}

gw_status gw_config_validate(gw_config* cfg)
{
    if (!cfg)
        return fail(GW_ERR_ARGUMENT, "gw_config_validate: null handle");
    return guarded([&] {
        cfg->valid = false;
        cfg->resolved = cfg->store.resolve();
        cfg->valid = true;
    });
}

size_t gw_config_warning_count(const gw_config* cfg)
{
    return cfg && cfg->valid ? cfg->resolved.warnings.size() : 0;
}

const char* gw_config_warning(const gw_config* cfg, size_t index)
{
    if (!cfg || !cfg->valid || index >= cfg->resolved.warnings.size())
        return nullptr;
    return cfg->resolved.warnings[index].c_str();
}

const char* gw_config_out(const gw_config* cfg)
{
    return cfg && cfg->valid ? cfg->resolved.out.c_str() : "";
}

gw_status gw_run(gw_config* cfg, const char* command, gw_tableset** out)
{
    if (!cfg || !command || !out)
        return fail(GW_ERR_ARGUMENT, "gw_run: null argument");
    *out = nullptr;
    return guarded([&] {
        if (!cfg->valid)
        {
            cfg->resolved = cfg->store.resolve();
            cfg->valid = true;
        }
        gravwell::set_default_threads(cfg->resolved.params.threads);
        auto ts = std::make_unique<gw_tableset>();
        ts->tables = gravwell::run_command(command, cfg->resolved);
        for (auto const& t : ts->tables)
        {
            std::vector<std::vector<std::string>> cells;
            for (auto const& row : t.rows)
            {
                std::vector<std::string> r;
                for (auto const& c : row)
                    r.push_back(gravwell::format_cell(c));
                cells.push_back(std::move(r));
            }
            ts->text.push_back(std::move(cells));
        }
        *out = ts.release();
    });
}

void gw_tableset_destroy(gw_tableset* ts)
{
    delete ts;
}

size_t gw_tableset_count(const gw_tableset* ts)
{
    return ts ? ts->tables.size() : 0;
}

const char* gw_table_label(const gw_tableset* ts, size_t t)
{
    return table_ok(ts, t) ? ts->tables[t].label.c_str() : nullptr;
}

size_t gw_table_rows(const gw_tableset* ts, size_t t)
{
    return table_ok(ts, t) ? ts->tables[t].rows.size() : 0;
}

size_t gw_table_cols(const gw_tableset* ts, size_t t)
{
    return table_ok(ts, t) ? ts->tables[t].columns.size() : 0;
}

const char* gw_table_column(const gw_tableset* ts, size_t t, size_t col)
{
    if (!table_ok(ts, t) || col >= ts->tables[t].columns.size())
        return nullptr;
    return ts->tables[t].columns[col].c_str();
}

const char* gw_table_cell(const gw_tableset* ts, size_t t, size_t row, size_t col)
{
    if (!table_ok(ts, t) || row >= ts->text[t].size() || col >= ts->text[t][row].size())
        return nullptr;
    return ts->text[t][row][col].c_str();
}

gw_status gw_table_value(const gw_tableset* ts, size_t t, size_t row, size_t col, double* value)
{
    if (!value || !table_ok(ts, t) || row >= ts->tables[t].rows.size()
        || col >= ts->tables[t].rows[row].size())
        return fail(GW_ERR_ARGUMENT, "gw_table_value: index out of range");
    auto const& c = ts->tables[t].rows[row][col];
    if (c.type == gravwell::Cell::Type::text)
        return fail(GW_ERR_ARGUMENT, "gw_table_value: text cell");
    *value = c.value;
    t_last_error.clear();
    return GW_OK;
}

gw_status gw_tableset_write(const gw_tableset* ts, const char* path)
{
    if (!ts || !path || !*path)
        return fail(GW_ERR_ARGUMENT, "gw_tableset_write: null or empty argument");
    return guarded([&] { gravwell::write_tables(ts->tables, path); });
}

gw_status gw_tableset_csv(const gw_tableset* ts, const char** text)
{
    if (!ts || !text)
        return fail(GW_ERR_ARGUMENT, "gw_tableset_csv: null argument");
    return guarded([&] {
        std::ostringstream os;
        for (std::size_t i = 0; i < ts->tables.size(); ++i)
        {
            if (i > 0)
                os << "# " << ts->tables[i].label << '\n';
            gravwell::write_csv(ts->tables[i], os);
        }
        auto* self = const_cast<gw_tableset*>(ts);
        self->csv = os.str();
        *text = self->csv.c_str();
    });
}

gw_status gw_airy(double x, double out[4])
{
    if (!out)
        return fail(GW_ERR_ARGUMENT, "gw_airy: null output");
    return guarded([&] {
        auto const v = gravwell::airy::airy_eval(x);
        out[0] = v.ai;
        out[1] = v.dai;
        out[2] = v.bi;
        out[3] = v.dbi;
    });
}

gw_status gw_airy_ai_log(double x, double* log_magnitude, int* sign)
{
    if (!log_magnitude || !sign)
        return fail(GW_ERR_ARGUMENT, "gw_airy_ai_log: null output");
    return guarded([&] {
        auto const v = gravwell::airy::airy_ai_log(x);
        *log_magnitude = v.log_magnitude;
        *sign = v.sign;
    });
}

gw_status gw_f0(double x, double* out)
{
    if (!out)
        return fail(GW_ERR_ARGUMENT, "gw_f0: null output");
    return guarded([&] { *out = gravwell::f0(x); });
}

gw_status gw_f1(double x, double* out)
{
    if (!out)
        return fail(GW_ERR_ARGUMENT, "gw_f1: null output");
    return guarded([&] { *out = gravwell::f1(x); });
}

gw_status gw_f1_quadrature(double x, double* out)
{
    if (!out)
        return fail(GW_ERR_ARGUMENT, "gw_f1_quadrature: null output");
    return guarded([&] { *out = gravwell::f1_quadrature(x); });
}

gw_status gw_f_full(double x, double y, double* out)
{
    if (!out)
        return fail(GW_ERR_ARGUMENT, "gw_f_full: null output");
    return guarded([&] { *out = gravwell::f_full(x, y); });
}

} // extern "C"
