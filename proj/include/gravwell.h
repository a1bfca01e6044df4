#ifndef GRAVWELL_H
#define GRAVWELL_H

#include <stddef.h>

#if defined(GRAVWELL_BUILDING)
#define GW_API __attribute__((visibility("default")))
#else
#define GW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gw_status
{
    GW_OK = 0,
    GW_ERR_ARGUMENT = 1,   /* null handle, index out of range */
    GW_ERR_VALIDATION = 2, /* invalid parameter; message names key and range */
    GW_ERR_DOMAIN = 3,     /* argument outside a function's domain */
    GW_ERR_OVERFLOW = 4,   /* result not representable */
    GW_ERR_NUMERICAL = 5,  /* convergence or bracketing failure */
    GW_ERR_IO = 6,
    GW_ERR_INTERNAL = 7
} gw_status;

typedef struct gw_config gw_config;
typedef struct gw_tableset gw_tableset;

/* Message of the last failing call on this thread; never NULL. */
GW_API const char* gw_last_error(void);
GW_API const char* gw_status_name(gw_status status);

GW_API gw_status gw_config_create(gw_config** out);
GW_API void gw_config_destroy(gw_config* cfg);
GW_API gw_status gw_config_set(gw_config* cfg, const char* key, const char* value);
GW_API gw_status gw_config_load_file(gw_config* cfg, const char* path);
/* Parses every key; afterwards the warnings below are available. */
GW_API gw_status gw_config_validate(gw_config* cfg);
/* Index-based getters below return NULL for an index out of range. */
GW_API size_t gw_config_warning_count(const gw_config* cfg);
GW_API const char* gw_config_warning(const gw_config* cfg, size_t index);
/* Resolved output path ("" when unset). */
GW_API const char* gw_config_out(const gw_config* cfg);

/* command: levels, rates, absorb, count, transport, scan, fnplot. */
GW_API gw_status gw_run(gw_config* cfg, const char* command, gw_tableset** out);

GW_API void gw_tableset_destroy(gw_tableset* ts);
GW_API size_t gw_tableset_count(const gw_tableset* ts);
GW_API const char* gw_table_label(const gw_tableset* ts, size_t table);
GW_API size_t gw_table_rows(const gw_tableset* ts, size_t table);
GW_API size_t gw_table_cols(const gw_tableset* ts, size_t table);
GW_API const char* gw_table_column(const gw_tableset* ts, size_t table, size_t col);
/* Formatted cell text (15 significant digits for reals). */
GW_API const char* gw_table_cell(const gw_tableset* ts, size_t table, size_t row, size_t col);
/* Numeric cell value; GW_ERR_ARGUMENT for text cells. */
GW_API gw_status gw_table_value(const gw_tableset* ts, size_t table, size_t row, size_t col,
                                double* value);
/* One file per table: the path itself, or stem_label.ext when there are several. */
GW_API gw_status gw_tableset_write(const gw_tableset* ts, const char* path);
/* Whole table set as CSV text; tables after the first are preceded by "# label". */
GW_API gw_status gw_tableset_csv(const gw_tableset* ts, const char** text);

/* out[4] = {Ai, Ai', Bi, Bi'}. */
GW_API gw_status gw_airy(double x, double out[4]);
GW_API gw_status gw_airy_ai_log(double x, double* log_magnitude, int* sign);
GW_API gw_status gw_f0(double x, double* out);
GW_API gw_status gw_f1(double x, double* out);
GW_API gw_status gw_f1_quadrature(double x, double* out);
GW_API gw_status gw_f_full(double x, double y, double* out);

#ifdef __cplusplus
}
#endif

#endif
