#pragma once

#include <map>
#include <string>
#include <vector>

#include "gravwell/count.hpp"
#include "gravwell/tables.hpp"

namespace gravwell {

/// Fully resolved run parameters.
struct RunConfig
{
    CountParams params;
    std::vector<double> etas; // one count per entry (fig14 sweeps several)
    std::vector<Geometry> geometries;
    double h = 10;
    int levels = 9;
    bool levels_set = false;
    std::vector<double> grid;
    bool grid_set = false;
    std::string preset;
    std::string mode = "auto";
    std::string which = "f0";
    std::string method = "direct";
    bool tails = false;
    int samples = 21;
    std::string out;
    std::vector<std::string> warnings;
};

/// Raw key/value settings. Later assignments override earlier ones; preset
/// values sit below every explicitly set key.
class ConfigStore
{
  public:
    static std::vector<std::string> const& known_keys();

    /// Throws ValidationError for unknown keys.
    void set(std::string const& key, std::string const& value);
    /// Flat "key = value" lines, '#' starts a comment.
    void load_file(std::string const& path);
    bool has(std::string const& key) const;

    /// Parses and validates every field; ValidationError names the key and range.
    RunConfig resolve() const;

  private:
    std::map<std::string, std::string> values_;
};

/// Parses "A:B:STEP".
std::vector<double> parse_grid(std::string const& text);

/// Runs one of levels, rates, absorb, count, transport, scan, fnplot.
std::vector<Table> run_command(std::string const& command, RunConfig const& cfg);

} // namespace gravwell
