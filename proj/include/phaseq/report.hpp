#ifndef PHASEQ_REPORT_HPP
#define PHASEQ_REPORT_HPP

#include <string>
#include <vector>

#include "phaseq/grid.hpp"

namespace phaseq {

inline constexpr const char* tool_version = "1.0.0";

// One named check inside a run manifest.
struct Check {
    std::string name;
    double value;
    double tolerance;
    bool pass;
};

// Every emitted artifact references exactly one manifest.  Serialization is
// deterministic (sorted keys, fixed float formatting, no timestamps).
struct RunManifest {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> config; // echoed key/value
    std::vector<Check> checks;
    std::vector<std::string> outputs;

    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, long value);
    bool all_pass() const;
    std::string to_json() const;
};

// Plain rect-raster heatmap of |f|, re(f) and im(f) side by side.
std::string field_to_svg(const PhaseField& f);

// Log-log error plot for scan tables.
std::string scan_to_svg(const std::vector<std::pair<double, double>>& rows);

} // namespace phaseq

#endif
