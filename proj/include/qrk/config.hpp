#pragma once

#include <map>
#include <optional>
#include <string>

namespace qrk {

struct RunConfig {
    std::string system = "classical";  // classical | q
    double nu = 0.5;
    std::optional<double> q;
    int truncation = 40;
    int quad_order = 200;
    std::string format = "csv";  // csv | json
    std::string output;          // empty: stdout

    // q present iff system == q; truncation >= 1; quad_order >= 8. Throws UsageError.
    // nu > 0 is checked where a system is built (special functions accept nu = 0).
    void validate() const;
};

// Flat "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> read_config_file(const std::string& path);

// Unknown keys and malformed values throw UsageError.
void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv);

}  // namespace qrk
