#include "qrk/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qrk/error.hpp"

namespace qrk {

namespace {

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used == v.size()) return d;
    } catch (const std::exception&) {
    }
    throw UsageError("config: " + key + " expects a number, got '" + v + "'");
}

int to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        int d = std::stoi(v, &used);
        if (used == v.size()) return d;
    } catch (const std::exception&) {
    }
    throw UsageError("config: " + key + " expects an integer, got '" + v + "'");
}

}  // namespace

void RunConfig::validate() const {
    if (system != "classical" && system != "q") throw UsageError("system must be classical or q");
    if (system == "q" && !q) throw UsageError("system q needs a value for q");
    if (system == "classical" && q) throw UsageError("q is only meaningful for system q");
    if (q && !(*q > 0 && *q < 1)) throw UsageError("q must lie in (0,1)");
    if (!std::isfinite(nu)) throw UsageError("nu must be finite");
    if (truncation < 1) throw UsageError("truncation must be >= 1");
    if (quad_order < 8) throw UsageError("quad_order must be >= 8");
    if (format != "csv" && format != "json") throw UsageError("format must be csv or json");
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
    for (const auto& [k, v] : kv) {
        if (k == "system") cfg.system = v;
        else if (k == "nu") cfg.nu = to_double(k, v);
        else if (k == "q") cfg.q = to_double(k, v);
        else if (k == "truncation") cfg.truncation = to_int(k, v);
        else if (k == "quad_order") cfg.quad_order = to_int(k, v);
        else if (k == "format") cfg.format = v;
        else if (k == "output") cfg.output = v;
        else throw UsageError("config: unknown key " + k);
    }
}

}  // namespace qrk
