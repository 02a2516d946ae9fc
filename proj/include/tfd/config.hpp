// config.hpp — Run configuration shared by the CLI subcommands: truncation,
// output format, RNG seed, parallelism, and named tolerance overrides.
// Config files are flat key=value text; flags override file values.

#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tfd {

struct RunConfig {
    int n_max = 40;
    std::string format = "csv";  // csv | json
    unsigned seed = 20240809;
    bool parallel = false;
    std::map<std::string, double> tolerances{
        {"tail", 1e-10},
        {"gibbs-tail", 1e-12},
        {"minimizer", 1e-14},
        {"kms", 1e-8},
        {"unitarity", 1e-12},
    };
    int label_digits = 12;

    double tol(const std::string& name) const {
        auto it = tolerances.find(name);
        if (it == tolerances.end()) {
            throw std::invalid_argument("RunConfig: unknown tolerance \"" + name + "\"");
        }
        return it->second;
    }

    void set_tolerance(const std::string& name, double value) {
        if (!(value > 0.0)) {
            throw std::invalid_argument("RunConfig: tolerance \"" + name + "\" must be > 0");
        }
        tolerances[name] = value;
    }

    void validate() const {
        if (n_max < 1) throw std::invalid_argument("RunConfig: n_max must be >= 1");
        if (format != "csv" && format != "json") {
            throw std::invalid_argument("RunConfig: format must be csv or json");
        }
        if (label_digits < 1 || label_digits > 17) {
            throw std::invalid_argument("RunConfig: label_digits must be in [1, 17]");
        }
        for (const auto& [name, value] : tolerances) {
            if (!(value > 0.0)) {
                throw std::invalid_argument("RunConfig: tolerance \"" + name + "\" must be > 0");
            }
        }
    }
};

// key=value per line; '#' starts a comment; "tol.<name>" keys override
// tolerances.
inline void apply_config_line(RunConfig& cfg, const std::string& raw, int line_no) {
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) {
        line.pop_back();
    }
    size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) return;
    line.erase(0, start);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
        throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    try {
        if (key == "n_max") {
            cfg.n_max = std::stoi(value);
        } else if (key == "format") {
            cfg.format = value;
        } else if (key == "seed") {
            cfg.seed = static_cast<unsigned>(std::stoul(value));
        } else if (key == "parallel") {
            cfg.parallel = (value == "true" || value == "1");
        } else if (key == "label_digits") {
            cfg.label_digits = std::stoi(value);
        } else if (key.rfind("tol.", 0) == 0) {
            cfg.set_tolerance(key.substr(4), std::stod(value));
        } else {
            throw std::invalid_argument("unknown key \"" + key + "\"");
        }
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": bad value for \"" + key + "\"");
    }
}

inline RunConfig load_config_file(const std::string& path, RunConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open \"" + path + "\"");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) apply_config_line(base, line, ++line_no);
    base.validate();
    return base;
}

} // namespace tfd
