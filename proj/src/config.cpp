#include "ecir/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "ecir/errors.hpp"

namespace ecir {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
    std::ostringstream os;
    os << "config line " << line << ": " << what;
    throw ConfigError(os.str());
}

double parse_double(int line, const std::string& key, const std::string& v) {
    std::istringstream is(v);
    double x = 0.0;
    char left = 0;
    if (!(is >> x) || (is >> left)) fail(line, "key '" + key + "': malformed number '" + v + "'");
    return x;
}

std::int64_t parse_int(int line, const std::string& key, const std::string& v) {
    std::istringstream is(v);
    std::int64_t x = 0;
    char left = 0;
    if (!(is >> x) || (is >> left)) fail(line, "key '" + key + "': malformed integer '" + v + "'");
    return x;
}

std::uint64_t parse_u64(int line, const std::string& key, const std::string& v) {
    std::istringstream is(v);
    std::uint64_t x = 0;
    char left = 0;
    if (!(is >> x) || (is >> left))
        fail(line, "key '" + key + "': malformed unsigned integer '" + v + "'");
    return x;
}

bool parse_bool(int line, const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    fail(line, "key '" + key + "': expected boolean, got '" + v + "'");
}

}  // namespace

ECIRModel RunConfig::make_model() const {
    ECIRModel m;
    m.k = CoefficientFunction::parse(k_spec, T);
    m.sigma = CoefficientFunction::parse(sigma_spec, T);
    m.d = d;
    m.r0 = r0;
    return m;
}

double RunConfig::riccati_step() const {
    if (riccati_h > 0.0) return riccati_h;
    const double tau = T - t;
    return tau > 0.0 ? tau / 1000.0 : 0.0;
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::set<std::string> seen;
    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");
        if (value.empty()) fail(line_no, "key '" + key + "': empty value");
        if (!seen.insert(key).second) fail(line_no, "duplicate key '" + key + "'");

        if (key == "model.k") {
            cfg.k_spec = value;
        } else if (key == "model.sigma") {
            cfg.sigma_spec = value;
        } else if (key == "model.d") {
            cfg.d = static_cast<int>(parse_int(line_no, key, value));
        } else if (key == "model.r0") {
            cfg.r0 = parse_double(line_no, key, value);
        } else if (key == "window.t") {
            cfg.t = parse_double(line_no, key, value);
        } else if (key == "window.T") {
            cfg.T = parse_double(line_no, key, value);
        } else if (key == "series.N") {
            cfg.series.N = static_cast<int>(parse_int(line_no, key, value));
        } else if (key == "series.q") {
            cfg.series.q = static_cast<int>(parse_int(line_no, key, value));
        } else if (key == "series.tol") {
            cfg.series.tol = parse_double(line_no, key, value);
        } else if (key == "series.alpha") {
            cfg.series.alpha = parse_double(line_no, key, value);
        } else if (key == "series.beta") {
            cfg.series.beta = parse_double(line_no, key, value);
        } else if (key == "series.max_order") {
            cfg.series.max_order = static_cast<int>(parse_int(line_no, key, value));
        } else if (key == "series.symmetric") {
            cfg.series.symmetric_quadrature = parse_bool(line_no, key, value);
        } else if (key == "series.split_diagonal") {
            cfg.series.split_diagonal = parse_bool(line_no, key, value);
        } else if (key == "series.budget") {
            cfg.series.budget = parse_int(line_no, key, value);
        } else if (key == "series.diagnostics") {
            cfg.series.refinement_diagnostics = parse_bool(line_no, key, value);
        } else if (key == "mc.paths") {
            cfg.mc.paths = parse_int(line_no, key, value);
        } else if (key == "mc.steps") {
            cfg.mc.steps = static_cast<int>(parse_int(line_no, key, value));
        } else if (key == "mc.seed") {
            cfg.mc.seed = parse_u64(line_no, key, value);
        } else if (key == "mc.chunks") {
            cfg.mc.chunks = static_cast<int>(parse_int(line_no, key, value));
        } else if (key == "mc.scheme") {
            if (value == "direct-sde") {
                cfg.mc.scheme = McScheme::DirectSde;
            } else if (value == "ou-sum") {
                cfg.mc.scheme = McScheme::OuSum;
            } else {
                fail(line_no, "mc.scheme must be 'direct-sde' or 'ou-sum', got '" + value + "'");
            }
        } else if (key == "riccati.h") {
            cfg.riccati_h = parse_double(line_no, key, value);
        } else if (key == "riccati.convention") {
            if (value == "doubled") {
                cfg.riccati_convention = RiccatiConvention::Doubled;
            } else if (value == "printed") {
                cfg.riccati_convention = RiccatiConvention::Printed;
            } else {
                fail(line_no, "riccati.convention must be 'doubled' or 'printed', got '" + value + "'");
            }
        } else if (key == "compare.tol_riccati") {
            cfg.compare_tol_riccati = parse_double(line_no, key, value);
        } else if (key == "compare.tol_mc") {
            cfg.compare_tol_mc = parse_double(line_no, key, value);
        } else if (key == "compare.mc_sigmas") {
            cfg.compare_mc_sigmas = parse_double(line_no, key, value);
        } else if (key == "output.path") {
            cfg.out_path = value;
        } else if (key == "output.format") {
            if (value != "csv") fail(line_no, "output.format: only 'csv' is supported");
            cfg.format = value;
        } else {
            fail(line_no, "unknown key '" + key + "'");
        }
    }

    // constraint validation
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw ConfigError("config constraint violated: " + what);
    };
    require(!cfg.sigma_spec.empty(), "model.sigma is required");
    require(cfg.d >= 1, "model.d >= 1");
    require(cfg.r0 >= 0.0, "model.r0 >= 0");
    require(cfg.t >= 0.0, "window.t >= 0");
    require(cfg.t <= cfg.T, "window.t <= window.T");
    require(cfg.series.N >= 0, "series.N >= 0");
    require(cfg.series.max_order >= 0, "series.max_order >= 0");
    require(cfg.series.N <= cfg.series.max_order, "series.N <= series.max_order");
    require(cfg.series.q >= 1, "series.q >= 1");
    require(cfg.series.tol >= 0.0, "series.tol >= 0");
    require(cfg.series.alpha >= 1.0, "series.alpha >= 1");
    require(cfg.series.beta > 2.0, "series.beta > 2");
    require(cfg.series.budget >= 1, "series.budget >= 1");
    require(cfg.mc.paths >= 1, "mc.paths >= 1");
    require(cfg.mc.steps >= 1, "mc.steps >= 1");
    require(cfg.mc.chunks >= 1, "mc.chunks >= 1");
    require(cfg.riccati_h >= 0.0, "riccati.h >= 0");
    require(cfg.compare_tol_riccati > 0.0, "compare.tol_riccati > 0");
    require(cfg.compare_tol_mc >= 0.0, "compare.tol_mc >= 0");
    require(cfg.compare_mc_sigmas >= 0.0, "compare.mc_sigmas >= 0");

    // Coefficient specs must parse and evaluate finitely on [0, T]; building
    // the model checks both.
    (void)cfg.make_model();
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace ecir
