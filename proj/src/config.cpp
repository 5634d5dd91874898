#include "cuspop/config.hpp"

#include "cuspop/errors.hpp"
#include "cuspop/hash.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace cuspop {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    int x = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size())
        throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
    return x;
}

std::vector<int> to_list(const std::string& key, const std::string& v) {
    std::vector<int> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_int(key, trim(item)));
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

} // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "theta") theta = to_double(key, value);
    else if (key == "g_kind") {
        try {
            g_kind = parse_gkind(value);
        } catch (const InvalidInput& e) {
            throw ConfigError(e.what());
        }
    } else if (key == "c") c = to_double(key, value);
    else if (key == "K_hat") K_hat = to_double(key, value);
    else if (key == "j0") j0 = to_int(key, value);
    else if (key == "degree") degree = to_int(key, value);
    else if (key == "quad") quad = to_int(key, value);
    else if (key == "symbol") symbol = value;
    else if (key == "route") route = value;
    else if (key == "one_dim.degree") one_dim_degree = to_int(key, value);
    else if (key == "seed") seed = to_int(key, value);
    else if (key == "out_dir") out_dir = value;
    else if (key == "precision") {
        if (value == "double") precision = Precision::double_;
        else if (value == "extended") precision = Precision::extended;
        else throw ConfigError("precision must be 'double' or 'extended'");
    } else if (key == "samples.k_estimate") k_samples = to_int(key, value);
    else if (key == "samples.calibration_validation") calibration_validation = to_int(key, value);
    else if (key == "samples.geometry") geometry_samples = to_int(key, value);
    else if (key == "samples.calibration") calibration_samples = to_int(key, value);
    else if (key == "samples.covering") covering_samples = to_int(key, value);
    else if (key == "trials.derivative") derivative_trials = to_int(key, value);
    else if (key == "trials.schwarz") schwarz_trials = to_int(key, value);
    else if (key == "covering.n") covering_n = to_list(key, value);
    else if (key == "codim.n") codim_n = to_list(key, value);
    else if (key == "sample_count") {
        // shorthand: one count for every sampled suite
        const int n = to_int(key, value);
        geometry_samples = calibration_samples = covering_samples = derivative_trials = schwarz_trials = n;
    } else throw ConfigError("unknown config key '" + key + "'");
}

RunConfig RunConfig::parse(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        try {
            cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    cfg.validate();
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

void RunConfig::validate() const {
    if (!(theta > 0 && theta < 1)) throw ConfigError("theta must lie in (0,1)");
    if (c < 0 || c >= 1) throw ConfigError("c must lie in [0,1) (0 = calibrate)");
    if (K_hat != 0 && K_hat < 1) throw ConfigError("K_hat must be >= 1 (0 = estimate)");
    if (j0 < 21) throw ConfigError("j0 must be >= 21");
    try {
        truncation().validate();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("truncation: ") + e.what());
    }
    if (symbol != "paper" && symbol != "diagonal" && symbol != "one-dim" && symbol.rfind("scaled:", 0) != 0)
        throw ConfigError("symbol must be paper, diagonal, one-dim or scaled:r");
    if (symbol.rfind("scaled:", 0) == 0) {
        const double r = to_double("symbol", symbol.substr(7));
        if (!(r > 0 && r < 1)) throw ConfigError("scaled:r needs r in (0,1)");
    }
    if (route != "gram" && route != "fft") throw ConfigError("route must be gram or fft");
    if (one_dim_degree < 1) throw ConfigError("one_dim.degree must be >= 1");
    if (k_samples < 10000) throw ConfigError("samples.k_estimate must be >= 1e4");
    for (int n : {calibration_validation, geometry_samples, calibration_samples, covering_samples,
                  derivative_trials, schwarz_trials})
        if (n <= 0) throw ConfigError("sample counts must be positive");
    if (geometry_samples < 10000) throw ConfigError("samples.geometry must be >= 1e4");
    for (int n : covering_n)
        if (n < 2) throw ConfigError("covering.n entries must be >= 2");
    for (int n : codim_n)
        if (n < 1) throw ConfigError("codim.n entries must be >= 1");
}

std::string RunConfig::serialize() const {
    std::ostringstream o;
    o << "theta = " << fmt_double(theta) << "\n"
      << "g_kind = " << to_string(g_kind) << "\n"
      << "c = " << fmt_double(c) << "\n"
      << "K_hat = " << fmt_double(K_hat) << "\n"
      << "j0 = " << j0 << "\n"
      << "degree = " << degree << "\n"
      << "quad = " << quad << "\n"
      << "symbol = " << symbol << "\n"
      << "route = " << route << "\n"
      << "one_dim.degree = " << one_dim_degree << "\n"
      << "seed = " << seed << "\n"
      << "out_dir = " << out_dir << "\n"
      << "precision = " << (precision == Precision::extended ? "extended" : "double") << "\n"
      << "samples.k_estimate = " << k_samples << "\n"
      << "samples.calibration_validation = " << calibration_validation << "\n"
      << "samples.geometry = " << geometry_samples << "\n"
      << "samples.calibration = " << calibration_samples << "\n"
      << "samples.covering = " << covering_samples << "\n"
      << "trials.derivative = " << derivative_trials << "\n"
      << "trials.schwarz = " << schwarz_trials << "\n"
      << "covering.n = " << join(covering_n) << "\n"
      << "codim.n = " << join(codim_n) << "\n";
    return o.str();
}

std::uint64_t RunConfig::hash() const {
    // out_dir does not change any result
    RunConfig c2 = *this;
    c2.out_dir.clear();
    return fnv1a(c2.serialize());
}

SymbolParams resolve_params(const RunConfig& cfg) {
    SymbolParams p = SymbolParams::make(cfg.theta, 0.0, cfg.K_hat > 0 ? cfg.K_hat : estimate_K(cfg.k_samples),
                                        cfg.g_kind, cfg.j0);
    if (cfg.c > 0) {
        p.c = cfg.c;
        validate_c(p, cfg.calibration_validation);
    } else {
        const auto res = calibrate(p, cfg.calibration_validation);
        p.c = res.c;
        p.eta = res.eta;
    }
    return p;
}

std::string serialize_params(const SymbolParams& p, const CalibrationResult* cal) {
    std::ostringstream o;
    o << "theta = " << fmt_double(p.theta) << "\n"
      << "g_kind = " << to_string(p.g_kind) << "\n"
      << "c = " << fmt_double(p.c) << "\n"
      << "K_hat = " << fmt_double(p.K_hat) << "\n"
      << "j0 = " << p.j0 << "\n";
    if (cal)
        o << "# eta = " << fmt_double(cal->eta) << "\n"
          << "# min_margin = " << fmt_double(cal->min_margin) << "\n"
          << "# min_relative_margin = " << fmt_double(cal->min_relative_margin) << "\n"
          << "# validation_samples = " << cal->samples << "\n";
    o << "# params_hash = " << hex64(p.hash()) << "\n";
    return o.str();
}

SymbolParams parse_params(const std::string& text) {
    // the parameter file is a subset of the run configuration
    const RunConfig cfg = RunConfig::parse(text);
    if (cfg.c <= 0 || cfg.K_hat < 1) throw ConfigError("params file must set c and K_hat");
    SymbolParams p = SymbolParams::make(cfg.theta, cfg.c, cfg.K_hat, cfg.g_kind, cfg.j0);
    p.validate(true);
    return p;
}

} // namespace cuspop
