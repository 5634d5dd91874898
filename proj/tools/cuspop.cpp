// cuspop: command-line front end.
//   exit 0 success, 1 property violation / failed estimate, 2 configuration or parse error.

#include "cuspop/config.hpp"
#include "cuspop/contrast.hpp"
#include "cuspop/errors.hpp"
#include "cuspop/hash.hpp"
#include "cuspop/io.hpp"
#include "cuspop/verifier.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace cuspop;

namespace {

struct ParseFailure : Error {
    using Error::Error;
};

// "a", "bi", "a+bi", "a-bi", "i", "-i", "a+i"; 'j' accepted for 'i'.
cplx parse_complex(std::string s) {
    std::erase_if(s, [](unsigned char ch) { return std::isspace(ch); });
    if (s.empty()) throw ParseFailure("empty complex number");
    auto unit = [](char ch) { return ch == 'i' || ch == 'j'; };
    const char* b = s.c_str();
    const char* e = b + s.size();
    auto bare_unit = [&](const char* p) -> std::optional<double> {   // "+i", "-i", "i"
        const char* q = p;
        double sign = 1;
        if (*q == '+' || *q == '-') sign = *q++ == '-' ? -1 : 1;
        if (q + 1 == e && unit(*q)) return sign;
        return std::nullopt;
    };
    if (auto u = bare_unit(b)) return {0, *u};
    char* end = nullptr;
    const double a = std::strtod(b, &end);
    if (end == b) throw ParseFailure("cannot parse '" + s + "' as a complex number");
    if (end == e) return {a, 0};
    if (unit(*end) && end + 1 == e) return {0, a};
    if (*end != '+' && *end != '-') throw ParseFailure("cannot parse '" + s + "' as a complex number");
    if (auto u = bare_unit(end)) return {a, *u};
    const char* p = end;
    const double bi = std::strtod(p, &end);
    if (end == p || end + 1 != e || !unit(*end)) throw ParseFailure("cannot parse '" + s + "' as a complex number");
    return {a, bi};
}

std::string fmt_c(cplx z) {
    return fmt_double(z.real()) + "," + fmt_double(z.imag());
}

struct Globals {
    std::string config_path, params_path, out, symbol;
    int seed = -1, degree = -1, quad = -1;
};

RunConfig load_config(const Globals& g) {
    RunConfig cfg = g.config_path.empty() ? RunConfig{} : RunConfig::load(g.config_path);
    if (const char* env = std::getenv("CUSPOP_OUT_DIR"); env && *env) cfg.out_dir = env;
    if (!g.out.empty()) cfg.out_dir = g.out;
    if (g.seed >= 0) cfg.seed = g.seed;
    if (g.degree >= 0) cfg.degree = g.degree;
    if (g.quad >= 0) cfg.quad = g.quad;
    if (!g.symbol.empty()) cfg.symbol = g.symbol;
    cfg.validate();
    return cfg;
}

SymbolParams load_params(const Globals& g, const RunConfig& cfg) {
    if (g.params_path.empty()) return resolve_params(cfg);
    std::ifstream f(g.params_path);
    if (!f) throw ConfigError("cannot open params file " + g.params_path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_params(ss.str());
}

// ---------------------------------------------------------------- verbs

int cmd_map_eval(const Globals& g, const std::vector<std::string>& points, const std::string& file,
                 const std::string& z2s) {
    const RunConfig cfg = load_config(g);
    std::vector<std::pair<std::string, int>> inputs;   // text, line (0 for inline)
    for (const auto& p : points) inputs.push_back({p, 0});
    if (!file.empty()) {
        std::ifstream f(file);
        if (!f) throw ConfigError("cannot open points file " + file);
        std::string line;
        for (int ln = 1; std::getline(f, line); ++ln) {
            const auto h = line.find('#');
            if (h != std::string::npos) line.erase(h);
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            inputs.push_back({line, ln});
        }
    }
    if (inputs.empty()) throw ConfigError("map-eval: no points given (use --point or --points)");
    std::vector<cplx> zs;
    for (const auto& [text, ln] : inputs) {
        try {
            zs.push_back(parse_complex(text));
        } catch (const ParseFailure& e) {
            throw ConfigError((ln ? file + ":" + std::to_string(ln) + ": " : std::string()) + e.what());
        }
    }
    cplx z2;
    try {
        z2 = parse_complex(z2s);
    } catch (const ParseFailure& e) {
        throw ConfigError(std::string("--z2: ") + e.what());
    }
    const SymbolParams p = load_params(g, cfg);
    std::cout << "# config_hash=" << hex64(cfg.hash()) << " seed=" << cfg.seed << " params_hash=" << hex64(p.hash())
              << "\n";
    std::cout << "z_re,z_im,chi0_re,chi0_im,chi_re,chi_im,phi_re,phi_im,Phi1_re,Phi1_im,Phi2_re,Phi2_im,one_minus_abs_chi\n";
    const auto w2 = UnitDiskPoint::from_value(z2);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        UnitDiskPoint z = UnitDiskPoint::from_value(0);
        try {
            z = UnitDiskPoint::from_value(zs[i]);
        } catch (const InvalidInput& e) {
            const int ln = inputs[i].second;
            throw ConfigError((ln ? file + ":" + std::to_string(ln) + ": " : std::string()) + e.what());
        }
        const auto Phi = symbol(z, w2, p);
        cplx c0, c, ph;
        double om;
        if (cfg.precision == Precision::extended) {   // chain in long double, rounded for output
            using LD = std::complex<long double>;
            const auto zl = DiskPoint<long double>::from_offset(LD(z.offset()));
            const auto tr = cusp(zl);
            c0 = cplx(tr.chi0), c = cplx(tr.chi), ph = cplx(phi_of_chi(tr, static_cast<long double>(p.theta)));
            om = static_cast<double>(tr.one_minus_abs_chi);
        } else {
            const auto tr = cusp(z);
            c0 = tr.chi0, c = tr.chi, ph = phi_of_chi(tr, p.theta), om = tr.one_minus_abs_chi;
        }
        std::cout << fmt_c(zs[i]) << ',' << fmt_c(c0) << ',' << fmt_c(c) << ',' << fmt_c(ph) << ',' << fmt_c(Phi.w1)
                  << ',' << fmt_c(Phi.w2) << ',' << fmt_double(om) << "\n";
    }
    return 0;
}

int cmd_calibrate(const Globals& g) {
    const RunConfig cfg = load_config(g);
    SymbolParams p = SymbolParams::make(cfg.theta, 0.0, cfg.K_hat > 0 ? cfg.K_hat : estimate_K(cfg.k_samples),
                                        cfg.g_kind, cfg.j0);
    CalibrationResult res;
    if (cfg.c > 0) {
        p.c = cfg.c;
        res = validate_c(p, cfg.calibration_validation);
    } else {
        res = calibrate(p, cfg.calibration_validation);
        p.c = res.c;
        p.eta = res.eta;
    }
    std::string text = "# config_hash = " + hex64(cfg.hash()) + "\n# seed = " + std::to_string(cfg.seed) + "\n";
    text += serialize_params(p, &res);
    const auto path = write_text_file(cfg.out_dir, "params.txt", text);
    std::cout << "c = " << fmt_double(p.c) << "  K_hat = " << fmt_double(p.K_hat)
              << "  min_margin = " << fmt_double(res.min_margin) << "\nwrote " << path << "\n";
    return 0;
}

int cmd_matrix(const Globals& g, bool csv) {
    const RunConfig cfg = load_config(g);
    const SymbolParams p = load_params(g, cfg);
    const auto m = assemble_matrix(p, cfg.truncation());
    std::ostringstream os;
    write_matrix_binary(os, m);
    std::cout << "wrote " << write_text_file(cfg.out_dir, "matrix.bin", os.str()) << "\n";
    if (csv) {
        std::ostringstream oc;
        oc << "# config_hash=" << hex64(cfg.hash()) << " seed=" << cfg.seed << "\n";
        write_matrix_csv(oc, m);
        std::cout << "wrote " << write_text_file(cfg.out_dir, "matrix.csv", oc.str()) << "\n";
    }
    std::cout << "D = " << m.D << "  Q = " << m.Q << "  tail_hs = " << fmt_double(m.tail_hs) << "\n";
    return 0;
}

int one_dim_run(const RunConfig& cfg, const SingularSpectrum& s, const std::string& stem, double rel_floor) {
    std::ostringstream oc;
    write_trend_csv(oc, s, cfg);
    const auto csv = write_text_file(cfg.out_dir, stem + ".csv", oc.str());
    auto j = spectrum_json(s, std::nullopt, std::nullopt, "", cfg);
    // below this the double decomposition returns noise, not singular values
    const double floor = s.values.empty() ? 0 : std::max(10 * s.tail_bound, rel_floor * s.values.front());
    j["resolution_floor"] = floor;
    nlohmann::ordered_json trend = nlohmann::ordered_json::object();
    for (int n : {8, 16, 32, 64})
        if (static_cast<std::size_t>(n) <= s.values.size()) {
            const double a = s.values[n - 1];
            trend[std::to_string(n)] = a > floor ? nlohmann::ordered_json(std::pow(a, 1.0 / n)) : nullptr;
        }
    j["root_trend"] = trend;
    const auto js = write_text_file(cfg.out_dir, stem + ".json", j.dump(2) + "\n");
    std::cout << "wrote " << csv << "\nwrote " << js << "\n";
    for (const auto& [k, v] : trend.items()) std::cout << "a_" << k << "^(1/" << k << ") = " << v << "\n";
    return 0;
}

int cmd_spectrum(const Globals& g, bool one_dim, double shrink) {
    RunConfig cfg = load_config(g);
    if (one_dim || shrink > 0) cfg.symbol = "one-dim";
    if (cfg.symbol == "one-dim") {
        if (shrink > 0) {   // chi(r z): exact Taylor matrix in extended precision
            if (!(shrink < 1)) throw ConfigError("--shrink needs r in (0,1)");
            return one_dim_run(cfg, shrunk_contrast_taylor(shrink, cfg.one_dim_degree, 200), "one_dim_shrunk", 0);
        }
        return one_dim_run(cfg, one_dim_contrast_graded(cfg.one_dim_degree, GradedMesh{}), "one_dim", 1e-14);
    }
    const SymbolParams p = load_params(g, cfg);
    SkewSymbol sym;
    if (cfg.symbol == "paper") {
        sym = paper_symbol(p);
    } else if (cfg.symbol == "diagonal") {
        sym = diagonal_skew_symbol();
    } else if (cfg.symbol.rfind("scaled:", 0) == 0) {
        sym = dilated_paper_symbol(p, std::stod(cfg.symbol.substr(7)));
    } else {
        throw ConfigError("unknown symbol '" + cfg.symbol + "'");
    }
    SingularSpectrum s;
    if (cfg.route == "gram") {
        s = singular_values(assemble_gram(sym, cfg.degree, graded_rule(GradedMesh{})));
    } else {
        const TruncationSpec spec = cfg.truncation();
        s = singular_values(assemble_matrix(sym, spec));
    }
    std::optional<DecayFit> fit;
    std::optional<BetaReport> beta;
    std::string err;
    const int nmax = static_cast<int>(std::sqrt(static_cast<double>(s.values.size())));
    try {
        fit = fit_decay(s, 2, {1, nmax});
    } catch (const InsufficientData& e) {
        err = e.what();
    }
    try {
        beta = beta_estimate(s, 2, {1, nmax});
    } catch (const RangeError& e) {
        if (err.empty()) err = e.what();
    }
    std::ostringstream oc;
    write_spectrum_csv(oc, s, 2, cfg);
    const auto csv = write_text_file(cfg.out_dir, "spectrum.csv", oc.str());
    const auto js = write_text_file(cfg.out_dir, "spectrum.json", spectrum_json(s, fit, beta, err, cfg).dump(2) + "\n");
    std::cout << "wrote " << csv << "\nwrote " << js << "\n";
    if (!fit) {
        std::cerr << "spectrum: decay fit not available: " << err << "\n";
        return 1;
    }
    std::cout << "tau = " << fit->tau << "  r^2 = " << fit->r_squared;
    if (beta) std::cout << "  beta2_plus = " << beta->beta_plus;
    std::cout << "\n";
    return 0;
}

int cmd_verify(const Globals& g) {
    const RunConfig cfg = load_config(g);
    const SymbolParams p = load_params(g, cfg);
    const auto reports = run_all(cfg, p);
    const auto j = reports_to_json(reports, cfg);
    const auto path = write_text_file(cfg.out_dir, "verify.json", j.dump(2) + "\n");
    for (const auto& r : reports)
        std::cout << (r.passed() ? "ok   " : "FAIL ") << r.suite << "  samples=" << r.samples_tested
                  << " violations=" << r.violation_count << "\n";
    std::cout << "wrote " << path << "\n";
    return j["passed"].get<bool>() ? 0 : 1;
}

int cmd_report(const Globals& g) {
    const RunConfig cfg = load_config(g);
    auto read = [&](const std::string& name) -> std::optional<nlohmann::ordered_json> {
        std::ifstream f(cfg.out_dir + "/" + name);
        if (!f) return std::nullopt;
        try {
            return nlohmann::ordered_json::parse(f);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(name + ": " + e.what());
        }
    };
    const auto spec = read("spectrum.json"), ver = read("verify.json"), one = read("one_dim.json");
    if (!spec && !ver && !one) throw ConfigError("report: no spectrum.json, one_dim.json or verify.json in " + cfg.out_dir);
    std::ostringstream md;
    md << "# cuspop report\n\nconfig_hash " << hex64(cfg.hash()) << ", seed " << cfg.seed << "\n";
    bool ok = true;
    if (spec) {
        md << "\n## spectrum (" << (*spec)["symbol"].get<std::string>() << ")\n\n";
        md << "- size " << (*spec)["size"] << ", tail bound " << (*spec)["tail_bound"] << "\n";
        if ((*spec)["fit"].is_null()) {
            ok = false;
            md << "- fit: " << (*spec)["fit_error"].get<std::string>() << "\n";
        } else {
            md << "- tau " << (*spec)["fit"]["tau"] << ", r^2 " << (*spec)["fit"]["r_squared"] << "\n";
        }
        if (!(*spec)["beta"].is_null()) md << "- beta " << (*spec)["beta"].dump() << "\n";
    }
    if (one) md << "\n## one-variable contrast\n\n- a_n^(1/n): " << (*one)["root_trend"].dump() << "\n";
    if (ver) {
        md << "\n## verification\n\n| suite | samples | violations |\n|---|---|---|\n";
        for (const auto& s : (*ver)["suites"])
            md << "| " << s["suite"].get<std::string>() << " | " << s["samples_tested"] << " | " << s["violation_count"]
               << " |\n";
        ok = ok && (*ver)["passed"].get<bool>();
    }
    std::cout << "wrote " << write_text_file(cfg.out_dir, "report.md", md.str()) << "\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cuspop: cusp-map composition operator toolkit"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config_path, "key = value run configuration");
    app.add_option("--params", g.params_path, "frozen parameter file written by `calibrate`");
    app.add_option("--seed", g.seed, "random seed")->check(CLI::NonNegativeNumber);
    app.add_option("--degree", g.degree, "truncation degree D");
    app.add_option("--quad", g.quad, "quadrature points Q (power of two)");
    app.add_option("--symbol", g.symbol, "paper | diagonal | one-dim | scaled:r");
    app.add_option("--out", g.out, "output directory (overrides CUSPOP_OUT_DIR)");

    std::vector<std::string> points;
    std::string points_file, z2 = "0";
    auto* me = app.add_subcommand("map-eval", "evaluate the cusp chain and the symbol");
    me->add_option("--point", points, "complex point, e.g. 0.5-0.2i (repeatable)");
    me->add_option("--points", points_file, "file with one complex point per line");
    me->add_option("--z2", z2, "second coordinate for the symbol columns");
    auto* cal = app.add_subcommand("calibrate", "estimate K_hat, calibrate c, write params.txt");
    bool csv = false;
    auto* mat = app.add_subcommand("matrix", "assemble the truncated operator matrix");
    mat->add_flag("--csv", csv, "also write the CSV dump");
    bool one_dim = false;
    auto* sp = app.add_subcommand("spectrum", "singular values, decay fit and beta report");
    sp->add_flag("--one-dim", one_dim, "one-variable contrast C_chi");
    double shrink = 0;
    sp->add_option("--shrink", shrink, "with --one-dim: use chi(r z)");
    auto* ver = app.add_subcommand("verify", "run the property suites");
    auto* rep = app.add_subcommand("report", "summarize the JSON outputs in the output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (*me) return cmd_map_eval(g, points, points_file, z2);
        if (*cal) return cmd_calibrate(g);
        if (*mat) return cmd_matrix(g, csv);
        if (*sp) return cmd_spectrum(g, one_dim, shrink);
        if (*ver) return cmd_verify(g);
        if (*rep) return cmd_report(g);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CalibrationFailure& e) {
        std::cerr << "calibration failed: " << e.what() << " at z = " << e.witness_re << (e.witness_im < 0 ? "" : "+")
                  << e.witness_im << "i (margin " << e.witness_value << ")\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: bad number: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
