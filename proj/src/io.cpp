#include "cuspop/io.hpp"

#include "cuspop/errors.hpp"
#include "cuspop/hash.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>

namespace cuspop {

namespace {

constexpr char kMagic[8] = {'C', 'S', 'P', 'O', 'P', 'M', 'A', 'T'};
constexpr std::uint32_t kVersion = 1;
static_assert(std::endian::native == std::endian::little, "matrix dumps are little-endian");

template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) throw InvalidInput("matrix dump: truncated stream");
    return v;
}

void header(std::ostream& os, const RunConfig& cfg) {
    os << "# config_hash=" << hex64(cfg.hash()) << " seed=" << cfg.seed << "\n";
}

} // namespace

void write_matrix_binary(std::ostream& os, const OperatorMatrix& m) {
    os.write(kMagic, 8);
    put<std::uint32_t>(os, kVersion);
    put<std::int32_t>(os, m.D);
    put<std::int32_t>(os, m.Q);
    put<std::uint64_t>(os, m.params_hash);
    put<std::int64_t>(os, m.entries.rows());
    put<std::int64_t>(os, m.entries.cols());
    put<double>(os, m.tail_hs);
    for (Eigen::Index i = 0; i < m.entries.rows(); ++i)
        for (Eigen::Index j = 0; j < m.entries.cols(); ++j) {
            put<double>(os, m.entries(i, j).real());
            put<double>(os, m.entries(i, j).imag());
        }
}

OperatorMatrix read_matrix_binary(std::istream& is) {
    char magic[8];
    if (!is.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) throw InvalidInput("matrix dump: bad magic");
    if (get<std::uint32_t>(is) != kVersion) throw InvalidInput("matrix dump: unsupported version");
    OperatorMatrix m;
    m.D = get<std::int32_t>(is);
    m.Q = get<std::int32_t>(is);
    m.params_hash = get<std::uint64_t>(is);
    const auto rows = get<std::int64_t>(is), cols = get<std::int64_t>(is);
    if (rows < 0 || cols < 0 || rows > (1 << 20) || cols > (1 << 20)) throw InvalidInput("matrix dump: bad shape");
    m.tail_hs = get<double>(is);
    m.entries.resize(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double re = get<double>(is);
            m.entries(i, j) = {re, get<double>(is)};
        }
    return m;
}

void write_matrix_csv(std::ostream& os, const OperatorMatrix& m) {
    os << "# D=" << m.D << " Q=" << m.Q << " params_hash=" << hex64(m.params_hash)
       << " tail_hs=" << fmt_double(m.tail_hs) << " symbol=" << m.symbol_name << "\n";
    os << "row,col,re,im\n";
    for (Eigen::Index i = 0; i < m.entries.rows(); ++i)
        for (Eigen::Index j = 0; j < m.entries.cols(); ++j)
            os << i << ',' << j << ',' << fmt_double(m.entries(i, j).real()) << ','
               << fmt_double(m.entries(i, j).imag()) << "\n";
}

void write_spectrum_csv(std::ostream& os, const SingularSpectrum& s, int N, const RunConfig& cfg) {
    header(os, cfg);
    os << "# source=" << s.source << " tail_bound=" << fmt_double(s.tail_bound) << "\n";
    os << "n,index,a_lower,a_upper\n";
    for (int n = 1;; ++n) {
        std::size_t idx = 1;
        for (int i = 0; i < N; ++i) idx *= static_cast<std::size_t>(n);
        if (idx > s.values.size()) break;
        const auto iv = approximation_numbers(s, static_cast<int>(idx));
        os << n << ',' << idx << ',' << fmt_double(iv.lower) << ',' << fmt_double(iv.upper) << "\n";
    }
}

void write_trend_csv(std::ostream& os, const SingularSpectrum& s, const RunConfig& cfg) {
    header(os, cfg);
    os << "# source=" << s.source << " tail_bound=" << fmt_double(s.tail_bound) << "\n";
    os << "n,a_n,root\n";
    for (std::size_t n = 1; n <= s.values.size(); ++n) {
        const double a = s.values[n - 1];
        os << n << ',' << fmt_double(a) << ',' << fmt_double(std::pow(a, 1.0 / static_cast<double>(n))) << "\n";
    }
}

nlohmann::ordered_json spectrum_json(const SingularSpectrum& s, const std::optional<DecayFit>& fit,
                                     const std::optional<BetaReport>& beta, const std::string& fit_error,
                                     const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["config_hash"] = hex64(cfg.hash());
    j["seed"] = cfg.seed;
    j["symbol"] = cfg.symbol;
    j["source"] = s.source;
    j["size"] = s.values.size();
    j["tail_bound"] = s.tail_bound;
    if (!s.values.empty()) j["norm"] = s.values.front();
    if (fit) {
        j["fit"] = {{"N", fit->N},         {"tau", fit->tau},   {"logC", fit->logC}, {"r_squared", fit->r_squared},
                    {"n_lo", fit->n_lo},   {"n_hi", fit->n_hi}, {"used", fit->used}};
    } else {
        j["fit"] = nullptr;
        j["fit_error"] = fit_error;
    }
    if (beta) {
        const std::string k = "beta" + std::to_string(beta->N);
        j["beta"] = {{"N", beta->N},
                     {k + "_minus", beta->beta_minus},
                     {k + "_plus", beta->beta_plus},
                     {k + "_plus_upper", beta->beta_plus_upper},
                     {"n_lo", beta->n_lo},
                     {"n_hi", beta->n_hi}};
    } else {
        j["beta"] = nullptr;
    }
    return j;
}

std::string write_text_file(const std::string& out_dir, const std::string& name, const std::string& text) {
    std::filesystem::create_directories(out_dir);
    const auto path = (std::filesystem::path(out_dir) / name).string();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open " + path + " for writing");
    f << text;
    if (!f) throw ConfigError("write to " + path + " failed");
    return path;
}

} // namespace cuspop
