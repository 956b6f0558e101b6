#include "ptcav/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <omp.h>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ptcav/sweep.hpp"

namespace ptcav::cli {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view token, const std::string& field) {
    token = trim(token);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
        throw ConfigError(field, "cannot parse number '" + std::string(token) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

SolveOptions solve_options(const RunConfig& cfg) {
    SolveOptions s;
    if (cfg.tol_class) s.class_tol = *cfg.tol_class;
    s.qr.cap_per_site = cfg.max_iter;
    return s;
}

TransitionOptions transition_options(const RunConfig& cfg) {
    TransitionOptions t;
    t.solve = solve_options(cfg);
    return t;
}

std::vector<double> phi_points(const RunConfig& cfg) {
    return cfg.phi_grid.empty() ? default_phi_grid() : cfg.phi_grid;
}

std::vector<double> kappa_points(const RunConfig& cfg) {
    return cfg.kappa_grid.empty() ? std::vector<double>{cfg.model.kappa} : cfg.kappa_grid;
}

void append_spectrum_rows(std::string& out, double param, const Spectrum& s) {
    for (std::size_t i = 0; i < s.dim(); ++i) {
        out += format_number(param);
        out += ',';
        out += std::to_string(i + 1);
        out += ',';
        out += format_number(s.values[i].real());
        out += ',';
        out += format_number(s.values[i].imag());
        out += ',';
        out += to_string(s.classes[i]);
        out += '\n';
    }
}

std::string render_table(const SweepTable& table, std::string_view first_column) {
    if (!table.all_converged()) throw SolverError("eigensolver did not converge on at least one grid point");
    std::string out(first_column);
    out += ",index,re,im,class\n";
    for (const auto& row : table.rows) append_spectrum_rows(out, row.param, row.result.spectrum);
    return out;
}

void check_grid_order(const std::vector<double>& g, const std::string& field) {
    for (std::size_t i = 1; i < g.size(); ++i)
        if (!(g[i] > g[i - 1])) throw ConfigError(field, "grid must be strictly increasing");
}

}  // namespace

double parse_angle(std::string_view token) {
    token = trim(token);
    if (token == "pi/2") return std::numbers::pi / 2.0;
    if (token == "pi") return std::numbers::pi;
    if (token == "3pi/2") return 1.5 * std::numbers::pi;
    if (token == "2pi") return two_pi;
    return parse_double(token, "phi");
}

std::vector<double> parse_grid(std::string_view spec, bool angles) {
    const std::string field = angles ? "phi-grid" : "kappa-grid";
    auto value = [&](std::string_view t) { return angles ? parse_angle(t) : parse_double(t, field); };

    spec = trim(spec);
    if (spec.empty()) throw ConfigError(field, "grid is empty");
    std::vector<double> grid;
    if (spec.starts_with("lin:")) {
        const auto parts = split(spec.substr(4), ':');
        if (parts.size() != 3) throw ConfigError(field, "expected lin:START:STOP:COUNT");
        const double a = value(parts[0]);
        const double b = value(parts[1]);
        const double count = parse_double(parts[2], field);
        if (count < 1 || count != std::floor(count)) throw ConfigError(field, "COUNT must be a positive integer");
        const auto n = static_cast<std::size_t>(count);
        if (n == 1) return {a};
        grid.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            grid[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
        grid.back() = b;
        return grid;
    }
    for (const auto part : split(spec, ',')) grid.push_back(value(part));
    return grid;
}

std::vector<double> default_phi_grid(std::size_t count) {
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = two_pi * static_cast<double>(i) / static_cast<double>(count - 1);
    g.back() = two_pi;
    return g;
}

std::string format_number(double x) {
    if (x == 0.0) x = 0.0;  // drops the sign of negative zero
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void RunConfig::validate() const {
    try {
        model.validate();
    } catch (const ModelError& e) {
        throw ConfigError(e.field() == "n_sites" ? "n" : e.field(), e.what());
    }
    if (tol_class && !(*tol_class > 0.0)) throw ConfigError("tol-class", "must be positive");
    if (!(tol_zero > 0.0)) throw ConfigError("tol-zero", "must be positive");
    if (!(tol_bracket > 0.0)) throw ConfigError("tol-bracket", "must be positive");
    if (!(kappa_max > 0.0)) throw ConfigError("kappa-max", "must be positive");
    if (threads < 0) throw ConfigError("threads", "must be >= 0");

    check_grid_order(phi_grid, "phi-grid");
    check_grid_order(kappa_grid, "kappa-grid");
    for (const double p : phi_grid) {
        try {
            model.with_phi(p).validate();
        } catch (const ModelError&) {
            throw ConfigError("phi-grid", "angles must lie in [0, 2 pi]");
        }
    }
    for (const double k : kappa_grid)
        if (!(k >= 0.0) || !std::isfinite(k)) throw ConfigError("kappa-grid", "kappa values must be >= 0");
    if (subcommand == "critical" && which == Which::OddEvents && model.n_sites % 2 == 0)
        throw ConfigError("which", "odd-events needs an odd number of sites");
}

std::string cmd_spectrum(const RunConfig& cfg) {
    cfg.validate();
    const std::vector<double> grid = phi_points(cfg);
    SweepOptions opts{solve_options(cfg), cfg.threads};
    return render_table(sweep_phi(cfg.model, grid, opts), "phi");
}

std::string cmd_sweep(const RunConfig& cfg) {
    cfg.validate();
    const std::vector<double> grid = kappa_points(cfg);
    SweepOptions opts{solve_options(cfg), cfg.threads};
    return render_table(sweep_kappa(cfg.model, grid, opts), "kappa");
}

std::string cmd_critical(const RunConfig& cfg) {
    cfg.validate();
    const std::vector<double> grid = phi_points(cfg);
    const TransitionOptions topts = transition_options(cfg);

    std::vector<std::string_view> labels(grid.size());
    std::vector<Threshold> values(grid.size());
    if (cfg.which == Which::OddEvents) {
        const auto n = static_cast<std::ptrdiff_t>(grid.size());
        std::vector<std::exception_ptr> errors(grid.size());
        const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            try {
                const auto events = odd_chain_events(cfg.model, grid[i], cfg.kappa_max, cfg.tol_bracket, topts);
                labels[i] = to_string(events.front().kind);
                values[i] = events.front().threshold;
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    } else {
        const TransitionKind kind = cfg.which == Which::First ? TransitionKind::First : TransitionKind::Second;
        const CriticalCurve curve =
            critical_curve(cfg.model, grid, kind, cfg.kappa_max, cfg.tol_bracket, topts, cfg.threads);
        values = curve.kappa_values;
        for (auto& l : labels) l = to_string(kind);
    }

    std::string out = "phi,which,kappa_c,status\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out += format_number(grid[i]);
        out += ',';
        out += labels[i];
        out += ',';
        out += values[i].status == ThresholdStatus::NoneFound ? std::string("nan") : format_number(values[i].value);
        out += ',';
        out += to_string(values[i].status);
        out += '\n';
    }
    return out;
}

std::string cmd_zero_modes(const RunConfig& cfg) {
    cfg.validate();
    const std::vector<double> grid = phi_points(cfg);
    const SweepTable table = sweep_phi(cfg.model, grid, {solve_options(cfg), cfg.threads});
    if (!table.all_converged()) throw SolverError("eigensolver did not converge on at least one grid point");
    std::string out = "phi,kappa,zero_modes\n";
    for (const auto& row : table.rows) {
        out += format_number(row.param);
        out += ',';
        out += format_number(cfg.model.kappa);
        out += ',';
        out += std::to_string(count_zero_modes(row.result.spectrum, cfg.tol_zero));
        out += '\n';
    }
    return out;
}

std::string cmd_pt_check(const RunConfig& cfg) {
    cfg.validate();
    const double residual = pt_residual(build_hamiltonian(cfg.model));
    std::string out = "layout=" + std::string(to_string(cfg.model.layout)) + '\n';
    out += "n=" + std::to_string(cfg.model.n_sites) + '\n';
    out += "pt_residual=" + format_number(residual) + '\n';
    out += std::string("verdict=") + (residual <= 1e-12 ? "symmetric" : "asymmetric") + '\n';
    return out;
}

std::string run_command(const RunConfig& cfg) {
    if (cfg.subcommand == "spectrum") return cmd_spectrum(cfg);
    if (cfg.subcommand == "sweep") return cmd_sweep(cfg);
    if (cfg.subcommand == "critical") return cmd_critical(cfg);
    if (cfg.subcommand == "zero-modes") return cmd_zero_modes(cfg);
    if (cfg.subcommand == "pt-check") return cmd_pt_check(cfg);
    throw ConfigError("subcommand", "unknown subcommand '" + cfg.subcommand + "'");
}

std::vector<CsvRow> parse_spectrum_csv(std::string_view text) {
    std::vector<CsvRow> rows;
    std::size_t pos = 0;
    bool header = true;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 5) throw std::invalid_argument("expected 5 CSV fields");
        if (header) {
            if (f[1] != "index" || f[2] != "re" || f[3] != "im" || f[4] != "class")
                throw std::invalid_argument("unexpected CSV header");
            header = false;
            continue;
        }
        rows.push_back({parse_double(f[0], "csv"), static_cast<std::size_t>(parse_double(f[1], "csv")),
                        parse_double(f[2], "csv"), parse_double(f[3], "csv"), parse_eig_class(f[4])});
    }
    return rows;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectra and PT-breaking thresholds of non-Hermitian coupled-cavity arrays"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "ptcav CSV format " + std::to_string(kCsvFormatVersion));

    struct Raw {
        std::string layout = "end-pair";
        std::size_t n = 50;
        double delta = 0.5;
        std::string phi;
        std::string phi_grid;
        double kappa = 0.0;
        std::string kappa_grid;
        double epsilon = 0.0;
        std::optional<double> tol_class;
        double tol_zero = default_zero_tol;
        double tol_bracket = 1e-3;
        double kappa_max = 5.0;
        std::string which = "first";
        std::string out;
        int threads = 0;
        std::size_t max_iter = QrOptions{}.cap_per_site;
    } raw;

    auto add_common = [&raw](CLI::App* sub) {
        sub->add_option("--layout", raw.layout, "hermitian | end-pair | inner-pair | staggered")
            ->capture_default_str();
        sub->add_option("--n", raw.n, "number of cavities")->capture_default_str();
        sub->add_option("--delta", raw.delta, "modulation strength")->capture_default_str();
        sub->add_option("--phi", raw.phi, "modulation angle (radians, pi/2, pi, 3pi/2)");
        sub->add_option("--kappa", raw.kappa, "loss/gain rate")->capture_default_str();
        sub->add_option("--epsilon", raw.epsilon, "uniform on-site energy")->capture_default_str();
        sub->add_option("--tol-class", raw.tol_class, "classification tolerance (default 1e-7 (1 + radius))");
        sub->add_option("--out", raw.out, "output file (default stdout)");
        sub->add_option("--threads", raw.threads, "worker threads (0 = OpenMP default)")->capture_default_str();
        sub->add_option("--max-iter", raw.max_iter, "QR iterations per eigenvalue, times N")->capture_default_str();
    };
    auto add_phi_grid = [&raw](CLI::App* sub) {
        sub->add_option("--phi-grid", raw.phi_grid, "list a,b,c or lin:START:STOP:COUNT (default lin:0:2pi:501)");
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues over a phi grid at fixed kappa");
    add_common(spectrum);
    add_phi_grid(spectrum);

    CLI::App* sweep = app.add_subcommand("sweep", "eigenvalues over a kappa grid at fixed phi");
    add_common(sweep);
    sweep->add_option("--kappa-grid", raw.kappa_grid, "list a,b,c or lin:START:STOP:COUNT");

    CLI::App* critical = app.add_subcommand("critical", "transition thresholds over a phi grid");
    add_common(critical);
    add_phi_grid(critical);
    critical->add_option("--which", raw.which, "first | second | odd-events")->capture_default_str();
    critical->add_option("--kappa-max", raw.kappa_max, "upper end of the kappa search")->capture_default_str();
    critical->add_option("--tol-bracket", raw.tol_bracket, "bisection width")->capture_default_str();

    CLI::App* zero = app.add_subcommand("zero-modes", "zero-mode counts over a phi grid");
    add_common(zero);
    add_phi_grid(zero);
    zero->add_option("--tol-zero", raw.tol_zero, "zero-mode tolerance")->capture_default_str();

    CLI::App* pt = app.add_subcommand("pt-check", "PT-symmetry residual of one Hamiltonian");
    add_common(pt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    RunConfig cfg;
    try {
        cfg.subcommand = app.get_subcommands().front()->get_name();
        try {
            cfg.model.layout = parse_layout(raw.layout);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("layout", e.what());
        }
        cfg.model.n_sites = raw.n;
        cfg.model.delta = raw.delta;
        cfg.model.kappa = raw.kappa;
        cfg.model.epsilon = raw.epsilon;
        if (!raw.phi.empty()) cfg.model.phi = parse_angle(raw.phi);
        if (!raw.phi_grid.empty())
            cfg.phi_grid = parse_grid(raw.phi_grid, true);
        else if (!raw.phi.empty())
            cfg.phi_grid = {cfg.model.phi};
        if (!raw.kappa_grid.empty()) cfg.kappa_grid = parse_grid(raw.kappa_grid, false);
        cfg.tol_class = raw.tol_class;
        cfg.tol_zero = raw.tol_zero;
        cfg.tol_bracket = raw.tol_bracket;
        cfg.kappa_max = raw.kappa_max;
        if (raw.which == "first")
            cfg.which = Which::First;
        else if (raw.which == "second")
            cfg.which = Which::Second;
        else if (raw.which == "odd-events")
            cfg.which = Which::OddEvents;
        else
            throw ConfigError("which", "expected first, second or odd-events");
        cfg.out = raw.out;
        cfg.threads = raw.threads;
        cfg.max_iter = raw.max_iter;

        const std::string text = run_command(cfg);
        if (cfg.out.empty()) {
            out << text;
        } else {
            std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
            if (!file) throw ConfigError("out", "cannot open '" + cfg.out + "' for writing");
            file << text;
        }
        return kExitOk;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace ptcav::cli
