#pragma once

// Command-line front end. Every command renders its full output into a
// string first; the binary writes it out in one piece.
//
// CSV: comma separated, header row, LF line endings, floating point with
// 12 significant digits, sites and eigenvalue indices 1-based.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ptcav/classify.hpp"
#include "ptcav/eigen.hpp"
#include "ptcav/model.hpp"

namespace ptcav::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;

inline constexpr int kCsvFormatVersion = 1;
inline constexpr std::size_t kDefaultPhiPoints = 501;

class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

enum class Which { First, Second, OddEvents };

struct RunConfig {
    std::string subcommand;
    ModelParams model;
    std::vector<double> phi_grid;    ///< empty: default_phi_grid() (sweep uses model.phi)
    std::vector<double> kappa_grid;  ///< empty: [model.kappa]
    std::optional<double> tol_class; ///< unset: 1e-7 (1 + spectral radius)
    double tol_zero = default_zero_tol;
    double tol_bracket = 1e-3;
    double kappa_max = 5.0;
    Which which = Which::First;
    std::string out;  ///< empty: stdout
    int threads = 0;
    std::size_t max_iter = QrOptions{}.cap_per_site;  ///< QR iterations allowed per eigenvalue, times N
    int format_version = kCsvFormatVersion;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Radians, or one of `pi/2`, `pi`, `3pi/2`, `2pi`.
double parse_angle(std::string_view token);

/// Comma-separated values, or `lin:START:STOP:COUNT` (inclusive ends).
/// Angle tokens are accepted when `angles` is set.
std::vector<double> parse_grid(std::string_view spec, bool angles);

/// `count` evenly spaced points over [0, 2 pi], both ends included.
std::vector<double> default_phi_grid(std::size_t count = kDefaultPhiPoints);

/// printf("%.12g"), with negative zero printed as 0.
std::string format_number(double x);

std::string cmd_spectrum(const RunConfig& cfg);
std::string cmd_sweep(const RunConfig& cfg);
std::string cmd_critical(const RunConfig& cfg);
std::string cmd_zero_modes(const RunConfig& cfg);
std::string cmd_pt_check(const RunConfig& cfg);

/// Dispatches on cfg.subcommand.
std::string run_command(const RunConfig& cfg);

struct CsvRow {
    double param;
    std::size_t index;
    double re;
    double im;
    EigClass cls;
};

/// Parses output of cmd_spectrum / cmd_sweep (header checked, not returned).
std::vector<CsvRow> parse_spectrum_csv(std::string_view text);

/// Full CLI: parse argv, run, write output. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ptcav::cli
