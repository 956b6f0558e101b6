#pragma once

// Spectra tabulated over phi or kappa grids, and the loss/gain thresholds at
// which the spectrum changes character.
//
// Grid kernels run under OpenMP with one independent eigensolve per grid
// point; results are written to preallocated slots so the output never
// depends on the thread count. The serial versions in `reference` are kept
// for testing and benchmarking.

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "ptcav/classify.hpp"
#include "ptcav/eigen.hpp"
#include "ptcav/model.hpp"

namespace ptcav {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SolveOptions {
    double class_tol = 0.0;  ///< <= 0 selects default_class_tol per spectrum
    QrOptions qr;
};

struct SolvedSpectrum {
    Spectrum spectrum;
    double max_residual = 0.0;
    bool converged = true;
};

/// Build, diagonalise, validate and classify one parameter point.
SolvedSpectrum solve_spectrum(const ModelParams& params, const SolveOptions& opts = {});

enum class SweepAxis { Phi, Kappa };

std::string_view to_string(SweepAxis axis);

struct SweepRow {
    double param = 0.0;
    SolvedSpectrum result;
};

struct SweepTable {
    SweepAxis axis = SweepAxis::Phi;
    std::vector<double> grid;
    std::vector<SweepRow> rows;
    ModelParams base;

    bool all_converged() const;
};

struct SweepOptions {
    SolveOptions solve;
    int threads = 0;  ///< <= 0 leaves the OpenMP default
};

SweepTable sweep_phi(const ModelParams& base, std::span<const double> grid, const SweepOptions& opts = {});
SweepTable sweep_kappa(const ModelParams& base, std::span<const double> grid, const SweepOptions& opts = {});

enum class ThresholdStatus {
    Ok,         ///< bracketed crossing
    Zero,       ///< predicate already holds at the smallest probe
    NoneFound,  ///< predicate never holds on [probe, kappa_max]
};

std::string_view to_string(ThresholdStatus s);

struct Threshold {
    ThresholdStatus status = ThresholdStatus::NoneFound;
    double value = std::numeric_limits<double>::quiet_NaN();
    double bracket_lo = std::numeric_limits<double>::quiet_NaN();
    double bracket_hi = std::numeric_limits<double>::quiet_NaN();
    std::size_t sign_changes = 0;  ///< predicate flips seen on the coarse scan
    std::size_t evaluations = 0;

    bool non_monotone() const { return sign_changes > 1; }
};

struct TransitionOptions {
    std::size_t scan_points = 64;
    SolveOptions solve;
};

/// Smallest kappa at which the phase becomes Broken.
Threshold first_transition(const ModelParams& base, double phi, double kappa_max, double tol,
                           const TransitionOptions& opts = {});

/// Smallest kappa beyond the first transition at which GenuinelyComplex
/// eigenvalues have appeared and then all collapsed onto the imaginary axis.
Threshold second_transition(const ModelParams& base, double phi, double kappa_max, double tol,
                            const TransitionOptions& opts = {});

enum class TransitionKind { First, Second };

std::string_view to_string(TransitionKind k);

struct CriticalCurve {
    std::vector<double> phi_grid;
    std::vector<Threshold> kappa_values;
    TransitionKind which = TransitionKind::First;
    double bracket_tol = 0.0;
};

CriticalCurve critical_curve(const ModelParams& base, std::span<const double> phi_grid, TransitionKind which,
                             double kappa_max, double tol, const TransitionOptions& opts = {}, int threads = 0);

enum class OddEventKind {
    BoundaryPair,  ///< at cos(phi) = 0: a +-ib pair joins the zero mode
    Split,         ///< elsewhere: PurelyImaginary count rises from 1 to 3
};

std::string_view to_string(OddEventKind k);

struct OddEvent {
    OddEventKind kind;
    Threshold threshold;
};

/// Events of odd-length chains. Throws std::invalid_argument for even N.
std::vector<OddEvent> odd_chain_events(const ModelParams& base, double phi, double kappa_max, double tol,
                                       const TransitionOptions& opts = {});

/// True when phi sits on a phase boundary point (J1 = J2).
bool is_boundary_angle(double phi);

namespace reference {

SweepTable sweep_phi(const ModelParams& base, std::span<const double> grid, const SweepOptions& opts = {});
SweepTable sweep_kappa(const ModelParams& base, std::span<const double> grid, const SweepOptions& opts = {});
CriticalCurve critical_curve(const ModelParams& base, std::span<const double> phi_grid, TransitionKind which,
                             double kappa_max, double tol, const TransitionOptions& opts = {});

}  // namespace reference

}  // namespace ptcav
