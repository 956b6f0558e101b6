#include "ptcav/sweep.hpp"

#include <cmath>
#include <exception>
#include <omp.h>

namespace ptcav {

std::string_view to_string(SweepAxis axis) { return axis == SweepAxis::Phi ? "phi" : "kappa"; }

std::string_view to_string(ThresholdStatus s) {
    switch (s) {
    case ThresholdStatus::Ok: return "ok";
    case ThresholdStatus::Zero: return "zero";
    case ThresholdStatus::NoneFound: return "none";
    }
    return "unknown";
}

std::string_view to_string(TransitionKind k) { return k == TransitionKind::First ? "first" : "second"; }

std::string_view to_string(OddEventKind k) { return k == OddEventKind::BoundaryPair ? "odd-boundary-pair" : "odd-split"; }

bool is_boundary_angle(double phi) { return std::abs(std::cos(phi)) <= 1e-9; }

bool SweepTable::all_converged() const {
    for (const auto& r : rows)
        if (!r.result.converged) return false;
    return true;
}

SolvedSpectrum solve_spectrum(const ModelParams& params, const SolveOptions& opts) {
    const Hamiltonian h = build_hamiltonian(params);
    EigenReport report = eigenvalues(h, opts.qr);
    SolvedSpectrum out;
    out.converged = report.converged;
    out.max_residual = report.max_residual;
    out.spectrum = opts.class_tol > 0.0 ? classify_spectrum(std::move(report.values), opts.class_tol)
                                        : classify_spectrum(std::move(report.values));
    return out;
}

namespace {

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

void check_grid(std::span<const double> grid) {
    if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("sweep grid must be strictly increasing");
}

ModelParams point(const ModelParams& base, SweepAxis axis, double value) {
    return axis == SweepAxis::Phi ? base.with_phi(value) : base.with_kappa(value);
}

SweepTable prepare(const ModelParams& base, SweepAxis axis, std::span<const double> grid) {
    check_grid(grid);
    // validate every grid point up front so that workers never throw on bad input
    for (const double g : grid) point(base, axis, g).validate();
    SweepTable table;
    table.axis = axis;
    table.base = base;
    table.grid.assign(grid.begin(), grid.end());
    table.rows.resize(grid.size());
    return table;
}

SweepTable sweep_parallel(const ModelParams& base, SweepAxis axis, std::span<const double> grid,
                          const SweepOptions& opts) {
    SweepTable table = prepare(base, axis, grid);
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
    std::vector<std::exception_ptr> errors(grid.size());

#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(opts.threads))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            table.rows[i] = {grid[i], solve_spectrum(point(base, axis, grid[i]), opts.solve)};
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return table;
}

SweepTable sweep_serial(const ModelParams& base, SweepAxis axis, std::span<const double> grid,
                        const SweepOptions& opts) {
    SweepTable table = prepare(base, axis, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        table.rows[i] = {grid[i], solve_spectrum(point(base, axis, grid[i]), opts.solve)};
    return table;
}

ClassCounts counts_at(const ModelParams& base, double phi, double kappa, const SolveOptions& opts) {
    const SolvedSpectrum s = solve_spectrum(base.with_phi(phi).with_kappa(kappa), opts);
    if (!s.converged) throw SolverError("eigensolver did not converge at phi=" + std::to_string(phi) +
                                        ", kappa=" + std::to_string(kappa));
    return s.spectrum.counts;
}

void check_transition_args(double kappa_max, double tol, const TransitionOptions& opts) {
    if (!(tol > 0.0)) throw std::invalid_argument("bracket tolerance must be positive");
    if (!(kappa_max > 0.0)) throw std::invalid_argument("kappa_max must be positive");
    if (opts.scan_points < 2) throw std::invalid_argument("scan needs at least 2 points");
}

std::vector<double> scan_grid(double from, double to, std::size_t points) {
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i)
        g[i] = from + (to - from) * static_cast<double>(i) / static_cast<double>(points - 1);
    g.back() = to;
    return g;
}

template <class Pred>
void bisect(Threshold& t, Pred&& pred, double lo, double hi, double tol) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        ++t.evaluations;
        if (pred(mid))
            hi = mid;
        else
            lo = mid;
    }
    t.status = ThresholdStatus::Ok;
    t.bracket_lo = lo;
    t.bracket_hi = hi;
    t.value = 0.5 * (lo + hi);
}

// Coarse scan of a kappa predicate from `probe` to kappa_max, then bisection
// of the first false -> true bracket.
template <class Pred>
Threshold scan_then_bisect(Pred&& pred, double probe, double kappa_max, double tol, std::size_t scan_points) {
    Threshold t;
    ++t.evaluations;
    if (pred(probe)) {
        t.status = ThresholdStatus::Zero;
        t.value = 0.0;
        t.bracket_lo = 0.0;
        t.bracket_hi = probe;
        return t;
    }
    if (kappa_max <= probe) return t;

    const std::vector<double> grid = scan_grid(probe, kappa_max, scan_points);
    bool prev = false;
    std::size_t first_true = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        ++t.evaluations;
        const bool now = pred(grid[i]);
        if (now != prev) ++t.sign_changes;
        if (now && first_true == 0) first_true = i;
        prev = now;
    }
    if (first_true == 0) return t;
    bisect(t, pred, grid[first_true - 1], grid[first_true], tol);
    return t;
}

}  // namespace

SweepTable sweep_phi(const ModelParams& base, std::span<const double> grid, const SweepOptions& opts) {
    return sweep_parallel(base, SweepAxis::Phi, grid, opts);
}

SweepTable sweep_kappa(const ModelParams& base, std::span<const double> grid, const SweepOptions& opts) {
    return sweep_parallel(base, SweepAxis::Kappa, grid, opts);
}

Threshold first_transition(const ModelParams& base, double phi, double kappa_max, double tol,
                           const TransitionOptions& opts) {
    check_transition_args(kappa_max, tol, opts);
    base.with_phi(phi).validate();
    auto broken = [&](double kappa) {
        const ClassCounts c = counts_at(base, phi, kappa, opts.solve);
        return c.imaginary + c.complex > 0;
    };
    return scan_then_bisect(broken, tol, kappa_max, tol, opts.scan_points);
}

Threshold second_transition(const ModelParams& base, double phi, double kappa_max, double tol,
                            const TransitionOptions& opts) {
    const Threshold first = first_transition(base, phi, kappa_max, tol, opts);
    Threshold t;
    t.evaluations = first.evaluations;
    if (first.status == ThresholdStatus::NoneFound) return t;

    const double start = first.status == ThresholdStatus::Zero ? tol : first.value;
    if (start >= kappa_max) return t;

    auto collapsed = [&](const ClassCounts& c) { return c.complex == 0 && c.imaginary > 0; };

    const std::vector<double> grid = scan_grid(start, kappa_max, opts.scan_points);
    bool seen_complex = false;
    bool prev = false;
    std::size_t hit = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ++t.evaluations;
        const ClassCounts c = counts_at(base, phi, grid[i], opts.solve);
        if (!seen_complex) {
            if (c.complex > 0) seen_complex = true;
            continue;
        }
        const bool now = collapsed(c);
        if (now != prev) ++t.sign_changes;
        if (now && hit == 0) hit = i;
        prev = now;
    }
    if (hit == 0) return t;

    auto pred = [&](double kappa) { return collapsed(counts_at(base, phi, kappa, opts.solve)); };
    bisect(t, pred, grid[hit - 1], grid[hit], tol);
    return t;
}

namespace {

Threshold transition(const ModelParams& base, double phi, TransitionKind which, double kappa_max, double tol,
                     const TransitionOptions& opts) {
    return which == TransitionKind::First ? first_transition(base, phi, kappa_max, tol, opts)
                                          : second_transition(base, phi, kappa_max, tol, opts);
}

CriticalCurve curve_header(std::span<const double> phi_grid, TransitionKind which, double tol) {
    check_grid(phi_grid);
    CriticalCurve curve;
    curve.phi_grid.assign(phi_grid.begin(), phi_grid.end());
    curve.kappa_values.resize(phi_grid.size());
    curve.which = which;
    curve.bracket_tol = tol;
    return curve;
}

}  // namespace

CriticalCurve critical_curve(const ModelParams& base, std::span<const double> phi_grid, TransitionKind which,
                             double kappa_max, double tol, const TransitionOptions& opts, int threads) {
    CriticalCurve curve = curve_header(phi_grid, which, tol);
    check_transition_args(kappa_max, tol, opts);
    for (const double phi : phi_grid) base.with_phi(phi).validate();

    const auto n = static_cast<std::ptrdiff_t>(phi_grid.size());
    std::vector<std::exception_ptr> errors(phi_grid.size());
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(threads))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            curve.kappa_values[i] = transition(base, phi_grid[i], which, kappa_max, tol, opts);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return curve;
}

std::vector<OddEvent> odd_chain_events(const ModelParams& base, double phi, double kappa_max, double tol,
                                       const TransitionOptions& opts) {
    if (base.n_sites % 2 == 0) throw std::invalid_argument("odd_chain_events needs an odd number of sites");
    check_transition_args(kappa_max, tol, opts);
    base.with_phi(phi).validate();

    if (is_boundary_angle(phi)) {
        auto pair_joined = [&](double kappa) { return counts_at(base, phi, kappa, opts.solve).imaginary >= 2; };
        return {{OddEventKind::BoundaryPair, scan_then_bisect(pair_joined, tol, kappa_max, tol, opts.scan_points)}};
    }
    auto split = [&](double kappa) { return counts_at(base, phi, kappa, opts.solve).imaginary >= 3; };
    return {{OddEventKind::Split, scan_then_bisect(split, tol, kappa_max, tol, opts.scan_points)}};
}

namespace reference {

SweepTable sweep_phi(const ModelParams& base, std::span<const double> grid, const SweepOptions& opts) {
    return sweep_serial(base, SweepAxis::Phi, grid, opts);
}

SweepTable sweep_kappa(const ModelParams& base, std::span<const double> grid, const SweepOptions& opts) {
    return sweep_serial(base, SweepAxis::Kappa, grid, opts);
}

CriticalCurve critical_curve(const ModelParams& base, std::span<const double> phi_grid, TransitionKind which,
                             double kappa_max, double tol, const TransitionOptions& opts) {
    CriticalCurve curve = curve_header(phi_grid, which, tol);
    for (std::size_t i = 0; i < phi_grid.size(); ++i)
        curve.kappa_values[i] = transition(base, phi_grid[i], which, kappa_max, tol, opts);
    return curve;
}

}  // namespace reference

}  // namespace ptcav
