#include "ptcav/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "ptcav/eigen.hpp"

namespace ptcav {

std::string_view to_string(EigClass c) {
    switch (c) {
    case EigClass::Real: return "real";
    case EigClass::PurelyImaginary: return "imaginary";
    case EigClass::GenuinelyComplex: return "complex";
    case EigClass::Zero: return "zero";
    }
    return "unknown";
}

EigClass parse_eig_class(std::string_view name) {
    if (name == "real") return EigClass::Real;
    if (name == "imaginary") return EigClass::PurelyImaginary;
    if (name == "complex") return EigClass::GenuinelyComplex;
    if (name == "zero") return EigClass::Zero;
    throw std::invalid_argument("unknown eigenvalue class '" + std::string(name) + "'");
}

std::string_view to_string(Phase p) { return p == Phase::Unbroken ? "unbroken" : "broken"; }

double default_class_tol(std::span<const cplx> values) {
    double radius = 0.0;
    for (const auto& v : values) radius = std::max(radius, std::abs(v));
    return 1e-7 * (1.0 + radius);
}

EigClass classify_value(cplx lambda, double tol) {
    const bool re_small = std::abs(lambda.real()) <= tol;
    const bool im_small = std::abs(lambda.imag()) <= tol;
    if (re_small && im_small) return EigClass::Zero;
    if (im_small) return EigClass::Real;
    if (re_small) return EigClass::PurelyImaginary;
    return EigClass::GenuinelyComplex;
}

Spectrum classify_spectrum(std::vector<cplx> values, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("classification tolerance must be positive");
    sort_eigenvalues(values);

    Spectrum spec;
    spec.tol = tol;
    spec.classes.reserve(values.size());
    for (const auto& v : values) {
        const EigClass c = classify_value(v, tol);
        spec.classes.push_back(c);
        switch (c) {
        case EigClass::Real: ++spec.counts.real; break;
        case EigClass::PurelyImaginary: ++spec.counts.imaginary; break;
        case EigClass::GenuinelyComplex: ++spec.counts.complex; break;
        case EigClass::Zero: ++spec.counts.zero; break;
        }
    }
    spec.values = std::move(values);
    spec.phase = (spec.counts.imaginary + spec.counts.complex == 0) ? Phase::Unbroken : Phase::Broken;
    return spec;
}

Spectrum classify_spectrum(std::vector<cplx> values) {
    const double tol = default_class_tol(values);
    return classify_spectrum(std::move(values), tol);
}

namespace {

bool is_non_real(EigClass c) { return c == EigClass::PurelyImaginary || c == EigClass::GenuinelyComplex; }

// nearest index in `pool` to `target`, not used and not excluded, within tol
std::optional<std::size_t> nearest(const Spectrum& spec, const std::vector<std::size_t>& pool,
                                   const std::vector<bool>& used, cplx target, double tol,
                                   std::span<const std::size_t> exclude) {
    std::optional<std::size_t> best;
    double best_d = std::numeric_limits<double>::infinity();
    for (const std::size_t j : pool) {
        if (used[j] || std::ranges::find(exclude, j) != exclude.end()) continue;
        const double d = std::abs(spec.values[j] - target);
        if (d <= tol && d < best_d) {
            best = j;
            best_d = d;
        }
    }
    return best;
}

}  // namespace

PairingReport pairing_structure(const Spectrum& spec, double pair_tol) {
    const double tol = pair_tol > 0.0 ? pair_tol : spec.tol;
    const std::size_t n = spec.dim();
    PairingReport report;

    std::vector<std::size_t> complex_idx;
    std::vector<std::size_t> non_real_idx;
    for (std::size_t i = 0; i < n; ++i) {
        if (spec.classes[i] == EigClass::GenuinelyComplex) complex_idx.push_back(i);
        if (is_non_real(spec.classes[i])) non_real_idx.push_back(i);
    }

    std::vector<bool> used(n, false);

    std::vector<std::size_t> seeds = complex_idx;
    std::ranges::stable_sort(seeds, [&](std::size_t a, std::size_t b) {
        return std::abs(spec.values[a].real()) < std::abs(spec.values[b].real());
    });
    for (const std::size_t s : seeds) {
        if (used[s]) continue;
        const cplx l = spec.values[s];
        std::vector<std::size_t> members{s};
        for (const cplx target : {std::conj(l), -l, -std::conj(l)}) {
            const auto j = nearest(spec, complex_idx, used, target, tol, members);
            if (!j) break;
            members.push_back(*j);
        }
        if (members.size() == 4) {
            for (const auto m : members) used[m] = true;
            ++report.quartets;
        }
    }

    for (const std::size_t i : non_real_idx) {
        if (used[i]) continue;
        const std::size_t self[] = {i};
        const auto j = nearest(spec, non_real_idx, used, std::conj(spec.values[i]), tol, self);
        if (!j) {
            used[i] = true;
            report.unmatched.push_back(spec.values[i]);
            continue;
        }
        used[i] = used[*j] = true;
        ++report.conjugate_pairs;
        if (spec.classes[i] == EigClass::PurelyImaginary && spec.classes[*j] == EigClass::PurelyImaginary)
            ++report.imaginary_pairs;
    }

    // -conj pairing; a purely imaginary value may be its own partner
    std::vector<bool> taken(n, false);
    for (const std::size_t i : non_real_idx) {
        if (taken[i]) continue;
        const cplx target = -std::conj(spec.values[i]);
        if (std::abs(spec.values[i] - target) <= tol) {
            taken[i] = true;
            continue;
        }
        const std::size_t self[] = {i};
        const auto j = nearest(spec, non_real_idx, taken, target, tol, self);
        if (!j) {
            taken[i] = true;
            ++report.reflection_unmatched;
            continue;
        }
        taken[i] = taken[*j] = true;
    }
    return report;
}

std::size_t count_zero_modes(const Spectrum& spec, double zero_tol) {
    if (!(zero_tol > 0.0)) throw std::invalid_argument("zero-mode tolerance must be positive");
    return static_cast<std::size_t>(
        std::ranges::count_if(spec.values, [&](cplx v) { return std::abs(v) <= zero_tol; }));
}

}  // namespace ptcav
