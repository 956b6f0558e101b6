#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ptcav/matrix.hpp"

namespace ptcav {

enum class EigClass { Real, PurelyImaginary, GenuinelyComplex, Zero };

std::string_view to_string(EigClass c);
EigClass parse_eig_class(std::string_view name);

enum class Phase { Unbroken, Broken };

std::string_view to_string(Phase p);

struct ClassCounts {
    std::size_t real = 0;
    std::size_t imaginary = 0;
    std::size_t complex = 0;
    std::size_t zero = 0;

    std::size_t total() const { return real + imaginary + complex + zero; }
    friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

struct Spectrum {
    std::vector<cplx> values;  ///< sorted by (re, im)
    std::vector<EigClass> classes;
    double tol = 0.0;
    Phase phase = Phase::Unbroken;
    ClassCounts counts;

    std::size_t dim() const { return values.size(); }
};

/// 1e-7 * (1 + max |lambda|).
double default_class_tol(std::span<const cplx> values);

constexpr double default_zero_tol = 1e-6;

/// Single-eigenvalue rule: Zero, Real, PurelyImaginary or GenuinelyComplex.
EigClass classify_value(cplx lambda, double tol);

/// Sorts `values` and labels each one. Throws std::invalid_argument if tol <= 0.
Spectrum classify_spectrum(std::vector<cplx> values, double tol);

/// Same, with default_class_tol.
Spectrum classify_spectrum(std::vector<cplx> values);

struct PairingReport {
    std::size_t quartets = 0;             ///< {l, conj l, -l, -conj l}
    std::size_t conjugate_pairs = 0;      ///< {l, conj l} outside quartets
    std::size_t imaginary_pairs = 0;      ///< subset of conjugate_pairs with both members PurelyImaginary
    std::vector<cplx> unmatched;          ///< non-real values left without a conjugate partner
    std::size_t reflection_unmatched = 0; ///< non-real values without a -conj partner
};

/// Matches quartets first, then conjugate pairs, among the non-real
/// (PurelyImaginary and GenuinelyComplex) eigenvalues. Matching is greedy by
/// distance within `pair_tol`; quartet seeds are visited by increasing |Re|.
/// pair_tol <= 0 selects the spectrum's own classification tolerance.
PairingReport pairing_structure(const Spectrum& spec, double pair_tol = 0.0);

/// Number of eigenvalues with |lambda| <= zero_tol. Throws if zero_tol <= 0.
std::size_t count_zero_modes(const Spectrum& spec, double zero_tol = default_zero_tol);

}  // namespace ptcav
