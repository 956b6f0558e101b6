#pragma once

// Effective Hamiltonians of a coupled-cavity array with alternating
// (SSH-type) hopping and balanced loss/gain cavities.
//
// Energies are in units of the mean hopping J = 1. Sites are labelled
// 1..N in documentation and output; storage is 0-based.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ptcav/matrix.hpp"

namespace ptcav {

/// Where the loss (-i kappa) and gain (+i kappa) cavities sit.
enum class GainLossLayout {
    Hermitian,  ///< no loss or gain
    EndPair,    ///< loss on site 1, gain on site N
    InnerPair,  ///< loss on site 2, gain on site N-1
    Staggered,  ///< loss on every odd site, gain on every even site
};

std::string_view to_string(GainLossLayout layout);

/// Parses `hermitian`, `end-pair`, `inner-pair` or `staggered`.
/// Throws std::invalid_argument on anything else.
GainLossLayout parse_layout(std::string_view name);

class ModelError : public std::invalid_argument {
public:
    ModelError(std::string field, const std::string& what)
        : std::invalid_argument(what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct ModelParams {
    std::size_t n_sites = 50;
    double delta = 0.5;    ///< modulation strength
    double phi = 0.0;      ///< modulation angle, radians in [0, 2 pi]
    double kappa = 0.0;    ///< loss/gain rate, >= 0
    double epsilon = 0.0;  ///< uniform real on-site energy; shifts every eigenvalue
    GainLossLayout layout = GainLossLayout::EndPair;

    /// Throws ModelError naming the offending field.
    void validate() const;

    ModelParams with_phi(double p) const {
        ModelParams out = *this;
        out.phi = p;
        return out;
    }
    ModelParams with_kappa(double k) const {
        ModelParams out = *this;
        out.kappa = k;
        return out;
    }
};

struct Couplings {
    double j1;  ///< bond (i, i+1) for odd i
    double j2;  ///< bond (i, i+1) for even i
};

/// J1 = 1 - delta cos(phi), J2 = 1 + delta cos(phi).
Couplings coupling_strengths(double delta, double phi);

/// Dense tridiagonal Hamiltonian plus the parameters it came from.
struct Hamiltonian {
    ComplexMatrix entries;
    ModelParams params;

    std::size_t dim() const { return entries.size(); }
    cplx operator()(std::size_t i, std::size_t j) const { return entries(i, j); }
};

/// The on-site imaginary term for 0-based site `i` of an `n`-site chain.
double gain_loss_term(GainLossLayout layout, std::size_t i, std::size_t n, double kappa);

Hamiltonian build_hamiltonian(const ModelParams& params);

/// max |P conj(H) P - H| with P the site reversal. Zero iff H is PT symmetric.
double pt_residual(const Hamiltonian& h);

}  // namespace ptcav
