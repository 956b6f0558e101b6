#include "ptcav/model.hpp"

#include <cmath>
#include <numbers>

namespace ptcav {

std::string_view to_string(GainLossLayout layout) {
    switch (layout) {
    case GainLossLayout::Hermitian: return "hermitian";
    case GainLossLayout::EndPair: return "end-pair";
    case GainLossLayout::InnerPair: return "inner-pair";
    case GainLossLayout::Staggered: return "staggered";
    }
    return "unknown";
}

GainLossLayout parse_layout(std::string_view name) {
    if (name == "hermitian") return GainLossLayout::Hermitian;
    if (name == "end-pair") return GainLossLayout::EndPair;
    if (name == "inner-pair") return GainLossLayout::InnerPair;
    if (name == "staggered") return GainLossLayout::Staggered;
    throw std::invalid_argument("unknown layout '" + std::string(name) + "'");
}

void ModelParams::validate() const {
    if (n_sites < 2) throw ModelError("n_sites", "n_sites must be at least 2");
    if (layout == GainLossLayout::InnerPair && n_sites < 4)
        throw ModelError("n_sites", "inner-pair layout needs at least 4 sites");
    if (!std::isfinite(delta) || std::abs(delta) > 1.0)
        throw ModelError("delta", "delta must lie in [-1, 1]");
    // a little slack so that 2*pi computed from a grid is accepted
    constexpr double slack = 1e-12;
    if (!std::isfinite(phi) || phi < -slack || phi > 2.0 * std::numbers::pi + slack)
        throw ModelError("phi", "phi must lie in [0, 2 pi]");
    if (!std::isfinite(kappa) || kappa < 0.0) throw ModelError("kappa", "kappa must be >= 0");
    if (!std::isfinite(epsilon)) throw ModelError("epsilon", "epsilon must be finite");
}

Couplings coupling_strengths(double delta, double phi) {
    const double c = delta * std::cos(phi);
    return {1.0 - c, 1.0 + c};
}

double gain_loss_term(GainLossLayout layout, std::size_t i, std::size_t n, double kappa) {
    switch (layout) {
    case GainLossLayout::Hermitian: return 0.0;
    case GainLossLayout::EndPair:
        if (i == 0) return -kappa;
        if (i == n - 1) return kappa;
        return 0.0;
    case GainLossLayout::InnerPair:
        if (i == 1) return -kappa;
        if (i == n - 2) return kappa;
        return 0.0;
    case GainLossLayout::Staggered:
        // 0-based even index is an odd site label
        return (i % 2 == 0) ? -kappa : kappa;
    }
    return 0.0;
}

Hamiltonian build_hamiltonian(const ModelParams& params) {
    params.validate();
    const std::size_t n = params.n_sites;
    const auto [j1, j2] = coupling_strengths(params.delta, params.phi);

    ComplexMatrix h(n);
    for (std::size_t i = 0; i < n; ++i)
        h(i, i) = cplx(params.epsilon, gain_loss_term(params.layout, i, n, params.kappa));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double t = (i % 2 == 0) ? j1 : j2;
        h(i, i + 1) = t;
        h(i + 1, i) = t;
    }
    return {std::move(h), params};
}

double pt_residual(const Hamiltonian& h) {
    const std::size_t n = h.dim();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const cplx reflected = std::conj(h(n - 1 - i, n - 1 - j));
            worst = std::max(worst, std::abs(reflected - h(i, j)));
        }
    }
    return worst;
}

}  // namespace ptcav
