#include "ptcav/tridiagonal.hpp"

#include <cmath>

namespace ptcav {

namespace {

double abs1(cplx z) { return std::abs(z.real()) + std::abs(z.imag()); }

}  // namespace

Tridiagonal Tridiagonal::from_dense(const ComplexMatrix& m) {
    const std::size_t n = m.size();
    Tridiagonal t;
    t.diag.resize(n);
    t.sub.resize(n > 0 ? n - 1 : 0);
    t.super.resize(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
        t.diag[i] = m(i, i);
        if (i + 1 < n) {
            t.sub[i] = m(i + 1, i);
            t.super[i] = m(i, i + 1);
        }
    }
    return t;
}

double Tridiagonal::norm_inf() const {
    const std::size_t n = size();
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = std::abs(diag[i]);
        if (i > 0) s += std::abs(sub[i - 1]);
        if (i + 1 < n) s += std::abs(super[i]);
        best = std::max(best, s);
    }
    return best;
}

std::vector<cplx> Tridiagonal::apply(std::span<const cplx> x, cplx shift) const {
    const std::size_t n = size();
    std::vector<cplx> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx s = (diag[i] - shift) * x[i];
        if (i > 0) s += sub[i - 1] * x[i - 1];
        if (i + 1 < n) s += super[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

cplx scaled_char_poly(const Tridiagonal& t, cplx lambda, double scale) {
    const std::size_t n = t.size();
    if (n == 0) return 1.0;
    cplx prev = 1.0;
    cplx cur = (t.diag[0] - lambda) / scale;
    for (std::size_t k = 1; k < n; ++k) {
        const cplx next =
            ((t.diag[k] - lambda) / scale) * cur - (t.sub[k - 1] * t.super[k - 1] / (scale * scale)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

TridiagonalLU::TridiagonalLU(const Tridiagonal& t, cplx shift)
    : dl_(t.sub), d_(t.diag), du_(t.super), du2_(t.size() > 2 ? t.size() - 2 : 0), swapped_(t.size(), false) {
    const std::size_t n = d_.size();
    for (auto& x : d_) x -= shift;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (abs1(d_[i]) >= abs1(dl_[i])) {
            if (d_[i] != cplx(0.0)) {
                const cplx fact = dl_[i] / d_[i];
                dl_[i] = fact;
                d_[i + 1] -= fact * du_[i];
            }
        } else {
            const cplx fact = d_[i] / dl_[i];
            d_[i] = dl_[i];
            dl_[i] = fact;
            const cplx temp = du_[i];
            du_[i] = d_[i + 1];
            d_[i + 1] = temp - fact * d_[i + 1];
            if (i + 2 < n) {
                du2_[i] = du_[i + 1];
                du_[i + 1] = -fact * du_[i + 1];
            }
            swapped_[i] = true;
        }
    }
    for (const auto& p : d_)
        if (p == cplx(0.0)) ++zero_pivots_;
}

cplx TridiagonalLU::determinant() const {
    cplx det = 1.0;
    for (std::size_t i = 0; i < d_.size(); ++i) {
        det *= d_[i];
        if (swapped_[i]) det = -det;
    }
    return det;
}

void TridiagonalLU::regularize(double tiny) {
    for (auto& p : d_)
        if (p == cplx(0.0)) p = tiny;
}

void TridiagonalLU::solve_in_place(std::span<cplx> b) const {
    const std::size_t n = d_.size();
    if (n == 0) return;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!swapped_[i]) {
            b[i + 1] -= dl_[i] * b[i];
        } else {
            const cplx temp = b[i];
            b[i] = b[i + 1];
            b[i + 1] = temp - dl_[i] * b[i];
        }
    }
    b[n - 1] /= d_[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
    for (std::size_t k = n; k-- > 2;) {
        const std::size_t i = k - 2;
        b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }
}

cplx tridiagonal_determinant(const Tridiagonal& t) { return TridiagonalLU(t, 0.0).determinant(); }

}  // namespace ptcav
