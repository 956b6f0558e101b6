#include "ptcav/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ptcav/tridiagonal.hpp"

namespace ptcav {

namespace {

constexpr double unit_roundoff = std::numeric_limits<double>::epsilon() / 2.0;

struct Givens {
    double c;
    cplx s;
};

// [c s; -conj(s) c] [x; y] = [r; 0]
Givens make_givens(cplx x, cplx y) {
    const double ax = std::abs(x);
    if (ax == 0.0) return {0.0, 1.0};
    const double norm = std::hypot(ax, std::abs(y));
    const cplx phase = x / ax;
    return {ax / norm, phase * std::conj(y) / norm};
}

// Eigenvalue of [[a, b], [c, d]] closest to d.
cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
    const cplx p = 0.5 * (a - d);
    const cplx bc = b * c;
    const cplx disc = std::sqrt(p * p + bc);
    const cplx big = std::abs(p + disc) >= std::abs(p - disc) ? p + disc : p - disc;
    if (big == cplx(0.0)) return d;
    return d - bc / big;
}

}  // namespace

Balanced balance(const ComplexMatrix& m) {
    constexpr double radix = 2.0;
    constexpr double radix_sq = radix * radix;
    const std::size_t n = m.size();
    Balanced out{m, std::vector<double>(n, 1.0)};
    ComplexMatrix& a = out.matrix;

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            double c = 0.0;
            double r = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;

            const double s = c + r;
            double f = 1.0;
            double g = r / radix;
            while (c < g) {
                f *= radix;
                c *= radix_sq;
            }
            g = r * radix;
            while (c >= g) {
                f /= radix;
                c /= radix_sq;
            }
            if ((c + r) / f < 0.95 * s) {
                changed = true;
                out.scaling[i] *= f;
                for (std::size_t j = 0; j < n; ++j) a(i, j) /= f;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
    return out;
}

ComplexMatrix hessenberg_reduce(ComplexMatrix a) {
    const std::size_t n = a.size();
    if (n < 3) return a;
    std::vector<cplx> v(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        double tail = 0.0;
        for (std::size_t i = k + 2; i < n; ++i) tail = std::hypot(tail, std::abs(a(i, k)));
        if (tail == 0.0) continue;

        const cplx x0 = a(k + 1, k);
        const double beta = std::hypot(std::abs(x0), tail);
        const cplx phase = std::abs(x0) == 0.0 ? cplx(1.0) : x0 / std::abs(x0);
        const cplx alpha = -phase * beta;

        // v = x - alpha e1, reflector I - 2 v v^H / (v^H v)
        v[k + 1] = x0 - alpha;
        double vnorm2 = std::norm(v[k + 1]);
        for (std::size_t i = k + 2; i < n; ++i) {
            v[i] = a(i, k);
            vnorm2 += std::norm(v[i]);
        }
        const double tau = 2.0 / vnorm2;

        for (std::size_t j = k; j < n; ++j) {
            cplx dot = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * a(i, j);
            dot *= tau;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= v[i] * dot;
        }
        for (std::size_t i = 0; i < n; ++i) {
            cplx dot = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
            dot *= tau;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= dot * std::conj(v[j]);
        }

        a(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
    return a;
}

EigenReport qr_eigenvalues(ComplexMatrix h, const QrOptions& opts) {
    const std::size_t n = h.size();
    for (std::size_t i = 2; i < n; ++i)
        for (std::size_t j = 0; j + 1 < i; ++j)
            if (h(i, j) != cplx(0.0)) throw std::invalid_argument("qr_eigenvalues: input is not upper Hessenberg");

    EigenReport report;
    report.values.assign(n, 0.0);
    if (n == 0) return report;

    const double tol = opts.safety * unit_roundoff;
    const double tiny = std::numeric_limits<double>::min();
    const std::size_t cap = std::max<std::size_t>(opts.cap_per_site * n, opts.cap_per_site);
    std::vector<Givens> rot(n);

    std::size_t hi = n - 1;
    std::size_t its = 0;
    while (true) {
        // locate the start of the unreduced block ending at hi
        std::size_t lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            double ref = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (ref == 0.0) {
                // both diagonal entries vanish: compare against neighbouring subdiagonals
                if (lo >= 2) ref += std::abs(h(lo - 1, lo - 2));
                if (lo + 1 <= hi) ref += std::abs(h(lo + 1, lo));
            }
            if (sub <= tol * ref || sub <= tiny) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }

        if (lo == hi) {
            report.values[hi] = h(hi, hi);
            its = 0;
            if (hi == 0) break;
            --hi;
            continue;
        }

        if (its >= cap) {
            report.converged = false;
            for (std::size_t i = 0; i <= hi; ++i) report.values[i] = h(i, i);
            break;
        }

        cplx mu;
        if (its > 0 && its % opts.stall_period == 0) {
            mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
        } else {
            mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
        }
        ++its;
        ++report.iterations;

        for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= mu;

        // H - mu I = Q R, accumulated as rotations on rows k, k+1
        for (std::size_t k = lo; k < hi; ++k) {
            const Givens g = make_givens(h(k, k), h(k + 1, k));
            rot[k] = g;
            for (std::size_t j = k; j <= hi; ++j) {
                const cplx x = h(k, j);
                const cplx y = h(k + 1, j);
                h(k, j) = g.c * x + g.s * y;
                h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
            }
            h(k + 1, k) = 0.0;
        }
        // R Q: apply each rotation's adjoint to columns k, k+1
        for (std::size_t k = lo; k < hi; ++k) {
            const Givens g = rot[k];
            const std::size_t last = std::min(k + 1, hi);
            for (std::size_t i = lo; i <= last; ++i) {
                const cplx x = h(i, k);
                const cplx y = h(i, k + 1);
                h(i, k) = g.c * x + std::conj(g.s) * y;
                h(i, k + 1) = -g.s * x + g.c * y;
            }
        }

        for (std::size_t i = lo; i <= hi; ++i) h(i, i) += mu;
    }
    return report;
}

void sort_eigenvalues(std::vector<cplx>& values) {
    std::ranges::sort(values, [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

EigenReport dense_eigenvalues(const ComplexMatrix& m, const QrOptions& opts) {
    EigenReport report = qr_eigenvalues(hessenberg_reduce(balance(m).matrix), opts);
    sort_eigenvalues(report.values);
    return report;
}

EigenReport eigenvalues(const Hamiltonian& h, const QrOptions& opts) {
    EigenReport report = dense_eigenvalues(h.entries, opts);
    report.max_residual = validate_spectrum(h, report.values);
    return report;
}

double validate_spectrum(const Hamiltonian& h, std::span<const cplx> values) {
    const Tridiagonal t = Tridiagonal::from_dense(h.entries);
    const std::size_t n = t.size();
    if (n == 0) return 0.0;
    const double norm = std::max(t.norm_inf(), std::numeric_limits<double>::min());

    // fixed start vector with no special symmetry
    std::vector<cplx> start(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i);
        start[i] = cplx(std::cos(0.7 * x + 0.3), std::sin(1.3 * x + 0.1));
    }

    double worst = 0.0;
    for (const cplx lambda : values) {
        worst = std::max(worst, std::abs(scaled_char_poly(t, lambda, norm)));

        const cplx shift = lambda * (1.0 + 10.0 * unit_roundoff);
        TridiagonalLU lu(t, shift);
        lu.regularize(unit_roundoff * norm);
        std::vector<cplx> v = start;
        lu.solve_in_place(v);

        double vnorm = 0.0;
        for (const auto& x : v) vnorm = std::hypot(vnorm, std::abs(x));
        if (!std::isfinite(vnorm) || vnorm == 0.0) {
            worst = std::max(worst, std::numeric_limits<double>::infinity());
            continue;
        }
        for (auto& x : v) x /= vnorm;

        const std::vector<cplx> r = t.apply(v, lambda);
        double rnorm = 0.0;
        for (const auto& x : r) rnorm = std::hypot(rnorm, std::abs(x));
        worst = std::max(worst, rnorm / norm);
    }
    return worst;
}

cplx determinant(const Hamiltonian& h) { return tridiagonal_determinant(Tridiagonal::from_dense(h.entries)); }

}  // namespace ptcav
