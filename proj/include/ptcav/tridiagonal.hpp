#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ptcav/matrix.hpp"

namespace ptcav {

/// Band storage of a (generally nonsymmetric) complex tridiagonal matrix.
struct Tridiagonal {
    std::vector<cplx> sub;    // (i+1, i), size n-1
    std::vector<cplx> diag;   // (i, i),   size n
    std::vector<cplx> super;  // (i, i+1), size n-1

    std::size_t size() const { return diag.size(); }

    /// Reads the three central bands; entries outside them are ignored.
    static Tridiagonal from_dense(const ComplexMatrix& m);

    double norm_inf() const;

    /// y = (T - shift I) x
    std::vector<cplx> apply(std::span<const cplx> x, cplx shift = 0.0) const;
};

/// det(T - lambda I) / scale^n through the three-term recurrence, scaled at
/// every step so that large n cannot overflow.
cplx scaled_char_poly(const Tridiagonal& t, cplx lambda, double scale);

/// LU factorisation with partial pivoting of T - shift I (LAPACK gttrf layout:
/// row interchanges create a second superdiagonal).
class TridiagonalLU {
public:
    TridiagonalLU(const Tridiagonal& t, cplx shift);

    cplx determinant() const;

    /// Number of pivots that were exactly zero.
    std::size_t zero_pivots() const { return zero_pivots_; }

    /// Replaces zero pivots by `tiny` so that solve() stays finite.
    void regularize(double tiny);

    void solve_in_place(std::span<cplx> b) const;

private:
    std::vector<cplx> dl_, d_, du_, du2_;
    std::vector<bool> swapped_;
    std::size_t zero_pivots_ = 0;
};

/// det(T) via TridiagonalLU.
cplx tridiagonal_determinant(const Tridiagonal& t);

}  // namespace ptcav
