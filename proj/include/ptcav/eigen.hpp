#pragma once

// Dense complex eigenvalue solver for general (non-normal) matrices:
// balancing, Householder reduction to Hessenberg form, and single-shift
// complex QR with Wilkinson shifts and deflation. No external backend.

#include <cstddef>
#include <span>
#include <vector>

#include "ptcav/matrix.hpp"
#include "ptcav/model.hpp"

namespace ptcav {

struct EigenReport {
    std::vector<cplx> values;
    std::size_t iterations = 0;
    double max_residual = 0.0;
    bool converged = true;
};

struct Balanced {
    ComplexMatrix matrix;        ///< D^-1 M D
    std::vector<double> scaling; ///< diagonal of D, powers of two
};

Balanced balance(const ComplexMatrix& m);

/// Unitary similarity to upper-Hessenberg form. Columns whose entries below
/// the subdiagonal are already zero are left untouched.
ComplexMatrix hessenberg_reduce(ComplexMatrix m);

struct QrOptions {
    double safety = 2.0;            ///< multiplies unit roundoff in the deflation test
    std::size_t stall_period = 10;  ///< exceptional shift every this many stalled iterations
    std::size_t cap_per_site = 30;  ///< iteration cap is cap_per_site * n per eigenvalue
};

/// All eigenvalues of an upper-Hessenberg matrix, in deflation order.
/// Throws std::invalid_argument if entries below the subdiagonal are nonzero.
/// Non-convergence is reported through EigenReport::converged.
EigenReport qr_eigenvalues(ComplexMatrix h, const QrOptions& opts = {});

/// Sorts by real part, then imaginary part.
void sort_eigenvalues(std::vector<cplx>& values);

/// balance -> hessenberg_reduce -> qr_eigenvalues -> sort. max_residual is left 0.
EigenReport dense_eigenvalues(const ComplexMatrix& m, const QrOptions& opts = {});

/// dense_eigenvalues plus validate_spectrum on the result.
EigenReport eigenvalues(const Hamiltonian& h, const QrOptions& opts = {});

/// Largest of the scaled characteristic-polynomial residual |det(H - l)| / |H|^N
/// and the inverse-iteration residual |H v - l v| / |H| over all l in `values`.
/// H must be tridiagonal.
double validate_spectrum(const Hamiltonian& h, std::span<const cplx> values);

/// Determinant of a tridiagonal Hamiltonian via pivoted LU.
cplx determinant(const Hamiltonian& h);

}  // namespace ptcav
