#pragma once

#include <functional>
#include <vector>

#include "reglab/matrix.hpp"

namespace reglab::spectral {

/// Central tolerance defaults. All are relative to max(1, ||input||) unless
/// stated otherwise at the call site.
namespace tol {
inline constexpr double hermitian_input = 1e-10;   // pre-check for eigensolves
inline constexpr double jacobi_offdiag = 1e-13;    // sweep stop, relative to ||H||_F
inline constexpr int jacobi_max_sweeps = 100;
inline constexpr double default_check = 1e-8;      // generic pass/fail threshold
inline constexpr double rank_cutoff = 1e-12;       // Gram-Schmidt dependence cutoff
}  // namespace tol

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    OperatorMatrix vectors;           // unitary, columns are eigenvectors
};

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
/// Throws std::invalid_argument on non-Hermitian input (message carries the
/// measured asymmetry) and std::runtime_error if the sweep cap is hit
/// (message carries the remaining off-diagonal residual).
EigenDecomposition herm_eig(const OperatorMatrix& h);

/// U f(Lambda) U* for Hermitian input. Throws std::domain_error naming the
/// eigenvalue if f is non-finite there.
OperatorMatrix apply_spectral_function(const OperatorMatrix& a,
                                       const std::function<double(double)>& f);

/// Largest singular value. Lanczos iteration on the matrix itself when it is
/// Hermitian, otherwise on its self-adjoint dilation [[0, A], [A*, 0]];
/// the Krylov space is grown (with full reorthogonalization) until the
/// extreme Ritz values stabilize, falling back to full exhaustion of the
/// space, so the result is exact up to roundoff for every input.
double operator_norm(const OperatorMatrix& a);

/// Orthonormalized span of a list of equal-dimension matrices under the
/// Frobenius inner product; answers least-squares distance queries and
/// coefficient recovery against the original (independent) basis.
class SubspaceProjector {
public:
    explicit SubspaceProjector(const std::vector<OperatorMatrix>& basis);

    /// Frobenius distance from x to the span.
    double residual(const OperatorMatrix& x) const;

    /// Coefficients c with x ~ sum_i c_i basis[i] (least squares). Requires
    /// the basis to be linearly independent.
    std::vector<cplx> coefficients(const OperatorMatrix& x) const;

    int rank() const { return static_cast<int>(q_.size()); }
    int member_dim() const { return dim_; }

private:
    int dim_ = 0;
    std::vector<std::vector<cplx>> q_;       // orthonormal vectors (vec'd matrices)
    std::vector<std::vector<cplx>> r_cols_;  // R factor columns, one per input
    std::vector<int> pivot_;                 // q index of each independent input, -1 if dependent
    bool independent_ = true;
};

/// Frobenius distance from x to span(basis). Zero (within roundoff) iff x
/// lies in the span. Throws on dimension mismatch.
double subspace_residual(const OperatorMatrix& x, const std::vector<OperatorMatrix>& basis);

/// Basis of the intersection of span(a) and span(b), from principal vectors of the two
/// orthonormalized spans; a direction counts as common when its principal
/// cosine exceeds 1 - tol.
std::vector<OperatorMatrix> span_intersection(const std::vector<OperatorMatrix>& a,
                                              const std::vector<OperatorMatrix>& b,
                                              double tol = 1e-8);

/// Dense complex linear solve by partially pivoted LU.
std::vector<cplx> solve_linear(OperatorMatrix a, std::vector<cplx> rhs);

}  // namespace reglab::spectral
