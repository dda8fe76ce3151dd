#pragma once

#include <complex>
#include <vector>

#include "reglab/matrix.hpp"

namespace reglab::hilsum {

/// Boundary twist of the fiber family: 1 at t = 0, exp(i/t) for t in (0,1].
/// Unimodular everywhere. Throws outside [0,1].
cplx beta(double t);

/// Spectrum of the fiber operator i d/dx on (0,1) with boundary condition
/// f(0) = beta(t) f(1): lambda_n = 2 pi n at t = 0 and 1/t + 2 pi n for
/// t > 0, listed for n = -M..M. Eigenfunctions are x -> exp(-i lambda_n x),
/// already unit-norm in L2(0,1).
struct FiberEigensystem {
    std::vector<double> eigenvalues;
    cplx eigenfunction_value(int index, double x) const;  // index into eigenvalues
};
FiberEigensystem fiber_eigensystem(double t, int m_modes);

/// Independent check of the fiber spectrum: eigenvalues of the P x P
/// one-sided finite-difference matrix for i d/dx with the twisted wrap
/// entry, converged by fixed-shift inverse iteration near each requested
/// target. First-order accurate, error about lambda^2 / (2P).
struct FdEigenvalue {
    cplx value;
    double residual;  // ||D v - value v|| after convergence
};
FdEigenvalue fd_eigenvalue_near(double t, int gridpoints, double target);

/// The `count` finite-difference eigenvalues nearest zero, seeded at the
/// closed-form positions and converged on the actual matrix.
std::vector<FdEigenvalue> fd_oracle(double t, int gridpoints, int count);

/// z-transform of the fiber operator, expressed on the Fourier modes
/// e_m(x) = exp(2 pi i m x), m = -M..M. Assembled as G diag(mu) G* from the
/// analytic overlaps <e_m, phi_n> = (1 - exp(-i(lambda_n + 2 pi m))) /
/// (i (lambda_n + 2 pi m)) with mu = lambda / sqrt(1 + lambda^2). The
/// eigenmode window is the 2M+1 eigenvalues nearest zero, so all fibers are
/// truncated symmetrically in energy and resonant fibers reproduce the
/// periodic fiber exactly.
OperatorMatrix fiber_z_matrix(double t, int m_modes);

/// Fourier overlap matrix G[m][n] used by fiber_z_matrix.
OperatorMatrix fiber_overlap_matrix(double t, int m_modes);

struct ScanPoint {
    double t;
    int m_modes;
    double norm_distance;       // || z(t) - z(0) ||
    double hermitian_residual;  // hermiticity defect of z(t)
};

/// Operator-norm distances || z(t) - z(0) || over a list of fiber
/// parameters in (0,1]. Grid order is preserved in the output.
std::vector<ScanPoint> discontinuity_scan(const std::vector<double>& t_list, int m_modes);

/// max over adjacent grid pairs of ||z(t_{i+1}) - z(t_i)|| / |t_{i+1} - t_i|,
/// the Lipschitz quotient of the fiber family restricted to the grid.
double lipschitz_quotient(const std::vector<double>& t_grid, int m_modes);

}  // namespace reglab::hilsum
