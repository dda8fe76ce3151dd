#include "reglab/hilsum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "reglab/spectral.hpp"

namespace reglab::hilsum {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double fiber_lambda(double t, int n) {
    return (t == 0.0) ? kTwoPi * n : 1.0 / t + kTwoPi * n;
}

double mu_of(double lambda) { return lambda / std::sqrt(1.0 + lambda * lambda); }

// (1 - exp(-iu)) / (iu), the L2(0,1) pairing of exp(-i lambda x) against a
// Fourier mode, with the removable singularity at u = 0 filled in.
cplx sinc_overlap(double u) {
    if (std::abs(u) < 1e-8) {
        // series: 1 - iu/2 - u^2/6 + ...
        return cplx(1.0 - u * u / 6.0, -0.5 * u);
    }
    const cplx num = 1.0 - std::exp(cplx(0.0, -u));
    return num / cplx(0.0, u);
}

}  // namespace

cplx beta(double t) {
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("beta: t must lie in [0,1]");
    if (t == 0.0) return 1.0;
    return std::exp(cplx(0.0, 1.0 / t));
}

cplx FiberEigensystem::eigenfunction_value(int index, double x) const {
    const double lambda = eigenvalues.at(static_cast<std::size_t>(index));
    return std::exp(cplx(0.0, -lambda * x));
}

FiberEigensystem fiber_eigensystem(double t, int m_modes) {
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("fiber_eigensystem: t must lie in [0,1]");
    if (m_modes < 1) throw std::invalid_argument("fiber_eigensystem: M must be positive");
    FiberEigensystem out;
    out.eigenvalues.reserve(static_cast<std::size_t>(2 * m_modes + 1));
    for (int n = -m_modes; n <= m_modes; ++n) out.eigenvalues.push_back(fiber_lambda(t, n));
    return out;
}

namespace {

// One-sided difference matrix iP(C - I) with the twisted wrap f_P = f_0 / beta.
OperatorMatrix fd_matrix(double t, int p) {
    OperatorMatrix d(p);
    const double scale = static_cast<double>(p);
    const cplx i_scale(0.0, scale);
    const cplx wrap = 1.0 / beta(t);
    for (int r = 0; r < p; ++r) {
        d(r, r) = -i_scale;
        if (r + 1 < p)
            d(r, r + 1) = i_scale;
        else
            d(r, 0) = i_scale * wrap;
    }
    return d;
}

}  // namespace

FdEigenvalue fd_eigenvalue_near(double t, int gridpoints, double target) {
    if (gridpoints < 64) throw std::invalid_argument("fd_eigenvalue_near: need at least 64 points");
    const int p = gridpoints;
    const OperatorMatrix d = fd_matrix(t, p);

    // fixed-shift inverse iteration; the shift anticipates the first-order
    // imaginary drift of the scheme and stays slightly off the spectrum
    OperatorMatrix shifted = d;
    double imag_guess = -0.5 * target * target / p;
    if (imag_guess == 0.0) imag_guess = -1e-3;
    const cplx sigma(target, imag_guess);
    for (int r = 0; r < p; ++r) shifted(r, r) -= sigma;

    std::vector<cplx> v(static_cast<std::size_t>(p));
    for (int r = 0; r < p; ++r) v[static_cast<std::size_t>(r)] = cplx(1.0, 0.25 * ((r * 37) % 11));
    auto normalize = [&]() {
        double s = 0.0;
        for (const cplx& z : v) s += std::norm(z);
        s = std::sqrt(s);
        for (cplx& z : v) z /= s;
    };
    normalize();

    cplx lambda = sigma;
    double residual = 1e300;
    for (int it = 0; it < 40; ++it) {
        v = spectral::solve_linear(shifted, std::move(v));
        normalize();
        // Rayleigh quotient and residual on the original matrix
        std::vector<cplx> dv(static_cast<std::size_t>(p), 0.0);
        for (int r = 0; r < p; ++r) {
            cplx s = 0.0;
            // the operator is bidiagonal; avoid the full O(p^2) product
            s += d(r, r) * v[static_cast<std::size_t>(r)];
            const int c = (r + 1 < p) ? r + 1 : 0;
            s += d(r, c) * v[static_cast<std::size_t>(c)];
            dv[static_cast<std::size_t>(r)] = s;
        }
        cplx num = 0.0;
        for (int r = 0; r < p; ++r) num += std::conj(v[static_cast<std::size_t>(r)]) * dv[static_cast<std::size_t>(r)];
        lambda = num;
        double rs = 0.0;
        for (int r = 0; r < p; ++r) rs += std::norm(dv[static_cast<std::size_t>(r)] - lambda * v[static_cast<std::size_t>(r)]);
        residual = std::sqrt(rs);
        if (residual <= 1e-10 * p) break;
    }
    return {lambda, residual};
}

std::vector<FdEigenvalue> fd_oracle(double t, int gridpoints, int count) {
    // seed targets: closed-form eigenvalues nearest zero
    std::vector<double> lambdas;
    const int span = count + 4;
    const double base = (t == 0.0) ? 0.0 : 1.0 / t;
    const int center = static_cast<int>(std::lround(-base / kTwoPi));
    for (int n = center - span; n <= center + span; ++n) lambdas.push_back(base + kTwoPi * n);
    std::sort(lambdas.begin(), lambdas.end(),
              [](double a, double b) { return std::abs(a) < std::abs(b); });
    lambdas.resize(static_cast<std::size_t>(count));

    std::vector<FdEigenvalue> out;
    out.reserve(lambdas.size());
    for (double l : lambdas) out.push_back(fd_eigenvalue_near(t, gridpoints, l));
    return out;
}

OperatorMatrix fiber_overlap_matrix(double t, int m_modes) {
    const int m = m_modes;
    const int dim = 2 * m + 1;
    const double base = (t == 0.0) ? 0.0 : 1.0 / t;
    const int center = (t == 0.0) ? 0 : static_cast<int>(std::lround(-base / kTwoPi));

    OperatorMatrix g(dim, -m);
    for (int col = -m; col <= m; ++col) {
        const double lambda = base + kTwoPi * (center + col);
        for (int row = -m; row <= m; ++row) {
            g(row + m, col + m) = sinc_overlap(lambda + kTwoPi * row);
        }
    }
    return g;
}

OperatorMatrix fiber_z_matrix(double t, int m_modes) {
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("fiber_z_matrix: t must lie in [0,1]");
    if (m_modes < 1) throw std::invalid_argument("fiber_z_matrix: M must be positive");
    const int m = m_modes;
    const int dim = 2 * m + 1;
    const double base = (t == 0.0) ? 0.0 : 1.0 / t;
    const int center = (t == 0.0) ? 0 : static_cast<int>(std::lround(-base / kTwoPi));

    // Eigenmodes enter through an energy window |lambda| < 2 pi (M+1) with a
    // one-mode linear taper. The taper keeps t -> z(t) continuous on (0,1]
    // (no mode ever pops in at finite weight) while fibers whose eigenvalue
    // set coincides with the periodic one still produce identical matrices;
    // at t = 0 every retained mode has weight 1 and z(0) is the plain
    // diagonal truncation.
    const double cutoff = kTwoPi * (m + 1);
    auto weight = [&](double lambda) {
        const double w = (cutoff - std::abs(lambda)) / kTwoPi;
        return std::clamp(w, 0.0, 1.0);
    };

    OperatorMatrix z(dim, -m);
    std::vector<cplx> overlap(static_cast<std::size_t>(dim));
    for (int n = center - m - 1; n <= center + m + 1; ++n) {
        const double lambda = base + kTwoPi * n;
        const double w = weight(lambda);
        if (w <= 0.0) continue;
        const double wmu = w * mu_of(lambda);
        for (int row = -m; row <= m; ++row)
            overlap[static_cast<std::size_t>(row + m)] = sinc_overlap(lambda + kTwoPi * row);
        for (int r = 0; r < dim; ++r) {
            const cplx vr = wmu * overlap[static_cast<std::size_t>(r)];
            if (vr == 0.0) continue;
            for (int c = 0; c < dim; ++c)
                z(r, c) += vr * std::conj(overlap[static_cast<std::size_t>(c)]);
        }
    }
    for (int r = 0; r < dim; ++r)
        for (int c = r; c < dim; ++c) {
            const cplx v = 0.5 * (z(r, c) + std::conj(z(c, r)));
            z(r, c) = v;
            z(c, r) = std::conj(v);
        }
    return z;
}

std::vector<ScanPoint> discontinuity_scan(const std::vector<double>& t_list, int m_modes) {
    const OperatorMatrix z0 = fiber_z_matrix(0.0, m_modes);
    std::vector<ScanPoint> out;
    out.reserve(t_list.size());
    for (double t : t_list) {
        if (!(t > 0.0 && t <= 1.0))
            throw std::invalid_argument("discontinuity_scan: t values must lie in (0,1]");
        OperatorMatrix zt = fiber_z_matrix(t, m_modes);
        const double herm = zt.hermiticity_defect();
        const double dist = spectral::operator_norm(zt - z0);
        out.push_back({t, m_modes, dist, herm});
    }
    return out;
}

double lipschitz_quotient(const std::vector<double>& t_grid, int m_modes) {
    if (t_grid.size() < 2)
        throw std::invalid_argument("lipschitz_quotient: need at least two grid points");
    double worst = 0.0;
    OperatorMatrix prev = fiber_z_matrix(t_grid.front(), m_modes);
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        OperatorMatrix cur = fiber_z_matrix(t_grid[i], m_modes);
        const double dt = std::abs(t_grid[i] - t_grid[i - 1]);
        if (dt == 0.0) throw std::invalid_argument("lipschitz_quotient: repeated grid point");
        worst = std::max(worst, spectral::operator_norm(cur - prev) / dt);
        prev = std::move(cur);
    }
    return worst;
}

}  // namespace reglab::hilsum
