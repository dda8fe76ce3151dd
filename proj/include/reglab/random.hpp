#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "reglab/matrix.hpp"

namespace reglab {

/// Seeded random source with self-contained Gaussian sampling (Box-Muller
/// over raw engine output), so identical seeds give identical streams on
/// every platform. Used wherever an experiment contract promises
/// bit-reproducible reports.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    cplx gaussian_cplx() {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

    /// Uniform integer in [lo, hi] (inclusive), rejection-free modulo bias
    /// is irrelevant at the ranges used here.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    OperatorMatrix gaussian_matrix(int dim, int basis_offset = 0) {
        OperatorMatrix m(dim, basis_offset);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) m(i, j) = gaussian_cplx();
        return m;
    }

    OperatorMatrix hermitian_matrix(int dim) {
        OperatorMatrix a = gaussian_matrix(dim);
        OperatorMatrix h(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
        return h;
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace reglab
