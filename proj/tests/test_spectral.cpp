#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "reglab/spectral.hpp"
#include "test_helpers.hpp"

using namespace reglab;
using namespace reglab::spectral;
using reglab::testing::full_matrix_basis;
using reglab::testing::max_abs_diff;

namespace {

OperatorMatrix reconstruct(const EigenDecomposition& ed) {
    const int n = ed.vectors.dim();
    OperatorMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < n; ++k)
                s += ed.vectors(i, k) * ed.eigenvalues[k] * std::conj(ed.vectors(j, k));
            r(i, j) = s;
        }
    return r;
}

double unitarity_defect(const OperatorMatrix& u) {
    return max_abs_diff(u.adjoint() * u, OperatorMatrix::identity(u.dim()));
}

}  // namespace

TEST_CASE("herm_eig on the identity") {
    const OperatorMatrix id = OperatorMatrix::identity(3);
    const EigenDecomposition ed = herm_eig(id);
    for (double l : ed.eigenvalues) CHECK(l == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unitarity_defect(ed.vectors) < 1e-12);
}

TEST_CASE("herm_eig on a diagonal matrix sorts ascending") {
    OperatorMatrix d(2);
    d(0, 0) = 2.0;
    d(1, 1) = -1.0;
    const EigenDecomposition ed = herm_eig(d);
    CHECK(ed.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(ed.eigenvalues[1] == doctest::Approx(2.0));
}

TEST_CASE("herm_eig reconstructs a random Hermitian matrix") {
    Rng rng(11);
    const OperatorMatrix h = rng.hermitian_matrix(8);
    const EigenDecomposition ed = herm_eig(h);
    const double scale = std::max(1.0, h.frobenius_norm());
    CHECK(max_abs_diff(reconstruct(ed), h) <= 1e-10 * scale);
    CHECK(unitarity_defect(ed.vectors) <= 1e-10);
    for (std::size_t k = 1; k < ed.eigenvalues.size(); ++k)
        CHECK(ed.eigenvalues[k] >= ed.eigenvalues[k - 1]);
}

TEST_CASE("herm_eig reconstruction property over many sizes") {
    Rng rng(12);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = rng.uniform_int(1, 16);
        const OperatorMatrix h = rng.hermitian_matrix(n);
        const EigenDecomposition ed = herm_eig(h);
        CHECK((reconstruct(ed) - h).frobenius_norm() <= 1e-9 * std::max(1.0, h.frobenius_norm()));
    }
}

TEST_CASE("herm_eig rejects non-Hermitian input with the asymmetry reported") {
    OperatorMatrix a(2);
    a(0, 1) = 1.0;
    CHECK_THROWS_WITH_AS(herm_eig(a), doctest::Contains("not Hermitian"), std::invalid_argument);
}

TEST_CASE("apply_spectral_function identity map returns the input") {
    Rng rng(5);
    const OperatorMatrix h = rng.hermitian_matrix(6);
    const OperatorMatrix r = apply_spectral_function(h, [](double x) { return x; });
    CHECK(max_abs_diff(r, h) <= 1e-10 * std::max(1.0, h.frobenius_norm()));
}

TEST_CASE("apply_spectral_function scalar cases") {
    const OperatorMatrix id = OperatorMatrix::identity(3);
    const OperatorMatrix r = apply_spectral_function(id, [](double x) { return 1.0 / std::sqrt(1.0 + x); });
    CHECK(max_abs_diff(r, id * cplx(1.0 / std::sqrt(2.0), 0.0)) < 1e-12);

    OperatorMatrix d(2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    const OperatorMatrix s = apply_spectral_function(d, [](double x) { return std::sqrt(x); });
    CHECK(s(0, 0).real() == doctest::Approx(2.0));
    CHECK(s(1, 1).real() == doctest::Approx(3.0));
}

TEST_CASE("apply_spectral_function reports the offending eigenvalue") {
    OperatorMatrix d(2);
    d(0, 0) = -4.0;
    d(1, 1) = 9.0;
    CHECK_THROWS_AS(apply_spectral_function(d, [](double x) { return std::sqrt(x); }),
                    std::domain_error);
}

TEST_CASE("functional calculus is multiplicative on polynomials") {
    Rng rng(21);
    auto f = [](double x) { return x * x - 2.0 * x + 1.0; };
    auto g = [](double x) { return 3.0 * x + 0.5; };
    auto fg = [&](double x) { return f(x) * g(x); };
    for (int rep = 0; rep < 20; ++rep) {
        const OperatorMatrix h = rng.hermitian_matrix(rng.uniform_int(2, 10));
        const OperatorMatrix lhs = apply_spectral_function(h, fg);
        const OperatorMatrix rhs = apply_spectral_function(h, f) * apply_spectral_function(h, g);
        const double scale = std::max(1.0, lhs.frobenius_norm());
        CHECK((lhs - rhs).frobenius_norm() <= 1e-9 * scale);
    }
}

TEST_CASE("operator_norm basic values") {
    OperatorMatrix z(4);
    CHECK(operator_norm(z) == 0.0);

    // cyclic shift is unitary
    OperatorMatrix shift(5);
    for (int i = 0; i < 5; ++i) shift((i + 1) % 5, i) = 1.0;
    CHECK(operator_norm(shift) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("operator_norm matches the A*A eigenvalue route") {
    Rng rng(31);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = rng.uniform_int(1, 24);
        const OperatorMatrix a = rng.gaussian_matrix(n);
        const double got = operator_norm(a);
        const EigenDecomposition ed = herm_eig(a.adjoint() * a);
        const double want = std::sqrt(std::max(0.0, ed.eigenvalues.back()));
        CHECK(got == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("operator_norm handles repeated extreme singular values") {
    // 2x identity block structure gives a degenerate top singular value.
    OperatorMatrix a = OperatorMatrix::identity(12);
    a *= cplx(3.0, 0.0);
    CHECK(operator_norm(a) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("operator_norm on larger Hermitian matrices agrees with Jacobi") {
    Rng rng(77);
    const OperatorMatrix h = rng.hermitian_matrix(140);
    const EigenDecomposition ed = herm_eig(h);
    const double want = std::max(std::abs(ed.eigenvalues.front()), std::abs(ed.eigenvalues.back()));
    CHECK(operator_norm(h) == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("subspace_residual membership and orthogonality") {
    auto basis = full_matrix_basis(3);
    CHECK(subspace_residual(basis[0], basis) <= 1e-12);

    // orthogonal element: distance equals its Frobenius norm
    std::vector<OperatorMatrix> part{basis[0], basis[1]};
    OperatorMatrix x(3);
    x(2, 2) = 2.0;
    CHECK(subspace_residual(x, part) == doctest::Approx(2.0));
}

TEST_CASE("subspace_residual vanishes on combinations") {
    Rng rng(41);
    std::vector<OperatorMatrix> basis;
    for (int i = 0; i < 3; ++i) basis.push_back(rng.gaussian_matrix(4));
    const OperatorMatrix x = basis[0] + basis[1];
    CHECK(subspace_residual(x, basis) <= 1e-10);

    for (int rep = 0; rep < 50; ++rep) {
        OperatorMatrix y(4);
        for (const auto& b : basis) y += rng.gaussian_cplx() * b;
        CHECK(subspace_residual(y, basis) <= 1e-9 * std::max(1.0, y.frobenius_norm()));
    }
}

TEST_CASE("subspace_residual rejects dimension mismatch") {
    std::vector<OperatorMatrix> basis{OperatorMatrix::identity(3)};
    CHECK_THROWS_AS(subspace_residual(OperatorMatrix::identity(4), basis), std::invalid_argument);
}

TEST_CASE("SubspaceProjector recovers coefficients") {
    Rng rng(55);
    std::vector<OperatorMatrix> basis;
    for (int i = 0; i < 4; ++i) basis.push_back(rng.gaussian_matrix(3));
    std::vector<cplx> want{cplx(1.0, 2.0), cplx(-0.5, 0.0), cplx(0.0, 1.0), cplx(2.0, -1.0)};
    OperatorMatrix x(3);
    for (int i = 0; i < 4; ++i) x += want[i] * basis[i];
    SubspaceProjector proj(basis);
    const auto got = proj.coefficients(x);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(got[i] - want[i]) < 1e-10);
}

TEST_CASE("span_intersection finds the common line") {
    auto e = full_matrix_basis(2);  // E00 E01 E10 E11
    std::vector<OperatorMatrix> a{e[0], e[1]};
    std::vector<OperatorMatrix> b{e[0] + e[3], e[0] - e[3], e[2]};
    // span(a) = {upper row}, span(b) contains E00 and E11 and E10;
    // intersection is the E00 line.
    const auto common = span_intersection(a, b);
    REQUIRE(common.size() == 1);
    CHECK(std::abs(std::abs(common[0](0, 0)) - 1.0) < 1e-9);

    std::vector<OperatorMatrix> c{e[1]};
    std::vector<OperatorMatrix> d{e[2]};
    CHECK(span_intersection(c, d).empty());
}

TEST_CASE("solve_linear solves a random system") {
    Rng rng(66);
    const int n = 12;
    const OperatorMatrix a = rng.gaussian_matrix(n);
    std::vector<cplx> x(n);
    for (auto& v : x) v = rng.gaussian_cplx();
    std::vector<cplx> b(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b[i] += a(i, j) * x[j];
    const auto got = solve_linear(a, b);
    for (int i = 0; i < n; ++i) CHECK(std::abs(got[i] - x[i]) < 1e-9);
}
