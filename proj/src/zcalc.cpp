#include "reglab/zcalc.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "reglab/random.hpp"
#include "reglab/spectral.hpp"

namespace reglab::zcalc {

using spectral::apply_spectral_function;
using spectral::operator_norm;
using spectral::SubspaceProjector;

namespace {

constexpr double kStructureTol = 1e-9;  // defect identities, intertwining

OperatorMatrix sample_unit_element(const std::vector<OperatorMatrix>& basis, Rng& rng) {
    OperatorMatrix x(basis.front().dim());
    for (const OperatorMatrix& b : basis) x += rng.gaussian_cplx() * b;
    const double n = x.frobenius_norm();
    if (n > 0.0) x *= cplx(1.0 / n, 0.0);
    return x;
}

}  // namespace

Contraction::Contraction(OperatorMatrix z, OperatorMatrix dr, OperatorMatrix dl)
    : z_(std::move(z)), defect_right_(std::move(dr)), defect_left_(std::move(dl)) {
    validate();
}

void Contraction::validate() const {
    const double nz = operator_norm(z_);
    if (!(nz < 1.0)) {
        std::ostringstream os;
        os << "Contraction: ||z|| = " << nz << " is not < 1";
        throw std::invalid_argument(os.str());
    }
    const int n = z_.dim();
    const OperatorMatrix id = OperatorMatrix::identity(n, z_.basis_offset());
    const double right = (defect_right_ * defect_right_ + z_.adjoint() * z_ - id).max_abs();
    const double left = (defect_left_ * defect_left_ + z_ * z_.adjoint() - id).max_abs();
    const double twine = (z_ * defect_right_ - defect_left_ * z_).max_abs();
    if (right > kStructureTol || left > kStructureTol || twine > kStructureTol) {
        std::ostringstream os;
        os << "Contraction: defect identities violated (right " << right << ", left " << left
           << ", intertwining " << twine << ")";
        throw std::invalid_argument(os.str());
    }
}

Contraction Contraction::from_z(const OperatorMatrix& z) {
    const int n = z.dim();
    const OperatorMatrix id = OperatorMatrix::identity(n, z.basis_offset());
    auto sqrt_clamped = [](double x) { return std::sqrt(std::max(x, 0.0)); };
    OperatorMatrix dr = apply_spectral_function(id - z.adjoint() * z, sqrt_clamped);
    OperatorMatrix dl = apply_spectral_function(id - z * z.adjoint(), sqrt_clamped);
    return Contraction(z, std::move(dr), std::move(dl));
}

Contraction Contraction::from_generator(const OperatorMatrix& t) {
    auto inv_sqrt_shift = [](double x) { return 1.0 / std::sqrt(1.0 + std::max(x, 0.0)); };
    OperatorMatrix dr = apply_spectral_function(t.adjoint() * t, inv_sqrt_shift);
    OperatorMatrix dl = apply_spectral_function(t * t.adjoint(), inv_sqrt_shift);
    OperatorMatrix z = t * dr;
    return Contraction(std::move(z), std::move(dr), std::move(dl));
}

Contraction z_transform(const OperatorMatrix& t) { return Contraction::from_generator(t); }

std::pair<OperatorMatrix, OperatorMatrix> operator_from_z(const Contraction& zc,
                                                          const OperatorMatrix& c) {
    zc.z().check_same_dim(c, "operator_from_z");
    return {zc.defect_right() * c, zc.z() * c};
}

namespace {

DomainDecomposition decompose_impl(const OperatorMatrix& a, const OperatorMatrix& image,
                                   const OperatorMatrix& defect, const OperatorMatrix& action,
                                   double tol, const char* what) {
    defect.check_same_dim(a, what);
    defect.check_same_dim(image, what);
    OperatorMatrix c = defect * a + action.adjoint() * image;
    const double ra = (a - defect * c).frobenius_norm() / std::max(1.0, a.frobenius_norm());
    const double rs =
        (image - action * c).frobenius_norm() / std::max(1.0, image.frobenius_norm());
    if (ra > tol || rs > tol) {
        std::ostringstream os;
        os << what << ": not a graph element of the operator determined by z (residuals " << ra
           << ", " << rs << ", tolerance " << tol << ")";
        throw std::invalid_argument(os.str());
    }
    return {std::move(c), ra, rs};
}

}  // namespace

DomainDecomposition decompose_domain(const OperatorMatrix& a, const OperatorMatrix& sa,
                                     const Contraction& zc, double tol) {
    return decompose_impl(a, sa, zc.defect_right(), zc.z(), tol, "decompose_domain");
}

DomainDecomposition decompose_adjoint_domain(const OperatorMatrix& a,
                                             const OperatorMatrix& s_star_a,
                                             const Contraction& zc, double tol) {
    return decompose_impl(a, s_star_a, zc.defect_left(), zc.z().adjoint(), tol,
                          "decompose_adjoint_domain");
}

GammaMembership gamma_membership(const OperatorMatrix& c, const Contraction& zc,
                                 const std::vector<OperatorMatrix>& algebra_basis, double tol) {
    SubspaceProjector span(algebra_basis);
    const double rd = span.residual(zc.defect_right() * c);
    const double ra = span.residual(zc.z() * c);
    return {rd <= tol && ra <= tol, rd, ra};
}

std::vector<double> inclusion_residuals(const Contraction& zc,
                                        const std::vector<OperatorMatrix>& algebra_basis,
                                        int samples, std::uint64_t seed) {
    const OperatorMatrix& z = zc.z();
    const OperatorMatrix zs = z.adjoint();
    const OperatorMatrix& dr = zc.defect_right();
    const OperatorMatrix& dl = zc.defect_left();
    const OperatorMatrix dr2 = dr * dr;  // I - z*z
    const OperatorMatrix dl2 = dl * dl;  // I - zz*

    struct Inclusion {
        OperatorMatrix lhs;   // left factor (or right for *_right maps)
        OperatorMatrix rhs;   // factor generating the right-side span
        bool left_action;     // true: map is m -> F m; false: m -> m F
    };
    const std::vector<Inclusion> table = {
        {z, dl, true},    // i
        {zs, dr, true},   // ii
        {z, dr, false},   // iii
        {zs, dl, false},  // iv
        {zs * z, dr2, true},
        {z * zs, dl2, true},
        {OperatorMatrix::identity(z.dim()), dr2, true},   // vii
        {OperatorMatrix::identity(z.dim()), dl2, true}};  // viii

    std::vector<double> out;
    out.reserve(table.size());
    for (const Inclusion& inc : table) {
        std::vector<OperatorMatrix> image;
        image.reserve(algebra_basis.size());
        for (const OperatorMatrix& b : algebra_basis)
            image.push_back(inc.left_action ? inc.rhs * b : b * inc.rhs);
        SubspaceProjector span(image);

        Rng rng(seed);  // same draw per inclusion keeps the table comparable
        double worst = 0.0;
        for (int s = 0; s < samples; ++s) {
            const OperatorMatrix a = sample_unit_element(algebra_basis, rng);
            const OperatorMatrix probe = inc.left_action ? inc.lhs * a : a * inc.lhs;
            worst = std::max(worst, span.residual(probe));
        }
        out.push_back(worst);
    }
    return out;
}

double multiplier_residual(const OperatorMatrix& x,
                           const std::vector<OperatorMatrix>& algebra_basis, int samples,
                           std::uint64_t seed) {
    SubspaceProjector span(algebra_basis);
    Rng rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const OperatorMatrix a = sample_unit_element(algebra_basis, rng);
        const OperatorMatrix xa = x * a;
        const OperatorMatrix ax = a * x;
        const double r = std::max(span.residual(xa), span.residual(ax)) /
                         std::max(1.0, xa.frobenius_norm());
        worst = std::max(worst, r);
    }
    return worst;
}

double center_condition_residual(const std::vector<OperatorMatrix>& quotient_basis,
                                 const std::vector<OperatorMatrix>& center_basis,
                                 const std::vector<OperatorMatrix>& domain_image_basis,
                                 int* intersection_dim) {
    const std::vector<OperatorMatrix> common =
        spectral::span_intersection(center_basis, domain_image_basis);
    if (intersection_dim) *intersection_dim = static_cast<int>(common.size());
    if (common.empty()) return std::numeric_limits<double>::infinity();

    std::vector<OperatorMatrix> products;
    products.reserve(common.size() * quotient_basis.size());
    for (const OperatorMatrix& c : common)
        for (const OperatorMatrix& a : quotient_basis) products.push_back(c * a);

    SubspaceProjector span(products);
    double worst = 0.0;
    for (const OperatorMatrix& b : quotient_basis)
        worst = std::max(worst, span.residual(b) / std::max(1.0, b.frobenius_norm()));
    return worst;
}

}  // namespace reglab::zcalc
