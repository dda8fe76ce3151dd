#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "reglab/matrix.hpp"

namespace reglab::zcalc {

/// A strict contraction z together with its cached defect operators
/// (I - z*z)^{1/2} and (I - zz*)^{1/2}. Instances always satisfy, up to the
/// stated tolerances, ||z|| < 1, defect_right^2 + z*z = I,
/// defect_left^2 + zz* = I and the intertwining relation
/// z defect_right = defect_left z; construction validates all four.
class Contraction {
public:
    /// Wrap an explicit contraction matrix; defects are computed by spectral
    /// calculus on z*z and zz*.
    static Contraction from_z(const OperatorMatrix& z);

    /// z-transform of a (bounded, everywhere-defined) generator:
    /// z = T (I + T*T)^{-1/2}, defect_right = (I + T*T)^{-1/2},
    /// defect_left = (I + TT*)^{-1/2}.
    static Contraction from_generator(const OperatorMatrix& t);

    const OperatorMatrix& z() const { return z_; }
    const OperatorMatrix& defect_right() const { return defect_right_; }
    const OperatorMatrix& defect_left() const { return defect_left_; }
    int dim() const { return z_.dim(); }

private:
    Contraction(OperatorMatrix z, OperatorMatrix dr, OperatorMatrix dl);
    void validate() const;

    OperatorMatrix z_, defect_right_, defect_left_;
};

/// z-transform of T (see Contraction::from_generator).
Contraction z_transform(const OperatorMatrix& t);

/// Graph element generated by c: (defect_right c, z c); the first component
/// is a domain element of the operator determined by zc and the second is
/// its image.
std::pair<OperatorMatrix, OperatorMatrix> operator_from_z(const Contraction& zc,
                                                          const OperatorMatrix& c);

struct DomainDecomposition {
    OperatorMatrix c;
    double residual_domain;  // || a - defect c || / max(1, ||a||)
    double residual_action;  // || Sa - z c ||   / max(1, ||Sa||)
};

/// Recover c = defect_right a + z* (Sa) from a graph pair and verify that it
/// regenerates the pair. Throws std::invalid_argument when either residual
/// exceeds tol: the pair is then not a graph element of the operator
/// determined by zc.
DomainDecomposition decompose_domain(const OperatorMatrix& a, const OperatorMatrix& sa,
                                     const Contraction& zc, double tol = 1e-8);

/// Mirror of decompose_domain for the adjoint: c = defect_left a + z (S*a),
/// verified against a = defect_left c and S*a = z* c.
DomainDecomposition decompose_adjoint_domain(const OperatorMatrix& a,
                                             const OperatorMatrix& s_star_a,
                                             const Contraction& zc, double tol = 1e-8);

struct GammaMembership {
    bool member;
    double residual_domain;  // distance of defect_right c from the span
    double residual_action;  // distance of z c from the span
};

/// Membership of c in the maximal domain {c : defect_right c and z c both
/// lie in the modeled algebra}, by least-squares distance to the span of
/// algebra_basis.
GammaMembership gamma_membership(const OperatorMatrix& c, const Contraction& zc,
                                 const std::vector<OperatorMatrix>& algebra_basis, double tol);

/// Residuals of the eight range inclusions tied to a contraction z over a
/// modeled algebra, in fixed order:
///   i.   z A         in closure( defect_left A )
///   ii.  z* A        in closure( defect_right A )
///   iii. A z         in closure( A defect_right )
///   iv.  A z*        in closure( A defect_left )
///   v.   z*z A       in closure( (I - z*z) A )
///   vi.  zz* A       in closure( (I - zz*) A )
///   vii. A           in closure( (I - z*z) A )
///   viii.A           in closure( (I - zz*) A )
/// Each entry is the max over `samples` random unit algebra elements of the
/// least-squares distance of the left side to the right-side span.
std::vector<double> inclusion_residuals(const Contraction& zc,
                                        const std::vector<OperatorMatrix>& algebra_basis,
                                        int samples, std::uint64_t seed = 0);

/// Two-sided multiplier probe: max over sampled unit algebra elements a of
/// max(dist(x a, span), dist(a x, span)) / max(1, ||x a||_F). Values at
/// roundoff level certify that x multiplies the modeled algebra into itself.
double multiplier_residual(const OperatorMatrix& x,
                           const std::vector<OperatorMatrix>& algebra_basis, int samples,
                           std::uint64_t seed = 0);

/// Totality probe for products (center intersect domain-image) * quotient:
/// max over quotient basis elements of the distance to the span of all
/// products c a, where c runs over the intersection of span(center_basis)
/// with span(domain_image_basis) and a over quotient_basis. Returns +inf
/// (with intersection_dim set to 0) when that intersection is empty.
double center_condition_residual(const std::vector<OperatorMatrix>& quotient_basis,
                                 const std::vector<OperatorMatrix>& center_basis,
                                 const std::vector<OperatorMatrix>& domain_image_basis,
                                 int* intersection_dim = nullptr);

}  // namespace reglab::zcalc
