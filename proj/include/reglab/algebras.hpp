#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "reglab/matrix.hpp"

namespace reglab::algebras {

/// Scalar coefficient function on the one-point compactification grid
/// {q^j : j in Z} with the limit point 0. The value at q^j is
///   tail * [j > J]  +  dev(j)
/// with dev finitely supported, so every algebraic operation (shift,
/// pointwise product, conjugation, sum) is closed and exact: no value is
/// ever truncated away. Functions built from grid data carry dev inside
/// [-J..J]; evaluation above the grid returns the tail (the limit along
/// q^j -> 0) and below the grid returns 0 (decay as q^j -> infinity).
class CoeffFunction {
public:
    CoeffFunction() = default;
    CoeffFunction(int grid_halfwidth, cplx tail);
    /// From explicit grid values at j = -J..J plus the limit value.
    CoeffFunction(int grid_halfwidth, const std::vector<cplx>& grid_values, cplx tail);

    int grid_halfwidth() const { return J_; }
    cplx tail() const { return tail_; }
    cplx operator()(int j) const;

    /// (shift_n f)(q^j) = f(q^{j+n}); the tail is unchanged.
    CoeffFunction shifted(int n) const;
    CoeffFunction conjugated() const;

    CoeffFunction& operator+=(const CoeffFunction& o);
    CoeffFunction& operator*=(cplx s);
    friend CoeffFunction operator*(const CoeffFunction& a, const CoeffFunction& b);

    bool is_zero() const { return tail_ == 0.0 && deviation_.empty(); }
    const std::map<int, cplx>& deviation() const { return deviation_; }

    /// Squared l2 mass of the values on the storage grid [-J..J].
    double grid_norm_squared() const;

private:
    void prune(int j);

    int J_ = 0;
    cplx tail_ = 0.0;
    std::map<int, cplx> deviation_;
};

enum class Flavor { quantum_plane, crossed_product };

std::string to_string(Flavor f);

/// Finite formal sum  sum_k (l*)^k f_k(q^N)  of shift powers against
/// coefficient functions: the symbolic model of both example algebras.
/// quantum_plane flavor enforces f_k(0) = 0 for k != 0.
class CrossedElement {
public:
    CrossedElement(Flavor flavor, int grid_halfwidth);

    Flavor flavor() const { return flavor_; }
    int grid_halfwidth() const { return J_; }
    const std::map<int, CoeffFunction>& terms() const { return terms_; }

    /// Set / accumulate the coefficient of (l*)^k. Throws if a nonzero tail
    /// is placed at k != 0 under the quantum_plane flavor.
    void set_term(int k, CoeffFunction f);
    void add_term(int k, const CoeffFunction& f);

    CrossedElement& operator+=(const CrossedElement& o);
    CrossedElement& operator*=(cplx s);

    double coefficient_norm() const;  // l2 over grid values of all terms

    bool operator==(const CrossedElement& o) const;

private:
    void check_flavor(int k, const CoeffFunction& f) const;

    Flavor flavor_;
    int J_;
    std::map<int, CoeffFunction> terms_;
};

CrossedElement operator+(CrossedElement a, const CrossedElement& b);
CrossedElement operator*(cplx s, CrossedElement a);

/// Product from the commutation rule f(q^N) (l*)^n = (l*)^n f(q^{N+n}):
/// ((l*)^m f)((l*)^n g) = (l*)^{m+n} (shift_n f) g. Throws on flavor or
/// grid mismatch.
CrossedElement multiply(const CrossedElement& x, const CrossedElement& y);

/// Involution ((l*)^k f(q^N))* = (l*)^{-k} conj(f)(q^{N-k}).
CrossedElement star(const CrossedElement& x);

/// Matrix of x on the truncation span{e_{-N}, ..., e_N}: entry
/// (i+k, i) = f_k(q^i), rows and columns outside the window dropped.
/// Requires N <= J.
OperatorMatrix represent(const CrossedElement& x, int truncation_halfwidth);

/// Laurent polynomial in the circle coordinate; the quotient image of the
/// crossed-product algebra.
class CirclePolynomial {
public:
    CirclePolynomial() = default;
    explicit CirclePolynomial(std::map<int, cplx> coeffs);

    const std::map<int, cplx>& coefficients() const { return coeffs_; }
    cplx coefficient(int k) const;
    bool is_zero() const { return coeffs_.empty(); }

    friend CirclePolynomial operator*(const CirclePolynomial& a, const CirclePolynomial& b);
    friend CirclePolynomial operator+(const CirclePolynomial& a, const CirclePolynomial& b);
    friend CirclePolynomial operator-(const CirclePolynomial& a, const CirclePolynomial& b);

    /// ab - ba evaluated with both products summed over identically paired
    /// terms, so the cancellation is exact in floating point as well.
    static CirclePolynomial commutator(const CirclePolynomial& a, const CirclePolynomial& b);

    /// conj-reverse: coefficient k of p* is conj(coefficient -k of p).
    CirclePolynomial star() const;

private:
    void prune(int k);
    std::map<int, cplx> coeffs_;
};

/// Quotient of the quantum plane by its compact ideal: reads f_0(0).
/// Throws on wrong flavor. Exact on symbols.
cplx quotient_plane(const CrossedElement& x);

/// Quotient of the crossed product by its compact ideal: the Laurent
/// polynomial sum_k f_k(0) zeta^k. Throws on wrong flavor.
CirclePolynomial quotient_crossed(const CrossedElement& x);

/// Exact kernel test for both quotients: every coefficient tail vanishes.
bool in_ideal(const CrossedElement& x);

/// Cut-off projection e_m: the k = 0 term with value 1 at |j| <= m, 0
/// beyond, tail 0. Requires m <= J. Satisfies e_m e_m = e_m and
/// x e_m = x for x supported well inside the window.
CrossedElement approximate_identity(int m, int grid_halfwidth,
                                    Flavor flavor = Flavor::quantum_plane);

/// The demonstration operator S: pointwise multiplication of every
/// coefficient by q^{-j} on the grid, unbounded toward the limit point.
/// Defined on elements with all tails zero; throws otherwise.
CrossedElement demo_apply(const CrossedElement& x, double q);

/// Sampled graph pairs (a, S a) of the demonstration operator, drawn from
/// compactly supported elements. Deterministic in the seed.
std::vector<std::pair<CrossedElement, CrossedElement>> demo_semiregular(
    int grid_halfwidth, double q = 0.5, Flavor flavor = Flavor::quantum_plane, int count = 8,
    std::uint64_t seed = 0);

/// Text form: per term, lines "k j re im" for each stored grid value and a
/// closing "k tail re im" line. Round-trips exactly for elements whose
/// deviations lie inside the grid.
std::string to_text(const CrossedElement& x);
CrossedElement crossed_from_text(const std::string& text, Flavor flavor, int grid_halfwidth);

}  // namespace reglab::algebras
