#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace reglab {

using cplx = std::complex<double>;

/// Dense complex square matrix with basis-index metadata.
///
/// basis_offset records which abstract basis vector row/column 0 refers to:
/// a truncation of span{e_{-N}, ..., e_N} carries basis_offset = -N. The
/// offset is bookkeeping only; arithmetic ignores it and propagates the
/// left operand's value.
class OperatorMatrix {
public:
    OperatorMatrix() = default;

    explicit OperatorMatrix(int dim, int basis_offset = 0)
        : dim_(dim), basis_offset_(basis_offset), entries_(static_cast<std::size_t>(dim) * dim) {
        if (dim <= 0) throw std::invalid_argument("OperatorMatrix: dim must be positive");
    }

    static OperatorMatrix identity(int dim, int basis_offset = 0) {
        OperatorMatrix m(dim, basis_offset);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }
    int basis_offset() const { return basis_offset_; }
    void set_basis_offset(int off) { basis_offset_ = off; }

    cplx& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * dim_ + j]; }
    const cplx& operator()(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * dim_ + j];
    }

    std::span<cplx> data() { return entries_; }
    std::span<const cplx> data() const { return entries_; }

    OperatorMatrix adjoint() const {
        OperatorMatrix r(dim_, basis_offset_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& v : entries_) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : entries_) m = std::max(m, std::abs(v));
        return m;
    }

    /// max_{ij} |a_ij - conj(a_ji)|, the deviation from Hermitian symmetry.
    double hermiticity_defect() const {
        double m = 0.0;
        for (int i = 0; i < dim_; ++i)
            for (int j = i; j < dim_; ++j)
                m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return m;
    }

    bool is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

    OperatorMatrix& operator+=(const OperatorMatrix& o) {
        check_same_dim(o, "+=");
        for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
        return *this;
    }
    OperatorMatrix& operator-=(const OperatorMatrix& o) {
        check_same_dim(o, "-=");
        for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
        return *this;
    }
    OperatorMatrix& operator*=(cplx s) {
        for (cplx& v : entries_) v *= s;
        return *this;
    }

    void check_same_dim(const OperatorMatrix& o, const char* what) const {
        if (o.dim_ != dim_)
            throw std::invalid_argument(std::string("OperatorMatrix ") + what + ": dimension mismatch (" +
                                        std::to_string(dim_) + " vs " + std::to_string(o.dim_) + ")");
    }

private:
    int dim_ = 0;
    int basis_offset_ = 0;
    std::vector<cplx> entries_;
};

inline OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
inline OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
inline OperatorMatrix operator*(OperatorMatrix a, cplx s) { return a *= s; }
inline OperatorMatrix operator*(cplx s, OperatorMatrix a) { return a *= s; }
inline OperatorMatrix operator-(OperatorMatrix a) { return a *= -1.0; }

inline OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    a.check_same_dim(b, "*");
    const int n = a.dim();
    OperatorMatrix r(n, a.basis_offset());
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

inline cplx frobenius_inner(const OperatorMatrix& a, const OperatorMatrix& b) {
    a.check_same_dim(b, "frobenius_inner");
    cplx s = 0.0;
    auto da = a.data(), db = b.data();
    for (std::size_t k = 0; k < da.size(); ++k) s += std::conj(da[k]) * db[k];
    return s;
}

}  // namespace reglab
