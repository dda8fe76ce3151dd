#include "reglab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "reglab/random.hpp"

namespace reglab::spectral {

namespace {

double offdiag_frobenius(const OperatorMatrix& h) {
    double s = 0.0;
    for (int i = 0; i < h.dim(); ++i)
        for (int j = 0; j < h.dim(); ++j)
            if (i != j) s += std::norm(h(i, j));
    return std::sqrt(s);
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

EigenDecomposition herm_eig(const OperatorMatrix& h) {
    const int n = h.dim();
    const double scale = std::max(1.0, h.frobenius_norm());
    const double defect = h.hermiticity_defect();
    if (defect > tol::hermitian_input * scale) {
        throw std::invalid_argument("herm_eig: input is not Hermitian (max asymmetry " +
                                    format_double(defect) + ", allowed " +
                                    format_double(tol::hermitian_input * scale) + ")");
    }

    OperatorMatrix a = h;
    // Work on the exactly Hermitian part so roundoff in the input cannot
    // push the iteration off the Hermitian manifold.
    for (int i = 0; i < n; ++i) {
        a(i, i) = cplx(a(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
    }
    OperatorMatrix u = OperatorMatrix::identity(n, h.basis_offset());

    const double frob = a.frobenius_norm();
    const double stop = tol::jacobi_offdiag * std::max(frob, 1e-300);

    int sweep = 0;
    while (offdiag_frobenius(a) > stop) {
        if (++sweep > tol::jacobi_max_sweeps) {
            throw std::runtime_error("herm_eig: no convergence after " +
                                     std::to_string(tol::jacobi_max_sweeps) +
                                     " sweeps, off-diagonal residual " +
                                     format_double(offdiag_frobenius(a)));
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= stop / std::max(1, n)) continue;

                // Complex Jacobi rotation zeroing the (p,q) pair: absorb the
                // phase of a_pq, then rotate by the stable small-angle root.
                const cplx phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx sp = s * phase;

                // A <- G* A G with G = [[c, sp], [-conj(sp), c]] acting on (p,q).
                for (int k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - std::conj(sp) * akq;
                    a(k, q) = sp * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sp * aqk;
                    a(q, k) = std::conj(sp) * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx ukp = u(k, p), ukq = u(k, q);
                    u(k, p) = c * ukp - std::conj(sp) * ukq;
                    u(k, q) = sp * ukp + c * ukq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.vectors = OperatorMatrix(n, h.basis_offset());
    for (int j = 0; j < n; ++j) {
        out.eigenvalues[j] = a(order[j], order[j]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, j) = u(i, order[j]);
    }
    return out;
}

OperatorMatrix apply_spectral_function(const OperatorMatrix& a,
                                       const std::function<double(double)>& f) {
    const EigenDecomposition ed = herm_eig(a);
    const int n = a.dim();
    std::vector<double> fx(n);
    for (int k = 0; k < n; ++k) {
        fx[k] = f(ed.eigenvalues[k]);
        if (!std::isfinite(fx[k])) {
            throw std::domain_error("apply_spectral_function: f is not finite at eigenvalue " +
                                    format_double(ed.eigenvalues[k]));
        }
    }
    // U diag(f) U*
    OperatorMatrix r(n, a.basis_offset());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < n; ++k) s += ed.vectors(i, k) * fx[k] * std::conj(ed.vectors(j, k));
            r(i, j) = s;
        }
    return r;
}

namespace {

// Eigenvalue count below x for a real symmetric tridiagonal (alpha, beta),
// by Sturm sequence with underflow guards.
int sturm_count(const std::vector<double>& alpha, const std::vector<double>& beta, double x) {
    int count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const double b2 = (i == 0) ? 0.0 : beta[i - 1] * beta[i - 1];
        d = alpha[i] - x - (d == 0.0 ? b2 / 1e-300 : b2 / d);
        if (d == 0.0) d = -1e-300;
        if (d < 0.0) ++count;
    }
    return count;
}

// k-th smallest eigenvalue (0-based) by bisection.
double tridiag_eigenvalue(const std::vector<double>& alpha, const std::vector<double>& beta, int k) {
    double rad = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const double bl = (i == 0) ? 0.0 : std::abs(beta[i - 1]);
        const double br = (i + 1 < alpha.size()) ? std::abs(beta[i]) : 0.0;
        rad = std::max(rad, std::abs(alpha[i]) + bl + br);
    }
    double lo = -rad, hi = rad;
    for (int it = 0; it < 90 && hi - lo > 1e-15 * std::max(1.0, rad); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(alpha, beta, mid) > k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

struct LanczosOperator {
    const OperatorMatrix* a;
    bool hermitian;
    int n;        // matrix dimension
    int workdim;  // n for Hermitian, 2n for the dilation

    void apply(const std::vector<cplx>& x, std::vector<cplx>& y) const {
        y.assign(workdim, 0.0);
        const OperatorMatrix& m = *a;
        if (hermitian) {
            for (int i = 0; i < n; ++i) {
                cplx s = 0.0;
                for (int j = 0; j < n; ++j) s += m(i, j) * x[j];
                y[i] = s;
            }
        } else {
            // [[0, A], [A*, 0]] acting on (x1, x2)
            for (int i = 0; i < n; ++i) {
                cplx s = 0.0;
                for (int j = 0; j < n; ++j) s += m(i, j) * x[n + j];
                y[i] = s;
            }
            for (int j = 0; j < n; ++j) {
                cplx s = 0.0;
                for (int i = 0; i < n; ++i) s += std::conj(m(i, j)) * x[i];
                y[n + j] = s;
            }
        }
    }
};

double vec_norm(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s);
}

}  // namespace

double operator_norm(const OperatorMatrix& a) {
    const int n = a.dim();
    if (a.max_abs() == 0.0) return 0.0;

    LanczosOperator op;
    op.a = &a;
    op.n = n;
    op.hermitian = a.hermiticity_defect() <= 1e-13 * std::max(1.0, a.frobenius_norm());
    op.workdim = op.hermitian ? n : 2 * n;

    // Deterministic start vector; the seed folds in the dimension only, so
    // equal inputs always see the same Krylov process.
    Rng rng(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(op.workdim));
    std::vector<std::vector<cplx>> basis;
    std::vector<double> alpha, beta;

    std::vector<cplx> v(op.workdim);
    for (cplx& z : v) z = rng.gaussian_cplx();
    {
        const double nv = vec_norm(v);
        for (cplx& z : v) z /= nv;
    }

    std::vector<cplx> w(op.workdim);
    double best = 0.0, prev = -1.0;
    const int mmax = op.workdim;
    int stable = 0;

    for (int m = 0; m < mmax; ++m) {
        basis.push_back(v);
        op.apply(v, w);
        cplx diag = 0.0;
        for (int i = 0; i < op.workdim; ++i) diag += std::conj(v[i]) * w[i];
        alpha.push_back(diag.real());

        // full reorthogonalization, twice for safety
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : basis) {
                cplx c = 0.0;
                for (int i = 0; i < op.workdim; ++i) c += std::conj(q[i]) * w[i];
                for (int i = 0; i < op.workdim; ++i) w[i] -= c * q[i];
            }
        }
        double b = vec_norm(w);

        const int mcur = static_cast<int>(alpha.size());
        const double lo = tridiag_eigenvalue(alpha, beta, 0);
        const double hi = tridiag_eigenvalue(alpha, beta, mcur - 1);
        best = std::max(std::abs(lo), std::abs(hi));

        if (static_cast<int>(basis.size()) == mmax) break;

        if (b <= 1e-14 * std::max(1.0, best)) {
            // Krylov space exhausted from this start; restart orthogonally.
            for (cplx& z : w) z = rng.gaussian_cplx();
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& q : basis) {
                    cplx c = 0.0;
                    for (int i = 0; i < op.workdim; ++i) c += std::conj(q[i]) * w[i];
                    for (int i = 0; i < op.workdim; ++i) w[i] -= c * q[i];
                }
            }
            b = vec_norm(w);
            if (b <= 1e-300) break;
            beta.push_back(0.0);  // exact invariant-subspace split
        } else {
            beta.push_back(b);
        }

        for (int i = 0; i < op.workdim; ++i) v[i] = w[i] / b;

        // Early exit once the extreme Ritz values have stopped moving; only
        // trusted after a minimum number of steps, and never for small
        // problems where full exhaustion is cheap and exact.
        if (op.workdim > 128 && mcur >= 96) {
            if (prev >= 0.0 && std::abs(best - prev) <= 1e-13 * std::max(1.0, best)) {
                if (++stable >= 8) break;
            } else {
                stable = 0;
            }
            prev = best;
        }
    }
    return best;
}

SubspaceProjector::SubspaceProjector(const std::vector<OperatorMatrix>& basis) {
    if (basis.empty()) return;
    dim_ = basis.front().dim();
    const std::size_t len = static_cast<std::size_t>(dim_) * dim_;
    for (const OperatorMatrix& b : basis) {
        if (b.dim() != dim_)
            throw std::invalid_argument("SubspaceProjector: dimension mismatch in basis");
        std::vector<cplx> v(b.data().begin(), b.data().end());
        const double orig = vec_norm(v);
        std::vector<cplx> rcol(basis.size(), 0.0);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < q_.size(); ++j) {
                cplx c = 0.0;
                for (std::size_t i = 0; i < len; ++i) c += std::conj(q_[j][i]) * v[i];
                rcol[j] += c;
                for (std::size_t i = 0; i < len; ++i) v[i] -= c * q_[j][i];
            }
        }
        const double nv = vec_norm(v);
        if (nv <= tol::rank_cutoff * std::max(1.0, orig)) {
            pivot_.push_back(-1);
            independent_ = false;
        } else {
            for (cplx& z : v) z /= nv;
            rcol[q_.size()] = nv;
            pivot_.push_back(static_cast<int>(q_.size()));
            q_.push_back(std::move(v));
        }
        r_cols_.push_back(std::move(rcol));
    }
}

double SubspaceProjector::residual(const OperatorMatrix& x) const {
    if (dim_ != 0 && x.dim() != dim_)
        throw std::invalid_argument("SubspaceProjector::residual: dimension mismatch");
    std::vector<cplx> v(x.data().begin(), x.data().end());
    const std::size_t len = v.size();
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : q_) {
            cplx c = 0.0;
            for (std::size_t i = 0; i < len; ++i) c += std::conj(q[i]) * v[i];
            for (std::size_t i = 0; i < len; ++i) v[i] -= c * q[i];
        }
    }
    return vec_norm(v);
}

std::vector<cplx> SubspaceProjector::coefficients(const OperatorMatrix& x) const {
    if (!independent_)
        throw std::logic_error("SubspaceProjector::coefficients: basis is rank-deficient");
    if (dim_ != 0 && x.dim() != dim_)
        throw std::invalid_argument("SubspaceProjector::coefficients: dimension mismatch");
    const std::size_t len = static_cast<std::size_t>(dim_) * dim_;
    std::vector<cplx> qx(q_.size(), 0.0);
    for (std::size_t j = 0; j < q_.size(); ++j) {
        cplx c = 0.0;
        auto d = x.data();
        for (std::size_t i = 0; i < len; ++i) c += std::conj(q_[j][i]) * d[i];
        qx[j] = c;
    }
    // back-substitute R coef = qx (R is upper triangular in the q index)
    const std::size_t k = q_.size();
    std::vector<cplx> coef(k, 0.0);
    for (std::size_t jj = k; jj-- > 0;) {
        cplx s = qx[jj];
        for (std::size_t ii = jj + 1; ii < k; ++ii) s -= r_cols_[ii][jj] * coef[ii];
        coef[jj] = s / r_cols_[jj][jj];
    }
    return coef;
}

double subspace_residual(const OperatorMatrix& x, const std::vector<OperatorMatrix>& basis) {
    return SubspaceProjector(basis).residual(x);
}

std::vector<OperatorMatrix> span_intersection(const std::vector<OperatorMatrix>& a,
                                              const std::vector<OperatorMatrix>& b,
                                              double tol) {
    if (a.empty() || b.empty()) return {};
    const int dim = a.front().dim();

    auto orthobasis = [&](const std::vector<OperatorMatrix>& list) {
        std::vector<OperatorMatrix> q;
        for (const OperatorMatrix& m : list) {
            OperatorMatrix v = m;
            const double orig = v.frobenius_norm();
            for (int pass = 0; pass < 2; ++pass)
                for (const OperatorMatrix& e : q) {
                    const cplx c = frobenius_inner(e, v);
                    v -= c * e;
                }
            const double nv = v.frobenius_norm();
            if (nv > tol::rank_cutoff * std::max(1.0, orig)) {
                v *= cplx(1.0 / nv, 0.0);
                q.push_back(std::move(v));
            }
        }
        return q;
    };

    const std::vector<OperatorMatrix> qa = orthobasis(a);
    const std::vector<OperatorMatrix> qb = orthobasis(b);
    if (qa.empty() || qb.empty()) return {};

    // Principal cosines: singular values of M[i][j] = <qa_i, qb_j>, via the
    // Hermitian eigenproblem of M M*.
    const int ka = static_cast<int>(qa.size());
    const int kb = static_cast<int>(qb.size());
    OperatorMatrix mm(ka);
    for (int i = 0; i < ka; ++i)
        for (int j = 0; j < ka; ++j) {
            cplx s = 0.0;
            for (int l = 0; l < kb; ++l)
                s += frobenius_inner(qa[i], qb[l]) * std::conj(frobenius_inner(qa[j], qb[l]));
            mm(i, j) = s;
        }
    for (int i = 0; i < ka; ++i)
        for (int j = i + 1; j < ka; ++j) {
            const cplx m = 0.5 * (mm(i, j) + std::conj(mm(j, i)));
            mm(i, j) = m;
            mm(j, i) = std::conj(m);
        }
    const EigenDecomposition ed = herm_eig(mm);

    std::vector<OperatorMatrix> out;
    for (int k = 0; k < ka; ++k) {
        if (ed.eigenvalues[k] >= 1.0 - tol) {
            OperatorMatrix v(dim);
            for (int i = 0; i < ka; ++i) v += ed.vectors(i, k) * qa[i];
            const double nv = v.frobenius_norm();
            if (nv > 0.0) v *= cplx(1.0 / nv, 0.0);
            out.push_back(std::move(v));
        }
    }
    return out;
}

std::vector<cplx> solve_linear(OperatorMatrix a, std::vector<cplx> rhs) {
    const int n = a.dim();
    if (static_cast<int>(rhs.size()) != n)
        throw std::invalid_argument("solve_linear: rhs size mismatch");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double mx = std::abs(a(col, col));
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > mx) {
                mx = std::abs(a(r, col));
                piv = r;
            }
        if (mx == 0.0) throw std::runtime_error("solve_linear: singular matrix");
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(a(col, c), a(piv, c));
            std::swap(rhs[col], rhs[piv]);
        }
        const cplx d = a(col, col);
        for (int r = col + 1; r < n; ++r) {
            const cplx f = a(r, col) / d;
            if (f == 0.0) continue;
            a(r, col) = 0.0;
            for (int c = col + 1; c < n; ++c) a(r, c) -= f * a(col, c);
            rhs[r] -= f * rhs[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        cplx s = rhs[r];
        for (int c = r + 1; c < n; ++c) s -= a(r, c) * rhs[c];
        rhs[r] = s / a(r, r);
    }
    return rhs;
}

}  // namespace reglab::spectral
