#include "reglab/algebras.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "reglab/random.hpp"

namespace reglab::algebras {

CoeffFunction::CoeffFunction(int grid_halfwidth, cplx tail) : J_(grid_halfwidth), tail_(tail) {
    if (grid_halfwidth <= 0) throw std::invalid_argument("CoeffFunction: J must be positive");
}

CoeffFunction::CoeffFunction(int grid_halfwidth, const std::vector<cplx>& grid_values, cplx tail)
    : CoeffFunction(grid_halfwidth, tail) {
    if (grid_values.size() != static_cast<std::size_t>(2 * J_ + 1))
        throw std::invalid_argument("CoeffFunction: expected 2J+1 grid values");
    for (int j = -J_; j <= J_; ++j) {
        const cplx v = grid_values[static_cast<std::size_t>(j + J_)];
        if (v != 0.0) deviation_[j] = v;
    }
}

cplx CoeffFunction::operator()(int j) const {
    cplx v = (j > J_) ? tail_ : cplx(0.0);
    const auto it = deviation_.find(j);
    if (it != deviation_.end()) v += it->second;
    return v;
}

void CoeffFunction::prune(int j) {
    const auto it = deviation_.find(j);
    if (it != deviation_.end() && it->second == 0.0) deviation_.erase(it);
}

CoeffFunction CoeffFunction::shifted(int n) const {
    CoeffFunction out(J_, tail_);
    for (const auto& [j, v] : deviation_) out.deviation_[j - n] = v;
    // profile correction: tail * ([j+n > J] - [j > J]) is supported on the
    // window the shift drags across the grid edge
    if (n > 0) {
        for (int j = J_ - n + 1; j <= J_; ++j) {
            out.deviation_[j] += tail_;
            out.prune(j);
        }
    } else if (n < 0) {
        for (int j = J_ + 1; j <= J_ - n; ++j) {
            out.deviation_[j] -= tail_;
            out.prune(j);
        }
    }
    return out;
}

CoeffFunction CoeffFunction::conjugated() const {
    CoeffFunction out(J_, std::conj(tail_));
    for (const auto& [j, v] : deviation_) out.deviation_[j] = std::conj(v);
    return out;
}

CoeffFunction& CoeffFunction::operator+=(const CoeffFunction& o) {
    if (o.J_ != J_) throw std::invalid_argument("CoeffFunction: grid mismatch");
    tail_ += o.tail_;
    for (const auto& [j, v] : o.deviation_) {
        deviation_[j] += v;
        prune(j);
    }
    return *this;
}

CoeffFunction& CoeffFunction::operator*=(cplx s) {
    tail_ *= s;
    for (auto& [j, v] : deviation_) v *= s;
    if (s == 0.0) deviation_.clear();
    return *this;
}

CoeffFunction operator*(const CoeffFunction& a, const CoeffFunction& b) {
    if (a.J_ != b.J_) throw std::invalid_argument("CoeffFunction: grid mismatch");
    CoeffFunction out(a.J_, a.tail_ * b.tail_);
    std::set<int> support;
    for (const auto& [j, v] : a.deviation_) support.insert(j);
    for (const auto& [j, v] : b.deviation_) support.insert(j);
    for (int j : support) {
        const cplx full = a(j) * b(j);
        const cplx dev = full - ((j > a.J_) ? out.tail_ : cplx(0.0));
        if (dev != 0.0) out.deviation_[j] = dev;
    }
    return out;
}

double CoeffFunction::grid_norm_squared() const {
    double s = 0.0;
    for (int j = -J_; j <= J_; ++j) s += std::norm((*this)(j));
    return s;
}

std::string to_string(Flavor f) {
    return f == Flavor::quantum_plane ? "quantum_plane" : "crossed_product";
}

CrossedElement::CrossedElement(Flavor flavor, int grid_halfwidth)
    : flavor_(flavor), J_(grid_halfwidth) {
    if (grid_halfwidth <= 0) throw std::invalid_argument("CrossedElement: J must be positive");
}

void CrossedElement::check_flavor(int k, const CoeffFunction& f) const {
    if (f.grid_halfwidth() != J_)
        throw std::invalid_argument("CrossedElement: coefficient grid mismatch");
    if (flavor_ == Flavor::quantum_plane && k != 0 && f.tail() != 0.0)
        throw std::invalid_argument(
            "CrossedElement: quantum_plane coefficients must have zero tail for k != 0");
}

void CrossedElement::set_term(int k, CoeffFunction f) {
    check_flavor(k, f);
    if (f.is_zero())
        terms_.erase(k);
    else
        terms_[k] = std::move(f);
}

void CrossedElement::add_term(int k, const CoeffFunction& f) {
    check_flavor(k, f);
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        if (!f.is_zero()) terms_.emplace(k, f);
        return;
    }
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
}

CrossedElement& CrossedElement::operator+=(const CrossedElement& o) {
    if (o.flavor_ != flavor_ || o.J_ != J_)
        throw std::invalid_argument("CrossedElement: flavor or grid mismatch");
    for (const auto& [k, f] : o.terms_) add_term(k, f);
    return *this;
}

CrossedElement& CrossedElement::operator*=(cplx s) {
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, f] : terms_) f *= s;
    return *this;
}

double CrossedElement::coefficient_norm() const {
    double s = 0.0;
    for (const auto& [k, f] : terms_) s += f.grid_norm_squared();
    return std::sqrt(s);
}

bool CrossedElement::operator==(const CrossedElement& o) const {
    if (flavor_ != o.flavor_ || J_ != o.J_) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (const auto& [k, f] : terms_) {
        const auto it = o.terms_.find(k);
        if (it == o.terms_.end()) return false;
        if (f.tail() != it->second.tail()) return false;
        // compare as functions over the union of supports
        std::set<int> support;
        for (const auto& [j, v] : f.deviation()) support.insert(j);
        for (const auto& [j, v] : it->second.deviation()) support.insert(j);
        for (int j : support)
            if (f(j) != it->second(j)) return false;
    }
    return true;
}

CrossedElement operator+(CrossedElement a, const CrossedElement& b) { return a += b; }
CrossedElement operator*(cplx s, CrossedElement a) { return a *= s; }

CrossedElement multiply(const CrossedElement& x, const CrossedElement& y) {
    if (x.flavor() != y.flavor())
        throw std::invalid_argument("multiply: flavor mismatch");
    if (x.grid_halfwidth() != y.grid_halfwidth())
        throw std::invalid_argument("multiply: grid mismatch");
    CrossedElement out(x.flavor(), x.grid_halfwidth());
    for (const auto& [m, f] : x.terms())
        for (const auto& [n, g] : y.terms()) out.add_term(m + n, f.shifted(n) * g);
    return out;
}

CrossedElement star(const CrossedElement& x) {
    CrossedElement out(x.flavor(), x.grid_halfwidth());
    for (const auto& [k, f] : x.terms()) out.add_term(-k, f.conjugated().shifted(-k));
    return out;
}

OperatorMatrix represent(const CrossedElement& x, int truncation_halfwidth) {
    const int n = truncation_halfwidth;
    if (n <= 0) throw std::invalid_argument("represent: N must be positive");
    if (n > x.grid_halfwidth())
        throw std::invalid_argument("represent: truncation exceeds the coefficient grid (N > J)");
    OperatorMatrix m(2 * n + 1, -n);
    for (const auto& [k, f] : x.terms()) {
        for (int i = -n; i <= n; ++i) {
            const int row = i + k;
            if (row < -n || row > n) continue;
            const cplx v = f(i);
            if (v != 0.0) m(row + n, i + n) += v;
        }
    }
    return m;
}

CirclePolynomial::CirclePolynomial(std::map<int, cplx> coeffs) : coeffs_(std::move(coeffs)) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();)
        it = (it->second == 0.0) ? coeffs_.erase(it) : std::next(it);
}

cplx CirclePolynomial::coefficient(int k) const {
    const auto it = coeffs_.find(k);
    return it == coeffs_.end() ? cplx(0.0) : it->second;
}

void CirclePolynomial::prune(int k) {
    const auto it = coeffs_.find(k);
    if (it != coeffs_.end() && it->second == 0.0) coeffs_.erase(it);
}

CirclePolynomial operator*(const CirclePolynomial& a, const CirclePolynomial& b) {
    CirclePolynomial out;
    for (const auto& [m, av] : a.coeffs_)
        for (const auto& [n, bv] : b.coeffs_) {
            out.coeffs_[m + n] += av * bv;
            out.prune(m + n);
        }
    return out;
}

CirclePolynomial operator+(const CirclePolynomial& a, const CirclePolynomial& b) {
    CirclePolynomial out = a;
    for (const auto& [k, v] : b.coeffs_) {
        out.coeffs_[k] += v;
        out.prune(k);
    }
    return out;
}

CirclePolynomial operator-(const CirclePolynomial& a, const CirclePolynomial& b) {
    CirclePolynomial out = a;
    for (const auto& [k, v] : b.coeffs_) {
        out.coeffs_[k] -= v;
        out.prune(k);
    }
    return out;
}

CirclePolynomial CirclePolynomial::commutator(const CirclePolynomial& a,
                                              const CirclePolynomial& b) {
    // Pair the (m, n) term of ab with the (n, m) term of ba: the two complex
    // products are bitwise equal, so each summand cancels exactly.
    CirclePolynomial out;
    for (const auto& [m, av] : a.coeffs_)
        for (const auto& [n, bv] : b.coeffs_) {
            const cplx forward = av * bv;
            const cplx backward = bv * av;
            out.coeffs_[m + n] += forward - backward;
            out.prune(m + n);
        }
    return out;
}

CirclePolynomial CirclePolynomial::star() const {
    std::map<int, cplx> c;
    for (const auto& [k, v] : coeffs_) c[-k] = std::conj(v);
    return CirclePolynomial(std::move(c));
}

cplx quotient_plane(const CrossedElement& x) {
    if (x.flavor() != Flavor::quantum_plane)
        throw std::invalid_argument("quotient_plane: expected quantum_plane flavor");
    const auto it = x.terms().find(0);
    return it == x.terms().end() ? cplx(0.0) : it->second.tail();
}

CirclePolynomial quotient_crossed(const CrossedElement& x) {
    if (x.flavor() != Flavor::crossed_product)
        throw std::invalid_argument("quotient_crossed: expected crossed_product flavor");
    std::map<int, cplx> c;
    for (const auto& [k, f] : x.terms())
        if (f.tail() != 0.0) c[k] = f.tail();
    return CirclePolynomial(std::move(c));
}

bool in_ideal(const CrossedElement& x) {
    for (const auto& [k, f] : x.terms())
        if (f.tail() != 0.0) return false;
    return true;
}

CrossedElement approximate_identity(int m, int grid_halfwidth, Flavor flavor) {
    if (m > grid_halfwidth)
        throw std::invalid_argument("approximate_identity: m exceeds the grid (m > J)");
    if (m < 0) throw std::invalid_argument("approximate_identity: m must be nonnegative");
    CoeffFunction f(grid_halfwidth, 0.0);
    std::vector<cplx> values(static_cast<std::size_t>(2 * grid_halfwidth + 1), 0.0);
    for (int j = -m; j <= m; ++j) values[static_cast<std::size_t>(j + grid_halfwidth)] = 1.0;
    CrossedElement e(flavor, grid_halfwidth);
    e.set_term(0, CoeffFunction(grid_halfwidth, values, 0.0));
    return e;
}

CrossedElement demo_apply(const CrossedElement& x, double q) {
    if (!in_ideal(x))
        throw std::invalid_argument(
            "demo_apply: element outside the operator domain (nonzero coefficient tail)");
    CrossedElement out(x.flavor(), x.grid_halfwidth());
    for (const auto& [k, f] : x.terms()) {
        std::vector<cplx> values(static_cast<std::size_t>(2 * x.grid_halfwidth() + 1), 0.0);
        for (const auto& [j, v] : f.deviation()) {
            if (j < -x.grid_halfwidth() || j > x.grid_halfwidth())
                throw std::invalid_argument("demo_apply: coefficient support exceeds the grid");
            values[static_cast<std::size_t>(j + x.grid_halfwidth())] = v * std::pow(q, -j);
        }
        out.set_term(k, CoeffFunction(x.grid_halfwidth(), values, 0.0));
    }
    return out;
}

std::vector<std::pair<CrossedElement, CrossedElement>> demo_semiregular(
    int grid_halfwidth, double q, Flavor flavor, int count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<CrossedElement, CrossedElement>> out;
    out.reserve(static_cast<std::size_t>(count));
    const int support = std::max(1, grid_halfwidth / 2);
    const int kmax = 2;
    for (int s = 0; s < count; ++s) {
        CrossedElement a(flavor, grid_halfwidth);
        for (int k = -kmax; k <= kmax; ++k) {
            std::vector<cplx> values(static_cast<std::size_t>(2 * grid_halfwidth + 1), 0.0);
            for (int j = -support; j <= support; ++j)
                values[static_cast<std::size_t>(j + grid_halfwidth)] = rng.gaussian_cplx();
            a.add_term(k, CoeffFunction(grid_halfwidth, values, 0.0));
        }
        const double norm = a.coefficient_norm();
        if (norm > 0.0) a *= cplx(1.0 / norm, 0.0);
        CrossedElement sa = demo_apply(a, q);
        out.emplace_back(std::move(a), std::move(sa));
    }
    return out;
}

std::string to_text(const CrossedElement& x) {
    std::ostringstream os;
    os.precision(17);
    for (const auto& [k, f] : x.terms()) {
        for (const auto& [j, v] : f.deviation())
            os << k << ' ' << j << ' ' << v.real() << ' ' << v.imag() << '\n';
        os << k << " tail " << f.tail().real() << ' ' << f.tail().imag() << '\n';
    }
    return os.str();
}

CrossedElement crossed_from_text(const std::string& text, Flavor flavor, int grid_halfwidth) {
    CrossedElement out(flavor, grid_halfwidth);
    std::map<int, std::map<int, cplx>> values;
    std::map<int, cplx> tails;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int k = 0;
        std::string jtok;
        double re = 0.0, im = 0.0;
        if (!(ls >> k >> jtok >> re >> im))
            throw std::invalid_argument("crossed_from_text: malformed line " +
                                        std::to_string(lineno));
        if (jtok == "tail") {
            tails[k] = cplx(re, im);
        } else {
            values[k][std::stoi(jtok)] = cplx(re, im);
        }
    }
    std::set<int> ks;
    for (const auto& [k, v] : values) ks.insert(k);
    for (const auto& [k, v] : tails) ks.insert(k);
    for (int k : ks) {
        std::vector<cplx> grid(static_cast<std::size_t>(2 * grid_halfwidth + 1), 0.0);
        bool in_grid_only = true;
        if (values.count(k)) {
            for (const auto& [j, v] : values[k]) {
                if (j < -grid_halfwidth || j > grid_halfwidth) {
                    in_grid_only = false;
                    break;
                }
                grid[static_cast<std::size_t>(j + grid_halfwidth)] = v;
            }
        }
        if (!in_grid_only)
            throw std::invalid_argument("crossed_from_text: value index outside the grid");
        out.set_term(k, CoeffFunction(grid_halfwidth, grid,
                                      tails.count(k) ? tails[k] : cplx(0.0)));
    }
    return out;
}

}  // namespace reglab::algebras
