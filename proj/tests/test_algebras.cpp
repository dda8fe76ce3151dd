#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "reglab/algebras.hpp"
#include "reglab/spectral.hpp"
#include "reglab/zcalc.hpp"
#include "test_helpers.hpp"

using namespace reglab;
using namespace reglab::algebras;

namespace {

CoeffFunction delta_at(int j, int J, cplx v = 1.0) {
    std::vector<cplx> values(static_cast<std::size_t>(2 * J + 1), 0.0);
    values[static_cast<std::size_t>(j + J)] = v;
    return CoeffFunction(J, values, 0.0);
}

CoeffFunction constant_one(int J, cplx tail) {
    std::vector<cplx> values(static_cast<std::size_t>(2 * J + 1), 1.0);
    return CoeffFunction(J, values, tail);
}

// Gaussian-integer coefficients keep every product and sum exactly
// representable, so algebraic identities can be asserted with equality.
CrossedElement random_integer_element(Rng& rng, Flavor flavor, int J, int kmax, int support) {
    CrossedElement x(flavor, J);
    for (int k = -kmax; k <= kmax; ++k) {
        std::vector<cplx> values(static_cast<std::size_t>(2 * J + 1), 0.0);
        for (int j = -support; j <= support; ++j)
            values[static_cast<std::size_t>(j + J)] =
                cplx(rng.uniform_int(-3, 3), rng.uniform_int(-3, 3));
        cplx tail = 0.0;
        if (flavor == Flavor::crossed_product || k == 0)
            tail = cplx(rng.uniform_int(-2, 2), rng.uniform_int(-2, 2));
        x.add_term(k, CoeffFunction(J, values, tail));
    }
    return x;
}

int band_halfwidth(const CrossedElement& x) {
    int m = 0;
    for (const auto& [k, f] : x.terms()) m = std::max(m, std::abs(k));
    return m;
}

}  // namespace

TEST_CASE("coefficient evaluation convention") {
    const int J = 4;
    std::vector<cplx> values(9, 0.0);
    values[8] = cplx(2.0, 0.0);  // j = +4
    const CoeffFunction f(J, values, cplx(5.0, -1.0));
    CHECK(f(4) == cplx(2.0, 0.0));
    CHECK(f(5) == cplx(5.0, -1.0));   // above the grid: the limit value
    CHECK(f(100) == cplx(5.0, -1.0));
    CHECK(f(-5) == cplx(0.0, 0.0));   // below the grid: decay to zero
}

TEST_CASE("shift respects the evaluation convention exactly") {
    const int J = 4;
    const CoeffFunction f = constant_one(J, cplx(7.0, 0.0));
    const CoeffFunction g = f.shifted(3);
    for (int j = -8; j <= 8; ++j) CHECK(g(j) == f(j + 3));
    const CoeffFunction h = f.shifted(-2);
    for (int j = -8; j <= 8; ++j) CHECK(h(j) == f(j - 2));
    // shifts compose exactly
    const CoeffFunction fw = f.shifted(3).shifted(-3);
    for (int j = -10; j <= 10; ++j) CHECK(fw(j) == f(j));
}

TEST_CASE("multiply of two diagonal terms is the pointwise product") {
    const int J = 6;
    CrossedElement x(Flavor::crossed_product, J), y(Flavor::crossed_product, J);
    std::vector<cplx> xv(13, 0.0), yv(13, 0.0);
    for (int j = -J; j <= J; ++j) {
        xv[static_cast<std::size_t>(j + J)] = cplx(j, 1.0);
        yv[static_cast<std::size_t>(j + J)] = cplx(2.0, -j);
    }
    x.set_term(0, CoeffFunction(J, xv, cplx(3.0, 0.0)));
    y.set_term(0, CoeffFunction(J, yv, cplx(0.0, 2.0)));
    const CrossedElement p = multiply(x, y);
    REQUIRE(p.terms().size() == 1);
    const CoeffFunction& f = p.terms().at(0);
    for (int j = -J; j <= J; ++j)
        CHECK(f(j) == xv[static_cast<std::size_t>(j + J)] * yv[static_cast<std::size_t>(j + J)]);
    CHECK(f.tail() == cplx(3.0, 0.0) * cplx(0.0, 2.0));
}

TEST_CASE("shift powers with disjoint supports annihilate") {
    const int J = 5;
    CrossedElement x(Flavor::crossed_product, J), y(Flavor::crossed_product, J);
    x.set_term(1, delta_at(0, J));
    y.set_term(-1, delta_at(0, J));
    const CrossedElement p = multiply(x, y);
    CHECK(p.terms().empty());
    CHECK(in_ideal(p));
}

TEST_CASE("star acts by the adjoint rule") {
    const int J = 5;
    // real diagonal term is self-adjoint
    CrossedElement d(Flavor::crossed_product, J);
    std::vector<cplx> dv(11, 0.0);
    for (int j = -J; j <= J; ++j) dv[static_cast<std::size_t>(j + J)] = cplx(j * 0.5, 0.0);
    d.set_term(0, CoeffFunction(J, dv, cplx(1.0, 0.0)));
    CHECK(star(d) == d);

    // (l*)^1 f goes to k = -1 with values conj(f)(q^{j-1})
    CrossedElement x(Flavor::crossed_product, J);
    const CoeffFunction f = delta_at(2, J, cplx(1.0, 3.0));
    x.set_term(1, f);
    const CrossedElement xs = star(x);
    REQUIRE(xs.terms().count(-1) == 1);
    const CoeffFunction& g = xs.terms().at(-1);
    for (int j = -J; j <= J; ++j) CHECK(g(j) == std::conj(f(j - 1)));
}

TEST_CASE("star algebra axioms hold exactly on random triples") {
    Rng rng(2024);
    for (int rep = 0; rep < 500; ++rep) {
        const Flavor flavor = (rep % 2 == 0) ? Flavor::quantum_plane : Flavor::crossed_product;
        const int J = 6;
        const CrossedElement x = random_integer_element(rng, flavor, J, 2, 3);
        const CrossedElement y = random_integer_element(rng, flavor, J, 2, 3);
        const CrossedElement z = random_integer_element(rng, flavor, J, 2, 3);

        CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
        CHECK(multiply(x, y + z) == multiply(x, y) + multiply(x, z));
        CHECK(star(star(x)) == x);
        CHECK(star(multiply(x, y)) == multiply(star(y), star(x)));
    }
}

TEST_CASE("represent draws diagonals and truncated shifts") {
    const int J = 8, N = 4;
    const double q = 0.5;
    CrossedElement x(Flavor::crossed_product, J);
    std::vector<cplx> qv(17, 0.0);
    for (int j = -J; j <= J; ++j) qv[static_cast<std::size_t>(j + J)] = std::pow(q, j);
    x.set_term(0, CoeffFunction(J, qv, 1.0));
    const OperatorMatrix m = represent(x, N);
    CHECK(m.dim() == 2 * N + 1);
    CHECK(m.basis_offset() == -N);
    for (int i = -N; i <= N; ++i)
        CHECK(m(i + N, i + N) == cplx(std::pow(q, i), 0.0));

    CrossedElement s(Flavor::crossed_product, J);
    s.set_term(1, constant_one(J, 0.0));
    const OperatorMatrix sm = represent(s, N);
    for (int i = -N; i < N; ++i) CHECK(sm(i + 1 + N, i + N) == cplx(1.0, 0.0));
    for (int i = -N; i <= N; ++i) CHECK(sm(i + N, i + N) == cplx(0.0, 0.0));
}

TEST_CASE("represent rejects truncation beyond the grid") {
    CrossedElement x(Flavor::quantum_plane, 4);
    CHECK_THROWS_AS(represent(x, 5), std::invalid_argument);
}

TEST_CASE("represent is a homomorphism on interior columns") {
    Rng rng(303);
    const int J = 12, N = 8;
    for (int rep = 0; rep < 20; ++rep) {
        const CrossedElement x = random_integer_element(rng, Flavor::crossed_product, J, 2, 5);
        const CrossedElement y = random_integer_element(rng, Flavor::crossed_product, J, 2, 5);
        const OperatorMatrix lhs = represent(multiply(x, y), N);
        const OperatorMatrix rhs = represent(x, N) * represent(y, N);
        const int margin = band_halfwidth(y);
        double worst = 0.0;
        for (int r = -N; r <= N; ++r)
            for (int c = -N + margin; c <= N - margin; ++c)
                worst = std::max(worst, std::abs(lhs(r + N, c + N) - rhs(r + N, c + N)));
        CHECK(worst <= 1e-12 * std::max(1.0, rhs.max_abs()));
    }
}

TEST_CASE("quotient_plane reads the central tail and is multiplicative") {
    Rng rng(404);
    const int J = 6;
    CrossedElement x(Flavor::quantum_plane, J);
    x.set_term(0, CoeffFunction(J, std::vector<cplx>(13, 0.0), cplx(3.0, 4.0)));
    CHECK(quotient_plane(x) == cplx(3.0, 4.0));

    CrossedElement k(Flavor::quantum_plane, J);
    k.set_term(0, delta_at(1, J));
    k.set_term(2, delta_at(0, J));
    CHECK(quotient_plane(k) == cplx(0.0, 0.0));
    CHECK(in_ideal(k));

    for (int rep = 0; rep < 100; ++rep) {
        const CrossedElement a = random_integer_element(rng, Flavor::quantum_plane, J, 2, 3);
        const CrossedElement b = random_integer_element(rng, Flavor::quantum_plane, J, 2, 3);
        CHECK(quotient_plane(multiply(a, b)) == quotient_plane(a) * quotient_plane(b));
        CHECK(quotient_plane(star(a)) == std::conj(quotient_plane(a)));
    }
}

TEST_CASE("quotient_plane kernel is exactly the ideal") {
    Rng rng(405);
    for (int rep = 0; rep < 100; ++rep) {
        const CrossedElement a = random_integer_element(rng, Flavor::quantum_plane, 6, 2, 3);
        CHECK(in_ideal(a) == (quotient_plane(a) == cplx(0.0)));
    }
}

TEST_CASE("quotient_crossed matches the convolution oracle") {
    Rng rng(505);
    const int J = 6;
    for (int rep = 0; rep < 100; ++rep) {
        const CrossedElement a = random_integer_element(rng, Flavor::crossed_product, J, 2, 3);
        const CrossedElement b = random_integer_element(rng, Flavor::crossed_product, J, 2, 3);
        const CirclePolynomial got = quotient_crossed(multiply(a, b));
        // direct convolution of the two tail sequences
        std::map<int, cplx> conv;
        for (const auto& [m, f] : a.terms())
            for (const auto& [n, g] : b.terms()) conv[m + n] += f.tail() * g.tail();
        const CirclePolynomial want{std::move(conv)};
        CHECK((got - want).is_zero());

        // the star goes to conj-reverse
        const CirclePolynomial s1 = quotient_crossed(star(a));
        const CirclePolynomial s2 = quotient_crossed(a).star();
        CHECK((s1 - s2).is_zero());
    }

    CrossedElement compact(Flavor::crossed_product, J);
    compact.set_term(3, delta_at(0, J));
    CHECK(quotient_crossed(compact).is_zero());

    CrossedElement shift1(Flavor::crossed_product, J);
    shift1.set_term(1, constant_one(J, cplx(1.0, 0.0)));
    CHECK(quotient_crossed(shift1).coefficient(1) == cplx(1.0, 0.0));
}

TEST_CASE("circle polynomial commutators vanish exactly") {
    Rng rng(606);
    for (int rep = 0; rep < 100; ++rep) {
        std::map<int, cplx> ac, bc;
        for (int k = -3; k <= 3; ++k) {
            ac[k] = cplx(rng.gaussian(), rng.gaussian());
            bc[k] = cplx(rng.gaussian(), rng.gaussian());
        }
        const CirclePolynomial a{std::move(ac)}, b{std::move(bc)};
        CHECK(CirclePolynomial::commutator(a, b).is_zero());
    }
}

TEST_CASE("ideal absorbs products") {
    Rng rng(707);
    const int J = 6;
    for (int rep = 0; rep < 50; ++rep) {
        const CrossedElement x = random_integer_element(rng, Flavor::crossed_product, J, 2, 3);
        CrossedElement k = random_integer_element(rng, Flavor::crossed_product, J, 2, 3);
        // strip tails to land in the ideal
        CrossedElement ideal(Flavor::crossed_product, J);
        for (const auto& [kk, f] : k.terms()) {
            std::vector<cplx> vals(static_cast<std::size_t>(2 * J + 1), 0.0);
            for (int j = -J; j <= J; ++j) vals[static_cast<std::size_t>(j + J)] = f(j);
            ideal.add_term(kk, CoeffFunction(J, vals, 0.0));
        }
        REQUIRE(in_ideal(ideal));
        CHECK(in_ideal(multiply(x, ideal)));
        CHECK(in_ideal(multiply(ideal, x)));
    }
}

TEST_CASE("flavor invariant is enforced") {
    CrossedElement x(Flavor::quantum_plane, 4);
    CHECK_THROWS_AS(x.set_term(1, constant_one(4, cplx(1.0, 0.0))), std::invalid_argument);
    CHECK_NOTHROW(x.set_term(0, constant_one(4, cplx(1.0, 0.0))));
    CHECK_THROWS_AS(quotient_crossed(x), std::invalid_argument);

    CrossedElement y(Flavor::crossed_product, 4);
    CHECK_THROWS_AS(quotient_plane(y), std::invalid_argument);
    CHECK_THROWS_AS(multiply(x, y), std::invalid_argument);
}

TEST_CASE("approximate identity is a projection acting as identity inside") {
    const int J = 10;
    const CrossedElement e5 = approximate_identity(5, J);
    CHECK(multiply(e5, e5) == e5);
    CHECK(in_ideal(e5));

    CrossedElement x(Flavor::quantum_plane, J);
    x.set_term(1, delta_at(2, J, cplx(0.0, 2.0)));
    x.set_term(0, delta_at(-1, J, cplx(1.0, 1.0)));
    CHECK(multiply(x, e5) == x);

    CHECK_THROWS_AS(approximate_identity(J + 1, J), std::invalid_argument);
}

TEST_CASE("approximate identity converges in represented norm") {
    const int J = 12, N = 8;
    Rng rng(808);
    const CrossedElement x = random_integer_element(rng, Flavor::quantum_plane, J, 2, 6);
    CrossedElement tail_free(Flavor::quantum_plane, J);
    for (const auto& [k, f] : x.terms()) {
        std::vector<cplx> vals(static_cast<std::size_t>(2 * J + 1), 0.0);
        for (int j = -J; j <= J; ++j) vals[static_cast<std::size_t>(j + J)] = f(j);
        tail_free.add_term(k, CoeffFunction(J, vals, 0.0));
    }
    double prev = 1e300;
    for (int m : {2, 6, 10}) {
        const CrossedElement em = approximate_identity(m, J);
        const OperatorMatrix diff =
            represent(multiply(tail_free, em), N) - represent(tail_free, N);
        const double norm = spectral::operator_norm(diff);
        CHECK(norm <= prev + 1e-12);
        prev = norm;
    }
    CHECK(prev == 0.0);  // support is fully inside the m = 10 window
}

TEST_CASE("demonstration operator scales deltas by inverse grid powers") {
    const int J = 8;
    const double q = 0.5;
    CrossedElement a0(Flavor::quantum_plane, J);
    a0.set_term(0, delta_at(0, J));
    CHECK(demo_apply(a0, q) == a0);

    CrossedElement a2(Flavor::quantum_plane, J);
    a2.set_term(0, delta_at(2, J));
    const CrossedElement sa2 = demo_apply(a2, q);
    CHECK(sa2.terms().at(0)(2) == cplx(4.0, 0.0));

    CrossedElement bad(Flavor::quantum_plane, J);
    bad.set_term(0, constant_one(J, cplx(1.0, 0.0)));
    CHECK_THROWS_AS(demo_apply(bad, q), std::invalid_argument);
}

TEST_CASE("demonstration operator graph pairs and their z-transform") {
    const int J = 16, N = 8;
    const double q = 0.5;
    const auto pairs = demo_semiregular(J, q, Flavor::quantum_plane, 4, 9);
    CHECK(pairs.size() == 4);
    for (const auto& [a, sa] : pairs) {
        CHECK(in_ideal(a));
        CHECK(in_ideal(sa));
        // S commutes with represent: rep(Sa) = rep(a) * diag(q^{-i})
        OperatorMatrix qinv(2 * N + 1, -N);
        for (int i = -N; i <= N; ++i) qinv(i + N, i + N) = std::pow(q, -i);
        CHECK((represent(sa, N) - represent(a, N) * qinv).max_abs() <= 1e-9);
    }

    // matrix-level z-transform of the multiplier is diagonal with entries
    // q^{-i} / sqrt(1 + q^{-2i})
    OperatorMatrix s(2 * N + 1, -N);
    for (int i = -N; i <= N; ++i) s(i + N, i + N) = std::pow(q, -i);
    const auto zc = reglab::zcalc::z_transform(s);
    for (int i = -N; i <= N; ++i) {
        const double mu = std::pow(q, -i) / std::sqrt(1.0 + std::pow(q, -2 * i));
        CHECK(zc.z()(i + N, i + N).real() == doctest::Approx(mu).epsilon(1e-10));
    }
}

TEST_CASE("text serialization round-trips grid-supported elements") {
    Rng rng(909);
    const CrossedElement x = random_integer_element(rng, Flavor::crossed_product, 6, 2, 4);
    const std::string text = to_text(x);
    const CrossedElement back = crossed_from_text(text, Flavor::crossed_product, 6);
    CHECK(back == x);

    CHECK_THROWS_AS(crossed_from_text("0 bogus", Flavor::quantum_plane, 4),
                    std::invalid_argument);
}
