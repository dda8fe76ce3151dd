#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "reglab/algebras.hpp"
#include "reglab/experiments.hpp"
#include "reglab/hilsum.hpp"
#include "reglab/matrix.hpp"
#include "reglab/report.hpp"
#include "reglab/spectral.hpp"
#include "reglab/zcalc.hpp"

namespace py = pybind11;
using namespace reglab;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

OperatorMatrix matrix_from_numpy(const ComplexArray& arr, int basis_offset = 0) {
    const auto buf = arr.request();
    if (buf.ndim != 2 || buf.shape[0] != buf.shape[1])
        throw std::invalid_argument("expected a square 2-D complex array");
    const int n = static_cast<int>(buf.shape[0]);
    OperatorMatrix m(n, basis_offset);
    const cplx* data = static_cast<const cplx*>(buf.ptr);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = data[static_cast<std::size_t>(i) * n + j];
    return m;
}

py::array_t<cplx> matrix_to_numpy(const OperatorMatrix& m) {
    const int n = m.dim();
    py::array_t<cplx> arr({n, n});
    cplx* data = static_cast<cplx*>(arr.request().ptr);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) data[static_cast<std::size_t>(i) * n + j] = m(i, j);
    return arr;
}

std::vector<OperatorMatrix> matrices_from_list(const std::vector<ComplexArray>& list) {
    std::vector<OperatorMatrix> out;
    out.reserve(list.size());
    for (const auto& a : list) out.push_back(matrix_from_numpy(a));
    return out;
}

algebras::Flavor flavor_from_string(const std::string& name) {
    if (name == "quantum_plane") return algebras::Flavor::quantum_plane;
    if (name == "crossed_product") return algebras::Flavor::crossed_product;
    throw std::invalid_argument("flavor must be quantum_plane or crossed_product");
}

algebras::CoeffFunction coeff_from_numpy(int grid_halfwidth, const ComplexArray& values,
                                         cplx tail) {
    const auto buf = values.request();
    if (buf.ndim != 1 || buf.shape[0] != 2 * grid_halfwidth + 1)
        throw std::invalid_argument("expected a 1-D array of 2J+1 grid values");
    const cplx* data = static_cast<const cplx*>(buf.ptr);
    std::vector<cplx> grid(data, data + buf.shape[0]);
    return algebras::CoeffFunction(grid_halfwidth, grid, tail);
}

py::dict report_to_dict(const experiments::ResidualReport& r) {
    py::dict d;
    d["experiment"] = r.experiment_name;
    py::dict params;
    for (const auto& [k, v] : r.parameters) params[py::str(k)] = v;
    d["parameters"] = params;
    py::list checks;
    for (const auto& c : r.checks) {
        py::dict cd;
        cd["name"] = c.name;
        cd["description"] = c.description;
        cd["residual"] = c.residual;
        cd["tolerance"] = c.tolerance;
        cd["pass"] = c.pass;
        checks.append(cd);
    }
    d["checks"] = checks;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "z-transform calculus on operator-algebra models: spectral kernel, symbolic "
              "crossed elements, fiber scans and experiment runners";

    // ---- spectral kernel ----
    m.def(
        "herm_eig",
        [](const ComplexArray& h) {
            const auto ed = spectral::herm_eig(matrix_from_numpy(h));
            return py::make_tuple(py::array_t<double>(py::cast(ed.eigenvalues)),
                                  matrix_to_numpy(ed.vectors));
        },
        py::arg("h"),
        "Hermitian eigendecomposition (ascending eigenvalues, unitary column matrix)");
    m.def(
        "apply_spectral_function",
        [](const ComplexArray& a, const std::function<double(double)>& f) {
            return matrix_to_numpy(spectral::apply_spectral_function(matrix_from_numpy(a), f));
        },
        py::arg("a"), py::arg("f"), "U f(Lambda) U* for Hermitian input");
    m.def(
        "operator_norm",
        [](const ComplexArray& a) { return spectral::operator_norm(matrix_from_numpy(a)); },
        py::arg("a"), "largest singular value");
    m.def(
        "subspace_residual",
        [](const ComplexArray& x, const std::vector<ComplexArray>& basis) {
            return spectral::subspace_residual(matrix_from_numpy(x), matrices_from_list(basis));
        },
        py::arg("x"), py::arg("basis"), "Frobenius distance from x to span(basis)");

    // ---- z-transform calculus ----
    py::class_<zcalc::Contraction>(m, "Contraction")
        .def_static(
            "from_z", [](const ComplexArray& z) { return zcalc::Contraction::from_z(matrix_from_numpy(z)); },
            py::arg("z"))
        .def_static(
            "from_generator",
            [](const ComplexArray& t) {
                return zcalc::Contraction::from_generator(matrix_from_numpy(t));
            },
            py::arg("t"))
        .def_property_readonly("z", [](const zcalc::Contraction& c) { return matrix_to_numpy(c.z()); })
        .def_property_readonly(
            "defect_right",
            [](const zcalc::Contraction& c) { return matrix_to_numpy(c.defect_right()); })
        .def_property_readonly(
            "defect_left",
            [](const zcalc::Contraction& c) { return matrix_to_numpy(c.defect_left()); })
        .def_property_readonly("dim", &zcalc::Contraction::dim);

    m.def(
        "z_transform",
        [](const ComplexArray& t) { return zcalc::z_transform(matrix_from_numpy(t)); },
        py::arg("t"), "contraction z = T (I + T*T)^{-1/2} with cached defects");
    m.def(
        "operator_from_z",
        [](const zcalc::Contraction& zc, const ComplexArray& c) {
            const auto [dom, act] = zcalc::operator_from_z(zc, matrix_from_numpy(c));
            return py::make_tuple(matrix_to_numpy(dom), matrix_to_numpy(act));
        },
        py::arg("zc"), py::arg("c"), "graph pair (defect_right c, z c)");
    m.def(
        "decompose_domain",
        [](const ComplexArray& a, const ComplexArray& sa, const zcalc::Contraction& zc,
           double tol) {
            const auto dec =
                zcalc::decompose_domain(matrix_from_numpy(a), matrix_from_numpy(sa), zc, tol);
            return py::make_tuple(matrix_to_numpy(dec.c), dec.residual_domain,
                                  dec.residual_action);
        },
        py::arg("a"), py::arg("sa"), py::arg("zc"), py::arg("tol") = 1e-8);
    m.def(
        "decompose_adjoint_domain",
        [](const ComplexArray& a, const ComplexArray& ssa, const zcalc::Contraction& zc,
           double tol) {
            const auto dec = zcalc::decompose_adjoint_domain(matrix_from_numpy(a),
                                                             matrix_from_numpy(ssa), zc, tol);
            return py::make_tuple(matrix_to_numpy(dec.c), dec.residual_domain,
                                  dec.residual_action);
        },
        py::arg("a"), py::arg("s_star_a"), py::arg("zc"), py::arg("tol") = 1e-8);
    m.def(
        "gamma_membership",
        [](const ComplexArray& c, const zcalc::Contraction& zc,
           const std::vector<ComplexArray>& basis, double tol) {
            const auto g =
                zcalc::gamma_membership(matrix_from_numpy(c), zc, matrices_from_list(basis), tol);
            return py::make_tuple(g.member, g.residual_domain, g.residual_action);
        },
        py::arg("c"), py::arg("zc"), py::arg("basis"), py::arg("tol"));
    m.def(
        "inclusion_residuals",
        [](const zcalc::Contraction& zc, const std::vector<ComplexArray>& basis, int samples,
           std::uint64_t seed) {
            return zcalc::inclusion_residuals(zc, matrices_from_list(basis), samples, seed);
        },
        py::arg("zc"), py::arg("basis"), py::arg("samples"), py::arg("seed") = 0,
        "the eight range-inclusion residuals, in fixed order");
    m.def(
        "multiplier_residual",
        [](const ComplexArray& x, const std::vector<ComplexArray>& basis, int samples,
           std::uint64_t seed) {
            return zcalc::multiplier_residual(matrix_from_numpy(x), matrices_from_list(basis),
                                              samples, seed);
        },
        py::arg("x"), py::arg("basis"), py::arg("samples"), py::arg("seed") = 0);
    m.def(
        "center_condition_residual",
        [](const std::vector<ComplexArray>& quotient, const std::vector<ComplexArray>& center,
           const std::vector<ComplexArray>& domain_image) {
            int dim = 0;
            const double r = zcalc::center_condition_residual(
                matrices_from_list(quotient), matrices_from_list(center),
                matrices_from_list(domain_image), &dim);
            return py::make_tuple(r, dim);
        },
        py::arg("quotient_basis"), py::arg("center_basis"), py::arg("domain_image_basis"),
        "(residual, intersection_dim); residual is +inf when the intersection is empty");

    // ---- symbolic algebra models ----
    py::class_<algebras::CrossedElement>(m, "CrossedElement")
        .def(py::init([](const std::string& flavor, int grid_halfwidth) {
                 return algebras::CrossedElement(flavor_from_string(flavor), grid_halfwidth);
             }),
             py::arg("flavor"), py::arg("grid_halfwidth"))
        .def_property_readonly("flavor",
                               [](const algebras::CrossedElement& x) {
                                   return algebras::to_string(x.flavor());
                               })
        .def_property_readonly("grid_halfwidth", &algebras::CrossedElement::grid_halfwidth)
        .def(
            "set_term",
            [](algebras::CrossedElement& x, int k, const ComplexArray& values, cplx tail) {
                x.set_term(k, coeff_from_numpy(x.grid_halfwidth(), values, tail));
            },
            py::arg("k"), py::arg("grid_values"), py::arg("tail") = cplx(0.0))
        .def("terms",
             [](const algebras::CrossedElement& x) {
                 py::dict out;
                 const int J = x.grid_halfwidth();
                 for (const auto& [k, f] : x.terms()) {
                     py::array_t<cplx> grid(2 * J + 1);
                     cplx* data = static_cast<cplx*>(grid.request().ptr);
                     for (int j = -J; j <= J; ++j) data[j + J] = f(j);
                     out[py::int_(k)] = py::make_tuple(grid, f.tail());
                 }
                 return out;
             })
        .def("__eq__", [](const algebras::CrossedElement& a,
                          const algebras::CrossedElement& b) { return a == b; })
        .def("__mul__", &algebras::multiply)
        .def("__add__", [](const algebras::CrossedElement& a,
                           const algebras::CrossedElement& b) { return a + b; });

    m.def("multiply", &algebras::multiply, py::arg("x"), py::arg("y"));
    m.def("star", &algebras::star, py::arg("x"));
    m.def(
        "represent",
        [](const algebras::CrossedElement& x, int n) {
            return matrix_to_numpy(algebras::represent(x, n));
        },
        py::arg("x"), py::arg("truncation_halfwidth"));
    m.def("quotient_plane", &algebras::quotient_plane, py::arg("x"));
    m.def(
        "quotient_crossed",
        [](const algebras::CrossedElement& x) {
            py::dict out;
            const algebras::CirclePolynomial poly = algebras::quotient_crossed(x);
            for (const auto& [k, v] : poly.coefficients()) out[py::int_(k)] = v;
            return out;
        },
        py::arg("x"), "Laurent coefficients of the circle quotient image");
    m.def("in_ideal", &algebras::in_ideal, py::arg("x"));
    m.def(
        "approximate_identity",
        [](int m_, int grid_halfwidth, const std::string& flavor) {
            return algebras::approximate_identity(m_, grid_halfwidth, flavor_from_string(flavor));
        },
        py::arg("m"), py::arg("grid_halfwidth"), py::arg("flavor") = "quantum_plane");
    m.def(
        "demo_semiregular",
        [](int grid_halfwidth, double q, const std::string& flavor, int count,
           std::uint64_t seed) {
            return algebras::demo_semiregular(grid_halfwidth, q, flavor_from_string(flavor),
                                              count, seed);
        },
        py::arg("grid_halfwidth"), py::arg("q") = 0.5, py::arg("flavor") = "quantum_plane",
        py::arg("count") = 8, py::arg("seed") = 0,
        "sampled graph pairs (a, S a) of the inverse-power multiplication operator");
    m.def("element_to_text", &algebras::to_text, py::arg("x"));
    m.def(
        "element_from_text",
        [](const std::string& text, const std::string& flavor, int grid_halfwidth) {
            return algebras::crossed_from_text(text, flavor_from_string(flavor), grid_halfwidth);
        },
        py::arg("text"), py::arg("flavor"), py::arg("grid_halfwidth"));

    // ---- fiber family ----
    m.def("beta", &hilsum::beta, py::arg("t"), "boundary twist: 1 at t=0, exp(i/t) otherwise");
    m.def(
        "fiber_eigenvalues",
        [](double t, int m_) { return hilsum::fiber_eigensystem(t, m_).eigenvalues; },
        py::arg("t"), py::arg("m_modes"));
    m.def(
        "fd_oracle",
        [](double t, int gridpoints, int count) {
            const auto vals = hilsum::fd_oracle(t, gridpoints, count);
            py::list out;
            for (const auto& v : vals) out.append(py::make_tuple(v.value, v.residual));
            return out;
        },
        py::arg("t"), py::arg("gridpoints"), py::arg("count") = 5,
        "finite-difference eigenvalues nearest zero, with convergence residuals");
    m.def(
        "fiber_z_matrix",
        [](double t, int m_) { return matrix_to_numpy(hilsum::fiber_z_matrix(t, m_)); },
        py::arg("t"), py::arg("m_modes"));
    m.def(
        "discontinuity_scan",
        [](const std::vector<double>& ts, int m_) {
            const auto scan = hilsum::discontinuity_scan(ts, m_);
            py::list out;
            for (const auto& p : scan)
                out.append(py::make_tuple(p.t, p.m_modes, p.norm_distance, p.hermitian_residual));
            return out;
        },
        py::arg("t_list"), py::arg("m_modes"),
        "rows (t, M, norm_distance, hermitian_residual) in grid order");

    // ---- experiment runners ----
    py::class_<experiments::ResidualReport>(m, "ResidualReport")
        .def_property_readonly("experiment",
                               [](const experiments::ResidualReport& r) {
                                   return r.experiment_name;
                               })
        .def("all_pass", &experiments::ResidualReport::all_pass)
        .def("to_text", &experiments::ResidualReport::to_text)
        .def("to_dict", &report_to_dict);

    m.def(
        "run_ztransform_experiment",
        [](int dim, int samples, std::uint64_t seed, double tol) {
            return experiments::run_ztransform_experiment(dim, samples, seed, tol);
        },
        py::arg("dim") = 8, py::arg("samples") = 25, py::arg("seed") = 0, py::arg("tol") = 1e-8);
    m.def(
        "run_restriction_experiment",
        [](const std::string& flavor, double q, int J, int N, std::uint64_t seed,
           double corruption, bool zero_operator) {
            experiments::AlgebraParams params{flavor_from_string(flavor), q, J, N};
            return experiments::run_restriction_experiment(params, seed, corruption,
                                                           zero_operator);
        },
        py::arg("flavor") = "quantum_plane", py::arg("q") = 0.5, py::arg("J") = 32,
        py::arg("N") = 16, py::arg("seed") = 0, py::arg("corruption") = 0.0,
        py::arg("zero_operator") = false);
    m.def(
        "run_uniqueness_experiment",
        [](int dim, std::uint64_t seed, double corruption, bool zero_generator) {
            return experiments::run_uniqueness_experiment(dim, seed, corruption, zero_generator);
        },
        py::arg("dim") = 8, py::arg("seed") = 0, py::arg("corruption") = 0.0,
        py::arg("zero_generator") = false);
    m.def(
        "run_theorem_pipeline",
        [](const std::string& model, double q, int J, int N, int M,
           const std::vector<double>& witness_grid, double tol, std::uint64_t seed) {
            const auto selector = experiments::model_selector_from_string(model);
            if (!selector)
                throw std::invalid_argument(
                    "model must be quantum_plane, crossed_product or hilsum");
            experiments::PipelineParams params;
            params.algebra = {flavor_from_string(model == "crossed_product" ? "crossed_product"
                                                                            : "quantum_plane"),
                              q, J, N};
            params.fourier_halfwidth = M;
            params.witness_grid = witness_grid;
            params.tol = tol;
            return experiments::run_theorem_pipeline(*selector, params, seed);
        },
        py::arg("model"), py::arg("q") = 0.5, py::arg("J") = 32, py::arg("N") = 16,
        py::arg("M") = 64, py::arg("witness_grid") = std::vector<double>{},
        py::arg("tol") = 1e-8, py::arg("seed") = 0);

    m.attr("__version__") = "0.1.0";
}
