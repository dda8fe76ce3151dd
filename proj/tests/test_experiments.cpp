#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "reglab/experiments.hpp"
#include "reglab/report.hpp"

using namespace reglab;
using namespace reglab::experiments;

namespace {

const CheckResult& find_check(const ResidualReport& r, const std::string& name) {
    for (const CheckResult& c : r.checks)
        if (c.name == name) return c;
    throw std::runtime_error("missing check: " + name);
}

}  // namespace

TEST_CASE("report text format is canonical") {
    ResidualReport r;
    r.experiment_name = "demo";
    r.add_parameter("seed", static_cast<long long>(7));
    r.add_parameter("q", 0.5);
    r.add_check("alpha", "first check", 1e-12, 1e-8);
    r.add_check("beta", "second check", 2.0, 1.0);
    CHECK_FALSE(r.all_pass());
    const std::string text = r.to_text();
    CHECK(text ==
          "experiment: demo\n"
          "parameters:\n"
          "  q: 0.5\n"
          "  seed: 7\n"
          "checks:\n"
          "  - name: alpha\n"
          "    description: first check\n"
          "    residual: 9.9999999999999998e-13\n"
          "    tolerance: 1e-08\n"
          "    pass: true\n"
          "  - name: beta\n"
          "    description: second check\n"
          "    residual: 2\n"
          "    tolerance: 1\n"
          "    pass: false\n");
}

TEST_CASE("atomic write leaves no temp file behind") {
    const std::string path = "report_test_output.txt";
    write_file_atomic(path, "hello\n");
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "hello");
    std::ifstream tmp(path + ".tmp");
    CHECK_FALSE(tmp.good());
    std::remove(path.c_str());
}

TEST_CASE("ztransform experiment passes and is deterministic") {
    const ResidualReport a = run_ztransform_experiment(12, 40, 7);
    CHECK(a.all_pass());
    CHECK(find_check(a, "roundtrip_domain").residual <= 1e-8);
    CHECK(find_check(a, "contraction_norm").residual < 1.0);

    const ResidualReport b = run_ztransform_experiment(12, 40, 7);
    CHECK(a.to_text() == b.to_text());

    const ResidualReport c = run_ztransform_experiment(12, 40, 8);
    CHECK(a.to_text() != c.to_text());
}

TEST_CASE("restriction experiment on both algebra models") {
    for (auto flavor : {algebras::Flavor::quantum_plane, algebras::Flavor::crossed_product}) {
        AlgebraParams params;
        params.flavor = flavor;
        params.J = 16;
        params.N = 8;
        const ResidualReport r = run_restriction_experiment(params, 7);
        INFO(r.to_text());
        CHECK(r.all_pass());
        CHECK(find_check(r, "ideal_absorption").residual == 0.0);
        CHECK(find_check(r, "range_in_ideal").residual == 0.0);
    }
}

TEST_CASE("restriction experiment on the zero operator has vanishing residuals") {
    AlgebraParams params;
    params.J = 16;
    params.N = 8;
    const ResidualReport r =
        run_restriction_experiment(params, 7, /*corruption=*/0.0, /*zero_operator=*/true);
    CHECK(r.all_pass());
    for (const CheckResult& c : r.checks)
        if (c.name != "representation_edge_residual") CHECK(c.residual <= 1e-12);
}

TEST_CASE("uniqueness experiment on the zero generator passes trivially") {
    const ResidualReport r =
        run_uniqueness_experiment(6, 4, /*corruption=*/0.0, /*zero_generator=*/true);
    CHECK(r.all_pass());
}

TEST_CASE("restriction experiment flags a corrupted image") {
    AlgebraParams params;
    params.J = 16;
    params.N = 8;
    const ResidualReport r = run_restriction_experiment(params, 7, /*corruption=*/1e-3);
    CHECK_FALSE(find_check(r, "adjoint_symmetry").pass);
    CHECK(find_check(r, "ideal_absorption").pass);  // the bump stays inside the ideal
}

TEST_CASE("uniqueness experiment agrees on intersections") {
    const ResidualReport r = run_uniqueness_experiment(8, 11);
    INFO(r.to_text());
    CHECK(r.all_pass());
    // three shared generators force a three-dimensional intersection
    bool found = false;
    for (const auto& [k, v] : r.parameters)
        if (k == "intersection_dim") {
            CHECK(v == "3");
            found = true;
        }
    CHECK(found);

    const ResidualReport bad = run_uniqueness_experiment(8, 11, /*corruption=*/1e-3);
    CHECK_FALSE(find_check(bad, "agreement_on_intersection").pass);
}

TEST_CASE("quantum plane pipeline verdict") {
    PipelineParams params;
    params.algebra.J = 16;
    params.algebra.N = 8;
    const ResidualReport r = run_theorem_pipeline(ModelSelector::quantum_plane, params, 7);
    INFO(r.to_text());
    CHECK(r.all_pass());
    CHECK(find_check(r, "quotient_homomorphism").residual == 0.0);
    CHECK(find_check(r, "kernel_is_ideal").residual == 0.0);
    CHECK(find_check(r, "center_condition").residual <= 1e-12);
    CHECK(find_check(r, "multiplier_z_squared").residual <= 1e-8);
}

TEST_CASE("crossed product pipeline verdict") {
    PipelineParams params;
    params.algebra.J = 16;
    const ResidualReport r = run_theorem_pipeline(ModelSelector::crossed_product, params, 7);
    INFO(r.to_text());
    CHECK(r.all_pass());
    CHECK(find_check(r, "quotient_homomorphism").residual == 0.0);
    CHECK(find_check(r, "quotient_commutators").residual == 0.0);
}

TEST_CASE("fiber pipeline confirms the witness and the controls") {
    PipelineParams params;
    params.fourier_halfwidth = 32;
    const ResidualReport r = run_theorem_pipeline(ModelSelector::hilsum, params, 0);
    INFO(r.to_text());
    CHECK(r.all_pass());
    CHECK(find_check(r, "witness_plateau").residual == 0.0);
    CHECK(find_check(r, "resonant_control").residual <= 0.05);
}

TEST_CASE("pipeline reports are bit-identical across reruns") {
    PipelineParams params;
    params.algebra.J = 16;
    params.algebra.N = 8;
    for (auto model : {ModelSelector::quantum_plane, ModelSelector::crossed_product}) {
        const ResidualReport a = run_theorem_pipeline(model, params, 3);
        const ResidualReport b = run_theorem_pipeline(model, params, 3);
        CHECK(a.to_text() == b.to_text());
    }
}

TEST_CASE("model selector parsing") {
    CHECK(model_selector_from_string("quantum_plane") == ModelSelector::quantum_plane);
    CHECK(model_selector_from_string("crossed_product") == ModelSelector::crossed_product);
    CHECK(model_selector_from_string("hilsum") == ModelSelector::hilsum);
    CHECK_FALSE(model_selector_from_string("bogus").has_value());
}
