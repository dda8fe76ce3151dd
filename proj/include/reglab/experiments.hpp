#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "reglab/algebras.hpp"
#include "reglab/report.hpp"

namespace reglab::experiments {

struct AlgebraParams {
    algebras::Flavor flavor = algebras::Flavor::quantum_plane;
    double q = 0.5;
    int J = 32;  // coefficient grid half-width
    int N = 16;  // representation truncation half-width
};

/// z-transform calculus over random generators: graph-pair roundtrips,
/// intertwining, strict contractivity, and the eight range inclusions over
/// the full matrix algebra.
ResidualReport run_ztransform_experiment(int dim, int samples, std::uint64_t seed,
                                         double tol = 1e-8);

/// Behaviour of the demonstration operator restricted to the compact ideal
/// of the chosen algebra model: ideal absorption, range containment, graph
/// closure under combinations, the cut-off core, and adjoint symmetry.
/// A nonzero corruption perturbs one sampled image and must trip the
/// adjoint-symmetry check; zero_operator replaces the demonstration
/// operator by the zero map, for which every residual vanishes.
ResidualReport run_restriction_experiment(const AlgebraParams& params, std::uint64_t seed,
                                          double corruption = 0.0, bool zero_operator = false);

/// Two operator extensions rebuilt from the same contraction agree on the
/// intersection of their domains, their adjoint data agree, and every
/// sampled domain generator passes the maximal-domain membership test.
/// zero_generator runs the trivial case T = 0.
ResidualReport run_uniqueness_experiment(int dim, std::uint64_t seed, double corruption = 0.0,
                                         bool zero_generator = false);

enum class ModelSelector { quantum_plane, crossed_product, hilsum };

std::optional<ModelSelector> model_selector_from_string(const std::string& name);
std::string to_string(ModelSelector m);

struct PipelineParams {
    AlgebraParams algebra;               // used by the two algebra models
    int fourier_halfwidth = 64;          // used by the fiber model
    std::vector<double> witness_grid;    // optional override for the fiber scan
    double tol = 1e-8;
};

/// End-to-end regularity probes: quotient structure, center condition and
/// multiplier membership for the algebra models; the norm-discontinuity
/// witness, resonant control and restricted-continuity control for the
/// fiber model. Every threshold is frozen in the implementation.
ResidualReport run_theorem_pipeline(ModelSelector model, const PipelineParams& params,
                                    std::uint64_t seed);

}  // namespace reglab::experiments
