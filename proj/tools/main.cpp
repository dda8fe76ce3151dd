// Command-line front end: every experiment and scan behind one binary.
//
// Exit codes: 0 all checks passed, 1 usage or configuration error, 2 at
// least one check failed.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "reglab/experiments.hpp"
#include "reglab/hilsum.hpp"
#include "reglab/report.hpp"

namespace {

using namespace reglab;
using experiments::ResidualReport;

struct CommonOptions {
    double q = 0.5;
    int J = 32;
    int N = 16;
    int M = 64;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    int dim = 8;
    int samples = 25;
    std::vector<double> t_grid;
    std::string output;
    std::string format;  // report-tree | csv
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt, const std::string& default_format) {
    opt.format = default_format;
    cmd->add_option("--q", opt.q, "deformation parameter, in (0,1)");
    cmd->add_option("--J", opt.J, "coefficient grid half-width");
    cmd->add_option("--N", opt.N, "representation truncation half-width (N <= J)");
    cmd->add_option("--M", opt.M, "Fourier truncation half-width for the fiber family");
    cmd->add_option("--seed", opt.seed, "random seed recorded in the report");
    cmd->add_option("--tol", opt.tol, "pass/fail tolerance for residual checks");
    cmd->add_option("--dim", opt.dim, "matrix dimension for random-generator experiments");
    cmd->add_option("--samples", opt.samples, "number of random samples");
    cmd->add_option("--t-grid", opt.t_grid,
                    "comma-separated fiber parameters in [0,1]")
        ->delimiter(',');
    cmd->add_option("--output", opt.output, "write the result to this file (atomically)");
    cmd->add_option("--format", opt.format,
                    "output format: report-tree or csv (csv columns for scans: "
                    "t,M,norm_distance,hermitian_residual; for reports: "
                    "experiment,check,residual,tolerance,pass)")
        ->check(CLI::IsMember({"report-tree", "csv"}));
}

int validate(const CommonOptions& opt, bool needs_scan_grid) {
    if (!(opt.q > 0.0 && opt.q < 1.0)) {
        std::cerr << "error: --q must lie strictly between 0 and 1\n";
        return 1;
    }
    if (opt.J < 1 || opt.N < 1 || opt.M < 1 || opt.dim < 1 || opt.samples < 1) {
        std::cerr << "error: --J, --N, --M, --dim and --samples must be positive\n";
        return 1;
    }
    if (opt.N > opt.J) {
        std::cerr << "error: --N must not exceed --J\n";
        return 1;
    }
    if (opt.tol <= 0.0) {
        std::cerr << "error: --tol must be positive\n";
        return 1;
    }
    for (double t : opt.t_grid) {
        if (!(t >= 0.0 && t <= 1.0)) {
            std::cerr << "error: --t-grid values must lie in [0,1]\n";
            return 1;
        }
        if (needs_scan_grid && t == 0.0) {
            std::cerr << "error: scan parameters must be positive\n";
            return 1;
        }
    }
    return 0;
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty()) {
        std::cout << text;
    } else {
        experiments::write_file_atomic(output, text);
    }
}

int finish_reports(const std::vector<ResidualReport>& reports, const CommonOptions& opt) {
    const std::string text = (opt.format == "csv") ? experiments::reports_to_csv(reports)
                                                   : experiments::reports_to_text(reports);
    emit(text, opt.output);
    for (const ResidualReport& r : reports)
        if (!r.all_pass()) return 2;
    return 0;
}

int run_scan(const CommonOptions& opt) {
    std::vector<double> grid = opt.t_grid;
    if (grid.empty()) grid = {0.04, 0.02, 0.01};
    const auto scan = hilsum::discontinuity_scan(grid, opt.M);
    if (opt.format == "csv") {
        std::string text = "t,M,norm_distance,hermitian_residual\n";
        for (const auto& p : scan) {
            text += experiments::format_value(p.t);
            text += ',' + std::to_string(p.m_modes);
            text += ',' + experiments::format_value(p.norm_distance);
            text += ',' + experiments::format_value(p.hermitian_residual);
            text += '\n';
        }
        emit(text, opt.output);
        return 0;
    }
    ResidualReport report;
    report.experiment_name = "discontinuity_scan";
    report.add_parameter("M", static_cast<long long>(opt.M));
    for (std::size_t i = 0; i < scan.size(); ++i) {
        report.add_check("distance_at_" + experiments::format_value(scan[i].t),
                         "operator-norm distance of the fiber transform from the zero fiber",
                         scan[i].norm_distance, std::numeric_limits<double>::infinity());
    }
    emit(experiments::reports_to_text({report}), opt.output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "reglab: z-transform calculus, operator-algebra models and fiber scans with "
        "reproducible residual reports"};
    app.require_subcommand(1);

    CommonOptions zopt, qopt, copt, hopt, popt;
    std::string model_name;

    CLI::App* ztf = app.add_subcommand(
        "ztf", "z-transform calculus over random generators (roundtrips, inclusions)");
    add_common_flags(ztf, zopt, "report-tree");

    std::string dump_samples;
    CLI::App* qplane = app.add_subcommand(
        "qplane", "quantum-plane model: ideal restriction and extension uniqueness");
    add_common_flags(qplane, qopt, "report-tree");
    qplane->add_option("--dump-samples", dump_samples,
                       "write the sampled domain elements as fixtures (lines `k j re im` "
                       "plus `k tail re im`)");

    CLI::App* crossed = app.add_subcommand(
        "crossed", "crossed-product model: ideal restriction and extension uniqueness");
    add_common_flags(crossed, copt, "report-tree");
    crossed->add_option("--dump-samples", dump_samples,
                        "write the sampled domain elements as fixtures (lines `k j re im` "
                        "plus `k tail re im`)");

    CLI::App* hil = app.add_subcommand(
        "hilsum", "fiber-family discontinuity scan (CSV: t,M,norm_distance,hermitian_residual)");
    add_common_flags(hil, hopt, "csv");

    CLI::App* probe = app.add_subcommand(
        "probe", "full regularity pipeline for a chosen model");
    add_common_flags(probe, popt, "report-tree");
    probe->add_option("--model", model_name, "quantum_plane, crossed_product or hilsum")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (ztf->parsed()) {
            if (int rc = validate(zopt, false)) return rc;
            return finish_reports(
                {experiments::run_ztransform_experiment(zopt.dim, zopt.samples, zopt.seed,
                                                        zopt.tol)},
                zopt);
        }
        if (qplane->parsed() || crossed->parsed()) {
            const CommonOptions& opt = qplane->parsed() ? qopt : copt;
            if (int rc = validate(opt, false)) return rc;
            experiments::AlgebraParams params;
            params.flavor = qplane->parsed() ? algebras::Flavor::quantum_plane
                                             : algebras::Flavor::crossed_product;
            params.q = opt.q;
            params.J = opt.J;
            params.N = opt.N;
            if (!dump_samples.empty()) {
                const auto pairs =
                    algebras::demo_semiregular(params.J, params.q, params.flavor, 6, opt.seed);
                std::string text;
                for (std::size_t i = 0; i < pairs.size(); ++i) {
                    text += "# sample " + std::to_string(i) + " element\n";
                    text += algebras::to_text(pairs[i].first);
                    text += "# sample " + std::to_string(i) + " image\n";
                    text += algebras::to_text(pairs[i].second);
                }
                experiments::write_file_atomic(dump_samples, text);
            }
            std::vector<ResidualReport> reports;
            reports.push_back(experiments::run_restriction_experiment(params, opt.seed));
            reports.push_back(experiments::run_uniqueness_experiment(opt.dim, opt.seed));
            return finish_reports(reports, opt);
        }
        if (hil->parsed()) {
            if (int rc = validate(hopt, true)) return rc;
            return run_scan(hopt);
        }
        if (probe->parsed()) {
            if (int rc = validate(popt, false)) return rc;
            const auto model = experiments::model_selector_from_string(model_name);
            if (!model) {
                std::cerr << "error: --model must be quantum_plane, crossed_product or hilsum\n";
                return 1;
            }
            experiments::PipelineParams params;
            params.algebra.q = popt.q;
            params.algebra.J = popt.J;
            params.algebra.N = popt.N;
            params.fourier_halfwidth = popt.M;
            params.witness_grid = popt.t_grid;
            params.tol = popt.tol;
            return finish_reports({experiments::run_theorem_pipeline(*model, params, popt.seed)},
                                  popt);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
