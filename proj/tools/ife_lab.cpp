#include <cstdio>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "ifelab/study.hpp"

using namespace ifelab;

int main(int argc, char** argv) {
    CLI::App app{"Nonconforming immersed finite element studies"};
    app.require_subcommand(1);

    CLI::App* study = app.add_subcommand("study", "Run a convergence study");
    StudyConfig cfg;
    std::string mesh = "rect", family = "rq1", partition = "curve", flux = "curve-mid";
    std::string mode = "interp";

    study->set_config("--config", "", "Key=value config file; flags override it");
    study->add_option("--mesh", mesh, "Cell type")
        ->check(CLI::IsMember({"tri", "rect"}))
        ->capture_default_str();
    study->add_option("--family", family, "Element family")
        ->check(CLI::IsMember({"cr", "rq1"}))
        ->capture_default_str();
    study->add_option("--partition", partition, "Subelement partition")
        ->check(CLI::IsMember({"curve", "line"}))
        ->capture_default_str();
    study->add_option("--flux", flux, "Flux point placement")
        ->check(CLI::IsMember({"curve-mid", "line-mid"}))
        ->capture_default_str();
    study->add_option("--beta-minus", cfg.beta_minus, "Coefficient inside the interface")
        ->capture_default_str();
    study->add_option("--beta-plus", cfg.beta_plus, "Coefficient outside the interface")
        ->capture_default_str();
    study->add_option("--levels", cfg.levels, "Number of refinement levels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    study->add_option("--n0", cfg.n0, "Cells per side at the coarsest level (h = 2/n0)")
        ->check(CLI::Range(2, 1 << 20))
        ->capture_default_str();
    study->add_option("--mode", mode, "interp, solve or both")
        ->check(CLI::IsMember({"interp", "solve", "both"}))
        ->capture_default_str();
    study->add_option("--out", cfg.out, "Output CSV path");
    study->add_option("--curve", cfg.curve, "Interface curve")->capture_default_str();
    study->add_option("--r0", cfg.r0, "Circle radius")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    cfg.mesh = mesh == "tri" ? CellType::Triangular : CellType::Rectangular;
    cfg.family = family == "cr" ? Family::CR : Family::RQ1;
    cfg.partition = partition == "line" ? PartitionMode::Line : PartitionMode::Curve;
    cfg.flux = flux == "line-mid" ? FluxMode::LineMidpoint : FluxMode::CurveMidpoint;
    cfg.mode = mode == "interp" ? StudyMode::Interp
               : mode == "solve" ? StudyMode::Solve
                                 : StudyMode::Both;

    try {
        StudyReport rep = run_study(cfg);
        std::printf("h,l2_error,l2_rate,h1_error,h1_rate\n");
        for (const StudyRow& r : rep.rows) {
            std::printf("%.5e,%.5e,", r.h, r.l2_error);
            if (r.l2_rate) std::printf("%.5e", *r.l2_rate);
            std::printf(",%.5e,", r.h1_error);
            if (r.h1_rate) std::printf("%.5e", *r.h1_rate);
            std::printf("\n");
        }
    } catch (const HypothesisViolation& e) {
        std::fprintf(stderr, "hypothesis violation: %s\n", e.what());
        return 2;
    } catch (const NoConvergence& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
