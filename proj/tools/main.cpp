// Command-line front end: vowel tract simulations, resolution sweeps, and
// radiation experiments over a directory of area-function files, plus
// single-run simulation and trace analysis.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vtwave/analysis.hpp"
#include "vtwave/errors.hpp"
#include "vtwave/experiments.hpp"
#include "vtwave/io.hpp"
#include "vtwave/solver.hpp"
#include "vtwave/wav.hpp"

namespace {

struct PlanOptions {
    std::vector<std::string> vowels = {"a", "e", "i", "o", "u"};
    std::vector<std::string> resolutions = {"low"};
    std::vector<std::string> solvers = {"2.5d"};
    std::string area_dir = "data/area_functions";
    std::string output_dir;
    std::string reference_file;
    std::string check_file;
    double check_tol_hz = 40.0;
    double duration_ms = 50.0;
    double rho = 1.14;
    double c = 350.0;
    double mu = 0.005;
    double baffle_diameter_m = 0.20;
    int pml_layers = 6;
    int workers = 1;
    bool write_audio = false;
    double audio_rate = 44100.0;
    int snapshot_every = 0;
};

vtwave::SolverKind parse_solver(const std::string& text) {
    if (text == "2d") return vtwave::SolverKind::TwoD;
    if (text == "2.5d") return vtwave::SolverKind::TwoPointFiveD;
    throw CLI::ValidationError("--solver", "expected 2d or 2.5d, got '" + text + "'");
}

vtwave::Termination parse_mode(const std::string& text) {
    if (text == "open") return vtwave::Termination::OpenEnd;
    if (text == "radiation") return vtwave::Termination::Radiation;
    throw CLI::ValidationError("--mode", "expected open or radiation, got '" + text + "'");
}

void add_plan_options(CLI::App* cmd, PlanOptions& o) {
    cmd->add_option("--vowel", o.vowels, "Vowels to run (area files <vowel>.txt)")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--resolution", o.resolutions,
                    "Grid resolutions: low, mid, high, or a spacing in mm")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--solver", o.solvers, "Solvers to run: 2d, 2.5d")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--area-dir", o.area_dir, "Directory with area-function files")
        ->capture_default_str();
    cmd->add_option("--out", o.output_dir, "Directory for traces, spectra and reports");
    cmd->add_option("--reference", o.reference_file,
                    "Reference formant table ('vowel f1 f2 f3') for error columns");
    cmd->add_option("--check", o.check_file,
                    "Target formant table; exit nonzero if any formant misses");
    cmd->add_option("--check-tol-hz", o.check_tol_hz, "Check tolerance in Hz")
        ->capture_default_str();
    cmd->add_option("--duration-ms", o.duration_ms, "Simulated time in milliseconds")
        ->capture_default_str();
    cmd->add_option("--rho", o.rho, "Air density, kg/m^3")->capture_default_str();
    cmd->add_option("--c", o.c, "Speed of sound, m/s")->capture_default_str();
    cmd->add_option("--mu", o.mu, "Wall admittance coefficient in (0,1)")
        ->capture_default_str();
    cmd->add_option("--baffle-diameter-m", o.baffle_diameter_m,
                    "Head baffle diameter (radiation mode)")
        ->capture_default_str();
    cmd->add_option("--pml-layers", o.pml_layers,
                    "Absorbing layers on each edge (radiation mode)")
        ->capture_default_str();
    cmd->add_option("--workers", o.workers, "Parallel simulation workers")
        ->capture_default_str();
    cmd->add_flag("--write-audio", o.write_audio, "Also export audible WAV files");
    cmd->add_option("--audio-rate", o.audio_rate, "WAV sample rate")->capture_default_str();
    cmd->add_option("--snapshot-every", o.snapshot_every,
                    "Write a field snapshot every N steps (0 = off)")
        ->capture_default_str();
}

vtwave::ExperimentPlan make_plan(const PlanOptions& o) {
    vtwave::ExperimentPlan plan;
    plan.vowels = o.vowels;
    plan.resolutions.clear();
    for (const auto& r : o.resolutions)
        plan.resolutions.push_back(vtwave::Resolution::parse(r));
    plan.solvers.clear();
    for (const auto& s : o.solvers) plan.solvers.push_back(parse_solver(s));
    plan.constants = {o.rho, o.c, o.mu};
    plan.duration = o.duration_ms * 1e-3;
    plan.radiation.baffle_diameter_m = o.baffle_diameter_m;
    plan.radiation.pml_layers = o.pml_layers;
    plan.area_dir = o.area_dir;
    plan.output_dir = o.output_dir;
    plan.reference_file = o.reference_file;
    plan.workers = o.workers;
    plan.write_audio = o.write_audio;
    plan.audio_rate = o.audio_rate;
    plan.snapshot_every = o.snapshot_every;
    return plan;
}

int finish(const std::vector<vtwave::RunReport>& reports, const PlanOptions& o) {
    vtwave::print_report_table(reports, std::cout);
    int rc = vtwave::all_ok(reports) ? 0 : 1;
    if (!o.check_file.empty()) {
        const auto targets = vtwave::read_reference_formants(o.check_file);
        const int misses = vtwave::count_check_failures(reports, targets, o.check_tol_hz);
        if (misses > 0) {
            std::cout << "check: " << misses << " formant value(s) off by more than "
                      << o.check_tol_hz << " Hz\n";
            rc = 1;
        } else {
            std::cout << "check: all formants within " << o.check_tol_hz << " Hz\n";
        }
    }
    return rc;
}

struct SimulateOptions {
    std::string area_file;
    std::string resolution = "low";
    std::string solver = "2.5d";
    std::string mode = "open";
    double duration_ms = 50.0;
    double rho = 1.14, c = 350.0, mu = 0.005;
    double baffle_diameter_m = 0.20;
    int pml_layers = 6;
    double probe_offset_mm = 0.0;
    std::string trace_out;
    std::string spectrum_out;
    std::string wav_out;
    double wav_rate = 44100.0;
};

int run_simulate(const SimulateOptions& o) {
    const vtwave::AreaFunction af = vtwave::load_area_function(o.area_file);

    vtwave::SimulationConfig cfg;
    cfg.constants = {o.rho, o.c, o.mu};
    cfg.ds = vtwave::Resolution::parse(o.resolution).ds;
    cfg.duration = o.duration_ms * 1e-3;
    cfg.mode = parse_mode(o.mode);
    cfg.solver = parse_solver(o.solver);
    cfg.radiation.baffle_diameter_m = o.baffle_diameter_m;
    cfg.radiation.pml_layers = o.pml_layers;
    cfg.probe_offset_m = o.probe_offset_mm * 1e-3;

    const double dt = vtwave::cfl_timestep(cfg.ds, cfg.constants.c);
    const auto steps = static_cast<std::size_t>(cfg.duration / dt);
    const auto ex =
        vtwave::make_band_passed_pulse(1.0 / dt, steps, 2.0, 20000.0, 0.01, 2000.0);

    const auto trace = vtwave::run_simulation(af, cfg, ex);
    if (!o.trace_out.empty()) vtwave::write_trace(trace, o.trace_out);
    if (!o.wav_out.empty()) vtwave::export_audio(trace, o.wav_rate, o.wav_out);

    const auto tf = vtwave::transfer_function(
        trace, &ex, vtwave::Normalization::ExcitationNormalized, 10000.0);
    if (!o.spectrum_out.empty()) vtwave::write_spectrum(tf, o.spectrum_out);

    const auto fs = vtwave::extract_formants(tf);
    std::printf("%s: F1 %.1f Hz  F2 %.1f Hz  F3 %.1f Hz\n", af.name.c_str(), fs.f1,
                fs.f2, fs.f3);
    return 0;
}

struct GeometryOptions {
    std::string area_file;
    std::string resolution = "low";
    std::string mode = "open";
    double baffle_diameter_m = 0.20;
    int pml_layers = 6;
    std::string dump_out;
};

int run_geometry(const GeometryOptions& o) {
    const auto af = vtwave::load_area_function(o.area_file);
    const double ds = vtwave::Resolution::parse(o.resolution).ds;
    const auto mode = parse_mode(o.mode);
    vtwave::RadiationOptions ropts;
    ropts.baffle_diameter_m = o.baffle_diameter_m;
    ropts.pml_layers = o.pml_layers;

    auto geo = vtwave::rasterize_tube(af, ds, mode);
    if (mode == vtwave::Termination::Radiation)
        geo = vtwave::add_radiation_domain(geo, af, ropts);
    geo = vtwave::sample_depths(af, geo);

    std::printf("%s: %d x %d cells at %.4g mm (%zu total)\n", af.name.c_str(),
                geo.width, geo.height, ds * 1e3, geo.cells());
    if (!o.dump_out.empty()) {
        std::ofstream out(o.dump_out);
        vtwave::dump_kinds(geo, out);
        std::printf("cell map written to %s\n", o.dump_out.c_str());
    }
    return 0;
}

struct AnalyzeOptions {
    std::string trace_file;
    std::string spectrum_out;
    double max_freq_hz = 10000.0;
};

int run_analyze(const AnalyzeOptions& o) {
    const auto trace = vtwave::read_trace(std::filesystem::path(o.trace_file));
    const auto tf = vtwave::transfer_function(trace, nullptr,
                                              vtwave::Normalization::RawSpectrum,
                                              o.max_freq_hz);
    if (!o.spectrum_out.empty()) vtwave::write_spectrum(tf, o.spectrum_out);
    const auto fs = vtwave::extract_formants(tf);
    std::printf("F1 %.1f Hz  F2 %.1f Hz  F3 %.1f Hz\n", fs.f1, fs.f2, fs.f3);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-difference vocal-tract acoustics"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI file");

    PlanOptions a, b, c;
    auto* step_a = app.add_subcommand(
        "step-a", "Transfer functions with an open-end mouth (2D and 2.5D)");
    add_plan_options(step_a, a);
    auto* step_b = app.add_subcommand(
        "step-b", "Resolution sweep: domain sizes, run times, formant drift");
    b.resolutions = {"low", "mid", "high"};
    add_plan_options(step_b, b);
    auto* step_c = app.add_subcommand(
        "step-c", "Radiation experiment: head baffle and absorbing boundaries");
    add_plan_options(step_c, c);

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Run a single simulation");
    simulate->add_option("--area-file", sim.area_file, "Area-function file")->required();
    simulate->add_option("--resolution", sim.resolution)->capture_default_str();
    simulate->add_option("--solver", sim.solver)->capture_default_str();
    simulate->add_option("--mode", sim.mode, "open or radiation")->capture_default_str();
    simulate->add_option("--duration-ms", sim.duration_ms)->capture_default_str();
    simulate->add_option("--rho", sim.rho)->capture_default_str();
    simulate->add_option("--c", sim.c)->capture_default_str();
    simulate->add_option("--mu", sim.mu)->capture_default_str();
    simulate->add_option("--baffle-diameter-m", sim.baffle_diameter_m)
        ->capture_default_str();
    simulate->add_option("--pml-layers", sim.pml_layers)->capture_default_str();
    simulate->add_option("--probe-offset-mm", sim.probe_offset_mm,
                         "Probe offset from the mouth plane (0 = mode default)")
        ->capture_default_str();
    simulate->add_option("--trace-out", sim.trace_out, "Write the pressure trace here");
    simulate->add_option("--spectrum-out", sim.spectrum_out, "Write the spectrum here");
    simulate->add_option("--wav-out", sim.wav_out, "Write audible audio here");
    simulate->add_option("--wav-rate", sim.wav_rate)->capture_default_str();

    GeometryOptions geo;
    auto* geometry =
        app.add_subcommand("geometry", "Report (and optionally dump) the cell grid");
    geometry->add_option("--area-file", geo.area_file)->required();
    geometry->add_option("--resolution", geo.resolution)->capture_default_str();
    geometry->add_option("--mode", geo.mode)->capture_default_str();
    geometry->add_option("--baffle-diameter-m", geo.baffle_diameter_m)
        ->capture_default_str();
    geometry->add_option("--pml-layers", geo.pml_layers)->capture_default_str();
    geometry->add_option("--dump-out", geo.dump_out, "Write the cell-kind map here");

    AnalyzeOptions an;
    auto* analyze =
        app.add_subcommand("analyze", "Formants of a stored trace (raw spectrum)");
    analyze->add_option("trace", an.trace_file, "Trace file")->required();
    analyze->add_option("--spectrum-out", an.spectrum_out);
    analyze->add_option("--max-freq-hz", an.max_freq_hz)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*step_a) return finish(vtwave::run_step_a(make_plan(a)), a);
        if (*step_b) return finish(vtwave::run_step_b(make_plan(b)), b);
        if (*step_c) return finish(vtwave::run_step_c(make_plan(c)), c);
        if (*simulate) return run_simulate(sim);
        if (*geometry) return run_geometry(geo);
        if (*analyze) return run_analyze(an);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
