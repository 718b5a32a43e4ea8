#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vtwave/analysis.hpp"
#include "vtwave/solver.hpp"

namespace vtwave {

// Named grid resolutions. "high" is calibrated to the published domain
// dimensions rather than the rounded figure usually quoted alongside them.
struct Resolution {
    double ds = 0.0;
    std::string label;

    static Resolution low() { return {0.74e-3, "low"}; }
    static Resolution mid() { return {0.28e-3, "mid"}; }
    static Resolution high() { return {0.187e-3, "high"}; }
    static Resolution custom(double ds_m);
    // Accepts "low" | "mid" | "high" | "<mm>" (e.g. "0.5").
    static Resolution parse(const std::string& text);
};

struct ExperimentPlan {
    std::vector<std::string> vowels;
    std::vector<Resolution> resolutions = {Resolution::low()};
    std::vector<SolverKind> solvers = {SolverKind::TwoPointFiveD};
    Termination mode = Termination::OpenEnd;

    PhysicalConstants constants;
    double duration = 0.050;
    RadiationOptions radiation;

    std::filesystem::path area_dir;          // directory holding <vowel>.txt
    std::filesystem::path output_dir;        // trace/spectrum/report destination; empty = no files
    std::filesystem::path reference_file;    // "vowel f1 f2 f3" rows; empty = no error columns
    int workers = 1;
    bool write_audio = false;
    double audio_rate = 44100.0;
    int snapshot_every = 0;                  // steps between field snapshots; 0 = off
};

struct RunReport {
    std::string vowel;
    std::string resolution_label;
    double ds = 0.0;
    SolverKind solver = SolverKind::TwoPointFiveD;
    Termination mode = Termination::OpenEnd;

    bool ok = false;
    std::string error; // set when ok is false

    int domain_width = 0;
    int domain_height = 0;
    double wall_seconds = 0.0;
    FormantSet formants;
    // Percent deviations vs. the reference file, when one was given.
    std::optional<double> err1, err2, err3;

    std::filesystem::path trace_file; // empty when no output_dir was set
};

// Transfer-function experiment: every vowel at every resolution with both
// requested solvers, open-end termination.
std::vector<RunReport> run_step_a(const ExperimentPlan& plan);

// Resolution/cost sweep: like step A but reporting domain sizes and wall
// time per run (2.5D solver only unless the plan says otherwise).
std::vector<RunReport> run_step_b(const ExperimentPlan& plan);

// Radiation experiment: each vowel at low resolution with the head baffle
// and absorbing boundaries.
std::vector<RunReport> run_step_c(const ExperimentPlan& plan);

// Render one line per report plus a header; used by the CLI and handy in tests.
void print_report_table(const std::vector<RunReport>& reports, std::ostream& out);

// Write "key: value" formant report rows for one run.
void write_formant_report(const RunReport& report, const std::filesystem::path& file);

// True when every run succeeded.
bool all_ok(const std::vector<RunReport>& reports);

// Compare reports against a target table (vowel -> formants); returns the
// number of formant values deviating by more than tol_hz (reports that
// failed outright count as three misses each).
int count_check_failures(const std::vector<RunReport>& reports,
                         const std::map<std::string, FormantSet>& targets,
                         double tol_hz);

} // namespace vtwave
