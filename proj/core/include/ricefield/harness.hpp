#ifndef RICEFIELD_HARNESS_HPP
#define RICEFIELD_HARNESS_HPP

#include "ricefield/domain.hpp"
#include "ricefield/spectral.hpp"
#include "ricefield/stats.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ricefield {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
    d1_crossings,
    d2_critical,
    disc_density_bound,
    tail_comparison,
    factorial_moment,
};

std::string to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(const std::string& s);

/// Everything a run needs, round-trippable through a key=value file.
/// The seed has no entropy default: a config without one is invalid.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::d1_crossings;
    std::string model = "gaussian2d"; // catalog name
    std::string model_table;          // or a CSV density table (overrides model)
    std::string domain = "disc";      // "disc" | "interval:T" | "rect:T1,T2"
    std::vector<double> u_grid;
    long n_samples = 100;
    int n_freq = 256;
    double grid_step = 0.05;
    long inner_mc = 20000;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string output_dir = "out";
    double tol_sigma = 3.0; // MC gate: |analytic - mc| <= max(tol_sigma*SE, tol_rel*|analytic|)
    double tol_rel = 0.05;

    void validate() const;           // throws ConfigError
    std::string canonical() const;   // normalized key=value text, sorted keys
    std::uint64_t hash() const;      // FNV-1a of canonical()

    SpectralModel resolve_model() const;
    Domain resolve_domain() const;
};

/// Parse "key = value" lines (# comments, blank lines allowed).
/// Unknown keys and malformed values are reported with their line number.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin = "<string>");

struct ReportRow {
    double u = 0.0;
    double analytic = 0.0;
    double analytic_se = 0.0; // nonzero when the analytic side is itself MC
    double mc = 0.0;
    double mc_se = 0.0;
    bool se_available = true;
    bool pass = false;
    std::string tolerance; // the gate this row was judged against
    // extra columns for the bound experiments
    double i1 = 0.0, i2 = 0.0, bound = 0.0, asymptotic = 0.0, psi = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::string config_hash; // hex
    std::vector<ReportRow> rows;
    std::string csv_path, json_path, manifest_path;

    bool all_pass() const;
};

/// Dispatch on config.kind, run the experiment, and write report.csv,
/// report.json and MANIFEST under config.output_dir.  Deterministic per
/// seed.  Statistical failures are flagged in rows, not thrown.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// |analytic - mc| <= max(tol_sigma * se, tol_rel * |analytic|)
bool statistical_pass(double analytic, double mc, double se,
                      double tol_sigma = 3.0, double tol_rel = 0.05);

struct MaxDistribution {
    std::vector<double> sup_values; // sorted ascending
    std::vector<DensityBin> bins;   // width 0.1 over the sample range

    double cdf(double u) const;
    double quantile(double p) const;
};

/// Replicated sup_on_domain: the empirical law of M_I.
MaxDistribution estimate_max_distribution(const SpectralModel& model,
                                          const Domain& domain, long n_samples,
                                          int n_freq, double grid_step,
                                          std::uint64_t seed);

} // namespace ricefield

#endif
