// sweep.hpp — parameter-sweep runners behind the command-line surface:
// figure reproductions as CSV datasets, the random-state sampler, and the
// Fock-oracle cross-check harness. All runners are deterministic for a given
// config + seed; sweep points are dispatched to an OpenMP pool and written
// into preallocated slots so row order never depends on scheduling.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "catdyn/evolution.hpp"

namespace catdyn::cli {

using json = nlohmann::json;

// ------------------------------ dataset / CSV -------------------------------

struct FigureData {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// UTF-8, comma separated, header row, 17 significant digits.
std::string to_csv(const FigureData& data);

// ------------------------------ configuration -------------------------------

struct TimeGrid {
    double start = 0.0;
    double stop = 0.0;
    int points = 0;

    double at(int k) const {
        return start + (stop - start) * static_cast<double>(k) / (points - 1);
    }
};

TimeGrid parse_grid(const json& cfg, const char* key_prefix, double default_stop,
                    int default_points);

// Shared config fields; experiment-specific parameters stay in `raw`.
struct RunConfig {
    std::string experiment; // fig1|fig2|fig3|fig4|evolve|oracle-check
    std::uint64_t seed = 1;
    std::string out;
    json raw;
};

// Validates the top-level document. Throws ConfigError with field diagnostics.
RunConfig parse_config(const json& doc);

// ------------------------------ random states -------------------------------

// Fig-1 style draw: amplitudes real and symmetric with
// |alpha1-alpha2|^2 = |beta1-beta2|^2 = d_avg_sq, weights complex standard
// normal, Gram-normalized. Fully determined by the seed.
CatPairState sample_random_state(double d_avg_sq, std::uint64_t seed, double gamma_a = 1.0,
                                 double gamma_b = 1.0);

// Parses a state descriptor: {"kind": "x_family"|"cross_family"|
// "equal_weight"|"random"|"explicit", ...}.
CatPairState parse_state(const json& spec, std::uint64_t default_seed);

// ------------------------------- figure runs --------------------------------

// fig1: concurrence ratio of random draws vs t/tau.
//   columns: t_over_tau, ln_C_ratio, dead, d_sq, draw_index
// fig2: equal-weight-state negativity ratio vs t/tau.
//   columns: scaled_time, ln_lambda_ratio, dead, d_sq
// fig3: X-family negativity ratio vs r = t/t_d with the 1-r reference.
//   columns: r, lambda_ratio, one_minus_r, dead, d_sq
// fig4: bipartite concurrences of the modes+reservoirs system vs Gamma t.
//   columns: gamma_t, C_ab, C_rarb, C_ara, C_arb, C_brb, C_bra
// evolve: engine observables of an explicit state vs t.
//   columns: t, lambda_min, neg_sum, concurrence, purity
// Rows where the emitted ratio would be ln(0) carry dead = 1 and a 0 value.
FigureData run_figure(const RunConfig& config);

// --------------------------------- oracle -----------------------------------

struct OracleCheckpoint {
    double t = 0.0;
    double frobenius = 0.0;
    double negativity_dev = 0.0;
    double leakage = 0.0;
};

struct OracleStateReport {
    std::string label;
    int cutoff = 0;
    double step = 0.0;
    double trace_drift = 0.0;
    std::vector<OracleCheckpoint> checkpoints;
};

struct OracleReport {
    std::vector<OracleStateReport> states;
    double max_frobenius = 0.0;
    double max_negativity_dev = 0.0;
    double max_leakage = 0.0;
    double tol_frobenius = 1e-7;
    double tol_negativity = 1e-6;
    double tol_leakage = 1e-8;
    bool pass = false;

    json to_json() const;
};

OracleReport run_oracle_check(const RunConfig& config);

// ------------------------------ run metadata --------------------------------

// Sidecar describing how the dataset was produced (config echo, seed,
// amplitude placement convention).
json run_metadata(const RunConfig& config);

} // namespace catdyn::cli
