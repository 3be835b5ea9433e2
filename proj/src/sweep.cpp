#include "catdyn/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "catdyn/closed_forms.hpp"
#include "catdyn/fock.hpp"
#include "catdyn/measures.hpp"
#include "catdyn/reservoir.hpp"
#include "catdyn/rng.hpp"

namespace catdyn::cli {

namespace {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double require_number(const json& cfg, const char* key) {
    if (!cfg.contains(key) || !cfg[key].is_number())
        throw ConfigError(std::string("config: missing or non-numeric field '") + key + "'");
    return cfg[key].get<double>();
}

double number_or(const json& cfg, const char* key, double fallback) {
    if (!cfg.contains(key)) return fallback;
    if (!cfg[key].is_number())
        throw ConfigError(std::string("config: field '") + key + "' must be a number");
    return cfg[key].get<double>();
}

std::vector<double> number_list_or(const json& cfg, const char* key,
                                   std::vector<double> fallback) {
    if (!cfg.contains(key)) return fallback;
    const json& v = cfg[key];
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array() || v.empty())
        throw ConfigError(std::string("config: field '") + key +
                          "' must be a number or non-empty array");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number())
            throw ConfigError(std::string("config: field '") + key + "' has a non-numeric entry");
        out.push_back(e.get<double>());
    }
    return out;
}

// Negative part of the partial-transpose minimum: the entanglement content of
// lambda_min (after sudden death the smallest eigenvalue is positive and no
// longer tracks the closed-form branch).
double lambda_entangled(const DensityMatrix4& rho) {
    return std::min(negativity(rho).lambda_min, 0.0);
}

cx parse_complex(const json& v, const char* key) {
    if (v.is_number()) return cx{v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return cx{v[0].get<double>(), v[1].get<double>()};
    throw ConfigError(std::string("config: field '") + key +
                      "' must be a number or [re, im] pair");
}

} // namespace

std::string to_csv(const FigureData& data) {
    std::string out;
    for (std::size_t k = 0; k < data.columns.size(); ++k) {
        if (k) out += ',';
        out += data.columns[k];
    }
    out += '\n';
    for (const auto& row : data.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out += ',';
            out += format_value(row[k]);
        }
        out += '\n';
    }
    return out;
}

TimeGrid parse_grid(const json& cfg, const char* key_prefix, double default_stop,
                    int default_points) {
    TimeGrid g;
    const std::string start_key = std::string(key_prefix) + "_start";
    const std::string stop_key = std::string(key_prefix) + "_stop";
    const std::string points_key = std::string(key_prefix) + "_points";
    g.start = number_or(cfg, start_key.c_str(), 0.0);
    g.stop = number_or(cfg, stop_key.c_str(), default_stop);
    const double pts = number_or(cfg, points_key.c_str(), default_points);
    g.points = static_cast<int>(pts);
    if (g.points < 2) throw ConfigError("config: grid needs at least 2 points");
    if (!(g.stop > g.start) || g.start < 0.0)
        throw ConfigError("config: grid requires stop > start >= 0");
    return g;
}

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config: document must be a JSON object");
    RunConfig cfg;
    cfg.raw = doc;
    if (doc.contains("experiment")) {
        if (!doc["experiment"].is_string())
            throw ConfigError("config: field 'experiment' must be a string");
        cfg.experiment = doc["experiment"].get<std::string>();
    }
    static const char* known[] = {"fig1", "fig2", "fig3", "fig4", "evolve", "oracle-check"};
    if (!cfg.experiment.empty() &&
        std::find(std::begin(known), std::end(known), cfg.experiment) == std::end(known))
        throw ConfigError("config: unknown experiment '" + cfg.experiment + "'");
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer())
            throw ConfigError("config: field 'seed' must be an integer");
        cfg.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("out")) {
        if (!doc["out"].is_string()) throw ConfigError("config: field 'out' must be a string");
        cfg.out = doc["out"].get<std::string>();
    }
    return cfg;
}

CatPairState sample_random_state(double d_avg_sq, std::uint64_t seed, double gamma_a,
                                 double gamma_b) {
    if (!(d_avg_sq > 0.0)) throw ConfigError("sample_random_state: d_avg_sq must be positive");
    const double a = 0.5 * std::sqrt(d_avg_sq);
    CatPairState st;
    st.alpha1 = Amplitude{a, 0.0};
    st.alpha2 = Amplitude{-a, 0.0};
    st.beta1 = Amplitude{a, 0.0};
    st.beta2 = Amplitude{-a, 0.0};
    st.gamma_a = gamma_a;
    st.gamma_b = gamma_b;
    GaussianRng rng(seed);
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            const double re = rng.normal();
            const double im = rng.normal();
            st.c[i][k] = cx{re, im};
        }
    return normalize_initial(st);
}

CatPairState parse_state(const json& spec, std::uint64_t default_seed) {
    if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string())
        throw ConfigError("state: descriptor must be an object with a 'kind' string");
    const std::string kind = spec["kind"].get<std::string>();
    const double gamma_a = number_or(spec, "gamma_a", number_or(spec, "gamma", 1.0));
    const double gamma_b = number_or(spec, "gamma_b", number_or(spec, "gamma", 1.0));

    if (kind == "x_family") {
        const double c_pp = require_number(spec, "c_pp");
        const double c_mm = number_or(spec, "c_mm", std::sqrt(std::max(0.0, 1.0 - c_pp * c_pp)));
        return x_family_state(
            make_x_family(c_pp, c_mm, require_number(spec, "d_eq_sq"), gamma_a));
    }
    if (kind == "cross_family") {
        return phi_family_state(require_number(spec, "c_pm"), require_number(spec, "c_mp"),
                                require_number(spec, "d_eq_sq"), gamma_a);
    }
    if (kind == "equal_weight") {
        return equal_weight_state(require_number(spec, "d_alpha_sq"),
                                  require_number(spec, "d_beta_sq"), gamma_a, gamma_b);
    }
    if (kind == "random") {
        const auto seed = spec.contains("seed") ? spec["seed"].get<std::uint64_t>() : default_seed;
        return sample_random_state(require_number(spec, "d_avg_sq"), seed, gamma_a, gamma_b);
    }
    if (kind == "explicit") {
        CatPairState st;
        for (const char* key : {"alpha1", "alpha2", "beta1", "beta2", "c"})
            if (!spec.contains(key))
                throw ConfigError(std::string("state: explicit kind requires field '") + key +
                                  "'");
        st.alpha1 = parse_complex(spec["alpha1"], "alpha1");
        st.alpha2 = parse_complex(spec["alpha2"], "alpha2");
        st.beta1 = parse_complex(spec["beta1"], "beta1");
        st.beta2 = parse_complex(spec["beta2"], "beta2");
        const json& c = spec["c"];
        if (!c.is_array() || c.size() != 2 || !c[0].is_array() || c[0].size() != 2 ||
            !c[1].is_array() || c[1].size() != 2)
            throw ConfigError("state: field 'c' must be a 2x2 array");
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) st.c[i][k] = parse_complex(c[i][k], "c");
        st.gamma_a = gamma_a;
        st.gamma_b = gamma_b;
        return normalize_initial(st);
    }
    throw ConfigError("state: unknown kind '" + kind + "'");
}

namespace {

FigureData run_fig1(const RunConfig& config) {
    const json& cfg = config.raw;
    const auto d_list = number_list_or(cfg, "d_sq", {0.75, 2.0, 5.0});
    const int draws = static_cast<int>(number_or(cfg, "draws", 3));
    if (draws < 1) throw ConfigError("config: 'draws' must be >= 1");
    const double gamma = number_or(cfg, "gamma", 1.0);
    const TimeGrid grid = parse_grid(cfg, "scaled_time", 4.0, 401);

    struct Draw {
        CatPairState state;
        double tau = 0.0;
        double c0 = 0.0;
        double d_sq = 0.0;
        int index = 0;
    };
    std::vector<Draw> set;
    for (std::size_t di = 0; di < d_list.size(); ++di)
        for (int dr = 0; dr < draws; ++dr) {
            Draw d;
            d.d_sq = d_list[di];
            d.index = dr;
            d.state = sample_random_state(d.d_sq, config.seed + 1000003ULL * di + dr, gamma,
                                          gamma);
            d.tau = characteristic_times(d.state).tau;
            d.c0 = concurrence(density_in_qubit_basis(d.state, 0.0));
            set.push_back(d);
        }

    FigureData out;
    out.columns = {"t_over_tau", "ln_C_ratio", "dead", "d_sq", "draw_index"};
    out.rows.assign(set.size() * grid.points, {});

#pragma omp parallel for schedule(dynamic, 8)
    for (long idx = 0; idx < static_cast<long>(out.rows.size()); ++idx) {
        const Draw& d = set[idx / grid.points];
        const int k = static_cast<int>(idx % grid.points);
        const double s = grid.at(k);
        const double t = s * d.tau;
        const double c = concurrence(density_in_qubit_basis(d.state, t));
        const bool dead = !(c > 0.0) || !(d.c0 > 0.0);
        out.rows[idx] = {s, dead ? 0.0 : std::log(c / d.c0), dead ? 1.0 : 0.0, d.d_sq,
                         static_cast<double>(d.index)};
    }
    return out;
}

FigureData run_fig2(const RunConfig& config) {
    const json& cfg = config.raw;
    const auto d_list = number_list_or(cfg, "d_sq", {0.5, 0.75, 1.5, 2.0, 5.0});
    const double gamma = number_or(cfg, "gamma", 1.0);
    const TimeGrid grid = parse_grid(cfg, "scaled_time", 4.0, 401);

    struct Curve {
        CatPairState state;
        double tau = 0.0;
        double lambda0 = 0.0;
        double d_sq = 0.0;
    };
    std::vector<Curve> set;
    for (double d : d_list) {
        Curve c;
        c.d_sq = d;
        c.state = equal_weight_state(d, d, gamma, gamma); // (d_a^2 + d_b^2)/2 = d
        c.tau = characteristic_times(c.state).tau;
        c.lambda0 = lambda_entangled(density_in_qubit_basis(c.state, 0.0));
        set.push_back(c);
    }

    FigureData out;
    out.columns = {"scaled_time", "ln_lambda_ratio", "dead", "d_sq"};
    out.rows.assign(set.size() * grid.points, {});

#pragma omp parallel for schedule(dynamic, 8)
    for (long idx = 0; idx < static_cast<long>(out.rows.size()); ++idx) {
        const Curve& c = set[idx / grid.points];
        const int k = static_cast<int>(idx % grid.points);
        const double s = grid.at(k);
        const double lam = lambda_entangled(density_in_qubit_basis(c.state, s * c.tau));
        const double ratio = c.lambda0 < 0.0 ? lam / c.lambda0 : 0.0;
        const bool dead = !(ratio > 0.0);
        out.rows[idx] = {s, dead ? 0.0 : std::log(ratio), dead ? 1.0 : 0.0, c.d_sq};
    }
    return out;
}

FigureData run_fig3(const RunConfig& config) {
    const json& cfg = config.raw;
    const auto d_list = number_list_or(cfg, "d_sq", {0.5, 2.0, 7.5});
    const double ratio_mm_pp = number_or(cfg, "weight_ratio", std::sqrt(2.0));
    const double gamma = number_or(cfg, "gamma", 1.0);
    const TimeGrid grid = parse_grid(cfg, "r", 1.2, 601);

    struct Curve {
        CatPairState state;
        double t_death = 0.0;
        double lambda0 = 0.0;
        double d_sq = 0.0;
    };
    std::vector<Curve> set;
    for (double d : d_list) {
        const XFamilyParams params = make_x_family(1.0, ratio_mm_pp, d, gamma);
        const auto death = t_disentangle_1(params);
        if (!death.time)
            throw ConfigError("fig3: weight ratio gives no finite disentanglement time");
        Curve c;
        c.d_sq = d;
        c.state = x_family_state(params);
        c.t_death = *death.time;
        c.lambda0 = lambda_entangled(density_in_qubit_basis(c.state, 0.0));
        set.push_back(c);
    }

    FigureData out;
    out.columns = {"r", "lambda_ratio", "one_minus_r", "dead", "d_sq"};
    out.rows.assign(set.size() * grid.points, {});

#pragma omp parallel for schedule(dynamic, 8)
    for (long idx = 0; idx < static_cast<long>(out.rows.size()); ++idx) {
        const Curve& c = set[idx / grid.points];
        const int k = static_cast<int>(idx % grid.points);
        const double r = grid.at(k);
        const double lam = lambda_entangled(density_in_qubit_basis(c.state, r * c.t_death));
        const double ratio = c.lambda0 < 0.0 ? lam / c.lambda0 : 0.0;
        out.rows[idx] = {r, ratio, 1.0 - r, ratio > 0.0 ? 0.0 : 1.0, c.d_sq};
    }
    return out;
}

FigureData run_fig4(const RunConfig& config) {
    const json& cfg = config.raw;
    const double d_sq = number_or(cfg, "d_sq", 16.0);
    const double c_pp = number_or(cfg, "c_pp", 0.4);
    const double c_mm = number_or(cfg, "c_mm", std::sqrt(std::max(0.0, 1.0 - c_pp * c_pp)));
    const double gamma = number_or(cfg, "gamma", 1.0);
    const TimeGrid grid = parse_grid(cfg, "gamma_t", 3.0, 601);

    const ReservoirParams params =
        make_reservoir_params(d_sq / 4.0, d_sq / 4.0, gamma, c_pp, c_mm);

    FigureData out;
    out.columns = {"gamma_t", "C_ab", "C_rarb", "C_ara", "C_arb", "C_brb", "C_bra"};
    out.rows.assign(grid.points, {});

#pragma omp parallel for schedule(dynamic, 8)
    for (long k = 0; k < grid.points; ++k) {
        const double t = grid.at(static_cast<int>(k)) / gamma; // grid is in Gamma t units
        const BipartiteConcurrences c = bipartite_concurrences(params, t);
        out.rows[k] = {grid.at(static_cast<int>(k)), c.ab, c.rarb, c.ara, c.arb, c.brb, c.bra};
    }
    return out;
}

FigureData run_evolve(const RunConfig& config) {
    const json& cfg = config.raw;
    if (!cfg.contains("state")) throw ConfigError("evolve: missing 'state' descriptor");
    const CatPairState state = parse_state(cfg["state"], config.seed);
    const TimeGrid grid = parse_grid(cfg, "t", 5.0, 201);

    FigureData out;
    out.columns = {"t", "lambda_min", "neg_sum", "concurrence", "purity"};
    out.rows.assign(grid.points, {});

#pragma omp parallel for schedule(dynamic, 8)
    for (long k = 0; k < grid.points; ++k) {
        const DensityMatrix4 rho = density_in_qubit_basis(state, grid.at(static_cast<int>(k)));
        const NegativityResult neg = negativity(rho);
        out.rows[k] = {grid.at(static_cast<int>(k)), neg.lambda_min, neg.neg_sum,
                       concurrence(rho), purity(rho)};
    }
    return out;
}

} // namespace

FigureData run_figure(const RunConfig& config) {
    if (config.experiment == "fig1") return run_fig1(config);
    if (config.experiment == "fig2") return run_fig2(config);
    if (config.experiment == "fig3") return run_fig3(config);
    if (config.experiment == "fig4") return run_fig4(config);
    if (config.experiment == "evolve") return run_evolve(config);
    throw ConfigError("run_figure: experiment '" + config.experiment + "' is not a figure");
}

OracleReport run_oracle_check(const RunConfig& config) {
    const json& cfg = config.raw;
    OracleReport report;
    report.tol_frobenius = number_or(cfg, "tol_frobenius", 1e-7);
    report.tol_negativity = number_or(cfg, "tol_negativity", 1e-6);
    report.tol_leakage = number_or(cfg, "tol_leakage", 1e-8);

    std::vector<json> state_specs;
    if (cfg.contains("states")) {
        if (!cfg["states"].is_array() || cfg["states"].empty())
            throw ConfigError("oracle-check: 'states' must be a non-empty array");
        for (const auto& s : cfg["states"]) state_specs.push_back(s);
    } else {
        state_specs.push_back(json{{"kind", "x_family"}, {"c_pp", 0.4}, {"d_eq_sq", 2.0}});
    }

    std::vector<double> checkpoints = number_list_or(cfg, "t_checkpoints", {0.5, 1.5, 3.0});
    std::sort(checkpoints.begin(), checkpoints.end());
    if (checkpoints.front() < 0.0)
        throw ConfigError("oracle-check: checkpoints must be non-negative");

    for (std::size_t si = 0; si < state_specs.size(); ++si) {
        const CatPairState state = parse_state(state_specs[si], config.seed + si);
        const double max_amp =
            std::max(std::max(std::abs(state.alpha1), std::abs(state.alpha2)),
                     std::max(std::abs(state.beta1), std::abs(state.beta2)));
        if (max_amp > 2.0)
            throw ConfigError("oracle-check: |amplitudes| must be <= 2 for a tractable cutoff");

        OracleStateReport sr;
        sr.label = state_specs[si].contains("kind")
                       ? state_specs[si]["kind"].get<std::string>() + " #" + std::to_string(si)
                       : "state #" + std::to_string(si);
        // Cutoff: per-state override, then the run-level one, then the tail
        // rule. Explicit requests pass through; coherent_fock_vector rejects
        // ones whose truncation tail is too large.
        const double run_cutoff = number_or(cfg, "cutoff", fock::choose_cutoff(max_amp));
        sr.cutoff = static_cast<int>(number_or(state_specs[si], "cutoff", run_cutoff));
        const fock::FockSpace space{sr.cutoff, sr.cutoff};
        double default_step = fock::max_stable_step(space, state.gamma_a, state.gamma_b);
        if (!std::isfinite(default_step))
            default_step = std::max(checkpoints.back(), 1.0); // lossless run, any step works
        sr.step = number_or(cfg, "step", default_step);

        fock::FockDensity rho0 = fock::initial_density(state, space);
        const auto snapshots =
            fock::integrate_grid(rho0, state.gamma_a, state.gamma_b, checkpoints, sr.step);

        for (std::size_t k = 0; k < checkpoints.size(); ++k) {
            const double t = checkpoints[k];
            const CoefficientTensor tensor = evolve_coefficients(state, t);
            const DensityMatrix4 engine = density_in_qubit_basis(tensor);
            const auto proj = fock::project_to_qubit_basis(snapshots[k], *engine.basis_a,
                                                           *engine.basis_b,
                                                           report.tol_leakage);
            OracleCheckpoint cp;
            cp.t = t;
            cp.frobenius = frobenius_distance(engine.mat, proj.rho4.mat);
            cp.negativity_dev =
                std::abs(negativity(engine).lambda_min - negativity(proj.rho4).lambda_min);
            cp.leakage = proj.leakage;
            sr.trace_drift =
                std::max(sr.trace_drift, std::abs(1.0 - fock::trace(snapshots[k])));
            sr.checkpoints.push_back(cp);

            report.max_frobenius = std::max(report.max_frobenius, cp.frobenius);
            report.max_negativity_dev = std::max(report.max_negativity_dev, cp.negativity_dev);
            report.max_leakage = std::max(report.max_leakage, cp.leakage);
        }
        report.states.push_back(std::move(sr));
    }

    report.pass = report.max_frobenius < report.tol_frobenius &&
                  report.max_negativity_dev < report.tol_negativity &&
                  report.max_leakage < report.tol_leakage;
    return report;
}

json OracleReport::to_json() const {
    json j;
    j["pass"] = pass;
    j["max_frobenius"] = max_frobenius;
    j["max_negativity_dev"] = max_negativity_dev;
    j["max_leakage"] = max_leakage;
    j["tolerances"] = {{"frobenius", tol_frobenius},
                       {"negativity", tol_negativity},
                       {"leakage", tol_leakage}};
    j["states"] = json::array();
    for (const auto& s : states) {
        json js;
        js["label"] = s.label;
        js["cutoff"] = s.cutoff;
        js["step"] = s.step;
        js["trace_drift"] = s.trace_drift;
        js["checkpoints"] = json::array();
        for (const auto& c : s.checkpoints)
            js["checkpoints"].push_back({{"t", c.t},
                                         {"frobenius", c.frobenius},
                                         {"negativity_dev", c.negativity_dev},
                                         {"leakage", c.leakage}});
        j["states"].push_back(std::move(js));
    }
    return j;
}

json run_metadata(const RunConfig& config) {
    json j;
    j["experiment"] = config.experiment;
    j["seed"] = config.seed;
    j["amplitude_placement"] = "symmetric-real";
    j["config"] = config.raw;
    if (config.experiment == "fig2") {
        // The equal-weight closed form is derived for d^2 >> 1; mark the
        // curves where it is only qualitative (the CSV itself is engine data).
        json flagged = json::array();
        for (double d : number_list_or(config.raw, "d_sq", {0.5, 0.75, 1.5, 2.0, 5.0}))
            if (d < 4.0) flagged.push_back(d);
        j["equal_weight_closed_form_approximate_for_d_sq"] = flagged;
    }
    return j;
}

} // namespace catdyn::cli
