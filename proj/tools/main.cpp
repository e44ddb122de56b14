// helion: probe-state optimization and error-bound toolkit for two-hypothesis
// scattering discrimination.  Subcommands: synth, spectrum, bounds, trials,
// sweep, acquire.  All outputs are deterministic for a fixed config.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "helion/acquire.hpp"
#include "helion/bounds.hpp"
#include "helion/cmx_io.hpp"
#include "helion/discrim.hpp"
#include "helion/errors.hpp"
#include "helion/pair_store.hpp"
#include "helion/receiver.hpp"
#include "helion/rng.hpp"
#include "helion/scatter.hpp"

namespace {

using helion::ValidationError;
using json = nlohmann::json;
namespace fs = std::filesystem;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Config plumbing.  Run configs are single JSON objects, fail-closed: keys
// outside the declared set are rejected so a typo cannot silently change a
// run's meaning.

json load_config(const fs::path& path) {
    const std::string text = helion::read_bytes(path);
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError("config " + path.string() + ": " + e.what());
    }
}

void check_keys(const json& cfg, const std::set<std::string>& required,
                const std::set<std::string>& optional, const std::string& where) {
    if (!cfg.is_object()) throw ValidationError(where + ": config must be a JSON object");
    for (const auto& item : cfg.items()) {
        if (!required.count(item.key()) && !optional.count(item.key())) {
            throw ValidationError(where + ": unknown key '" + item.key() + "'");
        }
    }
    for (const auto& key : required) {
        if (!cfg.contains(key)) throw ValidationError(where + ": missing key '" + key + "'");
    }
}

template <typename T>
T get_as(const json& cfg, const std::string& key, const std::string& where) {
    try {
        return cfg.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(where + ": key '" + key + "': " + e.what());
    }
}

template <typename T>
T get_or(const json& cfg, const std::string& key, const std::string& where, T fallback) {
    if (!cfg.contains(key)) return fallback;
    return get_as<T>(cfg, key, where);
}

helion::Priors priors_from(const json& cfg, const std::string& where) {
    if (!cfg.contains("priors")) return helion::Priors::equal();
    const auto values = get_as<std::vector<double>>(cfg, "priors", where);
    if (values.size() != 2) throw ValidationError(where + ": priors must be [pi1, pi2]");
    return helion::Priors(values[0], values[1]);
}

helion::MeanStrategy mean_strategy_from(const json& cfg, const std::string& where) {
    const auto name = get_or<std::string>(cfg, "mean_strategy", where, "oracle_means");
    if (name == "oracle_means") return helion::MeanStrategy::oracle_means;
    if (name == "empirical_sum_mean") return helion::MeanStrategy::empirical_sum_mean;
    throw ValidationError(where + ": unknown mean_strategy '" + name + "'");
}

// Photon grid: either an explicit "photon_grid" array or a "photon_span"
// object {"from", "to", "points", "spacing": "linear"|"log"}.
std::vector<double> photon_grid_from(const json& cfg, const std::string& where) {
    const bool has_grid = cfg.contains("photon_grid");
    const bool has_span = cfg.contains("photon_span");
    if (has_grid == has_span) {
        throw ValidationError(where + ": provide exactly one of photon_grid, photon_span");
    }
    std::vector<double> grid;
    if (has_grid) {
        grid = get_as<std::vector<double>>(cfg, "photon_grid", where);
    } else {
        const json& span = cfg.at("photon_span");
        check_keys(span, {"from", "to", "points"}, {"spacing"}, where + ".photon_span");
        const double from = get_as<double>(span, "from", where);
        const double to = get_as<double>(span, "to", where);
        const auto points = get_as<std::size_t>(span, "points", where);
        const auto spacing = get_or<std::string>(span, "spacing", where, "linear");
        if (points < 2) throw ValidationError(where + ": photon_span.points must be >= 2");
        if (spacing == "log") {
            if (!(from > 0.0) || !(to > 0.0)) {
                throw ValidationError(where + ": log spacing needs positive endpoints");
            }
            const double ratio = std::log(to / from) / static_cast<double>(points - 1);
            for (std::size_t i = 0; i < points; ++i) {
                grid.push_back(from * std::exp(ratio * static_cast<double>(i)));
            }
        } else if (spacing == "linear") {
            const double step = (to - from) / static_cast<double>(points - 1);
            for (std::size_t i = 0; i < points; ++i) {
                grid.push_back(from + step * static_cast<double>(i));
            }
        } else {
            throw ValidationError(where + ": unknown spacing '" + spacing + "'");
        }
    }
    if (grid.empty()) throw ValidationError(where + ": photon grid is empty");
    for (double n : grid) {
        if (!(n >= 0.0) || !std::isfinite(n)) {
            throw ValidationError(where + ": photon grid entries must be finite and >= 0");
        }
    }
    return grid;
}

// ---------------------------------------------------------------------------
// Output plumbing.  Tables render as schema-versioned CSV (doubles printed
// with %.17g) or as an equivalent JSON document; both byte-deterministic.

struct Table {
    std::string schema;
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
};

std::string cell_to_csv(const json& cell) {
    if (cell.is_number_float()) return fmt_double(cell.get<double>());
    if (cell.is_string()) return cell.get<std::string>();
    return cell.dump();
}

void write_table(const fs::path& dir, const std::string& name, const Table& table,
                 const std::string& format) {
    if (format == "json") {
        json doc{{"schema", table.schema}, {"columns", table.columns}, {"rows", table.rows}};
        helion::write_bytes_atomic(dir / (name + ".json"), doc.dump(2) + "\n");
        return;
    }
    std::string out = "# " + table.schema + "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += cell_to_csv(row[c]);
        }
        out += '\n';
    }
    helion::write_bytes_atomic(dir / (name + ".csv"), out);
}

fs::path ensure_out_dir(const std::string& out) {
    fs::path dir(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw helion::IoError("cannot create output directory: " + dir.string());
    return dir;
}

void write_run_meta(const fs::path& dir, const std::string& command, const json& effective) {
    json meta{{"schema", "helion.run-meta.v1"},
              {"command", command},
              {"config", effective},
              {"generator", std::string(helion::kGeneratorId)}};
    helion::write_bytes_atomic(dir / "run_meta.json", meta.dump(2) + "\n");
}

Table spectrum_table(const helion::DiscriminationSpectrum& spec) {
    Table table;
    table.schema = "helion.spectrum.v1";
    table.columns = {"index", "eigenvalue", "eigenvalue_over_mean"};
    const bool mean_defined = spec.mean_eigenvalue > 1e-12;
    for (std::size_t j = 0; j < spec.eigenvalues.size(); ++j) {
        json ratio;
        if (mean_defined) {
            ratio = spec.eigenvalues[j] / spec.mean_eigenvalue;
        } else {
            ratio = "undefined";
        }
        table.rows.push_back({j, spec.eigenvalues[j], ratio});
    }
    return table;
}

helion::ComplexMatrix state_as_column(const helion::ComplexVector& amplitudes) {
    helion::ComplexMatrix m(amplitudes.size(), 1);
    for (std::size_t r = 0; r < amplitudes.size(); ++r) m(r, 0) = amplitudes[r];
    return m;
}

helion::ProbeState state_by_name(const std::string& name,
                                 const helion::DiscriminationSpectrum& spec, double photons) {
    if (name == "optimal") return helion::optimal_state(spec, photons);
    if (name == "average") return helion::average_state(spec, photons);
    throw ValidationError("unknown state '" + name + "' (expected optimal or average)");
}

// Per-row trial seeds: splitmix-derived from the base seed and the row index,
// the same keying the Rng uses for substreams.
std::uint64_t row_seed(std::uint64_t base, std::uint64_t row) {
    return helion::detail::avalanche64(helion::detail::avalanche64(base) + row);
}

// ---------------------------------------------------------------------------
// Subcommands.

struct GlobalArgs {
    std::string config;
    std::string pair;
    std::string out;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
};

int cmd_synth(const GlobalArgs& args) {
    json cfg = load_config(args.config);
    if (args.seed) cfg["seed"] = *args.seed;
    const helion::SystemConfig config = helion::system_config_from_json(cfg);
    const helion::ScatteringPair pair = helion::gen_system(config);
    const fs::path dir = ensure_out_dir(args.out);
    helion::save_pair(dir, pair);
    std::cout << "shape=" << pair.s1.rows() << "x" << pair.s1.cols() << "\n"
              << "plane=" << pair.a.rows() << "\n"
              << "sigma_max=" << fmt_double(pair.sigma_max) << "\n"
              << "unitary=" << (pair.unitary ? "true" : "false") << "\n"
              << "out=" << dir.string() << "\n";
    return 0;
}

int cmd_spectrum(const GlobalArgs& args, bool save_eigenstates) {
    const helion::ScatteringPair pair = helion::load_pair(args.pair);
    const auto spec = helion::spectrum(helion::build_discrimination_operator(pair));
    const fs::path dir = ensure_out_dir(args.out);

    write_table(dir, "spectrum", spectrum_table(spec), args.format);
    helion::write_cmx(dir / "optimal_state.cmx",
                      state_as_column(helion::optimal_state(spec, 0.0).amplitudes));
    helion::write_cmx(dir / "average_state.cmx",
                      state_as_column(helion::average_state(spec, 0.0).amplitudes));
    if (save_eigenstates) helion::write_cmx(dir / "eigenstates.cmx", spec.eigenstates);

    json echo{{"pair_dir", args.pair},
              {"pair_config", helion::system_config_to_json(pair.config)},
              {"save_eigenstates", save_eigenstates},
              {"format", args.format}};
    write_run_meta(dir, "spectrum", echo);

    std::cout << "lambda1=" << fmt_double(spec.eigenvalues.empty() ? 0.0 : spec.eigenvalues[0])
              << "\n"
              << "mean_eigenvalue=" << fmt_double(spec.mean_eigenvalue) << "\n";
    if (spec.mean_eigenvalue > 1e-12) {
        std::cout << "lambda1_over_mean=" << fmt_double(spec.eigenvalues[0] / spec.mean_eigenvalue)
                  << "\n";
    } else {
        std::cout << "lambda1_over_mean=undefined\n";
    }
    std::cout << "out=" << dir.string() << "\n";
    return 0;
}

int cmd_bounds(const GlobalArgs& args) {
    const json cfg = load_config(args.config);
    const std::string where = "bounds config";
    check_keys(cfg, {"d12sq"}, {"sigma_sq", "priors", "n_rep", "photon_grid", "photon_span"},
               where);
    const double d12sq = get_as<double>(cfg, "d12sq", where);
    const double sigma_sq = get_or<double>(cfg, "sigma_sq", where, helion::kDefaultSigmaSq);
    const helion::Priors priors = priors_from(cfg, where);
    const auto n_rep = get_or<std::size_t>(cfg, "n_rep", where, 4000);
    const std::vector<double> grid = photon_grid_from(cfg, where);

    Table table;
    table.schema = "helion.bounds.v1";
    table.columns = {"n", "d12sq", "p_h", "p_g", "ci_lo", "ci_hi"};
    for (double n : grid) {
        const double p_h = helion::helstrom_bound(n, d12sq, priors);
        const double p_g = helion::gaussian_receiver_error(n, d12sq, sigma_sq, priors);
        const auto ci = helion::binomial_ci(p_g, n_rep);
        table.rows.push_back({n, d12sq, p_h, p_g, ci.lo, ci.hi});
    }

    const fs::path dir = ensure_out_dir(args.out);
    write_table(dir, "bounds", table, args.format);
    json echo = cfg;
    write_run_meta(dir, "bounds", echo);
    std::cout << "rows=" << table.rows.size() << "\n" << "out=" << dir.string() << "\n";
    return 0;
}

int cmd_trials(const GlobalArgs& args) {
    json cfg = load_config(args.config);
    const std::string where = "trials config";
    check_keys(cfg, {"state", "photons", "seed"},
               {"priors", "sigma_sq", "n_rep", "mean_strategy", "fixed_split", "leave_one_out"},
               where);
    if (args.seed) cfg["seed"] = *args.seed;

    const auto state_name = get_as<std::string>(cfg, "state", where);
    const double photons = get_as<double>(cfg, "photons", where);
    const double sigma_sq = get_or<double>(cfg, "sigma_sq", where, helion::kDefaultSigmaSq);
    const helion::Priors priors = priors_from(cfg, where);
    const auto n_rep = get_or<std::size_t>(cfg, "n_rep", where, 4000);
    const auto seed = get_as<std::uint64_t>(cfg, "seed", where);
    helion::TrialOptions options;
    options.mean_strategy = mean_strategy_from(cfg, where);
    options.fixed_split = get_or<bool>(cfg, "fixed_split", where, false);
    options.leave_one_out = get_or<bool>(cfg, "leave_one_out", where, false);

    const helion::ScatteringPair pair = helion::load_pair(args.pair);
    const auto spec = helion::spectrum(helion::build_discrimination_operator(pair));
    const helion::ProbeState state = state_by_name(state_name, spec, photons);
    const double d12sq = helion::statistical_distance(pair, state);

    const auto batch =
        helion::run_trials(pair, state, priors, sigma_sq, n_rep, options, seed);
    const double p_g = helion::gaussian_receiver_error(photons, d12sq, sigma_sq, priors);
    const double p_h = helion::helstrom_bound(photons, d12sq, priors);

    Table table;
    table.schema = "helion.trials.v1";
    table.columns = {"trial", "truth", "llr", "decision"};
    for (std::size_t t = 0; t < batch.n_rep; ++t) {
        table.rows.push_back({t, batch.truths[t], batch.llr[t], batch.decisions[t]});
    }

    const fs::path dir = ensure_out_dir(args.out);
    write_table(dir, "batch", table, args.format);
    json summary{{"schema", "helion.trial-summary.v1"},
                 {"error_rate", batch.error_rate},
                 {"ci_lo", batch.ci.lo},
                 {"ci_hi", batch.ci.hi},
                 {"n_rep", batch.n_rep},
                 {"d12sq", d12sq},
                 {"p_g_predicted", p_g},
                 {"p_h_predicted", p_h},
                 {"pair_dir", args.pair},
                 {"config", cfg}};
    helion::write_bytes_atomic(dir / "summary.json", summary.dump(2) + "\n");
    write_run_meta(dir, "trials", cfg);

    std::cout << "d12sq=" << fmt_double(d12sq) << "\n"
              << "p_g=" << fmt_double(p_g) << "\n"
              << "error_rate=" << fmt_double(batch.error_rate) << "\n"
              << "ci_lo=" << fmt_double(batch.ci.lo) << "\n"
              << "ci_hi=" << fmt_double(batch.ci.hi) << "\n"
              << "out=" << dir.string() << "\n";
    return 0;
}

int cmd_sweep(const GlobalArgs& args) {
    json cfg = load_config(args.config);
    const std::string where = "sweep config";
    check_keys(cfg, {"states", "seed"},
               {"priors", "sigma_sq", "n_rep", "mean_strategy", "fixed_split", "photon_grid",
                "photon_span"},
               where);
    if (args.seed) cfg["seed"] = *args.seed;

    std::vector<std::string> states;
    if (cfg.at("states").is_string()) {
        states.push_back(get_as<std::string>(cfg, "states", where));
    } else {
        states = get_as<std::vector<std::string>>(cfg, "states", where);
    }
    if (states.empty()) throw ValidationError(where + ": states must be nonempty");
    const double sigma_sq = get_or<double>(cfg, "sigma_sq", where, helion::kDefaultSigmaSq);
    const helion::Priors priors = priors_from(cfg, where);
    const auto n_rep = get_or<std::size_t>(cfg, "n_rep", where, 4000);
    const auto seed = get_as<std::uint64_t>(cfg, "seed", where);
    const std::vector<double> grid = photon_grid_from(cfg, where);
    helion::TrialOptions options;
    options.mean_strategy = mean_strategy_from(cfg, where);
    options.fixed_split = get_or<bool>(cfg, "fixed_split", where, false);

    const helion::ScatteringPair pair = helion::load_pair(args.pair);
    const auto spec = helion::spectrum(helion::build_discrimination_operator(pair));

    Table table;
    table.schema = "helion.sweep.v1";
    table.columns = {"state", "n", "d12sq", "p_h", "p_g", "error_rate", "ci_lo", "ci_hi"};
    std::uint64_t row = 0;
    for (const auto& state_name : states) {
        for (double n : grid) {
            const helion::ProbeState state = state_by_name(state_name, spec, n);
            const double d12sq = helion::statistical_distance(pair, state);
            const double p_h = helion::helstrom_bound(n, d12sq, priors);
            const double p_g = helion::gaussian_receiver_error(n, d12sq, sigma_sq, priors);
            const auto batch = helion::run_trials(pair, state, priors, sigma_sq, n_rep, options,
                                                  row_seed(seed, row));
            table.rows.push_back(
                {state_name, n, d12sq, p_h, p_g, batch.error_rate, batch.ci.lo, batch.ci.hi});
            ++row;
        }
    }

    const fs::path dir = ensure_out_dir(args.out);
    write_table(dir, "sweep", table, args.format);
    write_run_meta(dir, "sweep", cfg);
    std::cout << "rows=" << table.rows.size() << "\n" << "out=" << dir.string() << "\n";
    return 0;
}

int cmd_acquire(const GlobalArgs& args) {
    json cfg = load_config(args.config);
    const std::string where = "acquire config";
    check_keys(cfg, {"n0_per_column", "seed"}, {"probe_basis", "sigma_sq", "phase_jitter_sd"},
               where);
    if (args.seed) cfg["seed"] = *args.seed;

    helion::AcquisitionConfig acq;
    acq.n0_per_column = get_as<double>(cfg, "n0_per_column", where);
    acq.sigma_sq = get_or<double>(cfg, "sigma_sq", where, helion::kDefaultSigmaSq);
    acq.seed = get_as<std::uint64_t>(cfg, "seed", where);
    acq.phase_jitter_sd = get_or<double>(cfg, "phase_jitter_sd", where, 0.0);
    const auto basis = get_or<std::string>(cfg, "probe_basis", where, "canonical");
    if (basis == "canonical") {
        acq.probe_basis = helion::ProbeBasis::canonical;
    } else if (basis == "plane_wave_like") {
        acq.probe_basis = helion::ProbeBasis::plane_wave_like;
    } else {
        throw ValidationError(where + ": unknown probe_basis '" + basis + "'");
    }
    acq.validate();

    const helion::ScatteringPair pair = helion::load_pair(args.pair);
    const auto predicted = helion::spectrum(helion::build_discrimination_operator(pair));
    if (!(predicted.eigenvalues[0] > 0.0)) {
        throw ValidationError("acquire: pair has zero discrimination power (s1 = s2)");
    }

    const helion::ComplexMatrix m1 = helion::measure_matrix(pair, 1, acq);
    const helion::ComplexMatrix m2 = helion::measure_matrix(pair, 2, acq);
    const helion::ComplexMatrix d_measured = helion::build_discrimination_operator(m1, m2);
    const auto measured = helion::spectrum(d_measured);

    const fs::path dir = ensure_out_dir(args.out);
    helion::write_cmx(dir / "m1.cmx", m1);
    helion::write_cmx(dir / "m2.cmx", m2);
    write_table(dir, "spectrum_measured", spectrum_table(measured), args.format);

    // Fidelity of the predicted states against the noisy acquisition: compare
    // difference fields (s2-s1)v and (m2-m1)v, whose norm-squared ratio is
    // the per-state eta_d.
    const helion::ComplexMatrix delta_true = helion::subtract(pair.s2, pair.s1);
    const helion::ComplexMatrix delta_meas = helion::subtract(m2, m1);
    json metrics{{"schema", "helion.acquire-metrics.v1"},
                 {"lambda1_predicted", predicted.eigenvalues[0]},
                 {"lambda1_measured", measured.eigenvalues[0]}};
    for (const char* name : {"optimal", "average"}) {
        const helion::ProbeState state = state_by_name(name, predicted, 0.0);
        const auto field_true = helion::matvec(delta_true, state.amplitudes);
        const auto field_meas = helion::matvec(delta_meas, state.amplitudes);
        const double d_true = std::real(helion::inner_product(field_true, field_true));
        const double d_meas = std::real(helion::inner_product(field_meas, field_meas));
        const auto fid = helion::fidelity_metrics(field_true, field_meas);
        metrics[std::string("eta_d_") + name] = helion::eta_d(d_meas, d_true);
        metrics[std::string("corr_") + name] = fid.corr_magnitude;
        metrics[std::string("norm_ratio_") + name] = fid.norm_ratio;
    }
    helion::write_bytes_atomic(dir / "metrics.json", metrics.dump(2) + "\n");
    write_run_meta(dir, "acquire", cfg);

    std::cout << "eta_d_optimal=" << fmt_double(metrics["eta_d_optimal"].get<double>()) << "\n"
              << "eta_d_average=" << fmt_double(metrics["eta_d_average"].get<double>()) << "\n"
              << "corr_optimal=" << fmt_double(metrics["corr_optimal"].get<double>()) << "\n"
              << "out=" << dir.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum-limited discrimination of two scattering configurations"};
    app.require_subcommand(1);

    GlobalArgs args;
    bool save_eigenstates = false;

    auto add_common = [&](CLI::App* sub, bool needs_config, bool needs_pair) {
        if (needs_config) {
            sub->add_option("--config", args.config, "JSON run config")->required();
        }
        if (needs_pair) {
            sub->add_option("--pair", args.pair, "scattering-pair directory")->required();
        }
        sub->add_option("--out", args.out, "output directory")->required();
        sub->add_option("--seed", args.seed, "override the config seed");
        sub->add_option("--format", args.format, "table output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* synth = app.add_subcommand("synth", "synthesize a scattering pair");
    add_common(synth, true, false);
    CLI::App* spectrum = app.add_subcommand("spectrum", "discrimination-operator spectrum");
    add_common(spectrum, false, true);
    spectrum->add_flag("--save-eigenstates", save_eigenstates, "persist the full eigenbasis");
    CLI::App* bounds = app.add_subcommand("bounds", "closed-form error-bound sweep");
    add_common(bounds, true, false);
    CLI::App* trials = app.add_subcommand("trials", "Monte Carlo detection batch");
    add_common(trials, true, true);
    CLI::App* sweep = app.add_subcommand("sweep", "error rate vs photon number");
    add_common(sweep, true, true);
    CLI::App* acquire = app.add_subcommand("acquire", "virtual matrix acquisition study");
    add_common(acquire, true, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*synth) return cmd_synth(args);
        if (*spectrum) return cmd_spectrum(args, save_eigenstates);
        if (*bounds) return cmd_bounds(args);
        if (*trials) return cmd_trials(args);
        if (*sweep) return cmd_sweep(args);
        if (*acquire) return cmd_acquire(args);
    } catch (const helion::ValidationError& e) {
        std::cerr << "error (validation): " << e.what() << "\n";
        return 2;
    } catch (const helion::NumericError& e) {
        std::cerr << "error (numeric): " << e.what() << "\n";
        return 3;
    } catch (const helion::IoError& e) {
        std::cerr << "error (io): " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
