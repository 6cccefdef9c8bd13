// finfo: information-theoretic analytics for financial return series.
//
// One subcommand per analysis: rolling entropy, KL regime detection, rolling
// NMI, transfer entropy, entropy-adjusted VaR, NMI trading signals,
// information-theoretic diversification, synthetic fixtures, and a signal
// backtest. All outputs are deterministic for a fixed --seed.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "finfo/finfo.hpp"

namespace {

// Exit codes, also documented in the README.
constexpr int kExitValidation = 3;
constexpr int kExitInsufficientData = 4;
constexpr int kExitIngestion = 5;
constexpr int kExitAlignment = 6;

struct CommonOptions {
    finfo::AnalysisConfig config;
    std::string output;
    bool long_format = false;
};

finfo::KnnConfig knn_config(const finfo::AnalysisConfig& cfg) {
    finfo::KnnConfig k;
    k.k = cfg.knn_k;
    k.jitter_sigma = cfg.jitter_sigma;
    k.seed = cfg.seed;
    return k;
}

finfo::RollingSpec rolling_spec(const finfo::AnalysisConfig& cfg) {
    finfo::RollingSpec spec;
    spec.window = static_cast<std::size_t>(cfg.window);
    spec.stride = static_cast<std::size_t>(cfg.stride);
    spec.lag = static_cast<std::size_t>(cfg.lag);
    return spec;
}

void emit(const finfo::io::OutputTable& table, const CommonOptions& opts) {
    if (opts.output.empty()) {
        if (opts.long_format) {
            finfo::io::write_long_format(table, std::cout);
        } else {
            finfo::io::write_csv(table, std::cout);
        }
    } else {
        finfo::io::write_table_file(table, opts.output, opts.long_format);
    }
}

finfo::ReturnSeries load_returns(const std::string& path, bool already_returns, bool strict) {
    if (already_returns) return finfo::io::load_series(path);
    return finfo::log_returns(finfo::io::load_prices(path, strict));
}

void add_common_flags(CLI::App* cmd, CommonOptions& opts) {
    auto& cfg = opts.config;
    cmd->add_option("--window", cfg.window, "Rolling window length in observations")
        ->envname("FINFO_WINDOW")->capture_default_str();
    cmd->add_option("--knn-k", cfg.knn_k, "Neighbor count for k-NN estimators")
        ->envname("FINFO_KNN_K")->capture_default_str();
    cmd->add_option("--jitter-sigma", cfg.jitter_sigma, "Additive Gaussian jitter scale")
        ->envname("FINFO_JITTER_SIGMA")->capture_default_str();
    cmd->add_option("--bins", cfg.bins, "Histogram bin count for KL")
        ->envname("FINFO_BINS")->capture_default_str();
    cmd->add_option("--smoothing", cfg.smoothing, "Additive histogram smoothing")
        ->envname("FINFO_SMOOTHING")->capture_default_str();
    cmd->add_option("--lag", cfg.lag, "Lag used when pairing a series with its past")
        ->envname("FINFO_LAG")->capture_default_str();
    cmd->add_option("--theta-nmi", cfg.theta_nmi, "NMI signal threshold")
        ->envname("FINFO_THETA_NMI")->capture_default_str();
    cmd->add_option("--theta-kl", cfg.theta_kl, "Regime flag z-score threshold")
        ->envname("FINFO_THETA_KL")->capture_default_str();
    cmd->add_option("--beta", cfg.beta, "VaR adjustment sensitivity")
        ->envname("FINFO_BETA")->capture_default_str();
    cmd->add_option("--stride", cfg.stride, "Observations between window evaluations")
        ->envname("FINFO_STRIDE")->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "Seed controlling all randomness")
        ->envname("FINFO_SEED")->capture_default_str();
    cmd->add_option("-o,--output", opts.output, "Output file (stdout when omitted)");
    cmd->add_flag("--plot-data", opts.long_format,
                  "Emit a tidy long-format (timestamp,series,value) table");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Information-theoretic analytics for financial time series"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string input, input2, signals_path, kind_name, sense_name = "minimize";
    bool returns_input = false;
    bool strict = false;
    bool expanding = false;
    std::optional<double> mu, sigma;
    double base_var = 1.0, kl_now = 0.0, cost = 0.0;
    std::size_t budget = 500;
    std::size_t past_len_target = 1, past_len_source = 1;
    finfo::GeneratorSpec gen;
    std::string out2;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("-i,--input", input, "Input CSV (date,price)")->required();
        cmd->add_flag("--returns-input", returns_input,
                      "Treat the input as a (timestamp,value) return series");
        cmd->add_flag("--strict", strict, "Reject unsorted input instead of sorting");
    };

    auto* c_entropy = app.add_subcommand("entropy", "Rolling k-NN differential entropy");
    add_input(c_entropy);
    add_common_flags(c_entropy, opts);

    auto* c_kl = app.add_subcommand("kl", "Rolling KL divergence with regime flags");
    add_input(c_kl);
    add_common_flags(c_kl, opts);
    c_kl->add_option("--mu", mu, "Baseline KL mean (default: full-sample estimate)");
    c_kl->add_option("--sigma", sigma, "Baseline KL std (default: full-sample estimate)");
    c_kl->add_flag("--expanding", expanding, "Expanding-window baseline instead of full-sample");

    auto* c_nmi = app.add_subcommand("nmi", "Rolling NMI between a series and its past");
    add_input(c_nmi);
    add_common_flags(c_nmi, opts);
    c_nmi->add_option("--past-len", past_len_target, "Past block length k (lag-vector variant)")
        ->capture_default_str();

    auto* c_te = app.add_subcommand("te", "Rolling transfer entropy source -> target");
    c_te->add_option("-i,--input", input, "Source series CSV")->required();
    c_te->add_option("--target", input2, "Target series CSV")->required();
    c_te->add_flag("--returns-input", returns_input,
                   "Treat the inputs as (timestamp,value) return series");
    add_common_flags(c_te, opts);
    c_te->add_option("--past-len-target", past_len_target, "Target past length k")
        ->capture_default_str();
    c_te->add_option("--past-len-source", past_len_source, "Source past length l")
        ->capture_default_str();

    auto* c_var = app.add_subcommand("var", "Entropy-adjusted VaR multiplier");
    add_common_flags(c_var, opts);
    c_var->add_option("--base", base_var, "Baseline VaR")->capture_default_str();
    c_var->add_option("--kl", kl_now, "Current KL divergence (nats)")->required();
    c_var->add_option("--mu", mu, "Long-run KL mean")->required();
    c_var->add_option("--sigma", sigma, "Long-run KL std")->required();

    auto* c_signals = app.add_subcommand("signals", "NMI-gated momentum trading signals");
    add_input(c_signals);
    add_common_flags(c_signals, opts);

    auto* c_div = app.add_subcommand("diversify", "Information-theoretic diversification search");
    c_div->add_option("-i,--input", input, "Asset panel CSV (date,asset1,asset2,...)")->required();
    add_common_flags(c_div, opts);
    c_div->add_option("--sense", sense_name, "minimize or maximize")->capture_default_str();
    c_div->add_option("--budget", budget, "Objective evaluation budget")->capture_default_str();

    auto* c_synth = app.add_subcommand("synth", "Generate a synthetic oracle series");
    add_common_flags(c_synth, opts);
    c_synth->add_option("--kind", kind_name,
                        "iid_gaussian|iid_uniform|correlated_gaussian_pair|ar1|"
                        "coupled_lag_pair|variance_switch")
        ->required();
    c_synth->add_option("--n", gen.n, "Series length")->capture_default_str();
    c_synth->add_option("--sigma", gen.sigma, "Scale parameter")->capture_default_str();
    c_synth->add_option("--a", gen.a, "Uniform lower bound")->capture_default_str();
    c_synth->add_option("--b", gen.b, "Uniform upper bound")->capture_default_str();
    c_synth->add_option("--rho", gen.rho, "Pair correlation")->capture_default_str();
    c_synth->add_option("--phi", gen.phi, "AR(1) coefficient")->capture_default_str();
    c_synth->add_option("--coupling", gen.coupling, "Lagged coupling strength")
        ->capture_default_str();
    c_synth->add_option("--switch-point", gen.switch_point, "Variance switch index");
    c_synth->add_option("--sigma-pre", gen.sigma_pre, "Pre-switch sigma")->capture_default_str();
    c_synth->add_option("--sigma-post", gen.sigma_post, "Post-switch sigma")->capture_default_str();
    c_synth->add_option("--output2", out2, "Second output file for pair generators");

    auto* c_backtest = app.add_subcommand("backtest", "Backtest a signal series against prices");
    add_input(c_backtest);
    add_common_flags(c_backtest, opts);
    c_backtest->add_option("--signals", signals_path, "Signal CSV (timestamp,signal)")->required();
    c_backtest->add_option("--cost", cost, "Per-trade cost in log-return units")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        opts.config.validate();
        const finfo::KnnConfig knn = knn_config(opts.config);
        finfo::RollingSpec spec = rolling_spec(opts.config);

        if (*c_entropy) {
            const auto r = load_returns(input, returns_input, strict);
            emit(finfo::io::table_from_series(finfo::rolling_entropy(r, spec, knn)), opts);
        } else if (*c_kl) {
            const auto r = load_returns(input, returns_input, strict);
            const auto kl = finfo::rolling_kl(r, spec, opts.config.bins, opts.config.smoothing);
            const auto mode =
                expanding ? finfo::BaselineMode::expanding : finfo::BaselineMode::full_sample;
            emit(finfo::io::table_from_regimes(
                     finfo::standardize_and_flag(kl, mu, sigma, opts.config.theta_kl, mode)),
                 opts);
        } else if (*c_nmi) {
            const auto r = load_returns(input, returns_input, strict);
            spec.past_len_target = past_len_target;
            emit(finfo::io::table_from_series(finfo::rolling_nmi(r, spec, knn)), opts);
        } else if (*c_te) {
            const auto x = load_returns(input, returns_input, strict);
            const auto y = load_returns(input2, returns_input, strict);
            spec.past_len_target = past_len_target;
            spec.past_len_source = past_len_source;
            emit(finfo::io::table_from_series(finfo::rolling_transfer_entropy(x, y, spec, knn)),
                 opts);
        } else if (*c_var) {
            finfo::VarAdjustmentInputs inp{base_var, kl_now, *mu, *sigma, opts.config.beta};
            if (opts.config.beta < 0.5 || opts.config.beta > 1.5) {
                std::cerr << "warning: beta outside the nominal range [0.5, 1.5]\n";
            }
            std::cout << finfo::io::format_value(finfo::entropy_adjusted_var(inp)) << '\n';
        } else if (*c_signals) {
            const auto prices = finfo::io::load_prices(input, strict);
            emit(finfo::io::table_from_signals(
                     finfo::nmi_trading_signals(prices, opts.config.theta_nmi, spec, knn)),
                 opts);
        } else if (*c_div) {
            const auto panel = finfo::io::load_asset_panel(input);
            finfo::SampleMatrix assets(panel.data, panel.timestamps.size(), panel.names.size());
            const auto sense = sense_name == "maximize" ? finfo::OptimizeSense::maximize
                                                        : finfo::OptimizeSense::minimize;
            const auto result = finfo::optimize_diversification(assets, sense, knn, budget);
            for (std::size_t j = 0; j < panel.names.size(); ++j) {
                std::cout << panel.names[j] << ','
                          << finfo::io::format_value(result.weights.weights[j]) << '\n';
            }
            std::cout << "objective," << finfo::io::format_value(result.objective) << '\n';
        } else if (*c_synth) {
            static const std::map<std::string, finfo::GeneratorKind> kinds = {
                {"iid_gaussian", finfo::GeneratorKind::iid_gaussian},
                {"iid_uniform", finfo::GeneratorKind::iid_uniform},
                {"correlated_gaussian_pair", finfo::GeneratorKind::correlated_gaussian_pair},
                {"ar1", finfo::GeneratorKind::ar1},
                {"coupled_lag_pair", finfo::GeneratorKind::coupled_lag_pair},
                {"variance_switch", finfo::GeneratorKind::variance_switch},
            };
            const auto it = kinds.find(kind_name);
            if (it == kinds.end()) {
                throw finfo::validation_error("unknown generator kind '" + kind_name + "'");
            }
            gen.kind = it->second;
            gen.seed = opts.config.seed;
            const auto series = finfo::generate(gen);
            emit(finfo::io::table_from_series(
                     finfo::TimedSeries{series.primary.timestamps, series.primary.values}),
                 opts);
            if (series.is_pair()) {
                if (out2.empty()) {
                    throw finfo::validation_error(
                        "pair generator needs --output2 for the second series");
                }
                finfo::io::write_table_file(
                    finfo::io::table_from_series(finfo::TimedSeries{
                        series.secondary->timestamps, series.secondary->values}),
                    out2, opts.long_format);
            }
        } else if (*c_backtest) {
            const auto prices = finfo::io::load_prices(input, strict);
            const auto sig = finfo::io::load_signals(signals_path);
            const auto summary = finfo::backtest_signals(prices, sig, cost);
            std::cout << "total_log_return," << finfo::io::format_value(summary.total_log_return)
                      << '\n'
                      << "hit_rate," << finfo::io::format_value(summary.hit_rate) << '\n'
                      << "exposure," << finfo::io::format_value(summary.exposure) << '\n';
            if (!opts.output.empty()) {
                finfo::io::write_table_file(finfo::io::table_from_series(summary.pnl, "pnl"),
                                            opts.output, opts.long_format);
            }
        }
        return 0;
    } catch (const finfo::ingestion_error& e) {
        std::cerr << "ingestion error: " << e.what() << '\n';
        return kExitIngestion;
    } catch (const finfo::insufficient_data_error& e) {
        std::cerr << "insufficient data: " << e.what() << '\n';
        return kExitInsufficientData;
    } catch (const finfo::alignment_error& e) {
        std::cerr << "alignment error: " << e.what() << '\n';
        return kExitAlignment;
    } catch (const finfo::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
