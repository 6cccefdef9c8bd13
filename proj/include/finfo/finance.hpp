#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "finfo/errors.hpp"
#include "finfo/estimators.hpp"
#include "finfo/rng.hpp"
#include "finfo/rolling.hpp"
#include "finfo/series.hpp"

namespace finfo {

/// Log returns r_t = ln(P_t / P_{t-1}); output is one shorter than the input
/// and carries the later timestamp of each pair.
inline ReturnSeries log_returns(const PriceSeries& p) {
    p.validate();
    if (p.size() < 2) throw validation_error("log_returns: need at least 2 prices");
    ReturnSeries out;
    out.timestamps.assign(p.timestamps.begin() + 1, p.timestamps.end());
    out.values.resize(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) {
        out.values[i - 1] = std::log(p.prices[i] / p.prices[i - 1]);
    }
    return out;
}

/// Inputs of the KL-scaled VaR adjustment.
struct VarAdjustmentInputs {
    double base_var = 1.0;  ///< baseline VaR, loss units
    double kl_now = 0.0;    ///< current KL divergence, nats
    double mu_kl = 0.0;     ///< long-run KL mean, nats
    double sigma_kl = 1.0;  ///< long-run KL std, nats
    double beta = 1.0;      ///< sensitivity, nominal range [0.5, 1.5]

    void validate() const {
        if (!(base_var > 0.0)) throw validation_error("VarAdjustmentInputs: base_var must be > 0");
        if (!(sigma_kl > 0.0)) throw validation_error("VarAdjustmentInputs: sigma_kl must be > 0");
        if (!(kl_now >= 0.0)) throw validation_error("VarAdjustmentInputs: kl_now must be >= 0");
    }
};

/// base_var * [1 + beta * max{0, (kl_now - mu_kl) / sigma_kl}].
inline double entropy_adjusted_var(const VarAdjustmentInputs& inp) {
    inp.validate();
    const double z = std::max(0.0, (inp.kl_now - inp.mu_kl) / inp.sigma_kl);
    return inp.base_var * (1.0 + inp.beta * z);
}

/// Long-only weights on the simplex.
struct PortfolioWeights {
    std::vector<double> weights;

    void validate() const {
        if (weights.empty()) throw validation_error("PortfolioWeights: empty");
        double total = 0.0;
        for (double w : weights) {
            if (!(w >= 0.0)) throw validation_error("PortfolioWeights: negative weight");
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-9) {
            throw validation_error("PortfolioWeights: weights must sum to 1");
        }
    }
};

/// Information-theoretic diversification functional
/// J(w) = sum_i w_i h(R_i) - h(w^T R), in nats.
inline double diversification_objective(const PortfolioWeights& w, const SampleMatrix& assets,
                                        const KnnConfig& cfg) {
    w.validate();
    if (w.weights.size() != assets.cols()) {
        throw validation_error("diversification_objective: weight/asset dimension mismatch");
    }
    detail::BlockEntropies blocks(assets, cfg);
    double weighted_marginals = 0.0;
    for (std::size_t j = 0; j < assets.cols(); ++j) {
        weighted_marginals += w.weights[j] * blocks.entropy(j, 1);
    }
    // Portfolio column from the same jittered asset matrix as the marginals.
    std::vector<double> portfolio(assets.rows(), 0.0);
    for (std::size_t i = 0; i < assets.rows(); ++i) {
        for (std::size_t j = 0; j < assets.cols(); ++j) {
            portfolio[i] += w.weights[j] * blocks.jittered(i, j);
        }
    }
    const double h_portfolio =
        detail::kl_entropy_no_jitter(SampleMatrix::column(std::move(portfolio)), cfg.k, cfg.metric);
    return weighted_marginals - h_portfolio;
}

enum class OptimizeSense { minimize, maximize };

struct OptimizationResult {
    PortfolioWeights weights;
    double objective = 0.0;
    std::size_t evaluations = 0;
};

/// Derivative-free search over the simplex: uniform simplex sampling followed
/// by local coordinate perturbation of the incumbent with re-projection.
/// Deterministic for a fixed cfg.seed; stops after `budget` evaluations.
inline OptimizationResult optimize_diversification(const SampleMatrix& assets,
                                                   OptimizeSense sense, const KnnConfig& cfg,
                                                   std::size_t budget) {
    const std::size_t n = assets.cols();
    if (n < 2) throw validation_error("optimize_diversification: need at least 2 assets");
    if (budget < n) throw validation_error("optimize_diversification: budget must be >= n");

    Rng rng(cfg.seed ^ 0x5EEDF00DULL);
    const double sign = sense == OptimizeSense::minimize ? 1.0 : -1.0;

    auto project = [](std::vector<double> w) {
        double total = 0.0;
        for (double& v : w) {
            v = std::max(0.0, v);
            total += v;
        }
        if (total <= 0.0) {
            w.assign(w.size(), 1.0 / static_cast<double>(w.size()));
        } else {
            for (double& v : w) v /= total;
        }
        return w;
    };
    auto uniform_simplex = [&] {
        std::vector<double> w(n);
        for (double& v : w) {
            double u = rng.uniform();
            while (u <= 0.0) u = rng.uniform();
            v = -std::log(u);
        }
        return project(std::move(w));
    };

    OptimizationResult best;
    best.weights.weights.assign(n, 1.0 / static_cast<double>(n));
    best.objective = diversification_objective(best.weights, assets, cfg);
    best.evaluations = 1;
    double best_score = sign * best.objective;

    auto try_candidate = [&](std::vector<double> w) {
        PortfolioWeights cand{std::move(w)};
        const double obj = diversification_objective(cand, assets, cfg);
        ++best.evaluations;
        if (sign * obj < best_score) {
            best_score = sign * obj;
            best.objective = obj;
            best.weights = std::move(cand);
        }
    };

    const std::size_t global_budget = budget > 1 ? (budget - 1) / 2 : 0;
    while (best.evaluations < 1 + global_budget) {
        try_candidate(uniform_simplex());
    }
    double step = 0.25;
    while (best.evaluations < budget) {
        std::vector<double> w = best.weights.weights;
        const std::size_t coord = rng.next_u64() % n;
        w[coord] += step * (rng.uniform() - 0.5) * 2.0;
        try_candidate(project(std::move(w)));
        step = std::max(0.02, step * 0.995);
    }
    return best;
}

/// Momentum signals gated by rolling NMI: above the threshold, the sign of the
/// previous return; at or below it, flat. A zero previous return maps to -1.
inline SignalSeries nmi_trading_signals(const PriceSeries& p, double theta,
                                        const RollingSpec& spec, const KnnConfig& cfg) {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw validation_error("nmi_trading_signals: theta must lie in (0,1)");
    }
    const ReturnSeries r = log_returns(p);
    const TimedSeries nmi = rolling_nmi(r, spec, cfg);
    SignalSeries out;
    out.timestamps = nmi.timestamps;
    out.signals.resize(nmi.size());
    // Map each NMI timestamp back to its return index to read r_{t-1}.
    std::size_t ri = 0;
    for (std::size_t j = 0; j < nmi.size(); ++j) {
        while (ri < r.size() && r.timestamps[ri] != nmi.timestamps[j]) ++ri;
        if (ri >= r.size() || ri == 0) {
            throw alignment_error("nmi_trading_signals: NMI timestamp not found in returns");
        }
        if (nmi.values[j] > theta) {
            out.signals[j] = r.values[ri - 1] > 0.0 ? 1 : -1;
        } else {
            out.signals[j] = 0;
        }
    }
    return out;
}

/// Backtest summary for a signal series applied to prices.
struct BacktestSummary {
    double total_log_return = 0.0;  ///< sum of per-period PnL, nats of log return
    double hit_rate = 0.0;          ///< fraction of exposed periods with positive PnL
    double exposure = 0.0;          ///< fraction of periods with a nonzero position
    TimedSeries pnl;                ///< per-period PnL, labeled by the period end
};

/// PnL_t = s_t * r_{t+1}: a signal dated t earns the return over (t, t+1].
/// `cost_per_trade` (log-return units) is charged on every position change.
inline BacktestSummary backtest_signals(const PriceSeries& p, const SignalSeries& s,
                                        double cost_per_trade = 0.0) {
    p.validate();
    s.validate();
    const ReturnSeries r = log_returns(p);
    BacktestSummary out;
    std::size_t exposed = 0;
    std::size_t hits = 0;
    int prev_pos = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        // Find the return immediately after the signal's timestamp.
        auto it = std::lower_bound(r.timestamps.begin(), r.timestamps.end(), s.timestamps[j]);
        if (it == r.timestamps.end() || *it != s.timestamps[j]) {
            throw alignment_error("backtest_signals: signal timestamp '" + s.timestamps[j] +
                                  "' not found in price-derived returns");
        }
        const std::size_t idx = static_cast<std::size_t>(it - r.timestamps.begin());
        if (idx + 1 >= r.size()) break; // last signal has no forward return
        const int pos = s.signals[j];
        double pnl = pos * r.values[idx + 1];
        if (pos != prev_pos) pnl -= cost_per_trade * std::abs(pos - prev_pos);
        prev_pos = pos;
        out.pnl.timestamps.push_back(r.timestamps[idx + 1]);
        out.pnl.values.push_back(pnl);
        out.total_log_return += pnl;
        if (pos != 0) {
            ++exposed;
            if (pnl > 0.0) ++hits;
        }
    }
    const std::size_t periods = out.pnl.size();
    out.exposure = periods ? static_cast<double>(exposed) / static_cast<double>(periods) : 0.0;
    out.hit_rate = exposed ? static_cast<double>(hits) / static_cast<double>(exposed) : 0.0;
    return out;
}

} // namespace finfo
