#include "isospec/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <set>
#include <sstream>

#include "isospec/airy.hpp"
#include "isospec/errors.hpp"
#include "isospec/flows.hpp"
#include "isospec/fredholm.hpp"
#include "isospec/linalg.hpp"
#include "isospec/lis.hpp"
#include "isospec/painleve.hpp"
#include "isospec/version.hpp"
#include "isospec/xy.hpp"

namespace isospec {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<std::string> preset_names() {
    return {"fig3a-qr", "fig3b-toda", "gap-law", "tw-table", "sine-gap", "xy", "lis-mc"};
}

json preset_config(const std::string& name) {
    if (name == "fig3a-qr")
        return json{{"subcommand", "deflate-universality"}, {"algorithm", "qr"},
                    {"ensembles", {"goe", "bernoulli"}},   {"N", 100},
                    {"epsilon", 1e-10},                    {"trials", 2000},
                    {"master_seed", 1},                    {"bins", 40}};
    if (name == "fig3b-toda")
        return json{{"subcommand", "deflate-universality"}, {"algorithm", "toda"},
                    {"ensembles", {"goe", "bernoulli"}},   {"N", 100},
                    {"epsilon", 1e-8},                     {"trials", 2000},
                    {"master_seed", 1},                    {"bins", 40}};
    if (name == "gap-law")
        return json{{"subcommand", "gap-law"}, {"ensemble", "goe"}, {"N", 50},
                    {"epsilon", 1e-8},         {"trials", 500},     {"master_seed", 1}};
    if (name == "tw-table")
        return json{{"subcommand", "tw-table"}, {"t_min", -6.0}, {"t_max", 3.0}, {"step", 0.25},
                    {"m", 60},                  {"grid_n", 1600}, {"l_minus", 8.0}, {"l_plus", 8.0}};
    if (name == "sine-gap")
        return json{{"subcommand", "sine-gap"}, {"s_max", 2.0}, {"step", 0.1}, {"m", 50}};
    if (name == "xy")
        return json{{"subcommand", "xy"}, {"beta", 1.0}, {"t_max", 10.0}, {"step", 0.5}, {"m", 60}};
    if (name == "lis-mc")
        return json{{"subcommand", "lis-mc"}, {"N", 1000}, {"trials", 10000}, {"master_seed", 1}};
    throw ValidationError("unknown preset '" + name + "'");
}

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ValidationError("unknown config key '" + it.key() + "'");
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ValidationError("config field " + key + ": wrong type");
    }
}

const json& require(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ValidationError("config field " + key + " is required");
    return j.at(key);
}

std::vector<EnsembleKind> parse_ensembles(const json& j) {
    std::vector<EnsembleKind> out;
    if (!j.is_array()) throw ValidationError("config field ensembles: expected an array");
    for (const auto& e : j) out.push_back(ensemble_from_name(e.get<std::string>()));
    return out;
}

} // namespace

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("config: expected a JSON object");
    const std::string sub = require(j, "subcommand").get<std::string>();

    ExperimentConfig cfg;
    cfg.subcommand = sub;
    cfg.output_dir = get_or<std::string>(j, "output_dir", "out");
    json echo{{"subcommand", sub}, {"output_dir", cfg.output_dir}};

    if (sub == "deflate-universality") {
        check_keys(j, {"subcommand", "output_dir", "master_seed", "workers", "algorithm",
                       "ensembles", "N", "epsilon", "trials", "bins", "max_iter", "t_max",
                       "coarse_dt"});
        UniversalityConfig c;
        c.algorithm = algorithm_from_name(require(j, "algorithm").get<std::string>());
        c.ensembles = parse_ensembles(require(j, "ensembles"));
        c.dimension = require(j, "N").get<int>();
        c.epsilon = require(j, "epsilon").get<double>();
        c.trials = require(j, "trials").get<int>();
        c.master_seed = get_or<std::uint64_t>(j, "master_seed", 1);
        c.bins = get_or<int>(j, "bins", 40);
        c.workers = get_or<int>(j, "workers", 0);
        c.max_iter = get_or<int>(j, "max_iter", 2000);
        c.t_max = get_or<double>(j, "t_max", 500.0);
        c.coarse_dt = get_or<double>(j, "coarse_dt", 0.05);
        echo["algorithm"] = algorithm_name(c.algorithm);
        json ens = json::array();
        for (EnsembleKind k : c.ensembles) ens.push_back(ensemble_name(k));
        echo["ensembles"] = ens;
        echo["N"] = c.dimension;
        echo["epsilon"] = c.epsilon;
        echo["trials"] = c.trials;
        echo["master_seed"] = c.master_seed;
        echo["bins"] = c.bins;
        echo["max_iter"] = c.max_iter;
        echo["t_max"] = c.t_max;
        echo["coarse_dt"] = c.coarse_dt;
        cfg.payload = c;
    } else if (sub == "gap-law") {
        check_keys(j, {"subcommand", "output_dir", "master_seed", "workers", "ensemble", "N",
                       "epsilon", "trials", "sigma", "t_max"});
        GapLawConfig c;
        c.ensemble = ensemble_from_name(get_or<std::string>(j, "ensemble", "goe"));
        c.dimension = require(j, "N").get<int>();
        c.epsilon = require(j, "epsilon").get<double>();
        c.trials = require(j, "trials").get<int>();
        c.master_seed = get_or<std::uint64_t>(j, "master_seed", 1);
        c.sigma = get_or<double>(j, "sigma", 0.0);
        c.workers = get_or<int>(j, "workers", 0);
        c.t_max = get_or<double>(j, "t_max", 20000.0);
        echo["ensemble"] = ensemble_name(c.ensemble);
        echo["N"] = c.dimension;
        echo["epsilon"] = c.epsilon;
        echo["trials"] = c.trials;
        echo["master_seed"] = c.master_seed;
        echo["sigma"] = c.sigma;
        echo["t_max"] = c.t_max;
        cfg.payload = c;
    } else if (sub == "tw-table") {
        check_keys(j, {"subcommand", "output_dir", "t_min", "t_max", "step", "m", "grid_n",
                       "l_minus", "l_plus"});
        TwTableConfig c;
        c.t_min = get_or<double>(j, "t_min", c.t_min);
        c.t_max = get_or<double>(j, "t_max", c.t_max);
        c.step = get_or<double>(j, "step", c.step);
        c.m = get_or<int>(j, "m", c.m);
        c.grid_n = get_or<int>(j, "grid_n", c.grid_n);
        c.l_minus = get_or<double>(j, "l_minus", c.l_minus);
        c.l_plus = get_or<double>(j, "l_plus", c.l_plus);
        if (!(c.step > 0.0)) throw ValidationError("config field step: must be positive");
        if (!(c.t_min <= c.t_max)) throw ValidationError("config field t_min: must be <= t_max");
        echo.update(json{{"t_min", c.t_min}, {"t_max", c.t_max}, {"step", c.step}, {"m", c.m},
                         {"grid_n", c.grid_n}, {"l_minus", c.l_minus}, {"l_plus", c.l_plus}});
        cfg.payload = c;
    } else if (sub == "sine-gap") {
        check_keys(j, {"subcommand", "output_dir", "s_max", "step", "m"});
        SineGapConfig c;
        c.s_max = get_or<double>(j, "s_max", c.s_max);
        c.step = get_or<double>(j, "step", c.step);
        c.m = get_or<int>(j, "m", c.m);
        if (!(c.step > 0.0)) throw ValidationError("config field step: must be positive");
        if (!(c.s_max >= 0.0)) throw ValidationError("config field s_max: must be >= 0");
        echo.update(json{{"s_max", c.s_max}, {"step", c.step}, {"m", c.m}});
        cfg.payload = c;
    } else if (sub == "xy") {
        check_keys(j, {"subcommand", "output_dir", "beta", "t_max", "step", "m"});
        XyConfig c;
        c.beta = get_or<double>(j, "beta", c.beta);
        c.t_max = get_or<double>(j, "t_max", c.t_max);
        c.step = get_or<double>(j, "step", c.step);
        c.m = get_or<int>(j, "m", c.m);
        if (!(c.beta > 0.0)) throw ValidationError("config field beta: must be positive");
        if (!(c.step > 0.0)) throw ValidationError("config field step: must be positive");
        echo.update(json{{"beta", c.beta}, {"t_max", c.t_max}, {"step", c.step}, {"m", c.m}});
        cfg.payload = c;
    } else if (sub == "lis-mc") {
        check_keys(j, {"subcommand", "output_dir", "N", "trials", "master_seed", "workers",
                       "tw_table"});
        LisMcConfig c;
        c.dimension = require(j, "N").get<int>();
        c.trials = require(j, "trials").get<int>();
        c.master_seed = get_or<std::uint64_t>(j, "master_seed", 1);
        c.workers = get_or<int>(j, "workers", 0);
        c.tw_table = get_or<std::string>(j, "tw_table", "");
        if (c.dimension < 1) throw ValidationError("config field N: must be >= 1");
        if (c.trials < 1) throw ValidationError("config field trials: must be >= 1");
        echo.update(json{{"N", c.dimension},
                         {"trials", c.trials},
                         {"master_seed", c.master_seed},
                         {"tw_table", c.tw_table}});
        cfg.payload = c;
    } else if (sub == "sample-ensemble") {
        check_keys(j, {"subcommand", "output_dir", "ensemble", "N", "trials", "master_seed"});
        SampleEnsembleConfig c;
        c.kind = ensemble_from_name(get_or<std::string>(j, "ensemble", "goe"));
        c.dimension = require(j, "N").get<int>();
        c.trials = get_or<int>(j, "trials", 1);
        c.master_seed = get_or<std::uint64_t>(j, "master_seed", 1);
        if (c.dimension < 1) throw ValidationError("config field N: must be >= 1");
        if (c.trials < 1) throw ValidationError("config field trials: must be >= 1");
        echo.update(json{{"ensemble", ensemble_name(c.kind)},
                         {"N", c.dimension},
                         {"trials", c.trials},
                         {"master_seed", c.master_seed}});
        cfg.payload = c;
    } else if (sub == "toda-trace") {
        check_keys(j, {"subcommand", "output_dir", "ensemble", "N", "master_seed", "t_max", "dt"});
        TodaTraceConfig c;
        c.kind = ensemble_from_name(get_or<std::string>(j, "ensemble", "goe"));
        c.dimension = get_or<int>(j, "N", c.dimension);
        c.master_seed = get_or<std::uint64_t>(j, "master_seed", 1);
        c.t_max = get_or<double>(j, "t_max", c.t_max);
        c.dt = get_or<double>(j, "dt", c.dt);
        if (c.dimension < 2) throw ValidationError("config field N: must be >= 2");
        if (!(c.dt > 0.0)) throw ValidationError("config field dt: must be positive");
        echo.update(json{{"ensemble", ensemble_name(c.kind)}, {"N", c.dimension},
                         {"master_seed", c.master_seed}, {"t_max", c.t_max}, {"dt", c.dt}});
        cfg.payload = c;
    } else if (sub == "qr-trace") {
        check_keys(j, {"subcommand", "output_dir", "ensemble", "N", "master_seed", "iterations"});
        QrTraceConfig c;
        c.kind = ensemble_from_name(get_or<std::string>(j, "ensemble", "goe"));
        c.dimension = get_or<int>(j, "N", c.dimension);
        c.master_seed = get_or<std::uint64_t>(j, "master_seed", 1);
        c.iterations = get_or<int>(j, "iterations", c.iterations);
        if (c.dimension < 2) throw ValidationError("config field N: must be >= 2");
        if (c.iterations < 1) throw ValidationError("config field iterations: must be >= 1");
        echo.update(json{{"ensemble", ensemble_name(c.kind)},
                         {"N", c.dimension},
                         {"master_seed", c.master_seed},
                         {"iterations", c.iterations}});
        cfg.payload = c;
    } else if (sub == "strobe-check") {
        check_keys(j, {"subcommand", "output_dir", "N", "trials", "k_max", "master_seed"});
        StrobeCheckConfig c;
        c.dimension = get_or<int>(j, "N", c.dimension);
        c.trials = get_or<int>(j, "trials", c.trials);
        c.k_max = get_or<int>(j, "k_max", c.k_max);
        c.master_seed = get_or<std::uint64_t>(j, "master_seed", 1);
        if (c.dimension < 2) throw ValidationError("config field N: must be >= 2");
        if (c.trials < 1) throw ValidationError("config field trials: must be >= 1");
        if (c.k_max < 1) throw ValidationError("config field k_max: must be >= 1");
        echo.update(json{{"N", c.dimension}, {"trials", c.trials}, {"k_max", c.k_max},
                         {"master_seed", c.master_seed}});
        cfg.payload = c;
    } else {
        throw ValidationError("unknown subcommand '" + sub + "'");
    }
    cfg.echo = std::move(echo);
    return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot read config file: " + path);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config file ") + path + ": " + e.what());
    }
    return config_from_json(j);
}

namespace {

std::string fmt_u64(std::uint64_t v) { return std::to_string(v); }

struct TraceRow {
    double t;
    SymmetricMatrix m;
};

double chopped_drift(const SymmetricMatrix& m0, const SymmetricMatrix& mt) {
    // max over j >= 1 of the sorted-match distance between chopped roots now
    // and at t = 0; nan when every chop is degenerate or n > 8
    if (m0.n() > 8) return std::nan("");
    double worst = -1.0;
    for (int j = 1; 2 * j <= m0.n(); ++j) {
        ChoppedSpectrum a = chopped_spectrum(m0, j);
        ChoppedSpectrum b = chopped_spectrum(mt, j);
        if (a.degenerate || b.degenerate) continue;
        if (a.roots.size() != b.roots.size()) return std::numeric_limits<double>::infinity();
        double d = 0.0;
        for (size_t i = 0; i < a.roots.size(); ++i)
            d = std::max(d, std::abs(a.roots[i] - b.roots[i]));
        worst = std::max(worst, d);
    }
    return worst < 0.0 ? std::nan("") : worst;
}

void append_trace_rows(RunResult& res, const SymmetricMatrix& m0,
                       const std::vector<TraceRow>& rows) {
    const int n = m0.n();
    res.records_header = {"t"};
    for (int i = 0; i < n; ++i) res.records_header.push_back("diag_" + std::to_string(i + 1));
    res.records_header.insert(res.records_header.end(),
                              {"offdiag_frobenius", "min_block_norm", "min_block_k",
                               "spectrum_drift", "chopped_drift"});
    const Spectrum s0 = symmetric_eigen(m0, false);
    for (const TraceRow& row : rows) {
        std::vector<std::string> cells{format_g17(row.t)};
        for (int i = 0; i < n; ++i) cells.push_back(format_g17(row.m(i, i)));
        double off2 = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off2 += 2.0 * row.m(i, j) * row.m(i, j);
        const std::vector<double> blocks = all_block_norms(row.m);
        int kmin = 0;
        for (size_t k = 1; k < blocks.size(); ++k)
            if (blocks[k] < blocks[kmin]) kmin = static_cast<int>(k);
        const Spectrum st = symmetric_eigen(row.m, false);
        double drift = 0.0;
        for (int i = 0; i < n; ++i) drift = std::max(drift, std::fabs(st.values[i] - s0.values[i]));
        cells.push_back(format_g17(std::sqrt(off2)));
        cells.push_back(format_g17(blocks[kmin]));
        cells.push_back(std::to_string(kmin + 1));
        cells.push_back(format_g17(drift));
        cells.push_back(format_g17(chopped_drift(m0, row.m)));
        res.records.push_back(std::move(cells));
    }
}

RunResult run_universality(const UniversalityConfig& c) {
    RunResult res;
    UniversalityResult u = universality_experiment(c);
    res.records_header = {"ensemble", "trial",   "halted",       "time",   "k_hat",
                          "top_gap",  "epsilon", "halting_norm", "t_tilde"};
    json per_ensemble = json::object();
    for (const auto& pe : u.ensembles) {
        size_t halted_index = 0;
        for (const DeflationRecord& r : pe.records) {
            std::vector<std::string> cells{ensemble_name(pe.kind), fmt_u64(r.trial),
                                           r.halted ? "1" : "0"};
            if (r.halted) {
                cells.push_back(format_g17(r.time));
                cells.push_back(std::to_string(r.k_hat));
                cells.push_back(format_g17(r.top_gap));
                cells.push_back(format_g17(r.epsilon));
                cells.push_back(format_g17(r.halting_norm));
                // no normalized sample when fewer than 2 trials halted
                cells.push_back(halted_index < pe.normalized.size()
                                    ? format_g17(pe.normalized[halted_index])
                                    : "nan");
                ++halted_index;
            } else {
                cells.insert(cells.end(), {"nan", "0", format_g17(r.top_gap),
                                           format_g17(r.epsilon), "nan", "nan"});
            }
            res.records.push_back(std::move(cells));
        }
        per_ensemble[ensemble_name(pe.kind)] =
            json{{"trials", static_cast<int>(pe.records.size())},
                 {"nonhalted", pe.nonhalted},
                 {"mean_time", pe.mean_time},
                 {"variance_time", pe.variance_time}};
    }

    res.histogram_header = {"bin_left", "bin_right"};
    for (const auto& pe : u.ensembles)
        res.histogram_header.push_back(std::string("count_") + ensemble_name(pe.kind));
    for (size_t b = 0; b < u.bins.left.size(); ++b) {
        std::vector<std::string> cells{format_g17(u.bins.left[b]), format_g17(u.bins.right[b])};
        for (size_t e = 0; e < u.ensembles.size(); ++e)
            cells.push_back(std::to_string(u.histogram[e][b]));
        res.histogram_rows.push_back(std::move(cells));
    }

    json ks = json::object();
    for (size_t i = 0; i < u.ensembles.size(); ++i)
        for (size_t j2 = i + 1; j2 < u.ensembles.size(); ++j2) {
            const std::string key = std::string(ensemble_name(u.ensembles[i].kind)) + "_vs_" +
                                    ensemble_name(u.ensembles[j2].kind);
            ks[key] = u.ks[i][j2];
        }
    res.summary["per_ensemble"] = per_ensemble;
    res.summary["ks"] = ks;
    return res;
}

RunResult run_gap_law(const GapLawConfig& c) {
    RunResult res;
    GapLawResult g = gap_statistic_experiment(c);
    res.records_header = {"trial",      "halted",  "t1",        "top_entry",
                          "lambda_max", "top_gap", "scaled_t1", "scaled_inv_gap",
                          "top_entry_error"};
    for (const auto& tr : g.trials) {
        std::vector<std::string> cells{fmt_u64(tr.trial), tr.halted ? "1" : "0"};
        if (tr.halted) {
            for (double v : {tr.t1, tr.top_entry, tr.lambda_max, tr.top_gap, tr.scaled_t1,
                             tr.scaled_inv_gap, tr.top_entry_error})
                cells.push_back(format_g17(v));
        } else {
            cells.insert(cells.end(), {"nan", "nan", format_g17(tr.lambda_max),
                                       format_g17(tr.top_gap), "nan", "nan", "nan"});
        }
        res.records.push_back(std::move(cells));
    }
    res.summary["rank_correlation"] = g.rank_correlation;
    res.summary["median_matched_ks"] = g.median_matched_ks;
    res.summary["nonhalted"] = g.nonhalted;
    return res;
}

RunResult run_tw_table(const TwTableConfig& c) {
    RunResult res;
    PainleveSolution sol = painleve2_hastings_mcleod(c.l_minus, c.l_plus, c.grid_n);
    res.records_header = {"t", "f_pii", "f_airy", "abs_diff"};
    const int steps = static_cast<int>(std::round((c.t_max - c.t_min) / c.step));
    double max_diff = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double t = c.t_min + i * c.step;
        const double f_pii = tracy_widom_pii(t, sol);
        const double f_airy = airy_kernel_det(t, c.m);
        const double diff = std::fabs(f_pii - f_airy);
        max_diff = std::max(max_diff, diff);
        res.records.push_back(
            {format_g17(t), format_g17(f_pii), format_g17(f_airy), format_g17(diff)});
    }
    res.summary["max_abs_diff"] = max_diff;
    res.summary["painleve_residual"] = sol.residual_norm;
    return res;
}

RunResult run_sine_gap(const SineGapConfig& c) {
    RunResult res;
    res.records_header = {"s", "gap_probability", "product_residual"};
    const int steps = static_cast<int>(std::round(c.s_max / c.step));
    double max_residual = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double s = i * c.step;
        double gap = 1.0, residual = 0.0;
        if (s > 0.0) {
            const Kernel k = sine_kernel(s);
            gap = fredholm_det(k, c.m).value.real();
            double prod = 1.0;
            for (double lam : kernel_eigenvalues(k, c.m)) prod *= (1.0 - lam);
            residual = std::fabs(gap - prod);
        }
        max_residual = std::max(max_residual, residual);
        res.records.push_back({format_g17(s), format_g17(gap), format_g17(residual)});
    }
    res.summary["max_product_residual"] = max_residual;
    return res;
}

RunResult run_xy(const XyConfig& c) {
    RunResult res;
    res.records_header = {"t", "x", "im_det_residual"};
    const int steps = static_cast<int>(std::round(c.t_max / c.step));
    double max_residual = 0.0;
    std::vector<double> fit_t, fit_logx;
    for (int i = 0; i <= steps; ++i) {
        const double t = i * c.step;
        const XyResult r = xy_autocorrelation(t, c.beta, c.m);
        max_residual = std::max(max_residual, r.im_residual);
        if (t >= 5.0 && r.value > 0.0) {
            fit_t.push_back(t);
            fit_logx.push_back(std::log(r.value));
        }
        res.records.push_back({format_g17(t), format_g17(r.value), format_g17(r.im_residual)});
    }
    res.summary["asymptotic_slope"] = xy_asymptotic_slope(c.beta);
    res.summary["max_im_det_residual"] = max_residual;
    if (fit_t.size() >= 3) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(fit_t.size());
        for (size_t i = 0; i < fit_t.size(); ++i) {
            sx += fit_t[i];
            sy += fit_logx[i];
            sxx += fit_t[i] * fit_t[i];
            sxy += fit_t[i] * fit_logx[i];
        }
        res.summary["fitted_slope"] = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return res;
}

std::function<double(double)> load_tw_cdf(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot read tw table: " + path);
    std::vector<double> ts, fs_vals;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',')) continue;
        try {
            const double t = std::stod(a);
            const double v = std::stod(b);
            ts.push_back(t);
            fs_vals.push_back(v);
        } catch (...) {
            continue; // header row
        }
    }
    if (ts.size() < 2) throw ValidationError("tw table has fewer than 2 numeric rows: " + path);
    return [ts, fs_vals](double t) {
        if (t <= ts.front()) return fs_vals.front();
        if (t >= ts.back()) return fs_vals.back();
        const auto it = std::upper_bound(ts.begin(), ts.end(), t);
        const size_t hi = static_cast<size_t>(it - ts.begin());
        const double w = (t - ts[hi - 1]) / (ts[hi] - ts[hi - 1]);
        return (1.0 - w) * fs_vals[hi - 1] + w * fs_vals[hi];
    };
}

RunResult run_lis_mc(const LisMcConfig& c) {
    RunResult res;
    LisMonteCarloResult mc = lis_monte_carlo(c.dimension, c.trials, c.master_seed, c.workers);
    res.records_header = {"trial", "lis", "scaled"};
    const double root = 2.0 * std::sqrt(static_cast<double>(c.dimension));
    const double scale = std::pow(static_cast<double>(c.dimension), 1.0 / 6.0);
    double mean = 0.0;
    for (int t = 0; t < c.trials; ++t) {
        const double scaled = (mc.lengths[t] - root) / scale;
        mean += mc.lengths[t];
        res.records.push_back(
            {std::to_string(t), std::to_string(mc.lengths[t]), format_g17(scaled)});
    }
    mean /= c.trials;

    std::function<double(double)> cdf;
    if (c.tw_table.empty()) {
        auto sol = std::make_shared<PainleveSolution>(painleve2_hastings_mcleod(8.0, 8.0, 1600));
        cdf = [sol](double t) {
            if (t <= -sol->l_minus + 1.0) return 0.0;
            if (t >= sol->l_plus - 1.0) return 1.0;
            return tracy_widom_pii(t, *sol);
        };
    } else {
        cdf = load_tw_cdf(c.tw_table);
    }
    res.summary["ks_vs_tracy_widom"] = ks_distance_lattice_to_cdf(mc.scaled, cdf);
    res.summary["ks_two_sided"] = ks_distance_to_cdf(mc.scaled, cdf);
    res.summary["mean_length"] = mean;
    res.summary["tw_reference"] = c.tw_table.empty() ? std::string("computed") : c.tw_table;
    return res;
}

RunResult run_sample_ensemble(const SampleEnsembleConfig& c) {
    RunResult res;
    res.records_header = {"trial", "file", "frobenius_norm"};
    EnsembleSpec spec{c.kind, c.dimension, c.master_seed};
    for (int t = 0; t < c.trials; ++t) {
        if (c.kind == EnsembleKind::GUE) {
            HermitianMatrix h = sample_gue(spec, t);
            Matrix re(c.dimension, c.dimension), im(c.dimension, c.dimension);
            double norm2 = 0.0;
            for (int i = 0; i < c.dimension; ++i)
                for (int j = 0; j < c.dimension; ++j) {
                    re(i, j) = h(i, j).real();
                    im(i, j) = h(i, j).imag();
                    norm2 += std::norm(h(i, j));
                }
            const std::string base = "matrix_" + std::to_string(t);
            res.matrices.emplace_back(base + "_re.csv", re);
            res.matrices.emplace_back(base + "_im.csv", im);
            res.records.push_back(
                {std::to_string(t), base + "_{re,im}.csv", format_g17(std::sqrt(norm2))});
        } else {
            SymmetricMatrix m = sample_real_ensemble(spec, t);
            const std::string file = "matrix_" + std::to_string(t) + ".csv";
            res.matrices.emplace_back(file, m.to_matrix());
            res.records.push_back({std::to_string(t), file, format_g17(frobenius_norm(m))});
        }
    }
    return res;
}

RunResult run_toda_trace(const TodaTraceConfig& c) {
    RunResult res;
    EnsembleSpec spec{c.kind, c.dimension, c.master_seed};
    const SymmetricMatrix m0 = sample_real_ensemble(spec, 0);
    SpectralFlow flow(m0, scalar_identity());
    std::vector<TraceRow> rows;
    rows.push_back({0.0, m0});
    const int steps = static_cast<int>(std::round(c.t_max / c.dt));
    for (int i = 1; i <= steps; ++i) {
        flow.advance(c.dt);
        rows.push_back({i * c.dt, flow.current()});
    }
    append_trace_rows(res, m0, rows);
    return res;
}

RunResult run_qr_trace(const QrTraceConfig& c) {
    RunResult res;
    EnsembleSpec spec{c.kind, c.dimension, c.master_seed};
    const SymmetricMatrix m0 = sample_real_ensemble(spec, 0);
    std::vector<TraceRow> rows;
    SymmetricMatrix m = m0;
    rows.push_back({0.0, m});
    for (int i = 1; i <= c.iterations; ++i) {
        m = qr_step_symmetric(m);
        rows.push_back({static_cast<double>(i), m});
    }
    append_trace_rows(res, m0, rows);
    return res;
}

RunResult run_strobe_check(const StrobeCheckConfig& c) {
    RunResult res;
    res.records_header = {"trial", "k", "deviation", "bound", "ok"};
    double worst_ratio = 0.0;
    for (int t = 0; t < c.trials; ++t) {
        RandomStream rs(c.master_seed, t);
        TridiagonalMatrix tri;
        tri.diag.resize(c.dimension);
        tri.off.resize(c.dimension - 1);
        for (int i = 0; i < c.dimension; ++i) tri.diag[i] = rs.gauss();
        for (int i = 0; i + 1 < c.dimension; ++i) tri.off[i] = 0.1 + std::fabs(rs.gauss());
        Spectrum s = symmetric_eigen(tri.to_symmetric(), false);
        const double shift = std::max(0.0, -s.values.front()) + 0.5;
        for (int i = 0; i < c.dimension; ++i) tri.diag[i] += shift;
        const double scale = frobenius_norm(tri.to_symmetric());
        for (int k = 1; k <= c.k_max; ++k) {
            const double dev = stroboscope_check(tri, k);
            const double bound = 1e-8 * k * scale;
            worst_ratio = std::max(worst_ratio, dev / bound);
            res.records.push_back({std::to_string(t), std::to_string(k), format_g17(dev),
                                   format_g17(bound), dev < bound ? "1" : "0"});
        }
    }
    res.summary["worst_deviation_over_bound"] = worst_ratio;
    return res;
}

} // namespace

RunResult run(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    RunResult res = std::visit(
        [](const auto& payload) -> RunResult {
            using T = std::decay_t<decltype(payload)>;
            if constexpr (std::is_same_v<T, UniversalityConfig>) return run_universality(payload);
            else if constexpr (std::is_same_v<T, GapLawConfig>) return run_gap_law(payload);
            else if constexpr (std::is_same_v<T, TwTableConfig>) return run_tw_table(payload);
            else if constexpr (std::is_same_v<T, SineGapConfig>) return run_sine_gap(payload);
            else if constexpr (std::is_same_v<T, XyConfig>) return run_xy(payload);
            else if constexpr (std::is_same_v<T, LisMcConfig>) return run_lis_mc(payload);
            else if constexpr (std::is_same_v<T, SampleEnsembleConfig>)
                return run_sample_ensemble(payload);
            else if constexpr (std::is_same_v<T, TodaTraceConfig>) return run_toda_trace(payload);
            else if constexpr (std::is_same_v<T, QrTraceConfig>) return run_qr_trace(payload);
            else return run_strobe_check(payload);
        },
        config.payload);
    res.summary["config"] = config.echo;
    res.summary["tool"] = std::string(kToolName) + " " + kToolVersion;
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

namespace {

void atomic_write(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot open for writing: " + tmp.string());
        f << content;
        f.flush();
        if (!f) throw Error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string csv_text(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) out += ",";
        out += header[i];
    }
    out += "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += row[i];
        }
        out += "\n";
    }
    return out;
}

std::string matrix_csv_text(const Matrix& m) {
    std::string out = std::to_string(m.rows()) + "\n";
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out += ",";
            out += format_g17(m(i, j));
        }
        out += "\n";
    }
    return out;
}

} // namespace

void write_outputs(const RunResult& result, const std::string& output_dir) {
    const fs::path dir(output_dir);
    fs::create_directories(dir);
    atomic_write(dir / "records.csv", csv_text(result.records_header, result.records));
    if (!result.histogram_header.empty())
        atomic_write(dir / "histogram.csv",
                     csv_text(result.histogram_header, result.histogram_rows));
    for (const auto& [name, m] : result.matrices) atomic_write(dir / name, matrix_csv_text(m));
    nlohmann::json summary = result.summary;
    summary["wall_seconds"] = result.wall_seconds;
    atomic_write(dir / "summary.json", summary.dump(2) + "\n");
}

} // namespace isospec
