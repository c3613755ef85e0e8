// Copyright 2026 the rotlab authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// rotlab: experiment runner for special flows over irrational rotations.
// Every subcommand emits a JSON report embedding its resolved parameters;
// series data goes to CSV.  Exit codes: 0 success, 1 experiment-level
// negative result, 2 usage/config error.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <rotlab/birkhoff.hpp>
#include <rotlab/ceiling.hpp>
#include <rotlab/continued_fraction.hpp>
#include <rotlab/drift.hpp>
#include <rotlab/gauss.hpp>
#include <rotlab/kernels.hpp>
#include <rotlab/mixing.hpp>
#include <rotlab/sieve.hpp>
#include <rotlab/specialflow.hpp>
#include <rotlab/stats.hpp>

using nlohmann::json;
using namespace rotlab;

namespace {

struct Common {
    std::string config_path;
    std::string alpha = "surd:-1,1,5,2";
    std::string ceiling_json;
    std::uint64_t seed = 1;
    unsigned precision_bits = kDefaultCircleBits;
    unsigned threads = 1;
    std::string out_dir;
    json config;  // parsed config file, if any

    void load() {
        if (config_path.empty()) return;
        std::ifstream in(config_path);
        if (!in) throw ConfigInvalid("cannot open config file: " + config_path);
        try {
            in >> config;
        } catch (const json::exception& e) {
            throw ConfigInvalid(std::string("config JSON parse error: ") + e.what());
        }
        if (config.value("schema_version", 1) != 1)
            throw ConfigInvalid("unsupported schema_version");
        if (config.contains("alpha")) alpha = config["alpha"].get<std::string>();
        if (config.contains("ceiling")) ceiling_json = config["ceiling"].dump();
        if (config.contains("seed")) seed = config["seed"].get<std::uint64_t>();
        if (config.contains("precision_bits"))
            precision_bits = config["precision_bits"].get<unsigned>();
        if (config.contains("threads")) threads = config["threads"].get<unsigned>();
    }

    json module(const std::string& name) const {
        return config.contains(name) ? config[name] : json::object();
    }

    CeilingSpec ceiling() const {
        if (ceiling_json.empty())
            throw ConfigInvalid("this subcommand needs --ceiling or a config 'ceiling'");
        return CeilingSpec::from_json(ceiling_json, precision_bits);
    }

    json resolved(const char* cmd) const {
        json c{{"schema_version", 1}, {"command", cmd},    {"alpha", alpha},
               {"seed", seed},        {"precision_bits", precision_bits},
               {"threads", threads},  {"kernels", kernels::active().name}};
        if (!ceiling_json.empty()) c["ceiling"] = json::parse(ceiling_json);
        return c;
    }
};

void emit(const Common& c, const json& report, const std::string& name,
          const std::string& csv = "", const std::string& csv_name = "") {
    if (c.out_dir.empty()) {
        std::cout << report.dump(2) << "\n";  // series CSV only lands with --out
        return;
    }
    std::filesystem::create_directories(c.out_dir);
    std::ofstream((std::filesystem::path(c.out_dir) / (name + ".json")).string())
        << report.dump(2) << "\n";
    if (!csv.empty())
        std::ofstream((std::filesystem::path(c.out_dir) / csv_name).string()) << csv;
}

json window_json(const WindowReport& w) {
    return {{"direction", to_string(w.direction)},
            {"M", w.M},
            {"L", w.L},
            {"fraction", w.fraction}};
}

json params_json(const DriftParams& p) {
    return {{"model", p.model == CeilingModel::Log ? "log" : "power"},
            {"epsilon", p.epsilon},
            {"N", p.N},
            {"C", p.C},
            {"kappa", p.kappa},
            {"d", p.d},
            {"m0", p.m0},
            {"D1", p.D1},
            {"D2", p.D2},
            {"Ck", p.Ck},
            {"H", p.H},
            {"c_ratio", p.c_ratio},
            {"k", p.k},
            {"P_band", {p.P.lo, p.P.hi}},
            {"s0", p.s0},
            {"s1", p.s1},
            {"delta_max", p.delta_max}};
}

json drift_report_json(const DriftReport& r) {
    json j{{"status", to_string(r.status)},
           {"scale_s", r.scale_s},
           {"direction", to_string(r.direction)},
           {"branch", r.branch},
           {"n0", r.n0},
           {"drift_time", r.drift_time},
           {"p", r.p},
           {"p_in_band", r.p_in_band},
           {"budget_ok", r.budget_ok},
           {"scale_fallback", r.scale_fallback}};
    if (r.window.evaluated) {
        j["window"] = window_json(r.window);
        j["window_alt"] = window_json(r.window_alt);
    }
    if (!r.e_trace.empty()) j["e_trace"] = r.e_trace;
    return j;
}

int cmd_cf(const Common& c, std::size_t depth, std::size_t bracket_max) {
    auto cf = cf_expand(c.alpha, depth, c.precision_bits);
    json rows = json::array();
    for (std::size_t s = 0; s < cf.size(); ++s)
        rows.push_back({{"s", s},
                        {"q", cf.q(s).to_string()},
                        {"p", cf.p(s).to_string()}});
    json rep = {{"config", c.resolved("cf")},
                {"quotients", cf.quotients()},
                {"index_shifted", cf.index_shifted()},
                {"ratio_sup", cf.ratio_sup()},
                {"alpha", cf.alpha().to_double()},
                {"alpha_err_ulps", cf.alpha_err_ulps()},
                {"convergents", rows}};
    if (bracket_max > 0) {
        auto red = verify_best_approx(cf, std::min(bracket_max, cf.size() - 2));
        json rr = json::array();
        bool all = true;
        for (const auto& r : red) {
            rr.push_back({{"s", r.s},
                          {"lower", r.lower},
                          {"upper", r.upper},
                          {"value_lo", r.value_lo},
                          {"value_hi", r.value_hi},
                          {"pass", r.pass()}});
            all = all && r.pass();
        }
        rep["best_approx_bracket"] = rr;
        rep["bracket_all_pass"] = all;
    }
    emit(c, rep, "cf");
    return 0;
}

int cmd_sieve(const Common& c, std::size_t depth, const std::string& rule_name) {
    auto cf = cf_expand(c.alpha, depth + 1, c.precision_bits);
    XRule rule = rule_name == "inv_s2" ? XRule::inv_s2() : XRule::log78();
    auto rep = sieve(cf, rule, depth);
    json in_k = json::array(), e = json::array(), xs = json::array();
    for (std::size_t s = 0; s < rep.depth; ++s) {
        in_k.push_back(bool(rep.in_K[s]));
        e.push_back(rep.e_partial[s]);
        xs.push_back(rep.x_s[s]);
    }
    json out = {{"config", c.resolved("sieve")},
                {"rule", rep.rule},
                {"depth", rep.depth},
                {"s_start", rep.s_start},
                {"x_s", xs},
                {"in_K_alpha", in_k},
                {"e_partial_sums", e},
                {"dc_tau_estimate", rep.dc_tau_estimate},
                {"r_alpha", rep.r_alpha},
                {"bounded_type", rep.bounded_type},
                {"max_quotient", rep.max_quotient}};
    emit(c, out, "sieve");
    return 0;
}

int cmd_birkhoff(const Common& c, double x, std::int64_t n, bool prime, bool naive) {
    auto cf = cf_expand(c.alpha, 45, c.precision_bits);
    auto spec = c.ceiling();
    CirclePoint p(Fixed::from_double(x, c.precision_bits), 1);
    double value = prime ? (naive ? birkhoff_sum_prime_naive(spec, cf, p, n)
                                  : birkhoff_sum_prime(spec, cf, p, n))
                         : (naive ? birkhoff_sum_naive(spec, cf, p, n)
                                  : birkhoff_sum(spec, cf, p, n));
    json rep = {{"config", c.resolved("birkhoff")}, {"x", x},         {"n", n},
                {"prime", prime},                   {"naive", naive}, {"value", value}};
    emit(c, rep, "birkhoff");
    return 0;
}

int cmd_flow(const Common& c, double x, double s, double t, std::size_t steps) {
    auto cf = cf_expand(c.alpha, 45, c.precision_bits);
    SpecialFlow flow(c.ceiling(), cf);
    PhasePoint p{CirclePoint(Fixed::from_double(x, c.precision_bits), 1), s};
    std::string csv = "t,x,s\n";
    char line[128];
    double dt = steps ? t / double(steps) : t;
    PhasePoint cur = p;
    for (std::size_t i = 0; i <= steps; ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", dt * double(i),
                      cur.x.pos().to_double(), cur.s);
        csv += line;
        if (i < steps) cur = flow.step(cur, dt);
    }
    PhasePoint end = flow.step(p, t);
    json rep = {{"config", c.resolved("flow")},
                {"t", t},
                {"start", {{"x", x}, {"s", s}}},
                {"end", {{"x", end.x.pos().to_double()}, {"s", end.s}}},
                {"mean_height", flow.mean_height()}};
    emit(c, rep, "flow", csv, "trajectory.csv");
    return 0;
}

int cmd_drift(const Common& c, const json& m) {
    auto cf = cf_expand(c.alpha, m.value("depth", 45), c.precision_bits);
    auto spec = c.ceiling();
    double eps = m.value("epsilon", 0.1);
    std::int64_t N = m.value("N", 100);
    double C = m.value("C", 2.0);
    DriftParams params = spec.model == CeilingModel::Log
                             ? DriftParams::log_defaults(spec, cf, eps, N, C)
                             : DriftParams::power_defaults(spec, cf, eps, N, C);
    if (m.contains("kappa")) params.kappa = m["kappa"].get<double>();
    if (m.contains("d")) params.d = m["d"].get<double>();
    if (m.contains("P_band")) {
        params.P.lo = m["P_band"][0].get<double>();
        params.P.hi = m["P_band"][1].get<double>();
    }
    json rep{{"config", c.resolved("drift")}, {"params", params_json(params)}};
    if (m.contains("pair")) {
        double x = m["pair"].value("x", 0.1);
        double delta = m["pair"].value("delta", params.delta_max * 0.5);
        CirclePoint xp(Fixed::from_double(x, c.precision_bits), 1);
        Fixed dl = Fixed::from_double(delta, c.precision_bits);
        DriftReport r = spec.model == CeilingModel::Log
                            ? find_drift_log(xp, dl, params, spec, cf)
                            : find_drift_power(xp, dl, params, spec, cf);
        rep["report"] = drift_report_json(r);
        // (R, e_R) series over the non-resonance-covered block range, in the
        // direction the drift ran (clean by the same scan the search used)
        std::string csv;
        if (spec.model == CeilingModel::Log && r.status != DriftStatus::NonResonanceBothSides) {
            std::size_t s = r.scale_s;
            std::uint64_t qs = cf.q(s).to_u64();
            std::uint64_t R_lim = std::max<std::uint64_t>(
                std::uint64_t(cf.q_dbl(s + 1) / (8.0 * params.C * double(qs))), 1);
            try {
                PairDiff pd(spec, cf, xp, dl);
                int sigma = r.direction == Direction::Forward ? 1 : -1;
                auto e = pd.block_prefix(sigma, qs, R_lim);
                csv = "R,e_R\n";
                for (std::size_t R = 1; R < e.size(); ++R) {
                    char line[96];
                    std::snprintf(line, sizeof line, "%zu,%.17g\n", R, e[R]);
                    csv += line;
                }
            } catch (const Error&) {
                // diagnostics only; the report already stands
            }
        }
        emit(c, rep, "drift", csv, "e_series.csv");
        return r.status == DriftStatus::Ok ? 0 : 1;
    }
    std::size_t pairs = m.value("pairs", 200);
    auto ens = swr_ensemble(params, spec, cf, pairs, c.seed, c.threads);
    json fails{{"non_resonance", ens.fail_nonres},
               {"no_drift", ens.fail_nodrift},
               {"window", ens.fail_window},
               {"precision", ens.fail_precision},
               {"band_or_budget", ens.fail_band}};
    rep["ensemble"] = {{"pairs", ens.pairs},
                       {"successes", ens.successes},
                       {"success_rate", ens.success_rate},
                       {"direction_histogram",
                        {{"forward", ens.forward}, {"backward", ens.backward}}},
                       {"median_n0", ens.median_n0},
                       {"branches", {{"forward_clear", ens.branch_forward},
                                     {"backward_clear", ens.branch_backward}}},
                       {"failures", fails}};
    std::string csv = "pair,success,scale_s,direction,branch,n0,p,window_fraction\n";
    for (std::size_t i = 0; i < ens.outcomes.size(); ++i) {
        const auto& o = ens.outcomes[i];
        char line[192];
        std::snprintf(line, sizeof line, "%zu,%d,%zu,%s,%s,%llu,%.17g,%.6f\n", i,
                      int(o.success), o.report.scale_s, to_string(o.report.direction),
                      o.report.branch.c_str(),
                      (unsigned long long)o.report.n0, o.report.p,
                      o.report.window.fraction);
        csv += line;
    }
    emit(c, rep, "drift", csv, "drift_pairs.csv");
    return ens.successes > 0 ? 0 : 1;
}

int cmd_wrfail(const Common& c, const json& m) {
    auto cf = cf_expand(c.alpha, m.value("depth", 45), c.precision_bits);
    WrParams wp;
    wp.gamma = m.value("gamma", -0.5);
    wp.offset = m.value("offset", 1.0);
    wp.w = m.value("w", std::size_t(8));
    wp.zeta = m.value("zeta", 0.01);
    if (m.contains("d")) wp.d = m["d"].get<double>();
    std::size_t samples = m.value("samples", std::size_t(50));
    auto con = wr_failure_construct(cf, wp, samples, c.seed);
    json viols = json::array();
    for (auto& [k, v] : con.protection_violations)
        viols.push_back({{"k", k}, {"dist", v}});
    std::size_t pass = 0, precision_aborts = 0;
    json rows = json::array();
    for (const auto& s : con.samples) {
        try {
            auto v = wr_failure_verify(s.x, con.delta0, wp, con, cf, s.i0);
            bool ok = v.pre_ok && v.post_ok && v.monotone && v.positive;
            pass += ok;
            rows.push_back({{"i0", v.i0},
                            {"pre_jump_max", v.pre_jump_max},
                            {"post_jump_min", v.post_jump_min},
                            {"monotone", v.monotone},
                            {"len_ok", v.len_ok},
                            {"wide_avoid", s.wide_avoid},
                            {"pass", ok}});
        } catch (const SingularityProximity&) {
            ++precision_aborts;
            rows.push_back({{"i0", s.i0}, {"pass", false}, {"precision_abort", true}});
        }
    }
    json rep = {{"config", c.resolved("wrfail")},
                {"params",
                 {{"gamma", wp.gamma},
                  {"offset", wp.offset},
                  {"w", wp.w},
                  {"zeta", wp.zeta},
                  {"d", con.d},
                  {"c", con.c},
                  {"l", con.l},
                  {"t_index", con.t_index}}},
                {"delta0", con.delta0_dbl},
                {"delta0_range", {con.range_lo, con.range_hi}},
                {"delta0_in_range", con.in_range},
                {"protection_violations", viols},
                {"w02_expected_measure", con.w02_expected_measure},
                {"w02_observed_rate", con.w02_observed_rate},
                {"samples", rows},
                {"pass_count", pass},
                {"precision_aborts", precision_aborts}};
    emit(c, rep, "wrfail");
    return pass + precision_aborts == con.samples.size() ? 0 : 1;
}

int cmd_mixing(const Common& c, const json& m) {
    auto cf = cf_expand(c.alpha, m.value("depth", 45), c.precision_bits);
    SpecialFlow flow(c.ceiling(), cf);
    auto rect = [&](const json& r, const char* fallback_lo) {
        return RectSet::make(r.value("lo", std::stod(fallback_lo)),
                             r.value("len", 0.25), r.value("h0", 1.0), flow);
    };
    RectSet A = rect(m.value("A", json::object()), "0.25");
    RectSet B = rect(m.value("B", json::object()), "0.625");
    int order = m.value("order", 2);
    std::uint64_t samples = m.value("samples", std::uint64_t(100000));
    std::vector<double> grid;
    if (m.contains("t_grid"))
        grid = m["t_grid"].get<std::vector<double>>();
    else
        grid = {m.value("t", 10.0)};
    auto rows = decay_scan(flow, A, B, grid, order, samples, c.seed, c.threads);
    json jr = json::array();
    std::string csv = "t1,t2,order,estimate,stderr,samples,aborts\n";
    for (const auto& r : rows) {
        jr.push_back({{"t1", r.t1},
                      {"t2", r.t2},
                      {"order", r.order},
                      {"estimate", r.estimate},
                      {"stderr", r.stderr_},
                      {"samples", r.samples},
                      {"aborts", r.aborts}});
        char line[160];
        std::snprintf(line, sizeof line, "%.17g,%.17g,%d,%.17g,%.17g,%llu,%llu\n", r.t1,
                      r.t2, r.order, r.estimate, r.stderr_,
                      (unsigned long long)r.samples, (unsigned long long)r.aborts);
        csv += line;
    }
    json rep = {{"config", c.resolved("mixing")},
                {"mu_A", A.measure(flow)},
                {"mu_B", B.measure(flow)},
                {"order", order},
                {"series", jr}};
    emit(c, rep, "mixing", csv, "correlations.csv");
    return 0;
}

int cmd_gauss(const Common& c, const json& m) {
    std::string mode = m.value("mode", "sample");
    json rep{{"config", c.resolved("gauss")}, {"mode", mode}};
    std::string csv;
    if (mode == "sample") {
        std::uint64_t count = m.value("count", std::uint64_t(100000));
        auto xs = gauss_invariant_sample(count, c.seed);
        double D = ks_statistic(xs, gauss_cdf);
        rep["count"] = count;
        rep["ks_statistic"] = D;
        rep["ks_pvalue"] = ks_pvalue(D, xs.size());
        csv = "x\n";
        for (std::size_t i = 0; i < std::min<std::size_t>(xs.size(), 10000); ++i)
            csv += std::to_string(xs[i]) + "\n";
    } else if (mode == "corr") {
        double a = m.value("a", 0.01);
        std::size_t k_max = m.value("k_max", std::size_t(10));
        std::uint64_t samples = m.value("samples", std::uint64_t(1000000));
        auto rows = gauss_correlation_grid(a, k_max, samples, c.seed, c.threads);
        json jr = json::array();
        csv = "k,l,ratio,stderr\n";
        double worst = 0;
        for (const auto& r : rows) {
            if (r.k != r.l) worst = std::max(worst, r.ratio);
            jr.push_back(
                {{"k", r.k}, {"l", r.l}, {"ratio", r.ratio}, {"stderr", r.stderr_}});
            csv += std::to_string(r.k) + "," + std::to_string(r.l) + "," +
                   std::to_string(r.ratio) + "," + std::to_string(r.stderr_) + "\n";
        }
        rep["a"] = a;
        rep["mu_a"] = gauss_cdf(a);
        rep["rows"] = jr;
        rep["max_offdiag_ratio"] = worst;
    } else if (mode == "blocks") {
        std::size_t n_min = m.value("n_min", std::size_t(3));
        std::size_t n_max = m.value("n_max", std::size_t(12));
        double d = m.value("d", 2.0);
        std::uint64_t samples = m.value("samples", std::uint64_t(100000));
        unsigned bits = m.value("bits", 768u);
        auto rows = block_quotient_stat(n_min, n_max, d, samples, c.seed, bits,
                                        c.threads);
        std::vector<double> lx, ly;
        json jr = json::array();
        csv = "n,fraction,stderr,hits\n";
        for (const auto& r : rows) {
            jr.push_back({{"n", r.n},
                          {"fraction", r.fraction},
                          {"stderr", r.stderr_},
                          {"hits", r.hits}});
            csv += std::to_string(r.n) + "," + std::to_string(r.fraction) + "," +
                   std::to_string(r.stderr_) + "," + std::to_string(r.hits) + "\n";
            if (r.fraction > 0) {
                lx.push_back(std::log(double(r.n)));
                ly.push_back(std::log(r.fraction));
            }
        }
        rep["rows"] = jr;
        if (lx.size() >= 2) rep["loglog_slope"] = linear_fit(lx, ly).slope;
    } else if (mode == "quotients") {
        auto cf = cf_expand(c.alpha, m.value("depth", std::size_t(30)),
                            std::max(c.precision_bits, 512u));
        auto q = gauss_quotients(cf.alpha(), m.value("depth", std::size_t(30)));
        rep["quotients"] = q;
    } else {
        throw ConfigInvalid("gauss mode must be sample|corr|blocks|quotients");
    }
    emit(c, rep, "gauss", csv, "gauss.csv");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rotlab: special flows over irrational rotations, at desk scale"};
    app.require_subcommand(1);
    app.fallthrough();

    Common c;
    app.add_option("--config", c.config_path, "JSON config file");
    app.add_option("--seed", c.seed, "RNG seed");
    app.add_option("--precision-bits", c.precision_bits, "circle arithmetic bits");
    app.add_option("--threads", c.threads, "worker thread cap");
    app.add_option("--out", c.out_dir, "output directory (default: stdout)");
    app.add_option("--alpha", c.alpha, "rotation number: surd:p,q,D,r | cf:a1,a2,... | dec:0.dd");
    app.add_option("--ceiling", c.ceiling_json, "ceiling spec JSON");
    std::string backend;
    app.add_option("--kernels", backend, "force kernel backend (scalar|avx2|neon)");

    std::size_t depth = 20, bracket = 0;
    auto* cf_cmd = app.add_subcommand("cf", "continued-fraction expansion");
    cf_cmd->add_option("--depth", depth, "partial quotients to expand");
    cf_cmd->add_option("--bracket", bracket, "verify the best-approximation bracket to s");

    std::string rule = "log78";
    auto* sieve_cmd = app.add_subcommand("sieve", "K_alpha and Diophantine sieves");
    sieve_cmd->add_option("--depth", depth, "sieve depth");
    sieve_cmd->add_option("--rule", rule, "x_s rule: log78 | inv_s2");

    double bx = 0.1, bt = 10.0, bs = 0.0;
    std::int64_t bn = 100;
    bool prime = false, naive = false;
    auto* birk = app.add_subcommand("birkhoff", "Birkhoff sums of the ceiling");
    birk->add_option("--x", bx, "base point");
    birk->add_option("--n", bn, "signed step count");
    birk->add_flag("--prime", prime, "sum the derivative instead");
    birk->add_flag("--naive", naive, "use the reference path");

    std::size_t fsteps = 0;
    auto* flow = app.add_subcommand("flow", "evaluate the special flow");
    flow->add_option("--x", bx, "base point");
    flow->add_option("--s", bs, "fiber height");
    flow->add_option("--t", bt, "flow time");
    flow->add_option("--trajectory-steps", fsteps, "CSV sample count along the way");

    auto* drift = app.add_subcommand("drift", "slow-divergence drift experiments");
    auto* wrfail = app.add_subcommand("wrfail", "failure-of-WR construction");
    auto* mixing = app.add_subcommand("mixing", "mixing correlation estimates");
    auto* gauss = app.add_subcommand("gauss", "Gauss-map statistics");

    try {
        app.parse(argc, argv);
        if (!backend.empty()) kernels::force(backend);
        c.load();
        if (cf_cmd->parsed()) return cmd_cf(c, depth, bracket);
        if (sieve_cmd->parsed()) return cmd_sieve(c, depth, rule);
        if (birk->parsed()) return cmd_birkhoff(c, bx, bn, prime, naive);
        if (flow->parsed()) return cmd_flow(c, bx, bs, bt, fsteps);
        if (drift->parsed()) return cmd_drift(c, c.module("drift"));
        if (wrfail->parsed()) return cmd_wrfail(c, c.module("wrfail"));
        if (mixing->parsed()) return cmd_mixing(c, c.module("mixing"));
        if (gauss->parsed()) return cmd_gauss(c, c.module("gauss"));
        return 2;
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const RationalInput& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const RuleViolation& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const OutOfRange& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ConstructionFailed& e) {
        std::cerr << "experiment failed (" << e.stage << "): " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "experiment failed: " << e.what() << "\n";
        return 1;
    }
}
