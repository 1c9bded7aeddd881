// Command-line front end: computes L^q spectra, pressure zeros, freeness
// certificates and dichotomy verdicts for uniformly hyperbolic families of
// unimodular matrices acting on the projective line.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "mobius/analyzer.hpp"
#include "mobius/errors.hpp"
#include "mobius/freeness.hpp"
#include "mobius/io.hpp"
#include "mobius/measure.hpp"
#include "mobius/pressure.hpp"
#include "mobius/runtime.hpp"
#include "mobius/word.hpp"

using json = nlohmann::ordered_json;
using namespace mobius;

namespace {

struct GlobalConfig {
    std::string out;
    std::string format = "csv";
    uint64_t budget = 10000000;
    uint64_t seed = 20240901;
    int threads = 0; // 0 = all available
};

void write_output(const GlobalConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) raise(ErrorCode::InvalidArgument, "cannot open output file: " + cfg.out);
    f << text;
}

std::vector<double> parse_doubles(const std::string& list) {
    std::vector<double> out;
    std::istringstream in(list);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

std::vector<int> parse_ints(const std::string& list) {
    std::vector<int> out;
    std::istringstream in(list);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

void check_q_values(const std::vector<double>& qs) {
    for (double q : qs)
        if (q < 1.05) raise(ErrorCode::InvalidArgument, "q values must be >= 1.05");
}

void check_m_values(const std::vector<int>& ms) {
    for (int m : ms)
        if (m < 0 || m > 28) raise(ErrorCode::InvalidArgument, "m values must lie in [0, 28]");
}

json spectrum_json(const SpectrumReport& rep) {
    json j;
    j["q"] = rep.q;
    j["estimate"] = rep.estimate;
    j["uncertainty"] = rep.uncertainty;
    j["method"] = rep.method;
    json samples = json::array();
    for (size_t i = 0; i < rep.samples.size(); ++i) {
        samples.push_back(
            {{"m", rep.m_values[i]}, {"sample", rep.samples[i]}, {"fit", rep.fit_values[i]}});
    }
    j["samples"] = samples;
    return j;
}

int cmd_spectrum(const GlobalConfig& cfg, const std::string& ifs_spec, const std::string& q_list,
                 const std::string& m_list, int oversample) {
    MobiusIFS ifs = resolve_ifs_spec(ifs_spec);
    std::vector<double> qs = parse_doubles(q_list);
    std::vector<int> ms = parse_ints(m_list);
    check_q_values(qs);
    check_m_values(ms);
    std::vector<DyadicHistogram> hists;
    for (int m : ms) hists.push_back(discretize(ifs, m, oversample, std::nullopt, cfg.budget));
    std::vector<SpectrumReport> reps;
    for (double q : qs) {
        reps.push_back(spectrum_from_histograms(hists, q));
        reps.back().method = "stopping-pushforward";
    }
    if (cfg.format == "json") {
        json j = json::array();
        for (const auto& r : reps) j.push_back(spectrum_json(r));
        write_output(cfg, j.dump(2) + "\n");
        return 0;
    }
    std::ostringstream out;
    if (reps.size() == 1) {
        out << "m,sample,fit\n";
        const auto& r = reps[0];
        for (size_t i = 0; i < r.samples.size(); ++i)
            out << r.m_values[i] << ',' << fmt12(r.samples[i]) << ',' << fmt12(r.fit_values[i])
                << '\n';
    } else {
        out << "q,m,sample,fit\n";
        for (const auto& r : reps)
            for (size_t i = 0; i < r.samples.size(); ++i)
                out << fmt12(r.q) << ',' << r.m_values[i] << ',' << fmt12(r.samples[i]) << ','
                    << fmt12(r.fit_values[i]) << '\n';
    }
    write_output(cfg, out.str());
    return 0;
}

int cmd_pressure(const GlobalConfig& cfg, const std::string& ifs_spec, double q,
                 const std::string& s_list, const std::string& n_list) {
    MobiusIFS ifs = resolve_ifs_spec(ifs_spec);
    check_q_values({q});
    PressureEngine engine(ifs, cfg.budget);
    double rho = norm_product_constant(ifs, 4);
    PressureCurve curve = pressure_curve(engine, q, parse_doubles(s_list),
                                         parse_ints(n_list), rho);
    std::ostringstream out;
    out << "q,s,n,value,upper_bound,lower_bound\n";
    for (const auto& e : curve.evaluations)
        out << fmt12(e.q) << ',' << fmt12(e.s) << ',' << e.n << ',' << fmt12(e.value) << ','
            << fmt12(e.upper_bound) << ',' << fmt12(e.lower_bound) << '\n';
    write_output(cfg, out.str());
    return 0;
}

int cmd_tau_tilde(const GlobalConfig& cfg, const std::string& ifs_spec, const std::string& q_list,
                  int n, double tol, int via_stopping_m) {
    MobiusIFS ifs = resolve_ifs_spec(ifs_spec);
    std::vector<double> qs = parse_doubles(q_list);
    check_q_values(qs);
    PressureEngine engine(ifs, cfg.budget);
    if (n <= 0) n = default_pressure_depth(ifs);
    double rho = norm_product_constant(ifs, 4);
    std::vector<TauTildeEstimate> ests;
    for (double q : qs) {
        TauTildeEstimate est = tau_tilde(engine, q, n, tol, rho);
        if (via_stopping_m > 0)
            est.via_stopping = tau_tilde_via_stopping(ifs, q, via_stopping_m, cfg.budget);
        ests.push_back(est);
    }
    if (cfg.format == "json") {
        json j = json::array();
        for (const auto& e : ests) {
            json row{{"q", e.q},
                     {"root", e.root},
                     {"bracket_lo", e.bracket_lo},
                     {"bracket_hi", e.bracket_hi},
                     {"n", e.n_used},
                     {"certified_lo", e.certified_lo},
                     {"certified_hi", e.certified_hi}};
            if (e.via_stopping) row["via_stopping"] = *e.via_stopping;
            j.push_back(row);
        }
        write_output(cfg, j.dump(2) + "\n");
        return 0;
    }
    std::ostringstream out;
    out << "q,root,bracket_lo,bracket_hi,via_stopping\n";
    for (const auto& e : ests) {
        out << fmt12(e.q) << ',' << fmt12(e.root) << ',' << fmt12(e.bracket_lo) << ','
            << fmt12(e.bracket_hi) << ',';
        if (e.via_stopping) out << fmt12(*e.via_stopping);
        out << '\n';
    }
    write_output(cfg, out.str());
    return 0;
}

json verdict_json(const DichotomyVerdict& v) {
    json j;
    j["case"] = dichotomy_case_name(v.verdict);
    if (v.alpha_hat) j["alpha_hat"] = *v.alpha_hat;
    if (v.q0_hat) {
        j["q0_hat"] = *v.q0_hat;
        j["q0_uncertainty"] = v.q0_uncertainty;
    }
    j["fit_residual"] = v.fit_residual;
    j["gap_threshold"] = v.gap_threshold;
    json rows = json::array();
    for (const auto& r : v.rows)
        rows.push_back({{"q", r.q},
                        {"tau_hat", r.tau_hat},
                        {"tau_tilde_hat", r.tau_tilde_hat},
                        {"envelope", r.envelope},
                        {"gap", r.gap}});
    j["rows"] = rows;
    return j;
}

std::string verdict_csv(const DichotomyVerdict& v) {
    std::ostringstream out;
    out << "q,tau_hat,tau_tilde_hat,envelope,gap\n";
    for (const auto& r : v.rows)
        out << fmt12(r.q) << ',' << fmt12(r.tau_hat) << ',' << fmt12(r.tau_tilde_hat) << ','
            << fmt12(r.envelope) << ',' << fmt12(r.gap) << '\n';
    return out.str();
}

int cmd_dichotomy(const GlobalConfig& cfg, const std::string& ifs_spec, const std::string& q_grid,
                  const std::string& m_list, double gap_threshold, int depth, int oversample) {
    MobiusIFS ifs = resolve_ifs_spec(ifs_spec);
    std::vector<double> qs = parse_doubles(q_grid);
    std::vector<int> ms = parse_ints(m_list);
    check_q_values(qs);
    check_m_values(ms);
    DichotomyOptions opts;
    opts.gap_threshold = gap_threshold;
    opts.pressure_depth = depth;
    opts.oversample = oversample;
    opts.budget = cfg.budget;
    DichotomyVerdict v = dichotomy_probe(ifs, qs, ms, opts);
    if (cfg.format == "json")
        write_output(cfg, verdict_json(v).dump(2) + "\n");
    else
        write_output(cfg, verdict_csv(v));
    std::fprintf(stderr, "verdict: %s\n", dichotomy_case_name(v.verdict));
    return v.verdict == DichotomyCase::Inconclusive ? 2 : 0;
}

int cmd_freeness(const GlobalConfig& cfg, const std::string& ifs_spec, int depth) {
    MobiusIFS ifs = resolve_ifs_spec(ifs_spec);
    FreenessReport rep = check_freeness_exhaustive(ifs.maps, depth, cfg.budget);
    json j;
    j["method"] = "EXHAUSTIVE";
    j["depth"] = rep.depth;
    j["words_checked"] = rep.words_checked;
    j["verdict"] = rep.free_up_to_depth ? "FREE_UP_TO_DEPTH" : "COLLISION";
    if (rep.collision) {
        j["collision"] = {{"word1", word_to_string(rep.collision->first)},
                          {"word2", word_to_string(rep.collision->second)}};
    }
    write_output(cfg, j.dump(2) + "\n");
    return 0;
}

int cmd_mod4_cert(const GlobalConfig& cfg, long n, const std::string& t_text) {
    Mod4Certificate cert =
        t_text.empty() ? mod4_certificate(n) : mod4_certificate_for_t(parse_rational(t_text));
    json j;
    j["t"] = rational_to_string(cert.t);
    j["pass"] = cert.pass;
    json steps = json::array();
    for (const auto& s : cert.steps)
        steps.push_back(
            {{"step", s.step}, {"check", s.name}, {"pass", s.pass}, {"detail", s.detail}});
    j["steps"] = steps;
    json conj = json::array();
    for (const auto& m : cert.conjugated) {
        conj.push_back({m[0].get_str(), m[1].get_str(), m[2].get_str(), m[3].get_str()});
    }
    j["conjugated_inverses"] = conj;
    json images = json::array();
    for (const auto& m : cert.images_mod4) images.push_back({m[0], m[1], m[2], m[3]});
    j["images_mod4"] = images;
    j["closure_size"] = cert.closure_size;
    if (cert.pass) {
        j["verdict"] = "FREE_UP_TO_DEPTH";
        j["depth"] = "unbounded";
        j["method"] = "MOD4_CERTIFICATE";
    } else {
        j["verdict"] = "CERTIFICATE_FAILED";
    }
    write_output(cfg, j.dump(2) + "\n");
    return cert.pass ? 0 : 1;
}

int cmd_separation(const GlobalConfig& cfg, const std::string& ifs_spec, int n_max,
                   int stopping_m) {
    MobiusIFS ifs = resolve_ifs_spec(ifs_spec);
    SeparationProfile prof = separation_profile(ifs, n_max, cfg.budget);
    std::ostringstream out;
    out << "n,min_distance,log2_min\n";
    for (size_t i = 0; i < prof.n_values.size(); ++i) {
        out << prof.n_values[i] << ',' << fmt12(prof.min_distance[i]) << ',';
        if (prof.min_distance[i] > 0) out << fmt12(std::log2(prof.min_distance[i]));
        else out << "-inf";
        out << '\n';
    }
    write_output(cfg, out.str());
    std::fprintf(stderr, "fitted_rate: %s\n", fmt12(prof.fitted_rate).c_str());
    if (stopping_m > 0) {
        StoppingSeparation sep = stopping_separation(ifs, stopping_m, cfg.budget);
        std::fprintf(stderr, "stopping m=%d min=%s implied_rate=%s\n", sep.m,
                     fmt12(sep.min_distance).c_str(), fmt12(sep.implied_rate).c_str());
    }
    return 0;
}

int cmd_attractor(const GlobalConfig& cfg, const std::string& ifs_spec, int depth) {
    MobiusIFS ifs = resolve_ifs_spec(ifs_spec);
    HyperbolicityCertificate cert = find_invariant_domain(ifs);
    IntervalSet cover = attractor_cover(ifs, cert, depth, cfg.budget);
    std::ostringstream out;
    out << "arc_start,arc_end,chart_hi,chart_lo\n";
    for (const auto& a : cover.arcs()) {
        double end = wrap_pi(a.start + a.len);
        out << fmt12(a.start) << ',' << fmt12(end) << ','
            << fmt12(ProjPoint::from_angle(a.start).affine()) << ','
            << fmt12(ProjPoint::from_angle(end).affine()) << '\n';
    }
    write_output(cfg, out.str());
    std::fprintf(stderr, "margin: %s  C1: %s  components: %zu\n", fmt12(cert.margin).c_str(),
                 fmt12(cert.contraction_constant_C1).c_str(), cover.size());
    return 0;
}

int cmd_hausdorff(const GlobalConfig& cfg, const std::string& ifs_spec) {
    MobiusIFS ifs = resolve_ifs_spec(ifs_spec);
    HausdorffPrediction hp = hausdorff_prediction(ifs, 10, 100000, 40, cfg.seed);
    json j{{"entropy", hp.entropy},
           {"chi_enum", hp.chi_enum},
           {"enum_depth", hp.enum_depth},
           {"chi_mc", hp.chi_mc},
           {"mc_depth", hp.mc_depth},
           {"value", hp.value}};
    write_output(cfg, j.dump(2) + "\n");
    return 0;
}

int cmd_stopping(const GlobalConfig& cfg, const std::string& ifs_spec, int m) {
    MobiusIFS ifs = resolve_ifs_spec(ifs_spec);
    StoppingSet set = stopping_set(ifs, m, cfg.budget);
    std::ostringstream out;
    out << "word,weight,norm_sq\n";
    for (const auto& e : set.entries) {
        out << word_to_string(e.word) << ',';
        if (ifs.exact()) out << rational_to_string(e.weight_exact);
        else out << fmt12(e.weight);
        out << ',' << fmt12(e.norm_sq) << '\n';
    }
    write_output(cfg, out.str());
    return 0;
}

int cmd_histogram(const GlobalConfig& cfg, const std::string& ifs_spec, int m, int oversample) {
    MobiusIFS ifs = resolve_ifs_spec(ifs_spec);
    DyadicHistogram h = discretize(ifs, m, oversample, std::nullopt, cfg.budget);
    std::ostringstream out;
    out << "bin_index,angle_lo,mass\n";
    for (const auto& [k, v] : h.masses)
        out << k << ',' << fmt12(k * h.bin_width()) << ',' << fmt12(v) << '\n';
    write_output(cfg, out.str());
    return 0;
}

int cmd_diagnostics(const GlobalConfig& cfg, const std::string& ifs_spec, int m, double q,
                    double epsilon, double delta, int oversample) {
    MobiusIFS ifs = resolve_ifs_spec(ifs_spec);
    check_q_values({q});
    std::vector<int> fit_scales;
    for (int s = std::max(4, m - 6); s <= m; s += 2) fit_scales.push_back(s);
    SpectrumReport rep = spectrum_estimate(ifs, q, fit_scales, oversample, cfg.budget);
    double alpha_hat = rep.estimate / q;
    DyadicHistogram h = discretize(ifs, m, oversample, std::nullopt, cfg.budget);
    MultifractalDiagnostics diag =
        multifractal_diagnostics(h, q, alpha_hat, rep.estimate, epsilon, delta);
    json j{{"m", m},        {"q", q},           {"alpha_hat", diag.alpha_hat},
           {"tau_hat", diag.tau_hat}, {"epsilon", diag.epsilon}, {"delta", diag.delta}};
    json checks = json::array();
    for (const auto& c : diag.checks)
        checks.push_back({{"check", c.check},
                          {"description", c.description},
                          {"pass", c.pass},
                          {"lhs", c.lhs},
                          {"rhs", c.rhs}});
    j["checks"] = checks;
    write_output(cfg, j.dump(2) + "\n");
    return 0;
}

int cmd_solomyak(const GlobalConfig& cfg, const std::string& t_text, const std::string& p0_text,
                 double q_max, int m_max) {
    Rational t = parse_rational(t_text);
    Rational p0 = parse_rational(p0_text);
    MobiusIFS ifs = solomyak_preset(t, p0);

    std::vector<double> q_grid{1.2, 2.0, 4.0};
    for (double q = 8.0; q <= q_max + 1e-9; q += 4.0) q_grid.push_back(q);
    if (q_grid.size() < 6) q_grid = {1.2, 2.0, 4.0, 6.0, 8.0, q_max};
    std::vector<int> m_list;
    for (int m = std::max(8, m_max - 8); m <= m_max; m += 2) m_list.push_back(m);

    DichotomyOptions opts;
    opts.budget = cfg.budget;
    DichotomyVerdict v = dichotomy_probe(ifs, q_grid, m_list, opts);

    std::vector<double> q_checks{q_grid.begin() + q_grid.size() / 2, q_grid.end()};
    CounterexampleReport cx =
        counterexample_bounds(ifs, p0.get_d(), m_list, q_checks, {4, cfg.budget});

    json j;
    j["family"] = ifs.label;
    j["dichotomy"] = verdict_json(v);
    json mass = json::array();
    for (const auto& mc : cx.mass_checks)
        mass.push_back({{"m", mc.m},
                        {"n", mc.n},
                        {"window_mass", mc.window_mass},
                        {"bound", mc.bound},
                        {"pass", mc.pass}});
    j["counterexample"] = {{"p0", cx.p0},
                           {"local_rate", cx.local_rate},
                           {"global_rate", cx.global_rate},
                           {"slope_bound", cx.slope_bound},
                           {"mass_checks", mass}};
    json slope = json::array();
    for (size_t i = 0; i < cx.q_values.size(); ++i)
        slope.push_back({{"q", cx.q_values[i]},
                         {"tau_hat", cx.tau_hat[i]},
                         {"pass", static_cast<bool>(cx.slope_checks[i])}});
    j["counterexample"]["slope_checks"] = slope;

    // integrality-based certificate applies when t is a positive multiple of 9
    Rational nine(9);
    Rational ratio = t / nine;
    if (ratio.get_den() == 1 && ratio > 0) {
        Mod4Certificate cert = mod4_certificate_for_t(t);
        j["mod4_certificate"] = {{"pass", cert.pass}, {"closure_size", cert.closure_size}};
    }

    write_output(cfg, j.dump(2) + "\n");
    std::fprintf(stderr, "verdict: %s\n", dichotomy_case_name(v.verdict));
    return v.verdict == DichotomyCase::Inconclusive ? 2 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"L^q spectra, pressure zeros and dichotomy diagnostics for "
                 "projective-line matrix iterated function systems"};
    app.require_subcommand(1);

    GlobalConfig cfg;
    if (const char* env = std::getenv("MOBIUSLQ_BUDGET")) cfg.budget = std::strtoull(env, nullptr, 10);
    app.add_option("--out", cfg.out, "output file (stdout when absent)");
    app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--budget", cfg.budget, "word/tree budget");
    app.add_option("--seed", cfg.seed, "seed for sampled estimators");
    app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)");

    std::string ifs_spec = "preset:solomyak:t=9:p0=49/100";
    std::string q_list = "2", m_list = "8,10,12", s_list = "1", n_list = "4";
    std::string t_text, p0_text = "49/100";
    int oversample = 4, depth = 8, n_depth = 0, via_stopping_m = 0, n_max = 5, stopping_m = 0;
    int m_single = 12;
    long cert_n = 1;
    double q_single = 2.0, tol = 1e-6, gap_threshold = 0.25, q_max = 12.0, epsilon = 0.1,
           delta = 0.1;
    int m_max = 18;

    auto* spectrum = app.add_subcommand("spectrum", "finite-scale L^q spectrum estimates");
    spectrum->add_option("--ifs", ifs_spec);
    spectrum->add_option("--q", q_list);
    spectrum->add_option("--m", m_list);
    spectrum->add_option("--oversample", oversample);

    auto* pressure = app.add_subcommand("pressure", "pressure partials with two-sided bounds");
    pressure->add_option("--ifs", ifs_spec);
    pressure->add_option("--q", q_single);
    pressure->add_option("--s", s_list);
    pressure->add_option("--n", n_list);

    auto* tau = app.add_subcommand("tau-tilde", "zero of the pressure partial");
    tau->add_option("--ifs", ifs_spec);
    tau->add_option("--q", q_list);
    tau->add_option("--n", n_depth, "working depth (0 = default)");
    tau->add_option("--tol", tol);
    tau->add_option("--via-stopping-m", via_stopping_m, "also evaluate the stopping-set form");

    auto* dich = app.add_subcommand("dichotomy", "classify the spectrum shape");
    dich->add_option("--ifs", ifs_spec);
    std::string q_grid = "1.2,2,4,8,12,16";
    dich->add_option("--q-grid", q_grid);
    dich->add_option("--m", m_list);
    dich->add_option("--gap-threshold", gap_threshold);
    dich->add_option("--depth", n_depth, "pressure working depth (0 = default)");
    dich->add_option("--oversample", oversample);

    auto* freeness = app.add_subcommand("freeness", "exhaustive exact freeness check");
    freeness->add_option("--ifs", ifs_spec);
    freeness->add_option("--depth", depth);

    auto* mod4 = app.add_subcommand("mod4-cert", "reduction certificate for the t=9n family");
    mod4->add_option("--n", cert_n);
    mod4->add_option("--t", t_text, "explicit parameter t (overrides --n)");

    auto* separation = app.add_subcommand("separation", "same-length separation profile");
    separation->add_option("--ifs", ifs_spec);
    separation->add_option("--n-max", n_max);
    separation->add_option("--stopping-m", stopping_m, "also report the stopping-set minimum");

    auto* attractor = app.add_subcommand("attractor", "finite cover of the attractor");
    attractor->add_option("--ifs", ifs_spec);
    attractor->add_option("--depth", depth);

    auto* hausdorff = app.add_subcommand("hausdorff", "entropy over twice the exponent");
    hausdorff->add_option("--ifs", ifs_spec);

    auto* stopping = app.add_subcommand("stopping", "dump the first-passage word set");
    stopping->add_option("--ifs", ifs_spec);
    stopping->add_option("--m", m_single);

    auto* histogram = app.add_subcommand("histogram", "discretized stationary measure");
    histogram->add_option("--ifs", ifs_spec);
    histogram->add_option("--m", m_single);
    histogram->add_option("--oversample", oversample);

    auto* diagnostics = app.add_subcommand("diagnostics", "finite-scale multifractal checks");
    diagnostics->add_option("--ifs", ifs_spec);
    diagnostics->add_option("--m", m_single);
    diagnostics->add_option("--q", q_single);
    diagnostics->add_option("--epsilon", epsilon);
    diagnostics->add_option("--delta", delta);
    diagnostics->add_option("--oversample", oversample);

    auto* solomyak = app.add_subcommand("solomyak", "one-shot overlap family reproduction");
    solomyak->add_option("--t", t_text)->default_str("9");
    solomyak->add_option("--p0", p0_text);
    solomyak->add_option("--q-max", q_max);
    solomyak->add_option("--m-max", m_max);

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    set_worker_threads(cfg.threads > 0 ? cfg.threads
                                       : static_cast<int>(std::thread::hardware_concurrency()));

    try {
        if (*spectrum) return cmd_spectrum(cfg, ifs_spec, q_list, m_list, oversample);
        if (*pressure) return cmd_pressure(cfg, ifs_spec, q_single, s_list, n_list);
        if (*tau) return cmd_tau_tilde(cfg, ifs_spec, q_list, n_depth, tol, via_stopping_m);
        if (*dich) return cmd_dichotomy(cfg, ifs_spec, q_grid, m_list, gap_threshold, n_depth,
                                        oversample);
        if (*freeness) return cmd_freeness(cfg, ifs_spec, depth);
        if (*mod4) return cmd_mod4_cert(cfg, cert_n, t_text);
        if (*separation) return cmd_separation(cfg, ifs_spec, n_max, stopping_m);
        if (*attractor) return cmd_attractor(cfg, ifs_spec, depth);
        if (*hausdorff) return cmd_hausdorff(cfg, ifs_spec);
        if (*stopping) return cmd_stopping(cfg, ifs_spec, m_single);
        if (*histogram) return cmd_histogram(cfg, ifs_spec, m_single, oversample);
        if (*diagnostics)
            return cmd_diagnostics(cfg, ifs_spec, m_single, q_single, epsilon, delta, oversample);
        if (*solomyak)
            return cmd_solomyak(cfg, t_text.empty() ? "9" : t_text, p0_text, q_max, m_max);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
