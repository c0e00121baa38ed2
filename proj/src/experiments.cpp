#include "ccwave/experiments.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ccwave/decomposition.hpp"
#include "ccwave/errors.hpp"
#include "ccwave/field_io.hpp"
#include "ccwave/fourier.hpp"
#include "ccwave/illposed.hpp"
#include "ccwave/normalform.hpp"
#include "ccwave/symbols.hpp"
#include "ccwave/wavepacket.hpp"

namespace ccwave {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

const std::map<std::string, ExperimentKind> kKinds = {
    {"evolve", ExperimentKind::evolve},       {"linear_decay", ExperimentKind::linear_decay},
    {"wavepacket", ExperimentKind::wavepacket}, {"scatter", ExperimentKind::scatter},
    {"illposed", ExperimentKind::illposed},   {"norms", ExperimentKind::norms},
    {"symbols", ExperimentKind::symbols}};

const std::map<ExperimentKind, std::set<std::string>> kAllowedKeys = {
    {ExperimentKind::evolve,
     {"experiment", "seed", "nx", "ny", "Lx", "Ly", "h", "dt", "t_end", "amplitude", "ic",
      "ic_file", "snapshot_every", "k0", "sigma_x", "sigma_y"}},
    {ExperimentKind::linear_decay,
     {"experiment", "seed", "nx", "ny", "Lx", "Ly", "h", "amplitude", "ic", "ic_file", "k0",
      "sigma_x", "sigma_y", "times"}},
    {ExperimentKind::wavepacket, {"experiment", "seed", "run", "v"}},
    {ExperimentKind::scatter, {"experiment", "seed", "run", "times"}},
    {ExperimentKind::illposed, {"experiment", "seed", "p", "eps", "N"}},
    {ExperimentKind::norms, {"experiment", "seed", "in", "t"}},
    {ExperimentKind::symbols, {"experiment", "seed", "h"}},
};

Depth depth_from_json(const json& v) {
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return Depth::infinite();
        throw config_error("config: h must be a positive number or \"inf\"");
    }
    const double h = v.get<double>();
    if (!(h > 0.0)) throw config_error("config: h must be positive");
    return Depth::finite(h);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_manifest(const std::string& out_dir, const ExperimentConfig& cfg,
                    const std::map<std::string, double>& constants) {
    json m;
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016" PRIx64, fnv1a(cfg.raw_json));
    m["config_hash"] = hash;
    m["version"] = kVersion;
    json c = json::object();
    for (const auto& kv : constants) c[kv.first] = kv.second;
    m["constants"] = c;
    std::ofstream out(fs::path(out_dir) / "manifest.json");
    out << m.dump(2) << "\n";
}

Field load_or_build_datum(const ExperimentConfig& cfg) {
    if (cfg.ic == "file") {
        if (cfg.ic_file.empty()) throw config_error("config: ic=file requires ic_file");
        return read_field(cfg.ic_file);
    }
    if (cfg.ic != "gaussian") throw config_error("config: ic must be \"gaussian\" or \"file\"");
    Grid g = make_grid(cfg.nx, cfg.ny, cfg.Lx, cfg.Ly);
    const double sx = cfg.sigma_x > 0.0 ? cfg.sigma_x : std::max(cfg.Lx, cfg.Ly) / 64.0;
    const double sy = cfg.sigma_y > 0.0 ? cfg.sigma_y : sx;
    return gaussian_datum(g, cfg.h, cfg.amplitude, cfg.k0, sx, sy);
}

std::vector<Field> load_run_snapshots(const std::string& run_dir) {
    std::vector<Field> snaps;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(run_dir))
        if (e.path().extension() == ".ccf1") files.push_back(e.path());
    if (files.empty()) throw config_error("run dir has no .ccf1 snapshots: " + run_dir);
    for (const auto& p : files) snaps.push_back(read_field(p.string()));
    std::sort(snaps.begin(), snaps.end(), [](const Field& a, const Field& b) { return a.t < b.t; });
    return snaps;
}

RunResult run_evolve(const ExperimentConfig& cfg, const std::string& out_dir) {
    Field u0 = load_or_build_datum(cfg);
    SolverConfig sc;
    sc.dt = cfg.dt;
    sc.t_end = cfg.t_end;
    sc.h = cfg.h;
    sc.snapshot_every = cfg.snapshot_every;

    std::ofstream diag(fs::path(out_dir) / "diagnostics.csv");
    diag << "t,mass,energy,sup_ux,outside_mass_fraction\n";
    int counter = 0;
    auto sink = [&](const Field& u, const DiagnosticsRecord& d) {
        char name[32];
        std::snprintf(name, sizeof(name), "u_%06d.ccf1", counter++);
        write_field((fs::path(out_dir) / name).string(), u);
        diag << fmt_g17(d.t) << ',' << fmt_g17(d.mass) << ',' << fmt_g17(d.energy) << ','
             << fmt_g17(d.sup_ux) << ',' << fmt_g17(d.outside_mass_fraction) << "\n";
    };

    RunResult rr;
    try {
        EvolveResult er = evolve(u0, sc, sink);
        if (er.wrapped) {
            rr.exit_code = 3;
            rr.message = "wrap-around flag raised (outside mass fraction > 1e-6)";
        }
    } catch (const blowup_error& e) {
        rr.exit_code = 3;
        rr.message = e.what();
    }
    return rr;
}

RunResult run_linear_decay(const ExperimentConfig& cfg, const std::string& out_dir) {
    if (cfg.times.size() < 5) throw config_error("linear_decay: need >= 5 times");
    Field u0 = load_or_build_datum(cfg);
    Field u0f = to_fourier(u0);
    std::ofstream csv(fs::path(out_dir) / "decay.csv");
    csv << "t,weighted_sup\n";
    std::vector<double> ts, vals;
    for (double t : cfg.times) {
        Field ut = propagate_linear(u0f, t - u0f.t);
        const double w = weighted_sup_dx(ut);
        ts.push_back(t);
        vals.push_back(w);
        csv << fmt_g17(t) << ',' << fmt_g17(w) << "\n";
    }
    DecayFit fit = decay_fit(ts, vals);
    RunResult rr;
    rr.constants["linear_decay_slope"] = fit.slope;
    rr.constants["linear_decay_r2"] = fit.r2;
    return rr;
}

RunResult run_wavepacket(const ExperimentConfig& cfg, const std::string& out_dir) {
    std::vector<Field> snaps = load_run_snapshots(cfg.run_dir);
    std::ofstream csv(fs::path(out_dir) / "gamma.csv");
    csv << "t,v,vy,re_gamma,im_gamma,reconstructed_ux,sampled_ux\n";
    RunResult rr;
    double max_l1_const = 0.0;
    for (const Field& u : snaps) {
        if (u.t < 1.0) continue;
        for (double v : cfg.v_list) {
            PacketSpec spec;
            spec.t = u.t;
            spec.v = v;
            spec.h = u.h;
            if (!spec.in_sigma()) continue;
            const cplx gam = gamma_test(u, spec);
            const double rec = reconstruct_ux(gam, spec);
            const double samp = sample_ux(u, spec);
            csv << fmt_g17(u.t) << ',' << fmt_g17(v) << ',' << fmt_g17(spec.v_y) << ','
                << fmt_g17(gam.real()) << ',' << fmt_g17(gam.imag()) << ',' << fmt_g17(rec) << ','
                << fmt_g17(samp) << "\n";
            const double l1 = l1_norm(build_packet(spec, u.grid));
            max_l1_const = std::max(max_l1_const, l1 * std::hypot(1.0, v) / spec.t);
        }
    }
    rr.constants["packet_l1_constant"] = max_l1_const;
    return rr;
}

RunResult run_scatter(const ExperimentConfig& cfg, const std::string& out_dir) {
    std::vector<Field> all = load_run_snapshots(cfg.run_dir);
    std::vector<Field> sel;
    if (!cfg.times.empty()) {
        for (double t : cfg.times) {
            const Field* best = nullptr;
            for (const Field& f : all)
                if (!best || std::abs(f.t - t) < std::abs(best->t - t)) best = &f;
            if (!best || std::abs(best->t - t) > 1e-6 * std::max(1.0, t))
                throw config_error("scatter: no snapshot near t = " + fmt_g17(t));
            sel.push_back(*best);
        }
    } else {
        // greedy sqrt(2)-separated subsequence starting at the first t >= 10
        double next = 10.0;
        for (const Field& f : all)
            if (f.t >= next) {
                sel.push_back(f);
                next = f.t * std::sqrt(2.0);
            }
    }
    ScatterSeries ss = scattering_profile(sel);
    std::ofstream csv(fs::path(out_dir) / "scatter.csv");
    csv << "t,cauchy_diff,corr_norm,pullback_mass\n";
    for (std::size_t j = 0; j < ss.t.size(); ++j) {
        const double d = j + 1 < ss.t.size() ? ss.cauchy_diff[j] : 0.0;
        csv << fmt_g17(ss.t[j]) << ',' << fmt_g17(d) << ',' << fmt_g17(ss.correction_l2[j]) << ','
            << fmt_g17(ss.pullback_mass[j]) << "\n";
    }
    write_field((fs::path(out_dir) / "W.ccf1").string(), ss.W);
    RunResult rr;
    rr.constants["scatter_mass_ratio"] = ss.mass_ratio;
    if (!ss.diffs_decreasing) {
        rr.exit_code = 4;
        rr.message = "scatter: Cauchy differences not strictly decreasing";
    }
    return rr;
}

RunResult run_illposed(const ExperimentConfig& cfg, const std::string& out_dir, int threads) {
    GrowthFit fit = growth_exponent_fit(cfg.p, 2.0, cfg.N_list, cfg.eps, threads);
    std::ofstream csv(fs::path(out_dir) / "growth.csv");
    csv << "N,input_norm,output_norm\n";
    for (std::size_t i = 0; i < fit.N.size(); ++i)
        csv << fmt_g17(fit.N[i]) << ',' << fmt_g17(fit.input_norm[i]) << ','
            << fmt_g17(fit.output_norm[i]) << "\n";
    RunResult rr;
    rr.constants["illposed_slope"] = fit.slope;
    rr.constants["illposed_input_slope"] = fit.input_slope;
    rr.constants["illposed_predicted_slope"] = fit.predicted_slope;
    return rr;
}

RunResult run_norms(const ExperimentConfig& cfg, const std::string& out_dir) {
    Field u = read_field(cfg.in_file);
    const double t = cfg.t_eval > 0.0 ? cfg.t_eval : u.t;
    json rep;
    rep["mass"] = mass(u);
    rep["Z3"] = z_norm(u, 3);
    rep["Z4"] = z_norm(u, 4);
    rep["X"] = x_norm(u).total;
    if (t >= 1.0) {
        LPLadder ladder = LPLadder::for_grid(u.grid);
        SplitField split = hyperbolic_elliptic_split(u, t, ladder);
        BoundRatios br = pointwise_bound_report(u, t, split);
        rep["bound_ratios"] = {{"u_hyp", br.u_hyp},
                               {"ux_hyp", br.ux_hyp},
                               {"u_ell", br.u_ell},
                               {"ux_ell", br.ux_ell},
                               {"elliptic_gain", br.elliptic_gain}};
    } else {
        rep["bound_ratios"] = nullptr;
    }
    const std::string text = rep.dump(2);
    std::printf("%s\n", text.c_str());
    std::ofstream out(fs::path(out_dir) / "norms.json");
    out << text << "\n";
    return {};
}

RunResult run_symbols(const ExperimentConfig& cfg, const std::string& out_dir) {
    std::ofstream m_csv(fs::path(out_dir) / "symbols_m.csv");
    m_csv << "xi,m,omega_x_axis\n";
    for (int i = 1; i <= 400; ++i) {
        const double xi = 0.025 * i;
        m_csv << fmt_g17(xi) << ',' << fmt_g17(m_eval(cfg.h, xi)) << ','
              << fmt_g17(omega(cfg.h, xi, 0.0)) << "\n";
    }
    std::ofstream p_csv(fs::path(out_dir) / "symbols_phase.csv");
    p_csv << "v,m_inverse,Phi\n";
    for (int i = 1; i <= 400; ++i) {
        const double v = 0.025 * i;
        p_csv << fmt_g17(v) << ',' << fmt_g17(m_inverse(cfg.h, v)) << ','
              << fmt_g17(phase_Phi(cfg.h, v)) << "\n";
    }
    return {};
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw config_error(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("experiment"))
        throw config_error("config: missing \"experiment\" key");
    const std::string kind = j["experiment"].get<std::string>();
    auto kit = kKinds.find(kind);
    if (kit == kKinds.end()) throw config_error("config: unknown experiment \"" + kind + "\"");

    ExperimentConfig cfg;
    cfg.experiment = kit->second;
    cfg.raw_json = text;

    const auto& allowed = kAllowedKeys.at(cfg.experiment);
    for (const auto& item : j.items())
        if (!allowed.count(item.key()))
            throw config_error("config: unknown key \"" + item.key() + "\" for " + kind);

    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("nx")) cfg.nx = j["nx"].get<int>();
    if (j.contains("ny")) cfg.ny = j["ny"].get<int>();
    if (j.contains("Lx")) cfg.Lx = j["Lx"].get<double>();
    if (j.contains("Ly")) cfg.Ly = j["Ly"].get<double>();
    if (j.contains("h")) cfg.h = depth_from_json(j["h"]);
    if (j.contains("dt")) cfg.dt = j["dt"].get<double>();
    if (j.contains("t_end")) cfg.t_end = j["t_end"].get<double>();
    if (j.contains("amplitude")) cfg.amplitude = j["amplitude"].get<double>();
    if (j.contains("ic")) cfg.ic = j["ic"].get<std::string>();
    if (j.contains("ic_file")) cfg.ic_file = j["ic_file"].get<std::string>();
    if (j.contains("snapshot_every")) cfg.snapshot_every = j["snapshot_every"].get<int>();
    if (j.contains("k0")) cfg.k0 = j["k0"].get<double>();
    if (j.contains("sigma_x")) cfg.sigma_x = j["sigma_x"].get<double>();
    if (j.contains("sigma_y")) cfg.sigma_y = j["sigma_y"].get<double>();
    if (j.contains("times")) cfg.times = j["times"].get<std::vector<double>>();
    if (j.contains("run")) cfg.run_dir = j["run"].get<std::string>();
    if (j.contains("v")) cfg.v_list = j["v"].get<std::vector<double>>();
    if (j.contains("p")) cfg.p = j["p"].is_string() ? std::numeric_limits<double>::infinity()
                                                    : j["p"].get<double>();
    if (j.contains("eps")) cfg.eps = j["eps"].get<double>();
    if (j.contains("N")) cfg.N_list = j["N"].get<std::vector<double>>();
    if (j.contains("in")) cfg.in_file = j["in"].get<std::string>();
    if (j.contains("t")) cfg.t_eval = j["t"].get<double>();

    // basic positivity checks
    if (cfg.t_end < 0.0 || cfg.amplitude < 0.0) throw config_error("config: negative physical parameter");
    return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_json(ss.str());
}

Field gaussian_datum(const Grid& g, const Depth& h, double amplitude, double k0, double sigma_x,
                     double sigma_y) {
    // Odd-in-x profiles: every x-row integrates to zero exactly, so the
    // x-mean-zero constraint holds without delocalized corrections.
    Field u(g, Space::Physical, 0.0, h);
    for (int i = 0; i < g.nx; ++i) {
        const double x = g.x[i] - g.x0;
        for (int j = 0; j < g.ny; ++j) {
            const double y = g.y[j] - g.y0;
            const double env = std::exp(-0.5 * x * x / (sigma_x * sigma_x)
                                        - 0.5 * y * y / (sigma_y * sigma_y));
            const double osc = k0 > 0.0 ? std::sin(k0 * x) : x / sigma_x;
            u.at(i, j) = amplitude * osc * env;
        }
    }
    Field uf = to_fourier(u);
    pin_zero_xi(uf);
    zero_nyquist(uf);
    return to_physical(uf);
}

RunResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir, int threads) {
    fs::create_directories(out_dir);
    RunResult rr;
    switch (cfg.experiment) {
        case ExperimentKind::evolve: rr = run_evolve(cfg, out_dir); break;
        case ExperimentKind::linear_decay: rr = run_linear_decay(cfg, out_dir); break;
        case ExperimentKind::wavepacket: rr = run_wavepacket(cfg, out_dir); break;
        case ExperimentKind::scatter: rr = run_scatter(cfg, out_dir); break;
        case ExperimentKind::illposed: rr = run_illposed(cfg, out_dir, threads); break;
        case ExperimentKind::norms: rr = run_norms(cfg, out_dir); break;
        case ExperimentKind::symbols: rr = run_symbols(cfg, out_dir); break;
    }
    write_manifest(out_dir, cfg, rr.constants);
    return rr;
}

}  // namespace ccwave
