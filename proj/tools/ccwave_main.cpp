#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccwave/errors.hpp"
#include "ccwave/experiments.hpp"

namespace {

std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += ccwave::fmt_g17(v[i]);
    }
    return s;
}

int dispatch(const ccwave::ExperimentConfig& cfg, const std::string& out_dir, int threads) {
    ccwave::RunResult rr = ccwave::run_experiment(cfg, out_dir, threads);
    if (!rr.message.empty()) std::fprintf(stderr, "%s\n", rr.message.c_str());
    return rr.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ccwave: pseudospectral toolkit for the Camassa-Choi internal-wave equations"};
    app.require_subcommand(1);

    std::string out_dir = "out";
    int threads = 1;
    std::uint64_t seed = 0;
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "worker threads for mode-parallel loops");
    app.add_option("--seed", seed, "seed for randomized corpora");

    std::string config_path;
    auto* run = app.add_subcommand("run", "run an experiment described by a JSON config");
    run->add_option("--config", config_path, "JSON config file")->required();

    auto* evo = app.add_subcommand("evolve", "nonlinear evolution from a JSON config");
    evo->add_option("--config", config_path, "JSON config file")->required();

    std::string in_file;
    double t_eval = 0.0;
    auto* norms = app.add_subcommand("norms", "norm and bound-ratio report for a CCF1 snapshot");
    norms->add_option("--in", in_file, "CCF1 field")->required();
    norms->add_option("--t", t_eval, "evaluation time (default: snapshot time)");

    std::string run_dir;
    std::string v_spec = "0.5,1,2";
    auto* wp = app.add_subcommand("wavepacket", "gamma extraction along rays of an evolve run");
    wp->add_option("--run", run_dir, "evolve output directory")->required();
    wp->add_option("--v", v_spec, "comma-separated ray parameters");

    auto* sc = app.add_subcommand("scatter", "scattering pullback series of an evolve run");
    sc->add_option("--run", run_dir, "evolve output directory")->required();

    double p = 2.0, eps = 0.1;
    std::string n_spec = "16,32,64,128";
    auto* ip = app.add_subcommand("illposed", "second Picard iterate growth experiment");
    ip->add_option("--p", p, "Besov integrability exponent");
    ip->add_option("--eps", eps, "delta = N^-(1+eps)");
    ip->add_option("--N", n_spec, "comma-separated dyadic N values");

    std::string h_spec = "1";
    auto* sy = app.add_subcommand("symbols", "dump closed-form symbol tables as CSV");
    sy->add_option("--h", h_spec, "depth (positive number or \"inf\")");

    CLI11_PARSE(app, argc, argv);

    try {
        ccwave::ExperimentConfig cfg;
        if (run->parsed() || evo->parsed()) {
            cfg = ccwave::parse_config(config_path);
            if (evo->parsed() && cfg.experiment != ccwave::ExperimentKind::evolve)
                throw ccwave::config_error("evolve: config experiment must be \"evolve\"");
        } else if (norms->parsed()) {
            cfg.experiment = ccwave::ExperimentKind::norms;
            cfg.raw_json = "norms:" + in_file;
            cfg.in_file = in_file;
            cfg.t_eval = t_eval;
        } else if (wp->parsed()) {
            cfg.experiment = ccwave::ExperimentKind::wavepacket;
            cfg.raw_json = "wavepacket:" + run_dir + ":" + v_spec;
            cfg.run_dir = run_dir;
            cfg.v_list.clear();
            for (const auto& tok : CLI::detail::split(v_spec, ','))
                cfg.v_list.push_back(std::stod(tok));
        } else if (sc->parsed()) {
            cfg.experiment = ccwave::ExperimentKind::scatter;
            cfg.raw_json = "scatter:" + run_dir;
            cfg.run_dir = run_dir;
        } else if (ip->parsed()) {
            cfg.experiment = ccwave::ExperimentKind::illposed;
            cfg.p = p;
            cfg.eps = eps;
            cfg.N_list.clear();
            for (const auto& tok : CLI::detail::split(n_spec, ','))
                cfg.N_list.push_back(std::stod(tok));
            cfg.raw_json = "illposed:" + ccwave::fmt_g17(p) + ":" + ccwave::fmt_g17(eps) + ":"
                           + join_doubles(cfg.N_list);
        } else if (sy->parsed()) {
            cfg.experiment = ccwave::ExperimentKind::symbols;
            cfg.raw_json = "symbols:" + h_spec;
            cfg.h = h_spec == "inf" ? ccwave::Depth::infinite()
                                    : ccwave::Depth::finite(std::stod(h_spec));
        }
        cfg.seed = seed ? seed : cfg.seed;
        return dispatch(cfg, out_dir, threads);
    } catch (const ccwave::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const ccwave::blowup_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const ccwave::domain_error& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
}
