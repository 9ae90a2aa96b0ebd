#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "delayctl/config.hpp"
#include "delayctl/control.hpp"
#include "delayctl/io.hpp"
#include "delayctl/oracle.hpp"
#include "delayctl/simulate.hpp"
#include "delayctl/spectral.hpp"
#include "delayctl/summation.hpp"

namespace {

using namespace delayctl;

struct CliArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::string n_list;
    std::string branches;
    int grid = 0;
};

struct Experiment {
    Config cfg;
    CliArgs args;

    DelayKernel kernel;
    Horizon horizon{1.5, 0.5};
    SummationSchedule schedule;

    std::string out_path(const std::string& suffix) const {
        const std::string prefix = cfg.get_or("output", "prefix", "run");
        return (std::filesystem::path(args.out_dir) / (prefix + "_" + suffix)).string();
    }

    std::vector<int> n_list() const {
        if (!args.n_list.empty()) {
            Config tmp;
            tmp.set("run", "n_list", args.n_list);
            return tmp.get_int_list("run", "n_list");
        }
        if (cfg.has("run", "n_list")) return cfg.get_int_list("run", "n_list");
        return {2, 4, 6};
    }

    int order() const {
        const auto ns = n_list();
        return cfg.has("run", "n") ? cfg.get_int("run", "n") : *std::max_element(ns.begin(), ns.end());
    }

    std::pair<int, int> branch_range() const {
        std::string spec = args.branches;
        if (spec.empty()) spec = cfg.get_or("run", "branches", "-10:10");
        const std::size_t colon = spec.find(':');
        if (colon == std::string::npos) throw ConfigError("branch range must be LO:HI, got '" + spec + "'");
        try {
            return {std::stoi(spec.substr(0, colon)), std::stoi(spec.substr(colon + 1))};
        } catch (const std::exception&) {
            throw ConfigError("branch range must be LO:HI, got '" + spec + "'");
        }
    }

    std::size_t state_panels() const {
        return static_cast<std::size_t>(cfg.get_int_or("grids", "state_panels", 512));
    }
    std::size_t control_panels() const {
        if (args.grid > 1) return static_cast<std::size_t>(args.grid);
        return static_cast<std::size_t>(cfg.get_int_or("grids", "control_panels", 1024));
    }
    std::size_t sim_steps() const {
        return static_cast<std::size_t>(cfg.get_int_or("grids", "sim_steps_per_unit", 2048));
    }
    OracleOptions oracle_options() const {
        OracleOptions o;
        o.sim_steps_per_unit = static_cast<std::size_t>(cfg.get_int_or("grids", "oracle_steps_per_unit", 256));
        return o;
    }
    std::size_t oracle_points() const {
        return static_cast<std::size_t>(cfg.get_int_or("grids", "oracle_points", 2000));
    }

    /// Spectrum wide enough for every order in use.
    SpectrumSet spectrum_for_orders(const std::vector<int>& orders) const {
        int needed = 1;
        for (int n : orders) {
            needed = std::max(needed, required_records_per_half_axis(schedule.R(n)));
        }
        return find_roots(kernel, -needed, needed);
    }

    MState initial_state() const { return initial_state_from_config(cfg, state_panels(), kernel); }
};

Experiment make_experiment(const CliArgs& args) {
    Experiment ex{Config::parse_file(args.config_path), args, DelayKernel::zero(), {1.5, 0.5}, {}};
    ex.kernel = kernel_from_config(ex.cfg);
    ex.horizon = horizon_from_config(ex.cfg);
    ex.schedule = schedule_from_config(ex.cfg);
    return ex;
}

void write_metadata(const Experiment& ex, const SpectrumSet& spectrum, int n,
                    const std::string& path) {
    Config meta = ex.cfg;
    meta.set("metadata", "convention", "u_lambda(t) = kappa_lambda * conj(v_lambda(T - t))");
    meta.set("metadata", "kappa_formula", "-i * D'(lambda) * exp(i lambda T)");
    meta.set("metadata", "exceptional_weight_rule", "roots with Im lambda <= 0 carry weight 1");
    meta.set("metadata", "summation_order", std::to_string(n));
    meta.set("metadata", "root_tol", format_value(RootFindOptions{}.root_tol));
    meta.set("metadata", "dedup_tol", format_value(spectrum.dedup_tol));
    meta.set("schedule", "l_coeff", format_value(ex.schedule.l_coeff));
    meta.set("schedule", "l_power", format_value(ex.schedule.l_power));
    meta.set("schedule", "R_coeff", format_value(ex.schedule.R_coeff));
    meta.set("schedule", "R_power", format_value(ex.schedule.R_power));
    for (const EigenRecord& rec : spectrum.records) {
        const Complex w = weight_for_eigenvalue(n, rec, ex.schedule);
        if (w == Complex{0.0, 0.0}) continue;
        const Complex kappa = control_scale(rec, ex.horizon);
        meta.set("kappa", "kappa_" + std::to_string(rec.branch),
                 format_value(kappa.real()) + "," + format_value(kappa.imag()));
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << meta.serialize();
}

int cmd_spectrum(const Experiment& ex) {
    const auto [lo, hi] = ex.branch_range();
    SpectrumSet spectrum;
    spectrum.kernel = ex.kernel;
    if (lo <= hi) spectrum = find_roots(ex.kernel, lo, hi);
    write_spectrum_csv(spectrum, ex.out_path("spectrum.csv"));
    std::ofstream rep(ex.out_path("residuals.csv"));
    rep << "branch,residual\n";
    for (const EigenRecord& r : spectrum.records) {
        rep << r.branch << ',' << format_value(std::abs(eval_charfn(r.lambda, ex.kernel))) << '\n';
    }
    std::cout << "wrote " << spectrum.records.size() << " roots to " << ex.out_path("spectrum.csv")
              << '\n';
    return 0;
}

int cmd_reconstruct(const Experiment& ex) {
    const auto ns = ex.n_list();
    const SpectrumSet spectrum = ex.spectrum_for_orders(ns);
    const MState x = ex.initial_state();
    std::ofstream out(ex.out_path("reconstruct.csv"));
    out << "n,m_norm_error\n";
    for (int n : ns) {
        const MState sn = partial_sum(x, n, spectrum, ex.schedule);
        const MState err = m_axpy(Complex{-1.0, 0.0}, x, sn);
        out << n << ',' << format_value(m_norm(err)) << '\n';
    }
    std::cout << "wrote " << ex.out_path("reconstruct.csv") << '\n';
    return 0;
}

int cmd_synthesize(const Experiment& ex) {
    const int n = ex.order();
    const SpectrumSet spectrum = ex.spectrum_for_orders({n});
    const MState x0 = ex.initial_state();
    const ControlSignal u = synthesize_control(x0, n, spectrum, ex.schedule, ex.horizon,
                                               ex.control_panels());
    write_control_csv(u, ex.out_path("control.csv"));
    write_metadata(ex, spectrum, n, ex.out_path("control.meta"));
    std::cout << "wrote " << ex.out_path("control.csv") << " (order " << n << ", ||u|| = "
              << format_value(l2_norm(u)) << ")\n";
    return 0;
}

int cmd_verify(const Experiment& ex) {
    const MState x0 = ex.initial_state();
    ControlSignal u;
    if (ex.cfg.get_or("initial", "kind", "ones") == "eigenvector") {
        const int branch = ex.cfg.get_int("initial", "branch");
        const SpectrumSet spectrum = find_roots(ex.kernel, branch, branch);
        u = u_for_eigenvector(spectrum.by_branch(branch), ex.horizon, ex.control_panels());
    } else {
        const int n = ex.order();
        const SpectrumSet spectrum = ex.spectrum_for_orders({n});
        u = synthesize_control(x0, n, spectrum, ex.schedule, ex.horizon, ex.control_panels());
    }
    const SimOptions sim{ex.sim_steps()};
    const double free_norm = terminal_segment_norm(simulate(x0, nullptr, ex.kernel, ex.horizon.T, sim),
                                                   ex.horizon.T);
    const double ctrl_norm = terminal_segment_norm(simulate(x0, &u, ex.kernel, ex.horizon.T, sim),
                                                   ex.horizon.T);
    const double ratio = free_norm > 0.0 ? ctrl_norm / free_norm : ctrl_norm;
    std::ofstream out(ex.out_path("verify.csv"));
    out << "quantity,value\n";
    out << "free_terminal_norm," << format_value(free_norm) << '\n';
    out << "controlled_terminal_norm," << format_value(ctrl_norm) << '\n';
    out << "ratio," << format_value(ratio) << '\n';
    std::cout << "terminal-norm ratio " << format_value(ratio) << " -> " << ex.out_path("verify.csv")
              << '\n';
    return 0;
}

int cmd_compare(const Experiment& ex) {
    const auto ns = ex.n_list();
    const SpectrumSet spectrum = ex.spectrum_for_orders(ns);
    const MState x0 = ex.initial_state();
    const auto rows = norm_gap_report(x0, spectrum, ex.schedule, ex.horizon, ex.oracle_points(), ns,
                                      ex.oracle_options());
    write_gap_report_csv(rows, ex.out_path("gap.csv"));
    std::cout << "wrote " << ex.out_path("gap.csv") << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimal-L2-norm null controls for a linear delay equation"};
    app.require_subcommand(1);

    CliArgs args;
    int (*handler)(const Experiment&) = nullptr;
    for (const auto& [name, desc, fn] :
         {std::tuple{"spectrum", "locate characteristic roots and dump the spectrum", &cmd_spectrum},
          std::tuple{"reconstruct", "regularized expansion error versus summation order", &cmd_reconstruct},
          std::tuple{"synthesize", "build the optimal null control for the initial state", &cmd_synthesize},
          std::tuple{"verify", "simulate the controlled system and report the terminal-norm ratio", &cmd_verify},
          std::tuple{"compare", "gap between spectral synthesis and the least-norm oracle", &cmd_compare}}) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", args.config_path, "configuration file")->required();
        sub->add_option("--out", args.out_dir, "output directory");
        sub->add_option("--n-list", args.n_list, "comma-separated summation orders");
        sub->add_option("--grid", args.grid, "control grid panel count");
        sub->add_option("--branches", args.branches, "branch range LO:HI");
        sub->callback([&handler, fn = fn]() { handler = fn; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::filesystem::create_directories(args.out_dir);
        const Experiment ex = make_experiment(args);
        return handler(ex);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
}
