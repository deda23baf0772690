// Command-line front end: stationary solves, critical-value location, nu-sweeps,
// time integration, the principal eigenpair, and the classical (single-phase)
// critical value. Prints one key=value summary line per run; exit codes:
//   0 converged / steady state / time limit, 3 diverged / blow-up,
//   1 usage or validation error, 2 numerical failure.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "gelfand/continuation.hpp"
#include "gelfand/io.hpp"
#include "gelfand/parabolic.hpp"

namespace {

using namespace gelfand;

std::vector<std::pair<std::string, std::string>> summary;

void add_kv(const std::string& k, const std::string& v) { summary.emplace_back(k, v); }
void add_kv(const std::string& k, double v) { summary.emplace_back(k, format_sig(v)); }
void add_kv(const std::string& k, int v) { summary.emplace_back(k, std::to_string(v)); }

void print_summary() {
    std::string line;
    for (const auto& [k, v] : summary) {
        if (!line.empty()) line += ' ';
        line += k + '=' + v;
    }
    std::printf("%s\n", line.c_str());
}

std::string svg_path(const std::string& csv) {
    if (csv.size() > 4 && csv.compare(csv.size() - 4, 4, ".csv") == 0)
        return csv.substr(0, csv.size() - 4) + ".svg";
    return csv + ".svg";
}

std::string trimmed(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

// Expands a flat key=value config file into --key=value tokens, skipping keys
// already given on the command line (flags override file values).
std::vector<std::string> config_tokens(const std::string& path,
                                       const std::vector<std::string>& cli) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    auto given = [&](const std::string& flag) {
        for (const auto& a : cli)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };
    std::vector<std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        line = trimmed(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        const std::string key = trimmed(line.substr(0, eq));
        const std::string val = trimmed(line.substr(eq + 1));
        if (key == "config")
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": config cannot nest config files");
        const std::string flag = "--" + key;
        if (!given(flag)) out.push_back(flag + "=" + val);
    }
    return out;
}

const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::Diverged: return "diverged";
        case SolveStatus::IterationCapReached: return "iteration_cap";
    }
    return "unknown";
}

const char* outcome_name(EvolveOutcome o) {
    switch (o) {
        case EvolveOutcome::SteadyState: return "steady_state";
        case EvolveOutcome::BlowUp: return "blowup";
        case EvolveOutcome::TimeLimitReached: return "time_limit";
    }
    return "unknown";
}

void plot_state(const std::string& path, const TwoPhaseState& s, const std::string& title) {
    PlotSeries pu{s.u.grid->nodes, s.u.values, "u", "#1f4e9c", false};
    PlotSeries pv{s.v.grid->nodes, s.v.values, "v", "#c25b32", true};
    write_svg_plot(path, {pu, pv}, {title, "x", "temperature", false});
}

struct StationaryOpts {
    double lambda = 0.0, nu = 0.0, d = 1.0, tol = 1e-10;
    int n = 199, max_iter = 10000;
    std::string g_tag = "exp", method = "monotone", out = "stationary.csv";
    bool plot = false;
};

int run_stationary(const StationaryOpts& o) {
    Grid grid = build_grid(o.n);
    ProblemParams p{o.lambda, o.nu, o.d, parse_reaction(o.g_tag)};
    StationaryReport rep = (o.method == "shooting")
                               ? shooting_solve(p, grid, o.tol)
                               : monotone_iterate(p, grid, o.tol, o.max_iter);
    write_state_csv(o.out, rep.state);
    if (o.plot) plot_state(svg_path(o.out), rep.state, "stationary minimal solution");

    add_kv("command", std::string("stationary"));
    add_kv("method", o.method);
    add_kv("status", std::string(status_name(rep.status)));
    add_kv("lambda", p.lambda);
    add_kv("nu", p.nu);
    add_kv("d", p.d);
    add_kv("g", reaction_tag(p.reaction));
    add_kv("n", o.n);
    add_kv("iterations", rep.iterations);
    add_kv("residual", rep.residual);
    add_kv("max_u", sup_norm(rep.state.u.values));
    add_kv("max_v", sup_norm(rep.state.v.values));
    add_kv("out", o.out);
    print_summary();
    switch (rep.status) {
        case SolveStatus::Converged: return 0;
        case SolveStatus::Diverged: return 3;
        case SolveStatus::IterationCapReached: return 2;
    }
    return 2;
}

struct LambdaStarOpts {
    double nu = 0.0, d = 1.0, bracket_tol = 1e-4, tol = 1e-10;
    int n = 199, max_iter = 10000;
    std::string g_tag = "exp", out = "lambda_star.csv";
};

int run_lambda_star(const LambdaStarOpts& o) {
    Grid grid = build_grid(o.n);
    Reaction r = parse_reaction(o.g_tag);
    CriticalResult cr =
        find_lambda_star(o.nu, o.d, r, grid, o.bracket_tol, o.tol, o.max_iter);
    if (!cr.ok) {
        std::fprintf(stderr, "error: %s\n", cr.error.c_str());
        return 2;
    }
    SweepResult one;
    one.d = o.d;
    one.reaction = reaction_tag(r);
    one.entries.push_back(cr);
    write_sweep_csv(o.out, one);

    add_kv("command", std::string("lambda-star"));
    add_kv("nu", cr.nu);
    add_kv("d", o.d);
    add_kv("g", one.reaction);
    add_kv("n", o.n);
    add_kv("lambda_star", cr.lambda_star);
    add_kv("bracket_width", cr.bracket_width);
    add_kv("evaluations", cr.evaluations);
    add_kv("out", o.out);
    print_summary();
    return 0;
}

struct SweepOpts {
    double nu_min = 1e-2, nu_max = 1e3, d = 1.0, bracket_tol = 1e-4, tol = 1e-10;
    int count = 24, n = 199, max_iter = 10000, jobs = 1;
    std::string g_tag = "exp", out = "sweep.csv";
    bool plot = false;
};

int run_sweep(const SweepOpts& o) {
    Grid grid = build_grid(o.n);
    Reaction r = parse_reaction(o.g_tag);
    std::vector<double> nus = log_spaced(o.nu_min, o.nu_max, o.count);
    SweepResult sw = sweep_nu(nus, o.d, r, grid, o.bracket_tol, o.jobs, o.tol, o.max_iter);
    write_sweep_csv(o.out, sw);

    int ok = 0;
    double lo = 0.0, hi = 0.0;
    for (const auto& e : sw.entries) {
        if (!e.ok) {
            std::fprintf(stderr, "error: nu=%s: %s\n", format_sig(e.nu).c_str(),
                         e.error.c_str());
            continue;
        }
        if (ok == 0) lo = hi = e.lambda_star;
        lo = std::min(lo, e.lambda_star);
        hi = std::max(hi, e.lambda_star);
        ++ok;
    }
    if (o.plot && ok > 0) {
        PlotSeries ps;
        ps.label = "lambda*";
        for (const auto& e : sw.entries)
            if (e.ok) {
                ps.x.push_back(e.nu);
                ps.y.push_back(e.lambda_star);
            }
        write_svg_plot(svg_path(o.out), {ps}, {"critical curve", "nu", "lambda*", false});
    }

    add_kv("command", std::string("sweep"));
    add_kv("count", static_cast<int>(sw.entries.size()));
    add_kv("ok", ok);
    add_kv("d", o.d);
    add_kv("g", sw.reaction);
    add_kv("n", o.n);
    add_kv("jobs", o.jobs);
    if (ok > 0) {
        add_kv("lambda_star_min", lo);
        add_kv("lambda_star_max", hi);
    }
    add_kv("out", o.out);
    print_summary();
    return (ok == static_cast<int>(sw.entries.size())) ? 0 : 2;
}

struct EvolveOpts {
    double lambda = 0.0, nu = 0.0, d = 1.0, alpha = 1.0, t_end = 100.0, dt0 = 1e-3;
    double steady_tol = 1e-9, trace_dt = 0.0;
    int n = 199;
    std::string g_tag = "exp", out = "trace.csv", state_out;
    bool plot = false;
};

int run_evolve(const EvolveOpts& o) {
    Grid grid = build_grid(o.n);
    EvolveParams ep;
    ep.problem = ProblemParams{o.lambda, o.nu, o.d, parse_reaction(o.g_tag)};
    ep.alpha = o.alpha;
    ep.t_end = o.t_end;
    ep.dt0 = o.dt0;
    ep.steady_tol = o.steady_tol;
    ep.trace_interval = o.trace_dt;
    EvolveReport er = evolve(ep, grid);
    write_trace_csv(o.out, er);
    if (!o.state_out.empty()) write_state_csv(o.state_out, er.state, &er.t_final);
    if (o.plot) {
        PlotSeries pu, pv;
        pu.label = "max u";
        pv.label = "max v";
        pv.color = "#c25b32";
        pv.dashed = true;
        for (const auto& s : er.trace) {
            pu.x.push_back(s.t);
            pu.y.push_back(s.max_u);
            pv.x.push_back(s.t);
            pv.y.push_back(s.max_v);
        }
        write_svg_plot(svg_path(o.out), {pu, pv}, {"evolution", "t", "sup norm", false});
    }

    add_kv("command", std::string("evolve"));
    add_kv("outcome", std::string(outcome_name(er.outcome)));
    add_kv("lambda", o.lambda);
    add_kv("nu", o.nu);
    add_kv("d", o.d);
    add_kv("alpha", o.alpha);
    add_kv("g", reaction_tag(ep.problem.reaction));
    add_kv("n", o.n);
    add_kv("t_final", er.t_final);
    add_kv("max_u", sup_norm(er.state.u.values));
    add_kv("max_v", sup_norm(er.state.v.values));
    add_kv("energy", er.trace.empty() ? 0.0 : er.trace.back().energy);
    add_kv("samples", static_cast<int>(er.trace.size()));
    add_kv("out", o.out);
    print_summary();
    return (er.outcome == EvolveOutcome::BlowUp) ? 3 : 0;
}

struct EigenOpts {
    int n = 199;
    std::string out = "eigen.csv";
    bool plot = false;
};

int run_eigen(const EigenOpts& o) {
    Grid grid = build_grid(o.n);
    auto [mu1, phi1] = principal_eigenpair(grid);
    write_eigen_csv(o.out, phi1);
    if (o.plot) {
        PlotSeries ps{grid.nodes, phi1.values, "phi1", "#1f4e9c", false};
        write_svg_plot(svg_path(o.out), {ps}, {"principal eigenfunction", "x", "phi1", false});
    }
    add_kv("command", std::string("eigen"));
    add_kv("n", o.n);
    add_kv("mu1", mu1);
    add_kv("out", o.out);
    print_summary();
    return 0;
}

struct ClassicalOpts {
    double bracket_tol = 1e-4, g_scale = 1.0, tol = 1e-10;
    int n = 199, max_iter = 10000;
    std::string g_tag = "exp", out = "classical.csv";
};

int run_classical(const ClassicalOpts& o) {
    Grid grid = build_grid(o.n);
    Reaction r = parse_reaction(o.g_tag);
    const double ls =
        classical_lambda_star(r, grid, o.bracket_tol, o.g_scale, o.tol, o.max_iter);
    std::ofstream out(o.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + o.out);
    out << "lambda_star\n" << format_sig(ls) << "\n";
    out.close();

    add_kv("command", std::string("classical"));
    add_kv("g", reaction_tag(r));
    add_kv("g_scale", o.g_scale);
    add_kv("n", o.n);
    add_kv("lambda_star", ls);
    add_kv("out", o.out);
    print_summary();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-phase Gelfand (thermal explosion) solver suite"};
    app.require_subcommand(1);

    StationaryOpts st;
    CLI::App* c_st = app.add_subcommand("stationary", "minimal stationary solution at fixed lambda");
    c_st->add_option("--lambda", st.lambda, "reaction intensity")->required();
    c_st->add_option("--nu", st.nu, "inter-phase exchange rate")->required();
    c_st->add_option("--d", st.d, "diffusivity ratio");
    c_st->add_option("--g", st.g_tag, "reaction: exp | pow:<p>");
    c_st->add_option("--n", st.n, "interior grid nodes");
    c_st->add_option("--tol", st.tol, "iteration tolerance");
    c_st->add_option("--max-iter", st.max_iter, "iteration cap");
    c_st->add_option("--method", st.method, "monotone | shooting")
        ->check(CLI::IsMember({"monotone", "shooting"}));
    c_st->add_option("--out", st.out, "output CSV path");
    c_st->add_flag("--plot", st.plot, "also write an SVG plot");
    std::string config_file;
    c_st->add_option("--config", config_file, "flat key=value configuration file");

    LambdaStarOpts ls;
    CLI::App* c_ls = app.add_subcommand("lambda-star", "critical lambda at fixed nu");
    c_ls->add_option("--nu", ls.nu, "inter-phase exchange rate")->required();
    c_ls->add_option("--d", ls.d, "diffusivity ratio");
    c_ls->add_option("--g", ls.g_tag, "reaction: exp | pow:<p>");
    c_ls->add_option("--n", ls.n, "interior grid nodes");
    c_ls->add_option("--tol", ls.tol, "iteration tolerance");
    c_ls->add_option("--max-iter", ls.max_iter, "iteration cap");
    c_ls->add_option("--bracket-tol", ls.bracket_tol, "bisection half-width target");
    c_ls->add_option("--out", ls.out, "output CSV path");
    c_ls->add_option("--config", config_file, "flat key=value configuration file");

    SweepOpts sw;
    CLI::App* c_sw = app.add_subcommand("sweep", "critical curve over log-spaced nu");
    c_sw->add_option("--nu-min", sw.nu_min, "smallest nu");
    c_sw->add_option("--nu-max", sw.nu_max, "largest nu");
    c_sw->add_option("--count", sw.count, "number of nu samples");
    c_sw->add_option("--d", sw.d, "diffusivity ratio");
    c_sw->add_option("--g", sw.g_tag, "reaction: exp | pow:<p>");
    c_sw->add_option("--n", sw.n, "interior grid nodes");
    c_sw->add_option("--tol", sw.tol, "iteration tolerance");
    c_sw->add_option("--max-iter", sw.max_iter, "iteration cap");
    c_sw->add_option("--bracket-tol", sw.bracket_tol, "bisection half-width target");
    c_sw->add_option("--jobs", sw.jobs, "worker threads (1 = serial)");
    c_sw->add_option("--out", sw.out, "output CSV path");
    c_sw->add_flag("--plot", sw.plot, "also write an SVG plot");
    c_sw->add_option("--config", config_file, "flat key=value configuration file");

    EvolveOpts ev;
    CLI::App* c_ev = app.add_subcommand("evolve", "time integration from zero data");
    c_ev->add_option("--lambda", ev.lambda, "reaction intensity")->required();
    c_ev->add_option("--nu", ev.nu, "inter-phase exchange rate")->required();
    c_ev->add_option("--d", ev.d, "diffusivity ratio");
    c_ev->add_option("--alpha", ev.alpha, "heat-capacity ratio");
    c_ev->add_option("--g", ev.g_tag, "reaction: exp | pow:<p>");
    c_ev->add_option("--n", ev.n, "interior grid nodes");
    c_ev->add_option("--t-end", ev.t_end, "integration horizon");
    c_ev->add_option("--dt0", ev.dt0, "initial/maximal time step");
    c_ev->add_option("--steady-tol", ev.steady_tol, "steady-state rate threshold");
    c_ev->add_option("--trace-dt", ev.trace_dt, "trace sampling interval (0 = t_end/500)");
    c_ev->add_option("--out", ev.out, "trace CSV path");
    c_ev->add_option("--state-out", ev.state_out, "final state CSV path (optional)");
    c_ev->add_flag("--plot", ev.plot, "also write an SVG plot");
    c_ev->add_option("--config", config_file, "flat key=value configuration file");

    EigenOpts eg;
    CLI::App* c_eg = app.add_subcommand("eigen", "principal Dirichlet eigenpair of -Lap");
    c_eg->add_option("--n", eg.n, "interior grid nodes");
    c_eg->add_option("--out", eg.out, "output CSV path");
    c_eg->add_flag("--plot", eg.plot, "also write an SVG plot");
    c_eg->add_option("--config", config_file, "flat key=value configuration file");

    ClassicalOpts cl;
    CLI::App* c_cl = app.add_subcommand("classical", "single-phase critical value");
    c_cl->add_option("--g", cl.g_tag, "reaction: exp | pow:<p>");
    c_cl->add_option("--g-scale", cl.g_scale, "multiplier on the reaction");
    c_cl->add_option("--n", cl.n, "interior grid nodes");
    c_cl->add_option("--tol", cl.tol, "iteration tolerance");
    c_cl->add_option("--max-iter", cl.max_iter, "iteration cap");
    c_cl->add_option("--bracket-tol", cl.bracket_tol, "bisection half-width target");
    c_cl->add_option("--out", cl.out, "output CSV path");
    c_cl->add_option("--config", config_file, "flat key=value configuration file");

    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    if (!config_path.empty()) {
        try {
            const auto extra = config_tokens(config_path, args);
            args.insert(args.begin() + 1, extra.begin(), extra.end());
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return 1;
        }
    }
    std::vector<const char*> cargs;
    cargs.push_back(argv[0]);
    for (const auto& a : args) cargs.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_st->parsed()) return run_stationary(st);
        if (c_ls->parsed()) return run_lambda_star(ls);
        if (c_sw->parsed()) return run_sweep(sw);
        if (c_ev->parsed()) return run_evolve(ev);
        if (c_eg->parsed()) return run_eigen(eg);
        if (c_cl->parsed()) return run_classical(cl);
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid argument: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "invalid argument: %s\n", e.what());
        return 1;
    } catch (const std::logic_error& e) {
        std::fprintf(stderr, "internal inconsistency: %s\n", e.what());
        return 2;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
