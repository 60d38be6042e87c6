// polyurn: analyze / simulate / flow / report front-end.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyurn/dynamics.hpp"
#include "polyurn/equilibria.hpp"
#include "polyurn/errors.hpp"
#include "polyurn/exactlin.hpp"
#include "polyurn/hypergraph.hpp"
#include "polyurn/report.hpp"
#include "polyurn/rng.hpp"
#include "polyurn/simulate.hpp"
#include "polyurn/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace polyurn;

namespace {

constexpr const char* kToolVersion = "0.1.0";

// exit codes: 1 parse/validation/config, 2 solver or integrator trouble
constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;

struct Manifest {
    std::string command;
    std::string hypergraph_source;
    json config = json::object();
    std::vector<std::string> outputs;
    std::string status = "ok";
    std::string error_message;
    long long wall_ms = 0;
};

void write_text(const fs::path& path, const std::string& text, Manifest& manifest) {
    std::ofstream out(path);
    if (!out) {
        throw error(errc::parse_error, "cannot write " + path.string());
    }
    out << text;
    manifest.outputs.push_back(path.filename().string());
}

void write_manifest(const std::optional<fs::path>& out_dir, const Manifest& manifest,
                    std::chrono::steady_clock::time_point started) {
    if (!out_dir) return;
    json j;
    j["tool"] = {{"name", "polyurn"}, {"version", kToolVersion}};
    j["command"] = manifest.command;
    j["hypergraph"] = manifest.hypergraph_source;
    j["config"] = manifest.config;
    j["outputs"] = manifest.outputs;
    j["status"] = manifest.status;
    if (!manifest.error_message.empty()) j["error"] = manifest.error_message;
    j["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    std::ofstream out(*out_dir / "manifest.json");
    out << j.dump(2) << '\n';
}

std::optional<fs::path> prepare_out_dir(const std::string& out) {
    if (out.empty()) return std::nullopt;
    fs::path dir(out);
    fs::create_directories(dir);
    return dir;
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> values;
    std::istringstream in(csv);
    std::string field;
    while (std::getline(in, field, ',')) {
        values.push_back(std::stod(field));
    }
    return values;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& csv) {
    std::vector<std::uint64_t> values;
    std::istringstream in(csv);
    std::string field;
    while (std::getline(in, field, ',')) {
        values.push_back(std::stoull(field));
    }
    return values;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> values;
    std::istringstream in(csv);
    std::string field;
    while (std::getline(in, field, ',')) {
        values.push_back(std::stoi(field));
    }
    return values;
}

SampleSchedule parse_schedule(const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "linear") {
        return SampleSchedule::linear(arg.empty() ? 1000 : std::stoull(arg));
    }
    if (kind == "geometric") {
        return SampleSchedule::geometric(arg.empty() ? 1.1 : std::stod(arg));
    }
    throw error(errc::parse_error, "schedule must be linear:<stride> or geometric:<ratio>");
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        return Rational(std::stoll(text));
    }
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
}

json kernel_to_json(const KernelBasis& kernel) {
    json basis = json::array();
    json basis_float = json::array();
    for (const auto& vec : kernel.basis) {
        json row = json::array();
        json row_float = json::array();
        for (const auto& q : vec) {
            row.push_back(q.to_string());
            row_float.push_back(q.to_double());
        }
        basis.push_back(row);
        basis_float.push_back(row_float);
    }
    return json{{"dim", kernel.dim()}, {"basis", basis}, {"basis_float", basis_float}};
}

json equilibrium_to_json(const EquilibriumRecord& rec) {
    json j;
    j["point"] = rec.point.coords();
    j["support"] = rec.support.members;
    j["gradient"] = rec.gradient;
    j["residual"] = rec.residual;
    j["max_support_gradient"] = rec.max_support_gradient;
    j["converged"] = rec.converged;
    j["iterations"] = rec.iterations;
    j["classification"] =
        rec.classification == Stability::unstable ? "unstable" : "non_unstable";
    if (rec.witness) {
        j["witness"] = *rec.witness;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

json spectrum_to_json(const SpectrumReport& report) {
    json j;
    j["point"] = report.point;
    j["eigenvalues"] = report.eigenvalues;
    j["n_negative"] = report.n_negative;
    j["n_zero"] = report.n_zero;
    j["n_positive"] = report.n_positive;
    j["k_expected"] = report.k_expected;
    j["rank_jf"] = report.rank_jf;
    j["rank_incidence"] = report.rank_incidence;
    j["zero_threshold"] = report.zero_threshold;
    return j;
}

std::string verdict_of(int kernel_dim, bool pendants_present, bool interior_exists) {
    if (pendants_present || !interior_exists) return "boundary";
    return kernel_dim == 0 ? "theorem1" : "theorem2";
}

// ---------------------------------------------------------------------------

int cmd_analyze(const std::string& source, const std::vector<std::string>& support_specs,
                const std::string& out, double tolerance, bool print_json, bool with_spectrum,
                int random_starts, std::uint64_t seed) {
    auto started = std::chrono::steady_clock::now();
    Hypergraph h = load_hypergraph(source);  // throws before any manifest exists

    Manifest manifest;
    manifest.command = "analyze";
    manifest.hypergraph_source = source;
    manifest.config = {{"tolerance", tolerance}, {"supports", support_specs},
                       {"spectrum", with_spectrum}, {"random_starts", random_starts},
                       {"seed", seed}};
    auto out_dir = prepare_out_dir(out);

    int exit_code = 0;
    try {
        SolverOptions opts;
        opts.tolerance = tolerance;

        json result;
        result["tool"] = {{"name", "polyurn"}, {"version", kToolVersion}};
        result["m"] = h.vertex_count();
        result["edge_count"] = h.edge_count();
        result["edges"] = h.edges();
        result["incidence_rank"] = rank(incidence_rational(h));

        KernelBasis kernel = tangent_kernel(h);
        result["kernel"] = kernel_to_json(kernel);
        result["thresholds"] = {{"solver_tolerance", opts.tolerance},
                                {"eps_zero", opts.eps_zero},
                                {"eps_gradient", opts.eps_gradient}};

        auto candidates = limit_candidates(h, opts);
        json equilibria = json::array();
        json spectra = json::array();
        bool any_unconverged = false;

        auto consider = [&](const EquilibriumRecord& rec) {
            equilibria.push_back(equilibrium_to_json(rec));
            any_unconverged = any_unconverged || !rec.converged;
            if (with_spectrum && rec.converged) {
                bool interior =
                    static_cast<int>(rec.support.members.size()) == h.vertex_count();
                try {
                    spectra.push_back(spectrum_to_json(restricted_spectrum(h, rec.point, interior)));
                } catch (const error&) {
                    // boundary points with degenerate edge sums have no spectrum report
                }
            }
        };

        if (candidates.base) consider(*candidates.base);
        for (const auto& spec : support_specs) {
            consider(find_equilibrium(h, Support::of(parse_int_list(spec)), std::nullopt, opts));
        }

        // extra full-support solves from random interior starts; with the base
        // solve they land in one kernel coset
        std::vector<EquilibriumRecord> random_records;
        if (random_starts > 0) {
            Rng rng(seed);
            const int m = h.vertex_count();
            for (int s = 0; s < random_starts; ++s) {
                std::vector<double> v(m);
                double mass = 0;
                for (double& c : v) {
                    c = -std::log(1.0 - rng.uniform());
                    mass += c;
                }
                for (double& c : v) c = 0.5 * (c / mass) + 0.5 / m;
                random_records.push_back(
                    find_equilibrium(h, Support::full(m), SimplexPoint(v), opts));
                consider(random_records.back());
            }
        }

        result["equilibria"] = equilibria;
        result["spectra"] = spectra;

        if (!random_records.empty() && candidates.base) {
            bool all_same_coset = true;
            for (const auto& rec : random_records) {
                all_same_coset =
                    all_same_coset && same_coset(*candidates.base, rec, kernel, 1e-8);
            }
            result["random_starts_in_base_coset"] = all_same_coset;
        }

        json pendants = json::array();
        for (const auto& triple : detect_pendants(h)) {
            pendants.push_back({{"edge", triple.edge}, {"pendant", triple.pendant},
                                {"shared", triple.shared}});
        }
        result["pendants"] = pendants;

        bool interior_exists = candidates.base && !candidates.boundary_only;
        json limit_set;
        limit_set["boundary_only"] = candidates.boundary_only;
        limit_set["kernel_dim"] = kernel.dim();
        if (candidates.base) limit_set["base_point"] = candidates.base->point.coords();
        if (!candidates.note.empty()) limit_set["note"] = candidates.note;
        result["limit_set"] = limit_set;
        result["verdict"] = verdict_of(kernel.dim(), !pendants.empty(), interior_exists);

        std::string text = result.dump(2) + "\n";
        if (out_dir) write_text(*out_dir / "analysis.json", text, manifest);
        if (print_json || !out_dir) std::cout << text;

        if (any_unconverged) {
            manifest.status = "no_convergence";
            exit_code = kExitSolver;
        }
    } catch (const std::exception& e) {
        manifest.status = "error";
        manifest.error_message = e.what();
        write_manifest(out_dir, manifest, started);
        throw;
    }
    write_manifest(out_dir, manifest, started);
    return exit_code;
}

int cmd_simulate(const std::string& source, SimConfig config, const std::string& balls_csv,
                 const std::string& schedule_spec, const std::string& out,
                 const std::string& against_analysis, bool print_json) {
    auto started = std::chrono::steady_clock::now();
    Hypergraph h = load_hypergraph(source);

    Manifest manifest;
    manifest.command = "simulate";
    manifest.hypergraph_source = source;
    auto out_dir = prepare_out_dir(out);

    try {
        if (!balls_csv.empty()) config.initial_balls = parse_u64_list(balls_csv);
        if (!schedule_spec.empty()) config.schedule = parse_schedule(schedule_spec);
        manifest.config = {{"seed", config.seed},
                           {"replicas", config.replicas},
                           {"steps", config.steps},
                           {"balls", config.initial_balls},
                           {"noise", config.record_noise}};

        auto results = run(h, config);

        // candidate limit set: fresh solve, or a prior analyze report
        LimitCandidateSet candidates;
        if (!against_analysis.empty()) {
            std::ifstream in(against_analysis);
            if (!in) {
                throw error(errc::parse_error, "cannot open analysis file " + against_analysis);
            }
            json prior = json::parse(in, nullptr, false);
            if (prior.is_discarded() || !prior.contains("limit_set") ||
                !prior["limit_set"].contains("base_point") || !prior.contains("kernel")) {
                throw error(errc::parse_error, "analysis file lacks limit_set/kernel fields");
            }
            EquilibriumRecord base{
                SimplexPoint(prior["limit_set"]["base_point"].get<std::vector<double>>()),
                Support::full(h.vertex_count()),
                std::vector<double>(h.vertex_count(), 0.0)};
            candidates.base = base;
            candidates.kernel.ambient = h.vertex_count();
            for (const auto& row : prior["kernel"]["basis"]) {
                std::vector<Rational> vec;
                for (const auto& entry : row) vec.push_back(parse_rational(entry.get<std::string>()));
                candidates.kernel.basis.push_back(std::move(vec));
            }
        } else {
            candidates = limit_candidates(h);
        }

        auto stats = limit_statistics(h, results, candidates);

        json summary;
        summary["tool"] = {{"name", "polyurn"}, {"version", kToolVersion}};
        summary["m"] = h.vertex_count();
        summary["replicas"] = config.replicas;
        summary["steps"] = config.steps;
        summary["seed"] = config.seed;
        summary["boundary_only"] = candidates.boundary_only;
        if (candidates.base) summary["base_point"] = candidates.base->point.coords();
        summary["kernel_dim"] = candidates.kernel.dim();

        json replicas = json::array();
        for (const auto& r : stats.replicas) {
            const auto& terminal = results[r.replica].terminal;
            std::vector<int> terminal_support;
            for (size_t i = 0; i < terminal.size(); ++i) {
                if (terminal[i] >= 0.02) terminal_support.push_back(static_cast<int>(i));
            }
            json jr;
            jr["replica"] = r.replica;
            jr["terminal"] = terminal;
            jr["terminal_distance"] = r.terminal_distance;
            jr["terminal_max_edge_dev"] = r.terminal_max_edge_dev;
            jr["terminal_support"] = terminal_support;
            json trend = json::array();
            for (const auto& p : r.trend) {
                trend.push_back({{"n", p.n}, {"distance", p.distance},
                                 {"max_edge_dev", p.max_edge_dev}});
            }
            jr["trend"] = trend;
            replicas.push_back(jr);
        }
        summary["replicas_detail"] = replicas;
        summary["aggregate"] = {{"mean_distance", stats.mean_distance},
                                {"median_distance", stats.median_distance},
                                {"max_distance", stats.max_distance},
                                {"mean_max_edge_dev", stats.mean_max_edge_dev},
                                {"median_max_edge_dev", stats.median_max_edge_dev},
                                {"max_max_edge_dev", stats.max_max_edge_dev}};

        if (config.record_noise) {
            std::uint64_t initial_total = 0;
            for (std::uint64_t b : config.initial_balls.empty()
                                       ? std::vector<std::uint64_t>(h.vertex_count(), 1)
                                       : config.initial_balls) {
                initial_total += b;
            }
            json noise_blocks = json::array();
            for (const auto& r : results) {
                auto diag = noise_diagnostics(h, initial_total, r.noise);
                noise_blocks.push_back(
                    {{"replica", r.replica},
                     {"max_abs_sum", diag.max_abs_sum},
                     {"max_norm", diag.max_norm},
                     {"window_violations", diag.window_violations},
                     {"gamma_sq_sum", diag.gamma_sq_sum},
                     {"gamma_sq_bound", diag.gamma_sq_bound},
                     {"tail_oscillation",
                      martingale_oscillation(diag, config.steps / 2, config.steps)}});
            }
            summary["noise"] = noise_blocks;
        }

        std::string summary_text = summary.dump(2) + "\n";
        if (out_dir) {
            if (config.record_trajectory) {
                write_text(*out_dir / "trajectory.csv", replica_csv(results), manifest);
            }
            write_text(*out_dir / "summary.json", summary_text, manifest);
        }
        if (print_json || !out_dir) std::cout << summary_text;
    } catch (const std::exception& e) {
        manifest.status = "error";
        manifest.error_message = e.what();
        write_manifest(out_dir, manifest, started);
        throw;
    }
    write_manifest(out_dir, manifest, started);
    return 0;
}

int cmd_flow(const std::string& source, const std::string& start_csv, double t_final, double dt,
             double cutoff, const std::string& out) {
    auto started = std::chrono::steady_clock::now();
    Hypergraph h = load_hypergraph(source);

    Manifest manifest;
    manifest.command = "flow";
    manifest.hypergraph_source = source;
    manifest.config = {{"start", start_csv}, {"t_final", t_final}, {"dt", dt}};
    auto out_dir = prepare_out_dir(out);

    int exit_code = 0;
    try {
        SimplexPoint start = start_csv.empty()
                                 ? SimplexPoint::uniform(h.vertex_count())
                                 : SimplexPoint(parse_double_list(start_csv));
        FlowDomain domain =
            cutoff > 0 ? FlowDomain::with_cutoff(h, cutoff) : FlowDomain::half_margin(h);
        manifest.config["cutoff"] = domain.cutoff;

        std::vector<FlowSample> trajectory;
        try {
            trajectory = flow_integrate(h, start, domain, t_final, dt);
        } catch (const error& e) {
            if (e.code() == errc::step_too_large || e.code() == errc::domain_exit) {
                manifest.status = "error";
                manifest.error_message = e.what();
                std::cerr << "error: " << e.what() << '\n';
                write_manifest(out_dir, manifest, started);
                return kExitSolver;
            }
            throw;
        }

        for (size_t s = 1; s < trajectory.size(); ++s) {
            if (trajectory[s].lyapunov_value < trajectory[s - 1].lyapunov_value - 1e-9) {
                manifest.status = "error";
                manifest.error_message = "Lyapunov value not monotone along the trajectory";
                std::cerr << "error: " << manifest.error_message << '\n';
                write_manifest(out_dir, manifest, started);
                return kExitSolver;
            }
        }

        std::string csv = flow_csv(trajectory);
        if (out_dir) {
            write_text(*out_dir / "flow.csv", csv, manifest);
        } else {
            std::cout << csv;
        }
    } catch (const std::exception& e) {
        manifest.status = "error";
        manifest.error_message = e.what();
        write_manifest(out_dir, manifest, started);
        throw;
    }
    write_manifest(out_dir, manifest, started);
    return exit_code;
}

int cmd_report(const std::string& trajectory_path, const std::string& flow_path,
               const std::string& out, bool log_x, bool show_lyapunov,
               const std::string& title) {
    auto started = std::chrono::steady_clock::now();
    Manifest manifest;
    manifest.command = "report";
    manifest.hypergraph_source = trajectory_path.empty() ? flow_path : trajectory_path;
    manifest.config = {{"log_x", log_x}, {"show_lyapunov", show_lyapunov}};
    auto out_dir = prepare_out_dir(out.empty() ? "." : out);

    try {
        if (trajectory_path.empty() == flow_path.empty()) {
            throw error(errc::parse_error, "give exactly one of --trajectory or --flow");
        }
        std::string input_path = trajectory_path.empty() ? flow_path : trajectory_path;
        std::ifstream in(input_path);
        if (!in) {
            throw error(errc::parse_error, "cannot open " + input_path);
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        ParsedCsv csv = parse_csv(buffer.str());
        if (csv.rows.empty()) {
            throw error(errc::parse_error, "trajectory file has no data rows");
        }

        std::ostringstream summary;
        if (!trajectory_path.empty()) {
            // replica,n,x0..x{m-1}: one chart per replica, one polyline per vertex
            const size_t m = csv.header.size() - 2;
            std::vector<int> replicas;
            for (const auto& row : csv.rows) {
                int r = static_cast<int>(row[0]);
                if (replicas.empty() || replicas.back() != r) replicas.push_back(r);
            }
            summary << "| replica | terminal";
            for (size_t i = 0; i < m; ++i) summary << " x" << i;
            summary << " |\n|---|---|\n";
            for (int r : replicas) {
                std::vector<Series> series(m);
                for (size_t i = 0; i < m; ++i) series[i].label = "x" + std::to_string(i);
                const std::vector<double>* last = nullptr;
                for (const auto& row : csv.rows) {
                    if (static_cast<int>(row[0]) != r) continue;
                    for (size_t i = 0; i < m; ++i) {
                        series[i].x.push_back(row[1]);
                        series[i].y.push_back(row[2 + i]);
                    }
                    last = &row;
                }
                ChartOptions options;
                options.title = title.empty() ? "replica " + std::to_string(r) : title;
                options.x_label = "n";
                options.y_label = "proportion";
                options.log_x = log_x;
                write_text(*out_dir / ("chart_r" + std::to_string(r) + ".svg"),
                           line_chart_svg(series, options), manifest);
                summary << "| " << r << " |";
                for (size_t i = 0; i < m; ++i) summary << ' ' << format_double((*last)[2 + i]);
                summary << " |\n";
            }
        } else {
            // t,v0..v{m-1},L
            const size_t m = csv.header.size() - 2;
            std::vector<Series> series(m + (show_lyapunov ? 1 : 0));
            for (size_t i = 0; i < m; ++i) series[i].label = "v" + std::to_string(i);
            if (show_lyapunov) series[m].label = "L";
            for (const auto& row : csv.rows) {
                for (size_t i = 0; i < m; ++i) {
                    series[i].x.push_back(row[0]);
                    series[i].y.push_back(row[1 + i]);
                }
                if (show_lyapunov) {
                    series[m].x.push_back(row[0]);
                    series[m].y.push_back(row[1 + m]);
                }
            }
            ChartOptions options;
            options.title = title.empty() ? "flow" : title;
            options.x_label = "t";
            options.y_label = "coordinate";
            options.log_x = log_x;
            write_text(*out_dir / "flow.svg", line_chart_svg(series, options), manifest);
            const auto& last = csv.rows.back();
            summary << "| t | L |\n|---|---|\n| " << format_double(last[0]) << " | "
                    << format_double(last[1 + m]) << " |\n";
        }
        write_text(*out_dir / "summary.md", summary.str(), manifest);
    } catch (const std::exception& e) {
        manifest.status = "error";
        manifest.error_message = e.what();
        write_manifest(out_dir, manifest, started);
        throw;
    }
    write_manifest(out_dir, manifest, started);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polya urns on finite hypergraphs: analysis, simulation, flow, reports"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "equilibria, kernel, spectra, verdict");
    std::string an_source;
    std::string an_source_flag;
    std::vector<std::string> an_supports;
    std::string an_out;
    double an_tol = 1e-12;
    bool an_json = false;
    bool an_no_spectrum = false;
    int an_random_starts = 0;
    std::uint64_t an_seed = 0;
    analyze->add_option("source", an_source, "path or builtin:<name>");
    analyze->add_option("--hypergraph", an_source_flag, "path or builtin:<name>");
    analyze->add_option("--support", an_supports, "extra support to solve, e.g. 0,2,5");
    analyze->add_option("--out", an_out, "output directory");
    analyze->add_option("--tol", an_tol, "solver tolerance");
    analyze->add_option("--random-starts", an_random_starts,
                        "extra full-support solves from random starts");
    analyze->add_option("--seed", an_seed, "seed for --random-starts");
    analyze->add_flag("--json", an_json, "print the JSON report to stdout");
    analyze->add_flag("--no-spectrum", an_no_spectrum, "skip spectrum reports");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run urn replicas");
    std::string sim_source, sim_source_flag, sim_balls, sim_schedule, sim_out, sim_against;
    SimConfig sim_config;
    bool sim_json = false;
    std::uint64_t sim_seed = 0;
    int sim_replicas = 4;
    std::uint64_t sim_steps = 10000;
    bool sim_noise = false;
    simulate->add_option("source", sim_source, "path or builtin:<name>");
    simulate->add_option("--hypergraph", sim_source_flag, "path or builtin:<name>");
    simulate->add_option("--balls", sim_balls, "initial counts, e.g. 1,1,1,1");
    simulate->add_option("--steps", sim_steps, "steps per replica");
    simulate->add_option("--replicas", sim_replicas, "replica count");
    simulate->add_option("--seed", sim_seed, "base seed");
    simulate->add_option("--schedule", sim_schedule, "linear:<stride> or geometric:<ratio>");
    simulate->add_option("--out", sim_out, "output directory");
    simulate->add_option("--against-analysis", sim_against, "prior analyze JSON for distances");
    simulate->add_flag("--noise", sim_noise, "record per-step noise");
    simulate->add_flag("--json", sim_json, "print the summary JSON to stdout");

    // flow
    auto* flow = app.add_subcommand("flow", "integrate the mean-field ODE");
    std::string fl_source, fl_source_flag, fl_start, fl_out;
    double fl_t = 100.0, fl_dt = 0.01, fl_cutoff = 0.0;
    flow->add_option("source", fl_source, "path or builtin:<name>");
    flow->add_option("--hypergraph", fl_source_flag, "path or builtin:<name>");
    flow->add_option("--start", fl_start, "start point, e.g. 0.7,0.1,0.1,0.1");
    flow->add_option("--t-final", fl_t, "integration time");
    flow->add_option("--dt", fl_dt, "step size");
    flow->add_option("--cutoff", fl_cutoff, "edge-sum cutoff (default 1/(2N))");
    flow->add_option("--out", fl_out, "output directory");

    // report
    auto* report = app.add_subcommand("report", "SVG charts and markdown summaries");
    std::string rp_trajectory, rp_flow, rp_out, rp_title;
    bool rp_log_x = false, rp_lyapunov = false;
    report->add_option("--trajectory", rp_trajectory, "replica CSV from simulate");
    report->add_option("--flow", rp_flow, "flow CSV from flow");
    report->add_option("--out", rp_out, "output directory");
    report->add_option("--title", rp_title, "chart title");
    report->add_flag("--log-x", rp_log_x, "logarithmic x axis");
    report->add_flag("--show-lyapunov", rp_lyapunov, "plot the Lyapunov column too");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    auto pick_source = [](const std::string& positional, const std::string& flag) {
        if (!positional.empty()) return positional;
        if (!flag.empty()) return flag;
        throw error(errc::parse_error, "no hypergraph given (positional or --hypergraph)");
    };

    try {
        if (*analyze) {
            return cmd_analyze(pick_source(an_source, an_source_flag), an_supports, an_out, an_tol,
                               an_json, !an_no_spectrum, an_random_starts, an_seed);
        }
        if (*simulate) {
            sim_config.seed = sim_seed;
            sim_config.replicas = sim_replicas;
            sim_config.steps = sim_steps;
            sim_config.record_noise = sim_noise;
            return cmd_simulate(pick_source(sim_source, sim_source_flag), sim_config, sim_balls,
                                sim_schedule, sim_out, sim_against, sim_json);
        }
        if (*flow) {
            return cmd_flow(pick_source(fl_source, fl_source_flag), fl_start, fl_t, fl_dt,
                            fl_cutoff, fl_out);
        }
        if (*report) {
            return cmd_report(rp_trajectory, rp_flow, rp_out, rp_log_x, rp_lyapunov, rp_title);
        }
    } catch (const error& e) {
        std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << '\n';
        switch (e.code()) {
            case errc::step_too_large:
            case errc::domain_exit:
                return kExitSolver;
            default:
                return kExitUsage;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
