// Command-line front end: reproduces the discord-vs-distance data sets
// (pair records, decay profiles, range-ratio heatmaps) as CSV or JSON.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spindiscord/discord.hpp"
#include "spindiscord/fit.hpp"
#include "spindiscord/xxz.hpp"
#include "spindiscord/xy.hpp"

namespace sd = spindiscord;
using ordered_json = nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string format = "csv";
    std::string out_path;  // empty: stdout
    double tol = 1e-10;
    int threads = 0;  // 0: env fallback, then 1
    int digits = 12;

    int resolved_threads() const {
        if (threads > 0) return threads;
        if (const char* env = std::getenv("SPINDISCORD_THREADS"))
            if (int n = std::atoi(env); n > 0) return n;
        return 1;
    }

    void validate() const {
        if (tol <= 0.0) throw sd::DomainError("tolerance must be positive");
        if (digits < 6 || digits > 17)
            throw sd::DomainError("digits must lie in [6, 17]");
    }
};

std::string fmt(double x, int digits) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + cfg.out_path);
    out << text;
}

// Round through the configured precision so CSV and JSON agree digit for digit.
double rounded(double x, int digits) {
    if (std::isnan(x)) return x;
    return std::stod(fmt(x, digits));
}

void add_common_flags(CLI::App* app, RunConfig& cfg) {
    app->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--out", cfg.out_path, "Output path (default stdout)");
    app->add_option("--tol", cfg.tol, "Quadrature absolute tolerance");
    app->add_option("--threads", cfg.threads, "Worker thread count");
    app->add_option("--digits", cfg.digits, "Significant digits in output");
    // already consumed by the pre-parse scan; registered so the flag is
    // accepted after a subcommand too
    static std::string config_sink;
    app->add_option("--config", config_sink, "JSON config file");
}

// --config JSON is applied before parsing, so explicit flags win.
void apply_config_file(int argc, char** argv, RunConfig& cfg) {
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) != "--config") continue;
        std::ifstream in(argv[i + 1]);
        if (!in) throw std::runtime_error(std::string("cannot open config ") +
                                          argv[i + 1]);
        auto j = nlohmann::json::parse(in);
        cfg.format = j.value("format", cfg.format);
        cfg.out_path = j.value("out", cfg.out_path);
        cfg.tol = j.value("tol", cfg.tol);
        cfg.threads = j.value("threads", cfg.threads);
        cfg.digits = j.value("digits", cfg.digits);
    }
}

ordered_json fit_to_json(const sd::FitResult& fit, int digits) {
    ordered_json j;
    j["model"] = sd::decay_model_name(fit.model);
    j["a"] = rounded(fit.a, digits);
    j["b"] = rounded(fit.b, digits);
    j["c"] = rounded(fit.c, digits);
    j["sse"] = rounded(fit.sse, digits);
    j["aic"] = rounded(fit.aic, digits);
    j["converged"] = fit.converged;
    j["iterations"] = fit.iterations;
    return j;
}

std::string profile_csv(const sd::DecayProfile& profile, int digits,
                        const std::vector<ordered_json>& footers) {
    std::ostringstream out;
    out << "n,discord\n";
    for (const auto& s : profile.samples)
        out << s.n << "," << fmt(s.q, digits) << "\n";
    for (const auto& f : footers) out << "# " << f.dump() << "\n";
    return out.str();
}

int run_xy_pair(const RunConfig& cfg, double gamma, double lambda, int n,
                std::optional<double> beta) {
    sd::XYParams params{gamma, lambda};
    if (beta) params.beta = *beta;
    sd::GTable table(params, cfg.tol);
    const double mz = sd::magnetization(params, cfg.tol);
    auto obs = sd::pair_observables(n, table, mz);
    auto rho = sd::XStateDensity::from_pair_correlators(obs.mz, obs.gxx,
                                                        obs.gyy, obs.gzz);
    rho.validate();
    auto report = sd::quantum_discord(rho, sd::DiscordMethod::closed_form);

    ordered_json j;
    j["mz"] = rounded(obs.mz, cfg.digits);
    j["gxx"] = rounded(obs.gxx, cfg.digits);
    j["gyy"] = rounded(obs.gyy, cfg.digits);
    j["gzz"] = rounded(obs.gzz, cfg.digits);
    j["mutual_info"] = rounded(report.mutual_info, cfg.digits);
    j["classical_corr"] = rounded(report.classical_corr, cfg.digits);
    j["discord"] = rounded(report.discord, cfg.digits);
    j["method"] = "closed_form";

    if (cfg.format == "json") {
        write_output(cfg, j.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << "mz,gxx,gyy,gzz,mutual_info,classical_corr,discord,method\n"
            << fmt(obs.mz, cfg.digits) << "," << fmt(obs.gxx, cfg.digits) << ","
            << fmt(obs.gyy, cfg.digits) << "," << fmt(obs.gzz, cfg.digits) << ","
            << fmt(report.mutual_info, cfg.digits) << ","
            << fmt(report.classical_corr, cfg.digits) << ","
            << fmt(report.discord, cfg.digits) << ",closed_form\n";
        write_output(cfg, out.str());
    }
    return 0;
}

int run_xy_profile(const RunConfig& cfg, double gamma, double lambda,
                   int n_max, bool with_fit) {
    if (with_fit && n_max < 4)
        throw CLI::ValidationError("--n-max", "fitting needs n-max >= 4");
    sd::XYParams params{gamma, lambda};
    auto profile = sd::xy_discord_profile(params, n_max, cfg.tol);

    std::vector<ordered_json> footers;
    if (with_fit)
        footers.push_back(fit_to_json(sd::fit_exponential(profile), cfg.digits));

    if (cfg.format == "json") {
        ordered_json j;
        j["gamma"] = gamma;
        j["lambda"] = lambda;
        ordered_json rows = ordered_json::array();
        for (const auto& s : profile.samples)
            rows.push_back({{"n", s.n}, {"discord", rounded(s.q, cfg.digits)}});
        j["profile"] = rows;
        if (with_fit) j["fit"] = footers.front();
        write_output(cfg, j.dump(2) + "\n");
    } else {
        write_output(cfg, profile_csv(profile, cfg.digits, footers));
    }
    return 0;
}

int run_xy_heatmap(const RunConfig& cfg, double gmin, double gmax, int gsteps,
                   double lmin, double lmax, int lsteps, int m) {
    auto scan = sd::heatmap_scan(gmin, gmax, gsteps, lmin, lmax, lsteps, m,
                                 cfg.tol, cfg.resolved_threads());
    if (cfg.format == "json") {
        ordered_json j;
        j["M"] = m;
        ordered_json cells = ordered_json::array();
        for (std::size_t gi = 0; gi < scan.gammas.size(); ++gi)
            for (std::size_t li = 0; li < scan.lambdas.size(); ++li) {
                const double r = scan.at(gi, li);
                cells.push_back({{"gamma", scan.gammas[gi]},
                                 {"lambda", scan.lambdas[li]},
                                 {"ratio", std::isnan(r)
                                               ? ordered_json(nullptr)
                                               : ordered_json(rounded(r, cfg.digits))}});
            }
        j["cells"] = cells;
        write_output(cfg, j.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << "gamma,lambda,ratio\n";
        for (std::size_t gi = 0; gi < scan.gammas.size(); ++gi)
            for (std::size_t li = 0; li < scan.lambdas.size(); ++li)
                out << fmt(scan.gammas[gi], cfg.digits) << ","
                    << fmt(scan.lambdas[li], cfg.digits) << ","
                    << fmt(scan.at(gi, li), cfg.digits) << "\n";
        write_output(cfg, out.str());
    }
    return 0;
}

int run_xxz_profile(const RunConfig& cfg, double delta, double h, int sites,
                    int n_max, const std::string& side_name) {
    const auto side = side_name == "near" ? sd::MeasuredQubit::first
                                          : sd::MeasuredQubit::second;
    sd::XXZSystem sys{sites, delta, h};
    const int depth = n_max > 0 ? n_max : sd::default_profile_depth(sites);
    auto gs = sd::ground_state(sys);
    sd::DecayProfile profile;
    profile.degenerate_source = gs.degenerate();
    for (int n = 1; n <= depth; ++n) {
        auto rho = sd::pair_reduced_density(gs, sites / 2, sites / 2 + n);
        profile.samples.push_back(
            {n, sd::quantum_discord(rho, sd::DiscordMethod::optimized, side)
                    .discord});
    }
    auto sel = sd::select_model(profile);

    ordered_json footer;
    footer["exponential"] = fit_to_json(sel.exponential, cfg.digits);
    footer["power_law"] = fit_to_json(sel.power_law, cfg.digits);
    footer["preferred"] =
        sel.conclusive ? sd::decay_model_name(sel.preferred) : "inconclusive";
    footer["ground_energy"] = rounded(gs.energy, cfg.digits);
    footer["sector"] = gs.sector;
    footer["degenerate"] = gs.degenerate();

    if (cfg.format == "json") {
        ordered_json j;
        ordered_json rows = ordered_json::array();
        for (const auto& s : profile.samples)
            rows.push_back({{"n", s.n}, {"discord", rounded(s.q, cfg.digits)}});
        j["profile"] = rows;
        for (auto& [k, v] : footer.items()) j[k] = v;
        write_output(cfg, j.dump(2) + "\n");
    } else {
        write_output(cfg, profile_csv(profile, cfg.digits, {footer}));
    }
    return 0;
}

int run_fit(const RunConfig& cfg, const std::string& input) {
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open " + input);
    sd::DecayProfile profile;
    profile.provenance = input;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',')) continue;
        try {
            profile.samples.push_back({std::stoi(a), std::stod(b)});
        } catch (const std::exception&) {
            continue;  // header or malformed row
        }
    }
    auto sel = sd::select_model(profile);
    ordered_json j;
    j["exponential"] = fit_to_json(sel.exponential, cfg.digits);
    j["power_law"] = fit_to_json(sel.power_law, cfg.digits);
    j["preferred"] =
        sel.conclusive ? sd::decay_model_name(sel.preferred) : "inconclusive";
    if (cfg.format == "json") {
        write_output(cfg, j.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << "model,a,b,c,sse,aic,converged\n";
        for (const auto* fit : {&sel.exponential, &sel.power_law})
            out << sd::decay_model_name(fit->model) << ","
                << fmt(fit->a, cfg.digits) << "," << fmt(fit->b, cfg.digits)
                << "," << fmt(fit->c, cfg.digits) << ","
                << fmt(fit->sse, cfg.digits) << "," << fmt(fit->aic, cfg.digits)
                << "," << (fit->converged ? "true" : "false") << "\n";
        out << "# preferred: " << j["preferred"].get<std::string>() << "\n";
        write_output(cfg, out.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pairwise quantum discord vs. distance in XY and XXZ spin chains"};
    app.require_subcommand(1);

    RunConfig cfg;
    try {
        apply_config_file(argc, argv, cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file");

    // xy
    auto* xy = app.add_subcommand("xy", "Transverse-field XY chain (thermodynamic limit)");
    xy->require_subcommand(1);

    double gamma = 1.0, lambda = 1.0;
    std::optional<double> beta;
    int n = 1, n_max = 10;
    bool with_fit = false;

    auto* pair = xy->add_subcommand("pair", "Observables and discord of one pair");
    pair->add_option("--gamma", gamma, "Anisotropy in [0, 1]")->required();
    pair->add_option("--lambda", lambda, "Inverse transverse field")->required();
    pair->add_option("--n", n, "Spin separation")->required()->check(CLI::PositiveNumber);
    pair->add_option("--beta", beta, "Inverse temperature (default T -> 0)");
    add_common_flags(pair, cfg);

    auto* prof = xy->add_subcommand("profile", "Discord vs. distance");
    prof->add_option("--gamma", gamma)->required();
    prof->add_option("--lambda", lambda)->required();
    prof->add_option("--n-max", n_max, "Largest separation")->check(CLI::PositiveNumber);
    prof->add_flag("--fit", with_fit, "Append exponential-fit footer");
    add_common_flags(prof, cfg);

    double gmin = 0.1, gmax = 1.0, lmin = 0.0, lmax = 3.0;
    int gsteps = 10, lsteps = 31, m_range = 10;
    auto* heat = xy->add_subcommand("heatmap", "Range-ratio grid over (gamma, lambda)");
    heat->add_option("--gamma-min", gmin);
    heat->add_option("--gamma-max", gmax);
    heat->add_option("--gamma-steps", gsteps)->check(CLI::PositiveNumber);
    heat->add_option("--lambda-min", lmin);
    heat->add_option("--lambda-max", lmax);
    heat->add_option("--lambda-steps", lsteps)->check(CLI::PositiveNumber);
    heat->add_option("--M", m_range, "Profile depth per cell")->check(CLI::PositiveNumber);
    add_common_flags(heat, cfg);

    // xxz
    auto* xxz = app.add_subcommand("xxz", "Finite XXZ chain with domain-wall fields");
    xxz->require_subcommand(1);

    double delta = 0.5, h_field = 5.0;
    int sites = 14, xxz_nmax = 0;
    std::string side = "far";
    auto* xprof = xxz->add_subcommand("profile", "Discord vs. distance with decay fits");
    // --h needs the default -h help shorthand out of the way
    xprof->set_help_flag("--help", "Print this help message and exit");
    xprof->add_option("--delta", delta, "Anisotropy")->required();
    xprof->add_option("--h", h_field, "Boundary field")->required();
    xprof->add_option("--sites", sites, "Chain length")->check(CLI::Range(2, 24));
    xprof->add_option("--n-max", xxz_nmax, "Largest separation (default min(9, N/2 - 1))");
    xprof->add_option("--measure-side", side, "Qubit the measurement acts on")
        ->check(CLI::IsMember({"near", "far"}));
    add_common_flags(xprof, cfg);

    auto* crit = xxz->add_subcommand("critical-field", "h_c = sqrt(delta^2 - 1)/2");
    crit->add_option("--delta", delta)->required();
    add_common_flags(crit, cfg);

    // fit
    std::string fit_input;
    auto* fit = app.add_subcommand("fit", "Fit an external n,discord CSV profile");
    fit->add_option("--input", fit_input, "CSV path")->required();
    add_common_flags(fit, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        cfg.validate();
        if (pair->parsed()) return run_xy_pair(cfg, gamma, lambda, n, beta);
        if (prof->parsed())
            return run_xy_profile(cfg, gamma, lambda, n_max, with_fit);
        if (heat->parsed())
            return run_xy_heatmap(cfg, gmin, gmax, gsteps, lmin, lmax, lsteps,
                                  m_range);
        if (xprof->parsed())
            return run_xxz_profile(cfg, delta, h_field, sites, xxz_nmax, side);
        if (crit->parsed()) {
            write_output(cfg, fmt(sd::critical_field(delta), cfg.digits) + "\n");
            return 0;
        }
        if (fit->parsed()) return run_fit(cfg, fit_input);
    } catch (const sd::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
