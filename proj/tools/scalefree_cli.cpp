// Command-line front end: evaluate the fluctuation factor, list golden-mean
// convergents, simulate fractal-time paths and estimate power-law spectra,
// with reproducible CSV/JSON artifacts.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "scalefree/scalefree.hpp"
#include "verify_suite.hpp"

namespace {

using nlohmann::ordered_json;
using namespace scalefree;

constexpr int exit_ok = 0;
constexpr int exit_runtime = 1;
constexpr int exit_usage = 2;

// ---------------------------------------------------------------------------
// option plumbing

/// Applies values from a --config JSON file to options the command line left
/// untouched; flags always win.
class ConfigBinder {
  public:
    template <typename T>
    void track(CLI::Option* opt, std::string key, T& var) {
        binds_.push_back({opt, std::move(key), [&var](const ordered_json& j) {
                              var = j.get<T>();
                          }});
    }

    void apply(const ordered_json& cfg) const {
        for (const auto& b : binds_) {
            if (b.opt->count() == 0 && cfg.contains(b.key)) {
                b.set(cfg.at(b.key));
            }
        }
    }

  private:
    struct Bind {
        CLI::Option* opt;
        std::string key;
        std::function<void(const ordered_json&)> set;
    };
    std::vector<Bind> binds_;
};

struct IoOptions {
    std::string out;      // CSV data ("" = stdout)
    std::string summary;  // JSON summary ("" = stdout when out is a file)
    std::string format = "csv";
    std::string config;
};

void add_io_options(CLI::App* sub, IoOptions& io, ConfigBinder& binder) {
    binder.track(sub->add_option("--out", io.out, "output path for data rows (default stdout)"),
                 "out", io.out);
    binder.track(sub->add_option("--summary", io.summary, "path for the JSON run summary"),
                 "summary", io.summary);
    binder.track(sub->add_option("--format", io.format, "csv or json")
                     ->check(CLI::IsMember({"csv", "json"})),
                 "format", io.format);
    sub->add_option("--config", io.config, "JSON file mirroring the flags; flags take precedence");
}

ordered_json load_config(const std::string& path) {
    if (path.empty()) return ordered_json::object();
    std::ifstream in(path);
    if (!in) {
        throw CLI::ValidationError("--config", "cannot open '" + path + "'");
    }
    ordered_json cfg;
    try {
        in >> cfg;
    } catch (const std::exception& e) {
        throw CLI::ValidationError("--config", e.what());
    }
    if (!cfg.is_object()) {
        throw CLI::ValidationError("--config", "config must be a JSON object");
    }
    return cfg;
}

/// Writes CSV rows via `rows` and routes the summary: with --format json the
/// summary document (results embedded) is the single output.
void emit(const IoOptions& io, const std::function<void(std::ostream&)>& rows,
          const ordered_json& summary) {
    if (io.format == "json") {
        if (io.out.empty()) {
            std::cout << summary.dump(2) << '\n';
        } else {
            std::ofstream f(io.out);
            if (!f) throw std::runtime_error("cannot open '" + io.out + "'");
            f << summary.dump(2) << '\n';
        }
        return;
    }
    if (io.out.empty()) {
        rows(std::cout);
    } else {
        std::ofstream f(io.out);
        if (!f) throw std::runtime_error("cannot open '" + io.out + "'");
        rows(f);
    }
    if (!io.summary.empty()) {
        std::ofstream f(io.summary);
        if (!f) throw std::runtime_error("cannot open '" + io.summary + "'");
        f << summary.dump(2) << '\n';
    } else if (!io.out.empty()) {
        std::cout << summary.dump(2) << '\n';
    }
}

ordered_json params_json(const Params& p) {
    return ordered_json{{"k", p.k},
                        {"depth", p.depth},
                        {"eps_one", p.eps_one},
                        {"seed", p.seed}};
}

ordered_json make_summary(ordered_json config, std::uint64_t seed, ordered_json results) {
    return ordered_json{{"config", std::move(config)},
                        {"seed", seed},
                        {"results", std::move(results)},
                        {"version", scalefree::version}};
}

std::vector<double> parse_grid(const std::string& spec) {
    // "lo:hi:n", geometric spacing
    double lo = 0.0, hi = 0.0;
    long n = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(spec);
    if (!(ss >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || ss.rdbuf()->in_avail() != 0) {
        throw CLI::ValidationError("--grid", "expected lo:hi:n, got '" + spec + "'");
    }
    if (!(lo > 0.0) || !(hi > lo) || n < 2) {
        throw CLI::ValidationError("--grid", "need 0 < lo < hi and n >= 2");
    }
    std::vector<double> g(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        g[static_cast<std::size_t>(i)] =
            lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return g;
}

std::pair<double, double> parse_band(const std::string& spec) {
    double lo = 0.0, hi = 0.0;
    char c = 0;
    std::istringstream ss(spec);
    if (!(ss >> lo >> c >> hi) || c != ':' || ss.rdbuf()->in_avail() != 0) {
        throw CLI::ValidationError("--band", "expected lo:hi, got '" + spec + "'");
    }
    return {lo, hi};
}

// ---------------------------------------------------------------------------
// subcommands

struct PhiCmd {
    Params params;
    double t = 0.0;
    std::string grid;
    IoOptions io;
    ConfigBinder binder;
    CLI::Option* t_opt = nullptr;
    CLI::Option* grid_opt = nullptr;

    void setup(CLI::App& app) {
        CLI::App* sub = app.add_subcommand("phi", "evaluate the fluctuation factor");
        t_opt = sub->add_option("--t", t, "evaluation point (t > 0)");
        binder.track(t_opt, "t", t);
        grid_opt = sub->add_option("--grid", grid, "geometric grid lo:hi:n instead of --t");
        binder.track(grid_opt, "grid", grid);
        binder.track(sub->add_option("--k", params.k, "scaling constant, |k| < 1"), "k", params.k);
        binder.track(sub->add_option("--depth", params.depth, "recursion depth budget"),
                     "depth", params.depth);
        binder.track(sub->add_option("--eps-one", params.eps_one, "half-width of the band at 1"),
                     "eps_one", params.eps_one);
        add_io_options(sub, io, binder);
        sub->callback([this] { run(); });
    }

    void run() {
        binder.apply(load_config(io.config));
        std::vector<double> ts;
        if (!grid.empty()) {
            ts = parse_grid(grid);
        } else if (t_opt->count() > 0 || t != 0.0) {
            ts.push_back(t);
        } else {
            throw CLI::RequiredError("phi: one of --t or --grid");
        }

        std::vector<PhiValue> vals;
        vals.reserve(ts.size());
        for (const double x : ts) vals.push_back(eval_phi(x, params));

        ordered_json results;
        results["t"] = ts;
        {
            std::vector<double> v, b;
            std::vector<int> d;
            for (const PhiValue& pv : vals) {
                v.push_back(pv.value);
                b.push_back(pv.bound);
                d.push_back(pv.depth_used);
            }
            results["phi"] = v;
            results["bound"] = b;
            results["depth_used"] = d;
        }
        ordered_json config = params_json(params);
        config["grid"] = grid;

        emit(io,
             [&](std::ostream& os) {
                 os << "t,phi,bound\n";
                 for (std::size_t i = 0; i < ts.size(); ++i) {
                     os << fmt17(ts[i]) << ',' << fmt17(vals[i].value) << ','
                        << fmt17(vals[i].bound) << '\n';
                 }
             },
             make_summary(config, params.seed, results));
    }
};

struct ConvergentsCmd {
    int n_max = 10;
    bool evolve = false;
    Params params;
    IoOptions io;
    ConfigBinder binder;

    void setup(CLI::App& app) {
        CLI::App* sub = app.add_subcommand("convergents", "golden-mean convergents");
        binder.track(sub->add_option("--n-max", n_max, "largest index")->required(),
                     "n_max", n_max);
        CLI::Option* ev = sub->add_flag("--evolve", evolve,
                                        "emit the convergent-evolution sequence instead");
        binder.track(ev, "evolve", evolve);
        binder.track(sub->add_option("--k", params.k, "scaling constant for --evolve"),
                     "k", params.k);
        binder.track(sub->add_option("--depth", params.depth, "recursion depth for --evolve"),
                     "depth", params.depth);
        add_io_options(sub, io, binder);
        sub->callback([this] { run(); });
    }

    void run() {
        binder.apply(load_config(io.config));
        ordered_json config{{"n_max", n_max}, {"evolve", evolve}};
        if (evolve) {
            config["k"] = params.k;
            config["depth"] = params.depth;
            const std::vector<double> seq = convergent_evolution(params, n_max);
            const double nu = golden_mean();
            ordered_json results;
            results["nu_n"] = seq;
            emit(io,
                 [&](std::ostream& os) {
                     os << "n,nu,gap\n";
                     for (std::size_t i = 0; i < seq.size(); ++i) {
                         os << i << ',' << fmt17(seq[i]) << ',' << fmt17(seq[i] - nu)
                            << '\n';
                     }
                 },
                 make_summary(config, params.seed, results));
            return;
        }

        std::vector<Convergent> cs;
        for (int n = 1; n <= n_max; ++n) cs.push_back(convergent(n));
        ordered_json results;
        {
            std::vector<std::int64_t> p, q;
            std::vector<double> value, gap;
            for (const Convergent& c : cs) {
                p.push_back(c.p);
                q.push_back(c.q);
                value.push_back(c.value);
                gap.push_back(c.gap);
            }
            results["p"] = p;
            results["q"] = q;
            results["value"] = value;
            results["gap"] = gap;
        }
        emit(io,
             [&](std::ostream& os) {
                 os << "n,p,q,value,gap\n";
                 for (const Convergent& c : cs) {
                     os << c.n << ',' << c.p << ',' << c.q << ',' << fmt17(c.value)
                        << ',' << fmt17(c.gap) << '\n';
                 }
             },
             make_summary(config, params.seed, results));
    }
};

struct SimulateCmd {
    std::string kind;
    std::size_t n = 1 << 14;
    Params params;
    double lambda = 0.0;
    double alpha = 1.0;
    IoOptions io;
    ConfigBinder binder;
    CLI::Option* lambda_opt = nullptr;

    void setup(CLI::App& app) {
        CLI::App* sub = app.add_subcommand("simulate", "generate a sample path");
        binder.track(sub->add_option("--kind", kind, "cascade or spectral")
                         ->required()
                         ->check(CLI::IsMember({"cascade", "spectral"})),
                     "kind", kind);
        binder.track(sub->add_option("--n", n, "sample count"), "n", n);
        binder.track(sub->add_option("--seed", params.seed, "master RNG seed"),
                     "seed", params.seed);
        binder.track(sub->add_option("--k", params.k, "scaling constant (cascade)"),
                     "k", params.k);
        lambda_opt = sub->add_option("--lambda", lambda, "epoch growth factor (cascade, default 1/|k|)");
        binder.track(lambda_opt, "lambda", lambda);
        binder.track(sub->add_option("--alpha", alpha, "target spectral exponent (spectral)"),
                     "alpha", alpha);
        binder.track(sub->add_option("--depth", params.depth, "recursion depth budget"),
                     "depth", params.depth);
        binder.track(sub->add_option("--eps-one", params.eps_one, "half-width of the band at 1"),
                     "eps_one", params.eps_one);
        add_io_options(sub, io, binder);
        sub->callback([this] { run(); });
    }

    void run() {
        binder.apply(load_config(io.config));
        SamplePath path;
        ordered_json config = params_json(params);
        config["kind"] = kind;
        config["n"] = n;
        if (kind == "cascade") {
            if (lambda_opt->count() == 0 && lambda == 0.0) {
                if (params.k == 0.0) {
                    throw CLI::ValidationError("--lambda",
                                               "required when k is 0 (no default scale)");
                }
                lambda = 1.0 / std::abs(params.k);
            }
            config["lambda"] = lambda;
            path = cascade_path(params, n, lambda);
        } else {
            config["alpha"] = alpha;
            path = spectral_path(alpha, n, params.seed);
        }

        ordered_json results;
        results["n"] = path.n;
        results["dt"] = path.dt;
        results["epochs"] = path.epochs;
        results["signs"] = path.signs;
        if (io.format == "json") results["values"] = path.values;

        emit(io, [&](std::ostream& os) { write_path_csv(os, path); },
             make_summary(config, params.seed, results));
    }
};

struct SpectrumCmd {
    std::string input;
    int segments = 1;
    std::string band;
    std::string window = "hann";
    IoOptions io;
    ConfigBinder binder;

    void setup(CLI::App& app) {
        CLI::App* sub = app.add_subcommand("spectrum", "periodogram and power-law fit");
        binder.track(sub->add_option("--input", input, "CSV with a 'value' column")->required(),
                     "input", input);
        binder.track(sub->add_option("--segments", segments, "number of averaging segments"),
                     "segments", segments);
        binder.track(sub->add_option("--band", band, "fit band lo:hi in cycles/step "
                                                     "(default 8/L : 1/16)"),
                     "band", band);
        binder.track(sub->add_option("--window", window, "hann or boxcar")
                         ->check(CLI::IsMember({"hann", "boxcar"})),
                     "window", window);
        add_io_options(sub, io, binder);
        sub->callback([this] { run(); });
    }

    void run() {
        binder.apply(load_config(io.config));
        std::ifstream in(input);
        if (!in) {
            throw CLI::ValidationError("--input", "cannot open '" + input + "'");
        }
        const SamplePath path = read_path_csv(in);
        const Window win = (window == "hann") ? Window::hann : Window::boxcar;
        SpectrumEstimate est = periodogram(path, segments, win);

        double lo = 0.0, hi = 0.0;
        if (band.empty()) {
            const std::size_t seg_len = path.values.size() / static_cast<std::size_t>(segments);
            std::tie(lo, hi) = default_band(seg_len);
        } else {
            std::tie(lo, hi) = parse_band(band);
        }
        est = fit_exponent(est, lo, hi);

        ordered_json config{{"input", input},
                            {"segments", segments},
                            {"band", band.empty() ? "default" : band},
                            {"window", window},
                            {"n", path.values.size()}};
        ordered_json results{{"exponent", est.exponent},
                             {"stderr", est.exponent_se},
                             {"fit_lo", est.fit_lo},
                             {"fit_hi", est.fit_hi},
                             {"excluded_bins", est.excluded_bins},
                             {"bins", est.freqs.size()}};
        if (io.format == "json") {
            results["freq"] = est.freqs;
            results["power"] = est.powers;
        }

        emit(io,
             [&](std::ostream& os) {
                 os << "freq,power\n";
                 for (std::size_t i = 0; i < est.freqs.size(); ++i) {
                     os << fmt17(est.freqs[i]) << ',' << fmt17(est.powers[i]) << '\n';
                 }
             },
             make_summary(config, 0, results));
    }
};

struct VerifyCmd {
    IoOptions io;
    int failures = 0;

    void setup(CLI::App& app) {
        CLI::App* sub = app.add_subcommand("verify", "run the invariant suite");
        sub->add_option("--summary", io.summary, "path for the JSON run summary");
        sub->callback([this] { run(); });
    }

    void run() {
        std::vector<scalefree_cli::CheckResult> results;
        failures = scalefree_cli::run_verify(std::cout, &results);
        if (!io.summary.empty()) {
            ordered_json checks = ordered_json::array();
            for (const auto& r : results) {
                checks.push_back(ordered_json{{"name", r.name}, {"pass", r.pass}});
            }
            ordered_json summary = make_summary(
                ordered_json::object(), 0,
                ordered_json{{"passed", results.size() - static_cast<std::size_t>(failures)},
                             {"failed", failures},
                             {"checks", checks}});
            std::ofstream f(io.summary);
            if (!f) throw std::runtime_error("cannot open '" + io.summary + "'");
            f << summary.dump(2) << '\n';
        }
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scale-free fluctuation laboratory"};
    app.require_subcommand(1);

    PhiCmd phi_cmd;
    ConvergentsCmd conv_cmd;
    SimulateCmd sim_cmd;
    SpectrumCmd spec_cmd;
    VerifyCmd verify_cmd;

    phi_cmd.setup(app);
    conv_cmd.setup(app);
    sim_cmd.setup(app);
    spec_cmd.setup(app);
    verify_cmd.setup(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_runtime;
    }

    return verify_cmd.failures == 0 ? exit_ok : exit_runtime;
}
