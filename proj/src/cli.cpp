// SPDX-License-Identifier: Apache-2.0
#include "nomalab/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "nomalab/analysis.hpp"
#include "nomalab/constellation.hpp"
#include "nomalab/errors.hpp"
#include "nomalab/experiments.hpp"
#include "nomalab/lattice.hpp"
#include "nomalab/sim.hpp"
#include "nomalab/svgplot.hpp"
#include "report.hpp"
#include "sweep.hpp"

namespace nomalab::cli {

namespace {

// shared scheme-selection options (constellation, ser-sim)
struct SchemeOpts {
    int p = 5;
    int n = 2;  // dimension of the unrotated baseline (used when p == 0)
    int m1 = 1, m2 = 1;
    double alpha = -1.0;
    bool lp = false;
    CLI::Option* alpha_opt = nullptr;
};

void add_scheme_options(CLI::App* cmd, SchemeOpts& s, int def_m1, int def_m2) {
    s.m1 = def_m1;
    s.m2 = def_m2;
    cmd->add_option("--p", s.p, "cyclotomic prime in 5..61, or 0 for the "
                                "unrotated baseline")
        ->capture_default_str();
    cmd->add_option("--n", s.n, "dimension of the unrotated baseline "
                                "(ignored when --p > 0)")
        ->capture_default_str();
    cmd->add_option("--m1", s.m1, "bits per dimension, user 1")
        ->capture_default_str();
    cmd->add_option("--m2", s.m2, "bits per dimension, user 2")
        ->capture_default_str();
    s.alpha_opt =
        cmd->add_option("--alpha", s.alpha, "power fraction of user 1");
    CLI::Option* lp = cmd->add_flag(
        "--lp", s.lp, "use the lattice-partition power split instead of "
                      "--alpha");
    s.alpha_opt->excludes(lp);
}

CompositeScheme build_scheme(const SchemeOpts& s) {
    if (!s.lp && (s.alpha_opt == nullptr || s.alpha_opt->count() == 0))
        throw ConfigError("one of --alpha or --lp is required");
    if (s.p == 0 && (s.n < 1 || s.n > 32))
        throw ConfigError("--n must be in 1..32 when --p is 0");
    const RotatedLattice lat =
        s.p > 0 ? build_rotation(s.p) : RotatedLattice::unrotated(s.n);
    if (s.lp) return lattice_partition_scheme(lat, s.m1, s.m2);
    return superimpose(coset_leaders(lat, s.m1), coset_leaders(lat, s.m2),
                       s.alpha);
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
}

void add_ser_series(SvgPlot& plot, const SerCurve& curve,
                    const std::string& prefix) {
    for (int u = 0; u < 2; ++u) {
        std::vector<std::pair<double, double>> xy;
        for (const auto& pt : curve.user[u]) xy.emplace_back(pt.snr_db, pt.ser);
        plot.add_series(prefix + "user " + std::to_string(u + 1), xy);
    }
}

std::string join_num(const std::vector<double>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
    return s;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"rotated-lattice NOMA constellations: construction, distance "
                 "analysis and SER simulation"};
    app.name("nomalab");
    app.set_config("--config", "",
                   "TOML/INI config file, one [subcommand] section per "
                   "command; command-line flags win");
    app.allow_config_extras(false);  // unknown config keys are errors

    // ---- lattice ----
    CLI::App* lattice_cmd =
        app.add_subcommand("lattice",
                           "print the rotation matrix and its invariants")
            ->configurable();
    struct {
        int p = 5;
        int shell = 0;
    } lat_o;
    lattice_cmd->add_option("--p", lat_o.p, "cyclotomic prime in 5..61")
        ->capture_default_str();
    lattice_cmd
        ->add_option("--shell-radius", lat_o.shell,
                     "also brute-force min |coordinate product| over integer "
                     "vectors in {-r..r}^n")
        ->capture_default_str();

    // ---- constellation ----
    CLI::App* constellation_cmd =
        app.add_subcommand("constellation",
                           "dump the composite constellation as CSV")
            ->configurable();
    SchemeOpts con_s;
    add_scheme_options(constellation_cmd, con_s, 1, 1);
    std::string con_out = "-";
    constellation_cmd
        ->add_option("--out", con_out, "output CSV path, - for stdout")
        ->capture_default_str();

    // ---- dpmin-sweep ----
    CLI::App* dpmin_cmd =
        app.add_subcommand("dpmin-sweep",
                           "exhaustive vs closed-form minimum product "
                           "distance over an alpha grid")
            ->configurable();
    struct {
        int p = 5, m1 = 3, m2 = 3, grid = 512, threads = 0;
        std::string variant = "printed";
        std::string out = "dpmin_sweep.csv";
        std::string svg;
    } dp_o;
    dpmin_cmd->add_option("--p", dp_o.p, "cyclotomic prime")
        ->capture_default_str();
    dpmin_cmd->add_option("--m1", dp_o.m1, "bits per dimension, user 1")
        ->capture_default_str();
    dpmin_cmd->add_option("--m2", dp_o.m2, "bits per dimension, user 2")
        ->capture_default_str();
    dpmin_cmd->add_option("--grid", dp_o.grid, "number of alpha grid points")
        ->capture_default_str();
    dpmin_cmd
        ->add_option("--band-variant", dp_o.variant,
                     "second-crossing-band edge variant written to the CSV")
        ->check(CLI::IsMember({"printed", "squared"}))
        ->capture_default_str();
    dpmin_cmd->add_option("--out", dp_o.out, "output CSV path")
        ->capture_default_str();
    dpmin_cmd->add_option("--svg", dp_o.svg, "optional SVG plot path");
    dpmin_cmd->add_option("--threads", dp_o.threads, "worker cap, 0 = auto")
        ->envname("NOMA_LAB_THREADS")
        ->capture_default_str();

    // ---- mindet-sweep ----
    CLI::App* mindet_cmd =
        app.add_subcommand("mindet-sweep",
                           "space-time minimum determinant over an alpha grid "
                           "(2-D schemes)")
            ->configurable();
    struct {
        int p = 5, m1 = 2, m2 = 1, grid = 512;
        double tau = 1.0;
        bool ucp = true;
        std::string out = "mindet_sweep.csv";
    } md_o;
    mindet_cmd->add_option("--p", md_o.p, "cyclotomic prime (n must be 2)")
        ->capture_default_str();
    mindet_cmd->add_option("--m1", md_o.m1, "bits per dimension, user 1")
        ->capture_default_str();
    mindet_cmd->add_option("--m2", md_o.m2, "bits per dimension, user 2")
        ->capture_default_str();
    mindet_cmd->add_option("--grid", md_o.grid, "number of alpha grid points")
        ->capture_default_str();
    mindet_cmd->add_option("--tau", md_o.tau, "codeword scale factor")
        ->capture_default_str();
    mindet_cmd
        ->add_flag("--unit-complex-power,!--no-unit-complex-power", md_o.ucp,
                   "normalize to unit average power per complex symbol")
        ->capture_default_str();
    mindet_cmd->add_option("--out", md_o.out, "output CSV path")
        ->capture_default_str();

    // ---- ser-sim ----
    CLI::App* ser_cmd =
        app.add_subcommand("ser-sim",
                           "Monte-Carlo symbol error rate over block Rayleigh "
                           "fading")
            ->configurable();
    SchemeOpts ser_s;
    add_scheme_options(ser_cmd, ser_s, 1, 1);
    struct {
        ChannelKind kind = ChannelKind::siso_rayleigh;
        Decoder decoder = Decoder::single_user;
        std::vector<double> snr;
        std::vector<uint64_t> trials_per_point;
        double gap = 0.0, tau = 1.0;
        uint64_t trials = 100000, seed = 1, early_stop = 0;
        int threads = 0;
        bool ucp = true;
        std::string out, svg;
    } sim_o;
    ser_cmd
        ->add_option("--channel", sim_o.kind, "channel model")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, ChannelKind>{
                {"siso", ChannelKind::siso_rayleigh},
                {"mimo", ChannelKind::mimo_rayleigh}},
            CLI::ignore_case))
        ->default_str("siso");
    ser_cmd->add_option("--decoder", sim_o.decoder, "user-1 receiver")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Decoder>{{"single_user", Decoder::single_user},
                                           {"sic", Decoder::sic},
                                           {"sic_genie", Decoder::sic_genie}},
            CLI::ignore_case))
        ->default_str("single_user");
    ser_cmd
        ->add_option("--snr", sim_o.snr,
                     "user-1 average SNR points in dB, strictly increasing")
        ->delimiter(',');
    ser_cmd->add_option("--gap", sim_o.gap, "user-2 SNR gap in dB (MIMO)")
        ->capture_default_str();
    ser_cmd->add_option("--trials", sim_o.trials,
                        "trials per SNR point (symbols for SISO, blocks for "
                        "MIMO), min 10000")
        ->capture_default_str();
    ser_cmd
        ->add_option("--trials-per-point", sim_o.trials_per_point,
                     "per-point trial counts, overrides --trials")
        ->delimiter(',');
    ser_cmd->add_option("--seed", sim_o.seed, "RNG seed")
        ->capture_default_str();
    ser_cmd
        ->add_option("--early-stop", sim_o.early_stop,
                     "stop a point once both users have this many errors, 0 = "
                     "never")
        ->capture_default_str();
    ser_cmd->add_option("--tau", sim_o.tau, "codeword scale factor (MIMO)")
        ->capture_default_str();
    ser_cmd
        ->add_flag("--unit-complex-power,!--no-unit-complex-power", sim_o.ucp,
                   "normalize MIMO symbols to unit average power per complex "
                   "symbol")
        ->capture_default_str();
    ser_cmd->add_option("--out", sim_o.out, "output CSV path (a .json "
                                            "metadata sidecar is written next "
                                            "to it)");
    ser_cmd->add_option("--svg", sim_o.svg, "optional SVG plot path");
    ser_cmd->add_option("--threads", sim_o.threads, "worker cap, 0 = auto")
        ->envname("NOMA_LAB_THREADS")
        ->capture_default_str();

    // ---- reproduce ----
    CLI::App* repro_cmd =
        app.add_subcommand("reproduce",
                           "run a canned experiment and print PASS/FAIL "
                           "verdicts")
            ->configurable();
    struct {
        std::string figure;
        std::string out_dir = ".";
        uint64_t seed = 7, blocks = 1000000;
        double trial_scale = 1.0;
        int grid = 512, threads = 0;
    } rep_o;
    repro_cmd->add_option("figure", rep_o.figure,
                          "one of: fig7, fig8-9, fig12-13, mindet-table");
    repro_cmd->add_option("--out-dir", rep_o.out_dir, "artifact directory")
        ->capture_default_str();
    repro_cmd->add_option("--seed", rep_o.seed, "RNG seed (fig8-9, fig12-13)")
        ->capture_default_str();
    repro_cmd
        ->add_option("--trial-scale", rep_o.trial_scale,
                     "scales the fig8-9 trial ladder")
        ->capture_default_str();
    repro_cmd
        ->add_option("--blocks", rep_o.blocks,
                     "Alamouti blocks per scheme and decoder (fig12-13)")
        ->capture_default_str();
    repro_cmd->add_option("--grid", rep_o.grid, "alpha grid size (fig7)")
        ->capture_default_str();
    repro_cmd->add_option("--threads", rep_o.threads, "worker cap, 0 = auto")
        ->envname("NOMA_LAB_THREADS")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    const auto parsed = app.get_subcommands();
    if (parsed.empty()) {
        err << "error: a subcommand is required: lattice, constellation, "
               "dpmin-sweep, mindet-sweep, ser-sim, reproduce\n";
        return 2;
    }
    CLI::App* chosen = parsed.front();

    try {
        if (chosen == lattice_cmd) {
            const RotatedLattice lat = build_rotation(lat_o.p);
            out << "p=" << lat_o.p << " n=" << lat.dim() << "\n";
            out << "generator rows:\n";
            for (int i = 0; i < lat.dim(); ++i) {
                for (int j = 0; j < lat.dim(); ++j)
                    out << (j ? " " : "  ") << num(lat.generator(i, j));
                out << "\n";
            }
            out << "min product distance = " << num(lat.dpmin) << "\n";
            out << "orthogonality residual = "
                << num(orthogonality_residual(lat.generator)) << "\n";
            out << "|det G| = " << num(std::abs(lat.generator.determinant()))
                << "\n";
            if (lat_o.shell > 0)
                out << "min |coordinate product|, shell radius " << lat_o.shell
                    << " = " << num(min_product_over_shell(lat, lat_o.shell))
                    << "\n";
            out << "ok: lattice p=" << lat_o.p << " n=" << lat.dim() << "\n";
            return 0;
        }

        if (chosen == constellation_cmd) {
            const CompositeScheme scheme = build_scheme(con_s);
            auto emit = [&](std::ostream& os) {
                os << "label1,label2";
                for (int j = 0; j < scheme.dim(); ++j)
                    os << ",coord_" << (j + 1);
                os << "\n";
                for (long i = 0; i < scheme.size(); ++i) {
                    const auto [l1, l2] = scheme.labels(i);
                    os << l1 << ',' << l2;
                    for (int j = 0; j < scheme.dim(); ++j)
                        os << ',' << num(scheme.points(i, j));
                    os << "\n";
                }
            };
            const std::string summary = "ok: constellation " +
                                        scheme.descriptor() + ", " +
                                        std::to_string(scheme.size()) +
                                        " points";
            if (con_out == "-") {
                emit(out);
                err << summary << "\n";
            } else {
                auto f = open_out(con_out);
                emit(f);
                out << summary << " -> " << con_out << "\n";
            }
            return 0;
        }

        if (chosen == dpmin_cmd) {
            if (dp_o.grid < 2)
                throw ConfigError("--grid must be at least 2");
            const int threads = resolve_threads(dp_o.threads);
            const auto rows =
                sweep_rows(dp_o.p, dp_o.m1, dp_o.m2, dp_o.grid, threads);
            const bool squared = dp_o.variant == "squared";
            write_sweep_csv(dp_o.out, rows, squared);

            long disagreements = 0;
            std::string first;
            double worst = std::numeric_limits<double>::infinity();
            for (const auto& r : rows) {
                const double bound = squared ? r.bound_squared : r.bound_printed;
                worst = std::min(worst, bound - r.exact);
                if (std::abs(r.bound_printed - r.bound_squared) > 1e-15) {
                    if (disagreements < 3)
                        first += (first.empty() ? "" : ", ") + num(r.alpha);
                    ++disagreements;
                }
            }
            if (disagreements == 0)
                out << "band-2 edge variants agree at all " << rows.size()
                    << " alphas\n";
            else
                out << "band-2 edge variants disagree at " << disagreements
                    << " of " << rows.size() << " alphas (first: " << first
                    << ")\n";
            if (worst < -1e-12) {
                err << "error: bound dominance postcondition failed: "
                       "min(bound - exact) = "
                    << num(worst) << "\n";
                return 1;
            }
            out << "dominance holds: min(bound - exact) = " << num(worst)
                << " over " << rows.size() << " alphas\n";
            if (!dp_o.svg.empty()) {
                SvgPlot plot("min product distance vs alpha", "alpha",
                             "min product distance", false);
                std::vector<std::pair<double, double>> exact_xy, bound_xy;
                for (const auto& r : rows) {
                    exact_xy.emplace_back(r.alpha, r.exact);
                    bound_xy.emplace_back(
                        r.alpha, squared ? r.bound_squared : r.bound_printed);
                }
                plot.add_series("exhaustive", exact_xy);
                plot.add_series("closed-form bound", bound_xy);
                plot.write(dp_o.svg);
            }
            out << "ok: dpmin-sweep wrote " << rows.size() << " rows to "
                << dp_o.out << "\n";
            return 0;
        }

        if (chosen == mindet_cmd) {
            if (md_o.grid < 2)
                throw ConfigError("--grid must be at least 2");
            const RotatedLattice lat = build_rotation(md_o.p);
            const UserConstellation c1 = coset_leaders(lat, md_o.m1);
            const UserConstellation c2 = coset_leaders(lat, md_o.m2);
            std::vector<double> alphas;
            for (int i = 0; i < md_o.grid; ++i)
                alphas.push_back(double(i) / double(md_o.grid - 1));
            alphas.push_back(lattice_partition_alpha(md_o.m1));
            std::sort(alphas.begin(), alphas.end());
            alphas.erase(std::unique(alphas.begin(), alphas.end()),
                         alphas.end());
            auto f = open_out(md_o.out);
            f << "alpha,min_det\n";
            for (double a : alphas) {
                const CompositeScheme s = superimpose(c1, c2, a);
                f << num(a) << ','
                  << num(min_determinant(s, 2, md_o.tau, md_o.ucp)) << '\n';
            }
            out << "ok: mindet-sweep wrote " << alphas.size() << " rows to "
                << md_o.out << "\n";
            return 0;
        }

        if (chosen == ser_cmd) {
            if (sim_o.out.empty() || sim_o.out == "-")
                throw ConfigError("--out must be a writable file path");
            const CompositeScheme scheme = build_scheme(ser_s);
            ChannelConfig chan;
            chan.kind = sim_o.kind;
            chan.snr_db = sim_o.snr;
            chan.snr_gap_db = sim_o.gap;
            SimOptions opts;
            opts.trials = sim_o.trials;
            opts.seed = sim_o.seed;
            opts.decoder = sim_o.decoder;
            opts.threads = resolve_threads(sim_o.threads);
            opts.early_stop_errors = sim_o.early_stop;
            opts.tau = sim_o.tau;
            opts.unit_complex_power = sim_o.ucp;
            opts.trials_per_point = sim_o.trials_per_point;
            const SerCurve curve = simulate_ser(scheme, chan, opts);

            write_ser_csv(sim_o.out, curve);
            std::filesystem::path sidecar(sim_o.out);
            sidecar.replace_extension(".json");
            std::ostringstream cfg;
            cfg << scheme.descriptor() << " channel=" << to_string(chan.kind)
                << " gap=" << num(chan.snr_gap_db)
                << " decoder=" << to_string(opts.decoder)
                << " snr=" << join_num(chan.snr_db) << " trials=";
            if (opts.trials_per_point.empty()) {
                cfg << opts.trials;
            } else {
                for (size_t i = 0; i < opts.trials_per_point.size(); ++i)
                    cfg << (i ? "," : "") << opts.trials_per_point[i];
            }
            cfg << " seed=" << opts.seed
                << " early_stop=" << opts.early_stop_errors
                << " tau=" << num(opts.tau)
                << " unit_complex_power=" << (opts.unit_complex_power ? 1 : 0);
            write_ser_sidecar(sidecar.string(), curve, cfg.str());

            if (!sim_o.svg.empty()) {
                SvgPlot plot("SER vs user-1 average SNR", "SNR (dB)", "SER",
                             true);
                add_ser_series(plot, curve, "");
                plot.write(sim_o.svg);
            }
            const SerPoint& last1 = curve.user[0].back();
            const SerPoint& last2 = curve.user[1].back();
            out << "ok: ser-sim " << scheme.descriptor() << " seed "
                << opts.seed << ", " << chan.snr_db.size()
                << " SNR points -> " << sim_o.out << " (+"
                << sidecar.string() << "); SER at " << num(last1.snr_db)
                << " dB: user1 " << num(last1.ser) << ", user2 "
                << num(last2.ser) << "\n";
            return 0;
        }

        if (chosen == repro_cmd) {
            if (rep_o.figure.empty())
                throw ConfigError(
                    "a figure id is required: fig7, fig8-9, fig12-13, "
                    "mindet-table");
            const int threads = resolve_threads(rep_o.threads);
            ExperimentOutput exp;
            if (rep_o.figure == "fig7") {
                if (rep_o.grid < 2)
                    throw ConfigError("--grid must be at least 2");
                out << "reproduce fig7: grid=" << rep_o.grid
                    << " threads=" << threads << " out-dir=" << rep_o.out_dir
                    << "\n";
                exp = run_dpmin_sweep_experiment(rep_o.grid, threads,
                                                 rep_o.out_dir);
            } else if (rep_o.figure == "fig8-9") {
                out << "reproduce fig8-9: seed=" << rep_o.seed
                    << " trial-scale=" << num(rep_o.trial_scale)
                    << " threads=" << threads << " out-dir=" << rep_o.out_dir
                    << "\n";
                exp = run_diversity_experiment(rep_o.trial_scale, rep_o.seed,
                                               threads, rep_o.out_dir);
            } else if (rep_o.figure == "fig12-13") {
                out << "reproduce fig12-13: seed=" << rep_o.seed
                    << " blocks=" << rep_o.blocks << " threads=" << threads
                    << " out-dir=" << rep_o.out_dir << "\n";
                exp = run_alamouti_experiment(rep_o.blocks, rep_o.seed,
                                              threads, rep_o.out_dir);
            } else if (rep_o.figure == "mindet-table") {
                out << "reproduce mindet-table\n";
                exp = run_mindet_table_experiment();
            } else {
                throw UnknownFigureError("unknown figure id '" + rep_o.figure +
                                         "' (expected fig7, fig8-9, "
                                         "fig12-13, mindet-table)");
            }
            for (const auto& c : exp.checks)
                out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": "
                    << c.detail << "\n";
            for (const auto& a : exp.artifacts) out << "wrote " << a << "\n";
            if (!exp.all_pass()) {
                out << "FAIL: " << rep_o.figure << "\n";
                return 1;
            }
            out << "ok: " << rep_o.figure << ", all checks passed\n";
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    err << "error: unhandled subcommand\n";
    return 2;
}

}  // namespace nomalab::cli
