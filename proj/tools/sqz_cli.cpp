// Command-line front end: state files, conditional outcomes, QFI, Wigner
// fields and parameter sweeps.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sqz/sqz.hpp"

namespace {

using namespace sqz;

constexpr int kExitUsage = 2;
constexpr int kExitZeroProbability = 3;

/// Selects either a stored pure state or a heralded (possibly noisy)
/// conditional state of a split twisted state.
struct StateSelection {
    std::string state_file;
    std::optional<int> n;
    std::optional<double> mu;
    std::optional<int> n_a;
    std::optional<int> l_a;
    std::string axis = "x";
    double sigma = 0.0;

    void attach(CLI::App &app) {
        app.add_option("--state", state_file, "JSON state file");
        app.add_option("--n", n, "total particle number");
        app.add_option("--mu", mu, "twisting strength");
        app.add_option("--na", n_a, "ancilla particle number N_A (conditional state)");
        app.add_option("--la", l_a, "observed ancilla outcome l_A (conditional state)");
        app.add_option("--axis", axis, "x|y|z|yprime|zprime|plane:<theta_a>|dir:<theta>:<phi>");
        app.add_option("--sigma", sigma, "Gaussian read-out noise on l_A");
    }

    SpinDensity resolve() const {
        if (!state_file.empty()) {
            if (n || mu || n_a || l_a) throw ConfigError("--state excludes --n/--mu/--na/--la");
            return SpinDensity::pure(read_state_file(state_file).state);
        }
        if (!n || !mu) throw ConfigError("give --state or both --n and --mu");
        const OATParameters p{*n, *mu};
        if (!n_a && !l_a) return SpinDensity::pure(oat_state(p));
        if (!n_a || !l_a) throw ConfigError("--na and --la go together");
        const RotationSpec dir = parse_axis_text(axis).policy.resolve(p);
        return noisy_conditional_state(split_state(p), *n_a, *l_a, dir, {sigma});
    }
};

int cmd_oat(int n, double mu, const std::string &out) {
    const DickeState psi = oat_state({n, mu});
    write_text(out, state_to_json(psi, mu).dump(2) + "\n");
    return 0;
}

int cmd_split_info(int n, double mu, const std::string &out) {
    const OATParameters p{n, mu};
    const SplitState split = split_state(p);
    json j = {{"n", n}, {"mu", mu}, {"squaredNorm", split.squared_norm()}, {"pNA", splitting_distribution(n)}};
    json blocks = json::array();
    for (int n_a = 0; n_a <= n; ++n_a) blocks.push_back(split.block(n_a).squaredNorm());
    j["blockWeights"] = blocks;
    if (n >= 2) {
        const MeasurementFrame f = MeasurementFrame::of(p);
        auto vec = [](const Eigen::Vector3d &v) { return json::array({v.x(), v.y(), v.z()}); };
        j["thetaStar"] = f.theta_star;
        j["frame"] = {{"xprime", vec(f.x_prime())}, {"yprime", vec(f.y_prime())}, {"zprime", vec(f.z_prime())}};
    }
    write_text(out, j.dump(2) + "\n");
    return 0;
}

int cmd_condition(int n, double mu, int n_a, int l_a, const std::string &axis, const std::string &out) {
    const OATParameters p{n, mu};
    const RotationSpec dir = parse_axis_text(axis).policy.resolve(p);
    const ConditionalOutcome o = condition(split_state(p), n_a, l_a, dir);
    json j = outcome_to_json(o);
    j["mu"] = mu;
    write_text(out, j.dump(2) + "\n");
    return 0;
}

int cmd_qfi(const StateSelection &sel, const std::string &out) {
    const SpinDensity rho = sel.resolve();
    rho.validate();
    const QfiResult r = qfi_mixed(rho);
    json j = {{"n", rho.n},
              {"fq", r.fq},
              {"fq_per_particle", rho.n > 0 ? r.fq / rho.n : 0.0},
              {"axis", json::array({r.axis.x(), r.axis.y(), r.axis.z()})}};
    write_text(out, j.dump(2) + "\n");
    return 0;
}

int cmd_wigner(const StateSelection &sel, int n_theta, int n_phi, const std::string &field_out,
               const std::string &summary_out) {
    if (field_out == "-" && summary_out == "-") throw ConfigError("--out and --summary cannot both be '-'");
    const SpinDensity rho = sel.resolve();
    rho.validate();
    const bool explicit_grid = n_theta > 0 || n_phi > 0;
    const SphereGrid grid = explicit_grid ? SphereGrid::make(n_theta, n_phi) : SphereGrid::for_spin(rho.n);
    if (!grid.resolves(rho.n)) throw ConfigError("grid under-resolves band limit");
    const WignerField w = wigner_function(rho, grid);
    const SphereGrid wn_grid = explicit_grid ? grid : SphereGrid::for_negativity(rho.n);
    if (!field_out.empty()) {
        CsvTable t({"theta", "phi", "w"});
        for (int i = 0; i < grid.n_theta; ++i) {
            for (int k = 0; k < grid.n_phi; ++k) {
                t.add_row({format_number(grid.theta[static_cast<std::size_t>(i)]),
                           format_number(grid.phi[static_cast<std::size_t>(k)]), format_number(w.values(i, k))});
            }
        }
        write_text(field_out, t.str());
    }
    json j = {{"j", 0.5 * rho.n},
              {"nTheta", grid.n_theta},
              {"nPhi", grid.n_phi},
              {"negativity", wigner_negativity(rho, wn_grid)},
              {"negativityGrid", {wn_grid.n_theta, wn_grid.n_phi}},
              {"normalization", w.normalization()},
              {"maxImag", w.max_imag}};
    write_text(summary_out, j.dump(2) + "\n");
    return 0;
}

int cmd_sweep(const std::string &config_path, const std::string &preset, std::string out, int threads,
              bool print_config) {
    if (config_path.empty() == preset.empty()) throw ConfigError("give exactly one of --config or --preset");
    const json doc = preset.empty() ? read_json_file(config_path) : preset_config(preset);
    const SweepConfig cfg = parse_sweep_config(doc);
    if (print_config) {
        write_text(out.empty() ? "-" : out, doc.dump(2) + "\n");
        return 0;
    }
    if (out.empty()) out = cfg.out.empty() ? "-" : cfg.out;
    if (threads < 1) throw ConfigError("--threads must be >= 1");
    write_text(out, run_sweep(cfg, threads).str());
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Split spin-squeezed state simulator"};
    app.require_subcommand(1);

    int n = 0, n_a = 0, l_a = 0;
    double mu = 0.0;
    std::string out = "-";
    std::string axis = "x";

    auto *oat = app.add_subcommand("oat", "write the one-axis-twisted state as JSON");
    oat->add_option("--n", n, "particle number")->required();
    oat->add_option("--mu", mu, "twisting strength")->required();
    oat->add_option("--out", out, "output path, '-' for stdout");

    auto *info = app.add_subcommand("split-info", "mode occupation and squeezing frame of the split state");
    info->add_option("--n", n, "total particle number")->required();
    info->add_option("--mu", mu, "twisting strength")->required();
    info->add_option("--out", out, "output path, '-' for stdout");

    auto *cond = app.add_subcommand("condition", "herald one outcome on mode A");
    cond->add_option("--n", n, "total particle number")->required();
    cond->add_option("--mu", mu, "twisting strength")->required();
    cond->add_option("--na", n_a, "ancilla particle number N_A")->required();
    cond->add_option("--la", l_a, "outcome l_A")->required();
    cond->add_option("--axis", axis, "x|y|z|yprime|zprime|plane:<theta_a>|dir:<theta>:<phi>");
    cond->add_option("--out", out, "output path, '-' for stdout");

    StateSelection qsel;
    auto *qfi = app.add_subcommand("qfi", "quantum Fisher information over collective-spin generators");
    qsel.attach(*qfi);
    qfi->add_option("--out", out, "output path, '-' for stdout");

    StateSelection wsel;
    int n_theta = 0, n_phi = 0;
    std::string field_out, summary_out = "-";
    auto *wig = app.add_subcommand("wigner", "spin Wigner function and its negativity");
    wsel.attach(*wig);
    wig->add_option("--n-theta", n_theta, "Gauss-Legendre nodes in cos(theta)");
    wig->add_option("--n-phi", n_phi, "uniform nodes in phi");
    wig->add_option("--out", field_out, "CSV field (theta, phi, w); '-' for stdout");
    wig->add_option("--summary", summary_out, "negativity JSON; '-' for stdout");

    std::string config_path, preset;
    std::string sweep_out;
    int threads = 1;
    bool print_config = false;
    auto *sweep = app.add_subcommand("sweep", "run a parameter sweep and emit CSV");
    sweep->add_option("--config", config_path, "JSON sweep config");
    sweep->add_option("--preset", preset, "named preset")
        ->check(CLI::IsMember(preset_names()));
    sweep->add_option("--out", sweep_out, "output path, '-' for stdout (overrides the config)");
    sweep->add_option("--threads", threads, "worker threads");
    sweep->add_flag("--print-config", print_config, "print the resolved config and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*oat) return cmd_oat(n, mu, out);
        if (*info) return cmd_split_info(n, mu, out);
        if (*cond) return cmd_condition(n, mu, n_a, l_a, axis, out);
        if (*qfi) return cmd_qfi(qsel, out);
        if (*wig) return cmd_wigner(wsel, n_theta, n_phi, field_out, summary_out);
        if (*sweep) return cmd_sweep(config_path, preset, sweep_out, threads, print_config);
    } catch (const SweepHeraldError &e) {
        std::cerr << "error: zero-probability herald at mu=" << format_number(e.mu()) << " l_A=" << e.l_a()
                  << " (" << e.what() << ")\n";
        return kExitZeroProbability;
    } catch (const ZeroProbabilityError &e) {
        std::cerr << "error: " << e.what();
        if (*cond) std::cerr << " at mu=" << format_number(mu) << " l_A=" << l_a;
        const StateSelection *sel = *qfi ? &qsel : (*wig ? &wsel : nullptr);
        if (sel && sel->mu && sel->l_a) std::cerr << " at mu=" << format_number(*sel->mu) << " l_A=" << *sel->l_a;
        std::cerr << '\n';
        return kExitZeroProbability;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
