#pragma once

// Parameter sweeps driven by a strict JSON config, emitting deterministic CSV.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "sqz/io.hpp"
#include "sqz/noise.hpp"
#include "sqz/wigner.hpp"

namespace sqz {

/// Malformed or inconsistent sweep configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A zero-probability herald met during a sweep, tagged with its sweep point.
class SweepHeraldError : public ZeroProbabilityError {
public:
    SweepHeraldError(double mu, int l_a, const ZeroProbabilityError &cause)
        : ZeroProbabilityError("mu=" + format_number(mu) + " l_A=" + std::to_string(l_a) + ": " + cause.what(),
                               cause.probability()),
          mu_(mu),
          l_a_(l_a) {}

    double mu() const { return mu_; }
    int l_a() const { return l_a_; }

private:
    double mu_;
    int l_a_;
};

enum class SweepMode { fixed, outcomes, number_fluct, full, oat };

struct AxisChoice {
    DirectionPolicy policy;
    std::string label;
};

struct SweepConfig {
    int version = 1;
    SweepMode mode = SweepMode::fixed;
    int n = 0;
    std::vector<double> mu_grid;
    std::vector<AxisChoice> axes;
    /// Herald rule name; empty when explicit l_A values are given.
    std::string rule = "ceil_half";
    std::vector<int> la_star;
    std::vector<double> sigma_grid{0.0};
    std::optional<int> n_a;
    std::optional<int> n_a_star;
    std::optional<double> sigma_na;
    std::set<std::string> outputs;
    std::string out;
    /// Canonical form of the parsed document; its hash tags the output.
    json canonical;

    bool wants(const std::string &what) const { return outputs.count(what) != 0; }
    int ancilla_size() const { return n_a.value_or(n / 2); }
};

inline constexpr int kSweepVersion = 1;

namespace detail {

inline void config_require(bool ok, const std::string &message) {
    if (!ok) throw ConfigError(message);
}

inline double finite_number(const json &j, const std::string &what) {
    config_require(j.is_number(), what + " must be a number");
    const double v = j.get<double>();
    config_require(std::isfinite(v), what + " must be finite");
    return v;
}

inline int integer(const json &j, const std::string &what) {
    config_require(j.is_number_integer(), what + " must be an integer");
    return j.get<int>();
}

inline std::vector<double> number_list(const json &j, const std::string &what) {
    config_require(j.is_array(), what + " must be an array");
    config_require(!j.empty(), what + " must be non-empty");
    std::vector<double> v;
    for (const auto &e : j) v.push_back(finite_number(e, what + " entry"));
    return v;
}

inline AxisChoice parse_axis(const json &j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "x") return {DirectionPolicy::x(), "x"};
        if (s == "yprime") return {DirectionPolicy::y_prime(), "yprime"};
        if (s == "zprime") return {DirectionPolicy::z_prime(), "zprime"};
        if (s == "y") return {DirectionPolicy::fixed(axes::plus_y()), "y"};
        if (s == "z") return {DirectionPolicy::fixed(axes::plus_z()), "z"};
        throw ConfigError("unknown axis '" + s + "'");
    }
    config_require(j.is_object() && j.size() == 1, "axis must be a name or a one-key object");
    if (j.contains("planeAngle")) {
        const double t = finite_number(j.at("planeAngle"), "planeAngle");
        return {DirectionPolicy::plane(t), "plane:" + format_number(t)};
    }
    if (j.contains("direction")) {
        const json &d = j.at("direction");
        config_require(d.is_object() && d.size() == 2 && d.contains("theta") && d.contains("phi"),
                       "direction needs exactly theta and phi");
        RotationSpec r{finite_number(d.at("theta"), "theta"), finite_number(d.at("phi"), "phi")};
        try {
            r.validate();
        } catch (const Error &e) {
            throw ConfigError(e.what());
        }
        return {DirectionPolicy::fixed(r),
                "dir:" + format_number(r.polar) + ":" + format_number(r.azimuth)};
    }
    throw ConfigError("axis object must have key planeAngle or direction");
}

/// Axis from command-line text: x, y, z, yprime, zprime, plane:<theta_a> or
/// dir:<theta>:<phi>.
inline AxisChoice parse_axis_text(const std::string &text) {
    auto number = [&](const std::string &s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception &) {
            throw ConfigError("bad number in axis '" + text + "'");
        }
        config_require(used == s.size(), "bad number in axis '" + text + "'");
        return v;
    };
    if (text.rfind("plane:", 0) == 0) {
        return parse_axis(json{{"planeAngle", number(text.substr(6))}});
    }
    if (text.rfind("dir:", 0) == 0) {
        const std::string rest = text.substr(4);
        const auto colon = rest.find(':');
        config_require(colon != std::string::npos, "axis dir needs dir:<theta>:<phi>");
        return parse_axis(
            json{{"direction", {{"theta", number(rest.substr(0, colon))}, {"phi", number(rest.substr(colon + 1))}}}});
    }
    return parse_axis(json(text));
}

inline std::string parse_rule(const json &j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        config_require(s == "ceil_half", "unknown rule '" + s + "'");
        return s;
    }
    config_require(j.is_object() && j.size() == 1 && j.contains("topMinus"),
                   "rule must be \"ceil_half\" or {\"topMinus\": k}");
    const int k = integer(j.at("topMinus"), "topMinus");
    config_require(k >= 0, "topMinus must be >= 0");
    return "top_minus_" + std::to_string(k);
}

}  // namespace detail

using detail::parse_axis_text;

inline HeraldRule herald_rule_named(const std::string &name) {
    if (name == "ceil_half") return HeraldRule::ceil_half();
    const std::string prefix = "top_minus_";
    if (name.rfind(prefix, 0) == 0) return HeraldRule::below_top(std::stoi(name.substr(prefix.size())));
    const std::string fixed = "fixed_";
    if (name.rfind(fixed, 0) == 0) return HeraldRule::fixed(std::stoi(name.substr(fixed.size())));
    throw ConfigError("unknown rule '" + name + "'");
}

inline std::string mode_name(SweepMode m) {
    switch (m) {
    case SweepMode::fixed:
        return "fixed";
    case SweepMode::outcomes:
        return "outcomes";
    case SweepMode::number_fluct:
        return "number_fluct";
    case SweepMode::full:
        return "full";
    case SweepMode::oat:
        return "oat";
    }
    return "fixed";
}

/// Parses and validates a sweep config; any schema violation raises
/// ConfigError.
inline SweepConfig parse_sweep_config(const json &j) {
    using detail::config_require;
    config_require(j.is_object(), "config must be a JSON object");
    static const std::set<std::string> known = {"version", "mode",    "n",       "muGrid",   "axis",
                                                "rule",    "lAstar",  "sigmaGrid", "nA",     "nAstar",
                                                "sigmaNA", "outputs", "out"};
    for (const auto &[key, value] : j.items()) {
        config_require(known.count(key) != 0, "unknown key '" + key + "'");
    }
    config_require(j.contains("version"), "missing 'version'");
    SweepConfig c;
    c.version = detail::integer(j.at("version"), "version");
    config_require(c.version == kSweepVersion, "unsupported version " + std::to_string(c.version));

    config_require(j.contains("mode") && j.at("mode").is_string(), "missing string 'mode'");
    const std::string mode = j.at("mode").get<std::string>();
    static const std::map<std::string, SweepMode> modes = {{"fixed", SweepMode::fixed},
                                                           {"outcomes", SweepMode::outcomes},
                                                           {"number_fluct", SweepMode::number_fluct},
                                                           {"full", SweepMode::full},
                                                           {"oat", SweepMode::oat}};
    config_require(modes.count(mode) != 0, "unknown mode '" + mode + "'");
    c.mode = modes.at(mode);

    config_require(j.contains("n"), "missing 'n'");
    c.n = detail::integer(j.at("n"), "n");
    config_require(c.n >= 1, "n must be >= 1");

    config_require(j.contains("muGrid"), "missing 'muGrid'");
    c.mu_grid = detail::number_list(j.at("muGrid"), "muGrid");

    if (c.mode == SweepMode::oat) {
        for (const char *k : {"axis", "rule", "lAstar", "sigmaGrid", "nA", "nAstar", "sigmaNA"}) {
            config_require(!j.contains(k), std::string("'") + k + "' is not used in oat mode");
        }
    } else {
        config_require(j.contains("axis"), "missing 'axis'");
        const json &a = j.at("axis");
        if (a.is_array()) {
            config_require(!a.empty(), "axis list must be non-empty");
            for (const auto &e : a) c.axes.push_back(detail::parse_axis(e));
        } else {
            c.axes.push_back(detail::parse_axis(a));
        }
        const bool needs_frame = std::any_of(c.axes.begin(), c.axes.end(), [](const AxisChoice &x) {
            return x.policy.kind != DirectionPolicy::Kind::x && x.policy.kind != DirectionPolicy::Kind::fixed;
        });
        config_require(!needs_frame || c.n >= 2, "squeezing-frame axes need n >= 2");
    }

    if (j.contains("rule") && j.contains("lAstar")) {
        throw ConfigError("give either 'rule' or 'lAstar', not both");
    }
    if (j.contains("rule")) c.rule = detail::parse_rule(j.at("rule"));
    if (j.contains("lAstar")) {
        const json &l = j.at("lAstar");
        if (l.is_array()) {
            config_require(!l.empty(), "lAstar list must be non-empty");
            for (const auto &e : l) c.la_star.push_back(detail::integer(e, "lAstar entry"));
        } else {
            c.la_star.push_back(detail::integer(l, "lAstar"));
        }
        c.rule.clear();
        config_require(c.mode == SweepMode::fixed || c.mode == SweepMode::full,
                       "'lAstar' applies to fixed and full modes only");
        config_require(c.mode != SweepMode::full || c.la_star.size() == 1, "full mode takes one lAstar");
    }
    if (c.mode == SweepMode::outcomes) {
        config_require(!j.contains("rule"), "'rule' is not used in outcomes mode");
    }

    if (j.contains("sigmaGrid")) {
        c.sigma_grid = detail::number_list(j.at("sigmaGrid"), "sigmaGrid");
        for (double s : c.sigma_grid) config_require(s >= 0.0, "sigmaGrid entries must be >= 0");
        config_require(c.mode == SweepMode::fixed || c.mode == SweepMode::full,
                       "'sigmaGrid' applies to fixed and full modes only");
    }

    if (j.contains("nA")) {
        c.n_a = detail::integer(j.at("nA"), "nA");
        config_require(c.mode == SweepMode::fixed || c.mode == SweepMode::outcomes,
                       "'nA' applies to fixed and outcomes modes only");
        config_require(*c.n_a >= 0 && *c.n_a < c.n, "nA must lie in [0, n)");
    } else if (c.mode == SweepMode::fixed || c.mode == SweepMode::outcomes || c.mode == SweepMode::number_fluct ||
               c.mode == SweepMode::full) {
        config_require(c.n % 2 == 0, "n must be even when N_A = N/2 is implied");
    }
    for (int l : c.la_star) {
        config_require(l >= 0 && l <= c.ancilla_size(), "lAstar outside [0, N_A]");
    }
    if (j.contains("nAstar")) {
        config_require(c.mode == SweepMode::full, "'nAstar' applies to full mode only");
        c.n_a_star = detail::integer(j.at("nAstar"), "nAstar");
        config_require(*c.n_a_star >= 0 && *c.n_a_star <= c.n, "nAstar must lie in [0, n]");
    }
    if (j.contains("sigmaNA")) {
        config_require(c.n_a_star.has_value(), "'sigmaNA' needs 'nAstar'");
        c.sigma_na = detail::finite_number(j.at("sigmaNA"), "sigmaNA");
        config_require(*c.sigma_na >= 0.0, "sigmaNA must be >= 0");
    }

    static const std::set<std::string> known_outputs = {"prob", "fq", "fq_raw", "negativity"};
    if (j.contains("outputs")) {
        const json &o = j.at("outputs");
        config_require(o.is_array() && !o.empty(), "outputs must be a non-empty array");
        for (const auto &e : o) {
            config_require(e.is_string(), "outputs entries must be strings");
            const std::string s = e.get<std::string>();
            config_require(known_outputs.count(s) != 0, "unknown output '" + s + "'");
            c.outputs.insert(s);
        }
        if (c.mode != SweepMode::fixed && c.mode != SweepMode::outcomes) {
            config_require(!c.outputs.count("negativity") && !c.outputs.count("prob"),
                           "prob/negativity outputs apply to fixed and outcomes modes only");
        }
    } else {
        c.outputs = {"fq"};
        if (c.mode == SweepMode::fixed || c.mode == SweepMode::outcomes) c.outputs.insert("prob");
    }
    if (j.contains("out")) {
        config_require(j.at("out").is_string(), "out must be a string");
        c.out = j.at("out").get<std::string>();
    }

    c.canonical = j;
    c.canonical.erase("out");
    return c;
}

inline std::string config_hash(const SweepConfig &c) { return hex64(fnv1a(c.canonical.dump())); }

/// Runs `count` independent jobs on up to `threads` workers; results are
/// returned in job order. The first exception (lowest job index) is rethrown.
template <class T>
std::vector<T> run_ordered(std::size_t count, int threads, const std::function<T(std::size_t)> &job) {
    std::vector<T> out(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                out[i] = job(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int n = std::max(1, std::min<int>(threads, static_cast<int>(count)));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto &t : pool) t.join();
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

namespace detail {

using Row = std::vector<std::string>;

inline std::string num(double v) { return format_number(v); }

inline double oat_density(int n, double mu) {
    if (n < 1) return std::nan("");
    return qfi_pure(oat_state({n, mu})).fq / n;
}

inline std::string theta_a_of(const AxisChoice &a) {
    switch (a.policy.kind) {
    case DirectionPolicy::Kind::y_prime:
        return num(std::numbers::pi / 2);
    case DirectionPolicy::Kind::z_prime:
        return num(0.0);
    case DirectionPolicy::Kind::plane_angle:
        return num(a.policy.theta_a);
    default:
        return "nan";
    }
}

}  // namespace detail

inline CsvTable run_sweep(const SweepConfig &c, int threads = 1) {
    using detail::num;
    using detail::Row;
    std::vector<std::string> cols;
    std::vector<std::function<std::vector<Row>()>> jobs;
    const bool want_prob = c.wants("prob"), want_fq = c.wants("fq"), want_raw = c.wants("fq_raw"),
               want_wn = c.wants("negativity");

    switch (c.mode) {
    case SweepMode::oat: {
        cols = {"mu", "n", "theta_star"};
        if (want_fq) cols.push_back("fq_density");
        if (want_raw) cols.push_back("fq_raw");
        for (double mu : c.mu_grid) {
            jobs.push_back([&c, mu, want_fq, want_raw] {
                const double fq = qfi_pure(oat_state({c.n, mu})).fq;
                Row r{num(mu), std::to_string(c.n), c.n >= 2 ? num(theta_star({c.n, mu})) : "nan"};
                if (want_fq) r.push_back(num(fq / c.n));
                if (want_raw) r.push_back(num(fq));
                return std::vector<Row>{r};
            });
        }
        break;
    }
    case SweepMode::fixed:
    case SweepMode::outcomes: {
        const bool outcomes = c.mode == SweepMode::outcomes;
        cols = {"mu", "axis", "theta_a", "nA", "la"};
        if (!outcomes) cols.push_back("sigma");
        if (want_prob) cols.push_back("prob");
        if (want_fq) cols.push_back("fq_density");
        if (want_raw) cols.push_back("fq_raw");
        if (want_wn) cols.push_back("negativity");
        if (want_fq || want_raw) cols.push_back("oat_fq_density");
        const int n_a = c.ancilla_size();
        const int n_b = c.n - n_a;
        for (double mu : c.mu_grid) {
            for (const AxisChoice &axis : c.axes) {
                std::vector<int> las;
                if (outcomes) {
                    for (int l = 0; l <= n_a; ++l) las.push_back(l);
                } else if (!c.la_star.empty()) {
                    las = c.la_star;
                } else {
                    las.push_back(herald_rule_named(c.rule)(n_a));
                }
                jobs.push_back([&c, mu, &axis, las, outcomes, n_a, n_b, want_prob, want_fq, want_raw, want_wn] {
                    const OATParameters p{c.n, mu};
                    const SplitState split = split_state(p);
                    const RotationSpec dir = axis.policy.resolve(p);
                    const double p_na = splitting_distribution(c.n)[static_cast<std::size_t>(n_a)];
                    const double oat = (want_fq || want_raw) ? detail::oat_density(n_b, mu) : 0.0;
                    const std::vector<double> sigmas = outcomes ? std::vector<double>{0.0} : c.sigma_grid;
                    std::vector<Row> rows;
                    for (int la : las) {
                        for (double sigma : sigmas) {
                            Row r{num(mu), axis.label, detail::theta_a_of(axis), std::to_string(n_a),
                                  std::to_string(la)};
                            if (!outcomes) r.push_back(num(sigma));
                            std::optional<NoisyHerald> h;
                            try {
                                h = noisy_herald(split, n_a, la, dir, {sigma});
                            } catch (const ZeroProbabilityError &e) {
                                if (!outcomes) throw SweepHeraldError(mu, la, e);
                            }
                            if (want_prob) {
                                r.push_back(h ? num(h->weight / p_na)
                                              : num(condition_probability(split, n_a, la, dir) / p_na));
                            }
                            double fq = std::nan("");
                            if (h && (want_fq || want_raw)) fq = qfi_mixed(h->state).fq;
                            if (want_fq) r.push_back(num(fq / n_b));
                            if (want_raw) r.push_back(num(fq));
                            if (want_wn) {
                                r.push_back(h ? num(wigner_negativity(h->state))
                                              : "nan");
                            }
                            if (want_fq || want_raw) r.push_back(num(oat));
                            rows.push_back(std::move(r));
                        }
                    }
                    return rows;
                });
            }
        }
        break;
    }
    case SweepMode::number_fluct: {
        cols = {"mu", "axis", "theta_a", "rule", "fq_density_avg", "fq_density_joint", "mean_nb",
                "fq_density_fixed", "oat_fq_density"};
        for (double mu : c.mu_grid) {
            for (const AxisChoice &axis : c.axes) {
                jobs.push_back([&c, mu, &axis] {
                    const OATParameters p{c.n, mu};
                    const HeraldRule rule = herald_rule_named(c.rule);
                    const double avg = avg_qfi_number_fluct(p, rule, axis.policy);
                    const BlockQfiResult joint = avg_qfi_joint_block(p, rule, axis.policy);
                    const int n_a = c.n / 2;
                    const int la = rule(n_a);
                    double fixed = std::nan("");
                    try {
                        fixed = qfi_pure(*condition(split_state(p), n_a, la, axis.policy.resolve(p)).state_b).fq /
                                (c.n - n_a);
                    } catch (const ZeroProbabilityError &e) {
                        throw SweepHeraldError(mu, la, e);
                    }
                    return std::vector<Row>{{num(mu), axis.label, detail::theta_a_of(axis), c.rule, num(avg),
                                             num(joint.density), num(joint.mean_particles), num(fixed),
                                             num(detail::oat_density(c.n - n_a, mu))}};
                });
            }
        }
        break;
    }
    case SweepMode::full: {
        cols = {"mu", "axis", "theta_a", "rule", "sigma", "nAstar", "sigma_na", "fq_density_full", "mean_nb",
                "fq_density_fixed", "oat_fq_density"};
        const std::string rule_name = c.la_star.empty() ? c.rule : "fixed_" + std::to_string(c.la_star[0]);
        for (double mu : c.mu_grid) {
            for (const AxisChoice &axis : c.axes) {
                for (double sigma : c.sigma_grid) {
                    jobs.push_back([&c, mu, &axis, sigma, rule_name] {
                        const OATParameters p{c.n, mu};
                        const HeraldRule rule = herald_rule_named(rule_name);
                        AtomNumberNoise atom;
                        atom.n_a_star = c.n_a_star;
                        atom.sigma = c.sigma_na;
                        const BlockQfiResult full = avg_qfi_full(p, rule, axis.policy, {sigma}, atom);
                        const int n_ref = c.n_a_star.value_or(c.n / 2);
                        double fixed = std::nan("");
                        if (n_ref < c.n) {
                            const int la = rule(n_ref);
                            try {
                                fixed = avg_qfi_detection(split_state(p), n_ref, la, axis.policy.resolve(p), {sigma});
                            } catch (const ZeroProbabilityError &e) {
                                throw SweepHeraldError(mu, la, e);
                            }
                        }
                        const double sigma_na = c.n_a_star ? c.sigma_na.value_or(sigma) : std::nan("");
                        return std::vector<Row>{{num(mu), axis.label, detail::theta_a_of(axis), rule_name, num(sigma),
                                                 c.n_a_star ? std::to_string(*c.n_a_star) : "none", num(sigma_na),
                                                 num(full.density), num(full.mean_particles), num(fixed),
                                                 num(detail::oat_density(c.n - n_ref, mu))}};
                    });
                }
            }
        }
        break;
    }
    }

    const auto chunks = run_ordered<std::vector<Row>>(jobs.size(), threads, [&](std::size_t i) { return jobs[i](); });
    CsvTable table(cols);
    table.add_comment("config_hash=" + config_hash(c) + " mode=" + mode_name(c.mode));
    for (const auto &chunk : chunks) {
        for (const auto &r : chunk) table.add_row(r);
    }
    return table;
}

namespace detail {

inline json linspace(double a, double b, int count) {
    json out = json::array();
    for (int i = 0; i < count; ++i) {
        const double v = count == 1 ? a : a + (b - a) * i / (count - 1);
        out.push_back(std::round(v * 1e12) / 1e12);
    }
    return out;
}

}  // namespace detail

inline std::vector<std::string> preset_names() {
    return {"fig2a", "fig2bc", "fig2de", "fig2f", "fig3abd", "fig4", "fig5", "s1b", "s3", "nanoise"};
}

/// Config documents for the named figure presets (N = 100 unless noted).
inline json preset_config(const std::string &name) {
    const json frame_axes = json::array({"yprime", "zprime"});
    if (name == "fig2a") {
        json axes = json::array();
        for (const auto &t : detail::linspace(0.0, std::numbers::pi, 37)) axes.push_back({{"planeAngle", t}});
        return {{"version", 1},     {"mode", "fixed"}, {"n", 100}, {"muGrid", {0.1, 0.3, 0.5}},
                {"axis", axes},     {"rule", "ceil_half"}, {"outputs", {"prob", "fq"}}};
    }
    if (name == "fig2bc") {
        return {{"version", 1}, {"mode", "outcomes"}, {"n", 100}, {"muGrid", {0.05, 0.1, 0.3, 0.5, 1.0}},
                {"axis", frame_axes}, {"outputs", {"prob"}}};
    }
    if (name == "fig2de") {
        return {{"version", 1}, {"mode", "outcomes"}, {"n", 100}, {"muGrid", {0.05, 0.1, 0.3, 0.5, 1.0}},
                {"axis", frame_axes}, {"outputs", {"prob", "fq"}}};
    }
    if (name == "fig2f") {
        return {{"version", 1}, {"mode", "fixed"}, {"n", 100}, {"muGrid", detail::linspace(0.005, 0.5, 100)},
                {"axis", frame_axes}, {"rule", "ceil_half"}, {"outputs", {"prob", "fq"}}};
    }
    if (name == "fig3abd") {
        return {{"version", 1}, {"mode", "outcomes"}, {"n", 100},
                {"muGrid", {0.02, 0.05, 0.1, 0.2, 0.3, 0.5}}, {"axis", "x"}, {"outputs", {"prob", "fq"}}};
    }
    if (name == "fig4") {
        json sigmas = detail::linspace(0.0, 2.0, 21);
        sigmas.push_back(0.49);
        sigmas.push_back(1.37);
        return {{"version", 1},
                {"mode", "fixed"},
                {"n", 100},
                {"muGrid", {0.05, 0.1, 0.2, 0.3, 0.5}},
                {"axis", {"yprime", "zprime", "x"}},
                {"rule", "ceil_half"},
                {"sigmaGrid", sigmas},
                {"outputs", {"prob", "fq"}}};
    }
    if (name == "fig5") {
        return {{"version", 1},       {"mode", "fixed"},       {"n", 100},
                {"muGrid", {0.1}},     {"axis", "x"},           {"lAstar", {46, 47, 48, 49}},
                {"sigmaGrid", detail::linspace(0.0, 1.0, 21)}, {"outputs", {"prob", "negativity"}}};
    }
    if (name == "s1b") {
        return {{"version", 1}, {"mode", "oat"}, {"n", 50},
                {"muGrid", detail::linspace(0.0, 2.0 * std::numbers::pi, 129)}, {"outputs", {"fq"}}};
    }
    if (name == "s3") {
        return {{"version", 1}, {"mode", "number_fluct"}, {"n", 100}, {"muGrid", detail::linspace(0.01, 0.5, 50)},
                {"axis", {"yprime", "zprime", "x"}}, {"rule", "ceil_half"}};
    }
    if (name == "nanoise") {
        return {{"version", 1},          {"mode", "full"},      {"n", 100},
                {"muGrid", {0.1, 0.3}},  {"axis", frame_axes},  {"lAstar", 25},
                {"nAstar", 50},          {"sigmaGrid", detail::linspace(0.0, 2.0, 9)}};
    }
    throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace sqz
