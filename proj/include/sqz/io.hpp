#pragma once

// JSON state files and CSV emission.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sqz/conditioning.hpp"
#include "sqz/metrology.hpp"

namespace sqz {

using json = nlohmann::json;

/// {"n": int, "mu": float, "amp": [[re, im], ...]}
inline json state_to_json(const DickeState &psi, double mu) {
    json amp = json::array();
    for (Eigen::Index k = 0; k < psi.amp.size(); ++k) {
        amp.push_back({psi.amp(k).real(), psi.amp(k).imag()});
    }
    return {{"n", psi.n}, {"mu", mu}, {"amp", std::move(amp)}};
}

struct StateFile {
    DickeState state;
    double mu = 0.0;
};

inline StateFile state_from_json(const json &j) {
    detail::require(j.is_object(), "state file must be a JSON object");
    for (const auto &[key, value] : j.items()) {
        detail::require(key == "n" || key == "mu" || key == "amp", "unknown key in state file: " + key);
    }
    detail::require(j.contains("n") && j.at("n").is_number_integer(), "state file needs integer 'n'");
    detail::require(j.contains("amp") && j.at("amp").is_array(), "state file needs array 'amp'");
    const int n = j.at("n").get<int>();
    detail::require(n >= 0, "'n' must be non-negative");
    const json &amp = j.at("amp");
    detail::require(amp.size() == static_cast<std::size_t>(n) + 1, "'amp' must have n+1 entries");
    CVector v(n + 1);
    for (int k = 0; k <= n; ++k) {
        const json &e = amp[static_cast<std::size_t>(k)];
        detail::require(e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number(),
                        "'amp' entries must be [re, im]");
        v(k) = cplx(e[0].get<double>(), e[1].get<double>());
    }
    detail::require(std::abs(v.squaredNorm() - 1.0) <= 1e-8, "'amp' must be normalised");
    double mu = 0.0;
    if (j.contains("mu")) {
        detail::require(j.at("mu").is_number(), "'mu' must be a number");
        mu = j.at("mu").get<double>();
    }
    return {DickeState(n, std::move(v)), mu};
}

inline json read_json_file(const std::string &path) {
    std::ifstream in(path);
    detail::require(static_cast<bool>(in), "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw Error(path + ": " + e.what());
    }
}

inline void write_state_file(const std::string &path, const DickeState &psi, double mu) {
    std::ofstream out(path);
    detail::require(static_cast<bool>(out), "cannot write " + path);
    out << state_to_json(psi, mu).dump(2) << '\n';
}

inline StateFile read_state_file(const std::string &path) { return state_from_json(read_json_file(path)); }

inline json outcome_to_json(const ConditionalOutcome &o) {
    json j = {{"nA", o.n_a},
              {"lA", o.l_a},
              {"dir", {{"theta", o.dir.polar}, {"phi", o.dir.azimuth}}},
              {"prob", o.prob},
              {"probGivenNA", o.prob_given_na}};
    if (o.state_b) {
        j["stateB"] = state_to_json(*o.state_b, 0.0);
        j["stateB"].erase("mu");
    } else {
        j["stateB"] = nullptr;
    }
    return j;
}

/// Shortest decimal text that parses back to the same double.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    for (int prec = 6; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

/// Comma-separated table with LF line endings and optional '#' comment lines
/// before the header.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_comment(std::string line) { comments_.push_back(std::move(line)); }

    void add_row(std::vector<std::string> cells) {
        detail::require(cells.size() == columns_.size(), "row width does not match header");
        rows_.push_back(std::move(cells));
    }

    const std::vector<std::string> &columns() const { return columns_; }
    std::size_t size() const { return rows_.size(); }

    void write(std::ostream &out) const {
        for (const auto &c : comments_) {
            out << "# " << c << '\n';
        }
        write_line(out, columns_);
        for (const auto &r : rows_) {
            write_line(out, r);
        }
    }

    std::string str() const {
        std::ostringstream s;
        write(s);
        return s.str();
    }

private:
    static void write_line(std::ostream &out, const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    }

    std::vector<std::string> columns_;
    std::vector<std::string> comments_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes text to `path`, or to standard output when path is "-".
inline void write_text(const std::string &path, const std::string &text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    detail::require(static_cast<bool>(out), "cannot write " + path);
    out << text;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string &text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace sqz
