#pragma once

// Spin Wigner function on the sphere via the multipole expansion, Gauss-Legendre
// x uniform-phi quadrature, and the Wigner negativity.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "sqz/metrology.hpp"

namespace sqz {

namespace detail {

/// 2x for a half-integer x; throws otherwise.
inline int twice_half_integer(double x, const char *what) {
    const double t = 2.0 * x;
    const double r = std::round(t);
    require(std::isfinite(x) && std::abs(t - r) <= 1e-9, std::string(what) + " must be a half-integer");
    return static_cast<int>(r);
}

inline bool is_odd(int v) { return (v % 2) != 0; }

}  // namespace detail

/// Clebsch-Gordan coefficients <j1 m1; j2 m2 | J M> for every allowed J at
/// fixed (j1, m1, j2, m2). Angular momenta are passed doubled.
struct CouplingSeries {
    /// 2 J_min; J runs from J_min to j1 + j2 in unit steps.
    int twice_j_min = 0;
    std::vector<double> values;

    double at(int twice_j) const {
        const int idx = (twice_j - twice_j_min) / 2;
        if (twice_j < twice_j_min || (twice_j - twice_j_min) % 2 != 0 ||
            idx >= static_cast<int>(values.size())) {
            return 0.0;
        }
        return values[static_cast<std::size_t>(idx)];
    }
};

/// Three-term recursion in J (Schulten-Gordon) run upward from J_min and
/// downward from J_max, joined at the first local maximum of the upward
/// pass. Normalised by
/// sum_J <..|J M>^2 = 1 and signed by <..|j1+j2 M> > 0.
inline CouplingSeries coupling_series(int twice_j1, int twice_m1, int twice_j2, int twice_m2) {
    using detail::require;
    require(twice_j1 >= 0 && twice_j2 >= 0, "angular momenta must be non-negative");
    require(std::abs(twice_m1) <= twice_j1 && std::abs(twice_m2) <= twice_j2, "projection exceeds spin");
    require(!detail::is_odd(twice_j1 - twice_m1) && !detail::is_odd(twice_j2 - twice_m2),
            "projection and spin parity differ");
    const int twice_m = twice_m1 + twice_m2;
    const int twice_lmin = std::max(std::abs(twice_j1 - twice_j2), std::abs(twice_m));
    const int twice_lmax = twice_j1 + twice_j2;
    const int count = (twice_lmax - twice_lmin) / 2 + 1;

    // Recursion variables of the 3j symbol (J j1 j2; -M m1 m2).
    const double l2 = 0.5 * twice_j1, l3 = 0.5 * twice_j2;
    const double mm1 = -0.5 * twice_m, mm2 = 0.5 * twice_m1, mm3 = 0.5 * twice_m2;
    const double lmin = 0.5 * twice_lmin, lmax = 0.5 * twice_lmax;
    auto a_coef = [&](double l) {
        const double v = (l * l - (l2 - l3) * (l2 - l3)) * ((l2 + l3 + 1) * (l2 + l3 + 1) - l * l) *
                         (l * l - mm1 * mm1);
        return std::sqrt(std::max(0.0, v));
    };
    auto b_coef = [&](double l) {
        return -(2 * l + 1) * (l2 * (l2 + 1) * mm1 - l3 * (l3 + 1) * mm1 - l * (l + 1) * (mm3 - mm2));
    };
    constexpr double kRescale = 1e150;

    std::vector<double> f(static_cast<std::size_t>(count), 0.0);
    if (count == 1) {
        f[0] = 1.0;
    } else {
        std::vector<double> fw(static_cast<std::size_t>(count), 0.0);
        fw[0] = 1.0;
        if (twice_lmin == 0) {
            // (1 j j; 0 m -m) / (0 j j; 0 m -m) = m / sqrt(j(j+1))
            fw[1] = mm2 / std::sqrt(l2 * (l2 + 1));
        } else {
            fw[1] = -b_coef(lmin) / (lmin * a_coef(lmin + 1));
        }
        int join = count - 1;
        for (int i = 1; i < count - 1; ++i) {
            if (std::abs(fw[i]) < std::abs(fw[i - 1])) {
                join = i - 1;
                break;
            }
            const double l = lmin + i;
            fw[i + 1] = -(b_coef(l) * fw[i] + (l + 1) * a_coef(l) * fw[i - 1]) / (l * a_coef(l + 1));
            if (std::abs(fw[i + 1]) > kRescale) {
                for (int k = 0; k <= i + 1; ++k) {
                    fw[k] /= kRescale;
                }
            }
        }
        if (join == count - 1 && std::abs(fw[count - 1]) < std::abs(fw[count - 2])) {
            join = count - 2;
        }

        if (join == count - 1) {
            f = std::move(fw);
        } else {
            std::vector<double> bw(static_cast<std::size_t>(count), 0.0);
            bw[count - 1] = 1.0;
            bw[count - 2] = -b_coef(lmax) / ((lmax + 1) * a_coef(lmax));
            for (int i = count - 2; i > join; --i) {
                const double l = lmin + i;
                bw[i - 1] = -(b_coef(l) * bw[i] + l * a_coef(l + 1) * bw[i + 1]) / ((l + 1) * a_coef(l));
                if (std::abs(bw[i - 1]) > kRescale) {
                    for (int k = i - 1; k < count; ++k) {
                        bw[k] /= kRescale;
                    }
                }
            }
            const double scale = bw[join] / fw[join];
            for (int i = 0; i <= join; ++i) {
                f[i] = fw[i] * scale;
            }
            for (int i = join + 1; i < count; ++i) {
                f[i] = bw[i];
            }
        }
    }

    // 3j -> CG: <j1 m1; j2 m2|J M> = (-1)^(j1-j2+M) sqrt(2J+1) (J j1 j2; -M m1 m2)
    CouplingSeries out;
    out.twice_j_min = twice_lmin;
    out.values.resize(static_cast<std::size_t>(count));
    double norm2 = 0.0;
    for (int i = 0; i < count; ++i) {
        const double v = std::sqrt(2.0 * (lmin + i) + 1.0) * f[i];
        out.values[i] = v;
        norm2 += v * v;
    }
    const double sign = out.values[count - 1] >= 0.0 ? 1.0 : -1.0;
    const double scale = sign / std::sqrt(norm2);
    for (double &v : out.values) {
        v *= scale;
    }
    return out;
}

/// <j1 m1; j2 m2 | l m>; zero when a selection rule fails.
inline double clebsch_gordan(double j1, double m1, double j2, double m2, double l, double m) {
    const int tj1 = detail::twice_half_integer(j1, "j1");
    const int tm1 = detail::twice_half_integer(m1, "m1");
    const int tj2 = detail::twice_half_integer(j2, "j2");
    const int tm2 = detail::twice_half_integer(m2, "m2");
    const int tl = detail::twice_half_integer(l, "l");
    const int tm = detail::twice_half_integer(m, "m");
    detail::require(tj1 >= 0 && tj2 >= 0 && tl >= 0, "angular momenta must be non-negative");
    if (tm1 + tm2 != tm) return 0.0;
    if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm) > tl) return 0.0;
    if (detail::is_odd(tj1 - tm1) || detail::is_odd(tj2 - tm2) || detail::is_odd(tl - tm)) return 0.0;
    if (tl < std::abs(tj1 - tj2) || tl > tj1 + tj2 || detail::is_odd(tj1 + tj2 - tl)) return 0.0;
    return coupling_series(tj1, tm1, tj2, tm2).at(tl);
}

/// Multipole coefficients rho_lm for l = 0..2j, m = -l..l.
class MultipoleTable {
public:
    MultipoleTable(int twice_j) : twice_j_(twice_j) {
        const int lmax = twice_j;
        values_.assign(static_cast<std::size_t>((lmax + 1) * (lmax + 1)), cplx{});
    }

    int lmax() const { return twice_j_; }
    cplx &operator()(int l, int m) { return values_[index(l, m)]; }
    const cplx &operator()(int l, int m) const { return values_[index(l, m)]; }

private:
    std::size_t index(int l, int m) const {
        detail::require(l >= 0 && l <= twice_j_ && std::abs(m) <= l, "multipole index out of range");
        return static_cast<std::size_t>(l * l + l + m);
    }

    int twice_j_;
    std::vector<cplx> values_;
};

/// rho_lm = sum_{m1,m2} (-1)^(j-m1-m) <j m1; j -m2 | l m> <j m1|rho|j m2>
/// for every (l, m), from one coupling series per (m1, m2).
inline MultipoleTable multipoles(const SpinDensity &state) {
    const int tj = state.n;
    const int d = tj + 1;
    MultipoleTable table(tj);
    for (int i1 = 0; i1 < d; ++i1) {
        const int tm1 = 2 * i1 - tj;
        for (int i2 = 0; i2 < d; ++i2) {
            const cplx r = state.rho(i1, i2);
            if (r == cplx{}) continue;
            const int tm2 = 2 * i2 - tj;
            const int m = (tm1 - tm2) / 2;
            // j - m1 - m is an integer; only its parity matters.
            const int exponent = (tj - tm1) / 2 - m;
            const double phase = detail::is_odd(exponent) ? -1.0 : 1.0;
            const CouplingSeries cg = coupling_series(tj, tm1, tj, -tm2);
            for (std::size_t k = 0; k < cg.values.size(); ++k) {
                const int l = (cg.twice_j_min / 2) + static_cast<int>(k);
                table(l, m) += phase * cg.values[k] * r;
            }
        }
    }
    return table;
}

inline cplx rho_lm(const SpinDensity &state, int l, int m) {
    detail::require(l >= 0 && l <= state.n && std::abs(m) <= l, "multipole index out of range");
    const int tj = state.n;
    cplx acc{};
    for (int i1 = 0; i1 <= tj; ++i1) {
        const int tm1 = 2 * i1 - tj;
        const int tm2 = tm1 - 2 * m;
        if (std::abs(tm2) > tj) continue;
        const int i2 = (tm2 + tj) / 2;
        const int exponent = (tj - tm1) / 2 - m;
        const double phase = detail::is_odd(exponent) ? -1.0 : 1.0;
        acc += phase * coupling_series(tj, tm1, tj, -tm2).at(2 * l) * state.rho(i1, i2);
    }
    return acc;
}

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussLegendre gauss_legendre(int n) {
    detail::require(n >= 1, "need at least one quadrature node");
    GaussLegendre gl;
    gl.nodes.assign(static_cast<std::size_t>(n), 0.0);
    gl.weights.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        gl.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        gl.nodes[static_cast<std::size_t>(i)] = -x;
        gl.weights[static_cast<std::size_t>(n - 1 - i)] = w;
        gl.weights[static_cast<std::size_t>(i)] = w;
    }
    return gl;
}

/// Product grid: Gauss-Legendre in cos(theta) times uniform phi.
struct SphereGrid {
    int n_theta = 0;
    int n_phi = 0;
    std::vector<double> theta;
    std::vector<double> cos_theta;
    std::vector<double> theta_weights;
    std::vector<double> phi;

    static SphereGrid make(int n_theta, int n_phi) {
        detail::require(n_theta >= 1 && n_phi >= 1, "grid needs at least one node per axis");
        SphereGrid g;
        g.n_theta = n_theta;
        g.n_phi = n_phi;
        const GaussLegendre gl = gauss_legendre(n_theta);
        // Order rows from the north pole (theta = 0) downwards.
        for (int i = n_theta - 1; i >= 0; --i) {
            g.cos_theta.push_back(gl.nodes[static_cast<std::size_t>(i)]);
            g.theta.push_back(std::acos(gl.nodes[static_cast<std::size_t>(i)]));
            g.theta_weights.push_back(gl.weights[static_cast<std::size_t>(i)]);
        }
        for (int k = 0; k < n_phi; ++k) {
            g.phi.push_back(2.0 * std::numbers::pi * k / n_phi);
        }
        return g;
    }

    /// Smallest power-of-two theta count covering the band limit 2j, at least
    /// 32, with twice as many phi nodes; 128 x 256 for j = 50.
    static SphereGrid for_spin(int twice_j) {
        int n = 32;
        while (n < twice_j + 1) n *= 2;
        return make(n, 2 * n);
    }

    /// for_spin refined eightfold per axis, for integrals of |W|.
    static SphereGrid for_negativity(int twice_j) {
        const SphereGrid base = for_spin(twice_j);
        return make(8 * base.n_theta, 8 * base.n_phi);
    }

    bool resolves(int twice_j) const { return n_theta >= twice_j + 1 && n_phi >= 2 * twice_j + 2; }

    /// Quadrature weight of node (i, k) for an integral over dOmega.
    double weight(int i) const { return theta_weights[static_cast<std::size_t>(i)] * 2.0 * std::numbers::pi / n_phi; }
};

/// Fully normalised associated Legendre functions with the Condon-Shortley
/// phase, Y_lm = P[l][m] e^{i m phi}, for 0 <= m <= l <= lmax.
inline std::vector<std::vector<double>> normalized_legendre(int lmax, double x) {
    std::vector<std::vector<double>> p(static_cast<std::size_t>(lmax + 1));
    for (int l = 0; l <= lmax; ++l) {
        p[static_cast<std::size_t>(l)].assign(static_cast<std::size_t>(l + 1), 0.0);
    }
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    double pmm = std::sqrt(1.0 / (4.0 * std::numbers::pi));
    for (int m = 0; m <= lmax; ++m) {
        if (m > 0) {
            pmm *= -s * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
        }
        p[m][m] = pmm;
        if (m + 1 <= lmax) {
            p[m + 1][m] = x * std::sqrt(2.0 * m + 3.0) * pmm;
        }
        for (int l = m + 2; l <= lmax; ++l) {
            const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
            const double b = std::sqrt(((l - 1.0) * (l - 1.0) - double(m) * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
            p[l][m] = a * (x * p[l - 1][m] - b * p[l - 2][m]);
        }
    }
    return p;
}

inline cplx spherical_harmonic(int l, int m, double theta, double phi) {
    detail::require(l >= 0 && std::abs(m) <= l, "invalid spherical harmonic index");
    const auto p = normalized_legendre(l, std::cos(theta));
    const int am = std::abs(m);
    cplx y = p[l][am] * std::polar(1.0, am * phi);
    if (m < 0) {
        y = std::conj(y) * ((am % 2) ? -1.0 : 1.0);
    }
    return y;
}

struct WignerField {
    int twice_j = 0;
    SphereGrid grid;
    /// values(i, k) = W(theta_i, phi_k)
    RMatrix values;
    /// Largest |Im W| before the real part was taken.
    double max_imag = 0.0;

    /// (2j+1)/(4 pi) times the surface integral of W.
    double normalization() const {
        double acc = 0.0;
        for (int i = 0; i < grid.n_theta; ++i) {
            acc += grid.weight(i) * values.row(i).sum();
        }
        return (twice_j + 1.0) / (4.0 * std::numbers::pi) * acc;
    }

    /// 1/2 [(2j+1)/(4 pi) * integral |W| - 1]
    double negativity() const {
        double acc = 0.0;
        for (int i = 0; i < grid.n_theta; ++i) {
            acc += grid.weight(i) * values.row(i).cwiseAbs().sum();
        }
        return 0.5 * ((twice_j + 1.0) / (4.0 * std::numbers::pi) * acc - 1.0);
    }
};

namespace detail {

/// Calls row(i, w) for each theta row with the complex values of
/// sqrt(4 pi / (2j+1)) sum_lm rho_lm Y_lm on the phi nodes.
template <class RowFn>
void wigner_rows(const SpinDensity &state, const SphereGrid &grid, RowFn &&row) {
    const int tj = state.n;
    require(grid.resolves(tj), "grid under-resolves band limit");
    const MultipoleTable rlm = multipoles(state);
    const int lmax = tj;
    const double prefactor = std::sqrt(4.0 * std::numbers::pi / (tj + 1.0));
    Eigen::FFT<double> fft;
    fft.SetFlag(Eigen::FFT<double>::Unscaled);
    std::vector<cplx> spectrum(static_cast<std::size_t>(grid.n_phi));
    std::vector<cplx> values;
    for (int i = 0; i < grid.n_theta; ++i) {
        const auto p = normalized_legendre(lmax, grid.cos_theta[static_cast<std::size_t>(i)]);
        std::fill(spectrum.begin(), spectrum.end(), cplx{});
        // F_m(theta) = sum_l rho_lm P_l^|m|, with Y_{l,-m} = (-1)^m conj(Y_lm);
        // W(phi_k) = sum_m F_m e^{2 pi i m k / n_phi} is an inverse DFT.
        for (int m = -lmax; m <= lmax; ++m) {
            const int am = std::abs(m);
            const double sign = (m < 0 && (am % 2)) ? -prefactor : prefactor;
            cplx acc{};
            for (int l = am; l <= lmax; ++l) {
                acc += rlm(l, m) * p[static_cast<std::size_t>(l)][static_cast<std::size_t>(am)];
            }
            spectrum[static_cast<std::size_t>((m + grid.n_phi) % grid.n_phi)] += sign * acc;
        }
        fft.inv(values, spectrum);
        row(i, values);
    }
}

}  // namespace detail

/// W(theta, phi) = sqrt(4 pi / (2j+1)) sum_lm rho_lm Y_lm(theta, phi), scaled
/// so that (2j+1)/(4 pi) integral W dOmega = tr rho.
inline WignerField wigner_function(const SpinDensity &state, const SphereGrid &grid) {
    WignerField field;
    field.twice_j = state.n;
    field.grid = grid;
    field.values = RMatrix::Zero(grid.n_theta, grid.n_phi);
    detail::wigner_rows(state, grid, [&](int i, const std::vector<cplx> &w) {
        for (int k = 0; k < grid.n_phi; ++k) {
            field.values(i, k) = w[static_cast<std::size_t>(k)].real();
            field.max_imag = std::max(field.max_imag, std::abs(w[static_cast<std::size_t>(k)].imag()));
        }
    });
    return field;
}

/// Negativity integrated row by row without storing the field.
inline double wigner_negativity(const SpinDensity &state, const SphereGrid &grid) {
    double acc = 0.0;
    detail::wigner_rows(state, grid, [&](int i, const std::vector<cplx> &w) {
        double row = 0.0;
        for (const cplx &v : w) row += std::abs(v.real());
        acc += grid.weight(i) * row;
    });
    return 0.5 * ((state.n + 1.0) / (4.0 * std::numbers::pi) * acc - 1.0);
}

inline double wigner_negativity(const SpinDensity &state) {
    return wigner_negativity(state, SphereGrid::for_negativity(state.n));
}

}  // namespace sqz
