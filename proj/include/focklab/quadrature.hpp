#pragma once

#include <algorithm>
#include <functional>
#include <type_traits>
#include <utility>

#include "core.hpp"

namespace focklab {

namespace detail {

// 6-point Gauss-Legendre rule on [-1,1]; exact through degree 11 per axis.
inline constexpr std::array<double, 6> kGlNode = {
    -0.9324695142031521, -0.6612093864662645, -0.2386191860831969,
    0.2386191860831969,  0.6612093864662645,  0.9324695142031521};
inline constexpr std::array<double, 6> kGlWeight = {
    0.1713244923791704, 0.3607615730481386, 0.4679139345726910,
    0.4679139345726910, 0.3607615730481386, 0.1713244923791704};

inline constexpr std::int64_t kEvalCap = 200'000'000;

template <class T, class F>
T gl_tile(F& f, double cx, double cy, double hx, double hy) {
    T acc{};
    for (int j = 0; j < 6; ++j) {
        const double y = cy + hy * kGlNode[j];
        T row{};
        for (int i = 0; i < 6; ++i) {
            const double x = cx + hx * kGlNode[i];
            row += T(f(cplx(x, y))) * kGlWeight[i];
        }
        acc += row * kGlWeight[j];
    }
    return acc * (hx * hy);
}

template <class T, class F>
struct TileRefiner {
    F& f;
    int max_depth;
    Accum<T> acc;
    CompensatedSum err;
    std::int64_t evals = 0;

    // Children in fixed order (SW, SE, NW, NE); ties in refinement are thereby
    // broken by canonical tile index, and the reduction order never varies.
    void run(double cx, double cy, double hx, double hy, T coarse, double budget, int depth) {
        const double qx = hx / 2, qy = hy / 2;
        const std::array<std::pair<double, double>, 4> child = {{
            {cx - qx, cy - qy}, {cx + qx, cy - qy}, {cx - qx, cy + qy}, {cx + qx, cy + qy}}};
        std::array<T, 4> cv;
        for (int k = 0; k < 4; ++k)
            cv[k] = gl_tile<T>(f, child[k].first, child[k].second, qx, qy);
        evals += 4 * 36;
        if (evals > kEvalCap)
            throw quadrature_error("quadrature: evaluation cap exceeded",
                                   std::abs(acc.value()), std::numeric_limits<double>::infinity());
        const T fine = cv[0] + cv[1] + cv[2] + cv[3];
        const double delta = std::abs(fine - coarse);
        if (delta <= budget || depth >= max_depth) {
            for (int k = 0; k < 4; ++k) acc.add(cv[k]);
            err.add(delta);
            return;
        }
        for (int k = 0; k < 4; ++k)
            run(child[k].first, child[k].second, qx, qy, cv[k], budget / 4, depth + 1);
    }
};

inline bool near_point(cplx a, cplx b) {
    return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a) + std::abs(b));
}

inline double upper_incomplete_gamma(double s, double x) {
    // s is a positive multiple of 1/2; recurrence up from Gamma(1/2,x), Gamma(1,x).
    double val, sc;
    if (std::abs(s - std::round(s)) < 0.25) {
        sc = 1.0;
        val = std::exp(-x);
    } else {
        sc = 0.5;
        val = std::sqrt(kPi) * std::erfc(std::sqrt(x));
    }
    while (sc + 0.5 < s + 1e-9) {
        val = sc * val + std::pow(x, sc) * std::exp(-x);
        sc += 1.0;
    }
    return val;
}

/// Analytic bound for the tail  2*pi*int_R^inf (1+r)^deg e^{c r} e^{-beta r^2} r dr.
inline double gaussian_tail_bound(double beta, double deg, double lin, double R) {
    deg = std::max(deg, 0.0);
    lin = std::max(lin, 0.0);
    if (lin == 0.0) {
        const int m = static_cast<int>(std::ceil(deg - 1e-9));
        double t = 0.0, binom = 1.0;
        for (int j = 0; j <= m; ++j) {
            t += binom * upper_incomplete_gamma(0.5 * (j + 2), beta * R * R) /
                 std::pow(beta, 0.5 * (j + 2));
            binom *= static_cast<double>(m - j) / (j + 1);
        }
        return kPi * t;
    }
    const double h = lin / (2.0 * beta);
    const double u = R - h;
    if (u <= 0.0) return std::numeric_limits<double>::infinity();
    const int m2 = static_cast<int>(std::ceil(deg - 1e-9)) + 1;
    double t = 0.0, binom = 1.0;
    for (int j = 0; j <= m2; ++j) {
        t += binom * upper_incomplete_gamma(0.5 * (j + 1), beta * u * u) /
             (2.0 * std::pow(beta, 0.5 * (j + 1)));
        binom *= static_cast<double>(m2 - j) / (j + 1);
    }
    return 2.0 * kPi * std::exp(lin * lin / (4.0 * beta)) * std::pow(1.0 + h, m2) * t;
}

}  // namespace detail

/// Deterministic adaptive integration over [x0,x1] x [y0,y1].
/// Local acceptance compares a tile's rule value against the sum over its
/// one-level refinement; accepted error budgets are proportional to tile area.
template <class F, class T = std::decay_t<std::invoke_result_t<F&, cplx>>>
T integrate_rect(F&& f, double x0, double x1, double y0, double y1,
                 const QuadSpec& spec, double* err_out = nullptr) {
    spec.validate();
    if (!(x1 > x0) || !(y1 > y0))
        throw std::invalid_argument("integrate_rect: empty domain");

    const int nx = std::max(1, static_cast<int>(std::ceil((x1 - x0) / spec.base_tile - 1e-12)));
    const int ny = std::max(1, static_cast<int>(std::ceil((y1 - y0) / spec.base_tile - 1e-12)));
    const double hx = (x1 - x0) / (2.0 * nx);
    const double hy = (y1 - y0) / (2.0 * ny);

    std::vector<T> coarse(static_cast<size_t>(nx) * ny);
    detail::Accum<T> first_pass;
    for (int j = 0; j < ny; ++j) {
        const double cy = y0 + (2 * j + 1) * hy;
        for (int i = 0; i < nx; ++i) {
            const double cx = x0 + (2 * i + 1) * hx;
            coarse[static_cast<size_t>(j) * nx + i] = detail::gl_tile<T>(f, cx, cy, hx, hy);
            first_pass.add(coarse[static_cast<size_t>(j) * nx + i]);
        }
    }
    const double scale0 = std::abs(first_pass.value());
    const double tol = std::max(spec.abs_tol, spec.rel_tol * scale0);
    const double root_budget = 0.25 * tol / (static_cast<double>(nx) * ny);

    detail::TileRefiner<T, F> rf{f, spec.max_refine, {}, {},
                                 static_cast<std::int64_t>(nx) * ny * 36};
    for (int j = 0; j < ny; ++j) {
        const double cy = y0 + (2 * j + 1) * hy;
        for (int i = 0; i < nx; ++i) {
            const double cx = x0 + (2 * i + 1) * hx;
            rf.run(cx, cy, hx, hy, coarse[static_cast<size_t>(j) * nx + i], root_budget, 1);
        }
    }
    const T value = rf.acc.value();
    const double err = rf.err.value();
    const double tol_final = std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
    if (err > tol_final)
        throw quadrature_error("quadrature: tolerance not reached after max_refine levels",
                               std::abs(value), err);
    if (err_out) *err_out = err;
    return value;
}

namespace detail {

/// Integrate over an axis-aligned rectangle that has an integrable singularity
/// at one corner: polar coordinates around the corner with a cubic radial
/// grading, so rho^{-a} factors (a < 2) become tame in the parameter square.
template <class T, class F>
T integrate_corner_singular(F& f, cplx corner, double sx, double sy, double W, double H,
                            const QuadSpec& spec, double* err_out) {
    const double td = std::atan2(H, W);
    auto panel = [&](double t0, double t1, bool use_cos, double len, double* perr) -> T {
        auto g = [&](cplx ts) -> T {
            const double t = ts.real(), s = ts.imag();
            const double rmax = use_cos ? len / std::cos(t) : len / std::sin(t);
            const double rho = rmax * s * s * s;
            const cplx z(corner.real() + sx * rho * std::cos(t),
                         corner.imag() + sy * rho * std::sin(t));
            return T(f(z)) * (3.0 * s * s * s * s * s * rmax * rmax);
        };
        QuadSpec ps = spec;
        ps.base_tile = 0.5;
        return integrate_rect(g, t0, t1, 0.0, 1.0, ps, perr);
    };
    double e1 = 0, e2 = 0;
    T v{};
    if (td > 1e-14) v += panel(0.0, td, true, W, &e1);
    if (kPi / 2 - td > 1e-14) v += panel(td, kPi / 2, false, H, &e2);
    if (err_out) *err_out = e1 + e2;
    return v;
}

}  // namespace detail

/// Rectangle integration with declared singular points. The rectangle is split
/// along the singular coordinates so every singularity sits at a corner of the
/// sub-rectangles, which are then handled by the graded polar transform.
template <class F, class T = std::decay_t<std::invoke_result_t<F&, cplx>>>
T integrate_rect_singular(F&& f, double x0, double x1, double y0, double y1,
                          const std::vector<cplx>& singular, const QuadSpec& spec,
                          double* err_out = nullptr) {
    const double pad = 1e-12 * (1.0 + std::abs(x0) + std::abs(x1) + std::abs(y0) + std::abs(y1));
    std::vector<cplx> inside;
    for (const cplx& s : singular)
        if (s.real() >= x0 - pad && s.real() <= x1 + pad && s.imag() >= y0 - pad &&
            s.imag() <= y1 + pad)
            inside.push_back(s);
    if (inside.empty()) return integrate_rect(std::forward<F>(f), x0, x1, y0, y1, spec, err_out);

    auto cuts = [&](double lo, double hi, bool take_re) {
        std::vector<double> cs{lo, hi};
        for (const cplx& s : inside) {
            const double c = take_re ? s.real() : s.imag();
            if (c > lo + pad && c < hi - pad) cs.push_back(c);
        }
        std::sort(cs.begin(), cs.end());
        cs.erase(std::unique(cs.begin(), cs.end(),
                             [&](double a, double b) { return std::abs(a - b) <= pad; }),
                 cs.end());
        return cs;
    };
    const std::vector<double> xs = cuts(x0, x1, true);
    const std::vector<double> ys = cuts(y0, y1, false);

    const double total_area = (x1 - x0) * (y1 - y0);
    detail::Accum<T> acc;
    CompensatedSum err;
    for (size_t j = 0; j + 1 < ys.size(); ++j) {
        for (size_t i = 0; i + 1 < xs.size(); ++i) {
            const double ax = xs[i], bx = xs[i + 1], ay = ys[j], by = ys[j + 1];
            if (bx - ax <= pad || by - ay <= pad) continue;
            QuadSpec ps = spec;
            ps.abs_tol = std::max(spec.abs_tol * ((bx - ax) * (by - ay) / total_area),
                                  spec.abs_tol * 1e-3);
            const std::array<cplx, 4> corners = {cplx(ax, ay), cplx(bx, ay), cplx(ax, by),
                                                 cplx(bx, by)};
            int sc = -1;
            for (int c = 0; c < 4; ++c)
                for (const cplx& s : inside)
                    if (detail::near_point(corners[c], s)) sc = c;
            double piece_err = 0;
            T piece;
            if (sc < 0) {
                piece = integrate_rect(f, ax, bx, ay, by, ps, &piece_err);
            } else {
                const double sx = (sc == 0 || sc == 2) ? 1.0 : -1.0;
                const double sy = (sc == 0 || sc == 1) ? 1.0 : -1.0;
                piece = detail::integrate_corner_singular<T>(f, corners[sc], sx, sy, bx - ax,
                                                             by - ay, ps, &piece_err);
            }
            acc.add(piece);
            err.add(piece_err);
        }
    }
    if (err_out) *err_out = err.value();
    return acc.value();
}

/// Smallest R whose analytic Gaussian tail bound, for an envelope
/// (1+|z|)^poly_degree e^{-decay_rate |z|^2}, falls below tol.
inline double truncation_radius_ex(double decay_rate, double poly_degree, double linear_rate,
                                   double tol) {
    if (!(decay_rate > 0.0))
        throw std::invalid_argument("truncation_radius: decay_rate must be positive");
    if (!(tol > 0.0 && tol < 1.0))
        throw std::invalid_argument("truncation_radius: tol must lie in (0,1)");
    double hi = 1.0;
    while (detail::gaussian_tail_bound(decay_rate, poly_degree, linear_rate, hi) >= tol) {
        hi *= 2.0;
        if (hi > 1e6) throw std::invalid_argument("truncation_radius: no finite radius found");
    }
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (detail::gaussian_tail_bound(decay_rate, poly_degree, linear_rate, mid) < tol)
            hi = mid;
        else
            lo = mid;
        if (hi - lo < 1e-12 * (1.0 + hi)) break;
    }
    return hi;
}

inline double truncation_radius(double decay_rate, double poly_degree, double tol) {
    return truncation_radius_ex(decay_rate, poly_degree, 0.0, tol);
}

/// Integral of f over a bounded region. Declared singular points get the
/// graded polar treatment; everything else is plain adaptive tiling.
template <class F, class T = std::decay_t<std::invoke_result_t<F&, cplx>>>
T integrate_region(F&& f, const Region& region, const QuadSpec& spec,
                   const std::vector<cplx>& singular = {}, double* err_out = nullptr) {
    if (region.kind == Region::Kind::square) {
        const double h = region.size / 2;
        return integrate_rect_singular(std::forward<F>(f),
                                       region.center.real() - h, region.center.real() + h,
                                       region.center.imag() - h, region.center.imag() + h,
                                       singular, spec, err_out);
    }
    const cplx c = region.center;
    const double R = region.size;
    bool center_singular = false;
    for (const cplx& s : singular)
        if (detail::near_point(s, c)) center_singular = true;
    QuadSpec ps = spec;
    ps.base_tile = std::min(spec.base_tile, 1.0);
    if (center_singular) {
        auto g = [&, c, R](cplx ts) -> T {
            const double t = ts.real(), s = ts.imag();
            const double rho = R * s * s * s;
            return T(f(c + std::polar(rho, t))) * (3.0 * s * s * s * s * s * R * R);
        };
        return integrate_rect(g, 0.0, 2.0 * kPi, 0.0, 1.0, ps, err_out);
    }
    auto g = [&, c](cplx tr) -> T {
        const double t = tr.real(), rho = tr.imag();
        return T(f(c + std::polar(rho, t))) * rho;
    };
    return integrate_rect(g, 0.0, 2.0 * kPi, 0.0, R, ps, err_out);
}

/// Integral of f over the whole plane. The domain is truncated to a square
/// centred at the envelope centre whose analytic tail bound is below abs_tol.
template <class F, class T = std::decay_t<std::invoke_result_t<F&, cplx>>>
T integrate_plane(F&& f, const IntegrandMeta& meta, const QuadSpec& spec,
                  double* err_out = nullptr) {
    if (!(meta.gaussian_decay_rate > 0.0))
        throw std::invalid_argument(
            "integrate_plane: unbounded support requires a positive Gaussian decay rate");
    const double off = std::abs(meta.envelope_center);
    const double degp = std::max(meta.poly_growth_degree, 0.0);
    const double linp = std::max(meta.exp_linear_rate, 0.0);
    const double shift_const = std::pow(1.0 + off, degp) * std::exp(linp * off);
    const double tail_tol =
        spec.abs_tol / std::max(1.0, meta.envelope_constant * shift_const);
    const double R = truncation_radius_ex(meta.gaussian_decay_rate, degp, linp, tail_tol) +
                     spec.truncation_margin;
    const double cx = meta.envelope_center.real(), cy = meta.envelope_center.imag();
    return integrate_rect_singular(std::forward<F>(f), cx - R, cx + R, cy - R, cy + R,
                                   meta.singular_points, spec, err_out);
}

/// All lattice points of spacing*Z^2 with modulus <= radius, ordered
/// lexicographically by the integer coordinates.
inline std::vector<cplx> lattice_points(double spacing, double radius) {
    if (!(spacing > 0.0)) throw std::invalid_argument("lattice_points: spacing must be positive");
    if (!(radius >= 0.0)) throw std::invalid_argument("lattice_points: radius must be nonnegative");
    const long K = static_cast<long>(std::floor(radius / spacing + 1e-9));
    std::vector<cplx> pts;
    for (long k1 = -K; k1 <= K; ++k1)
        for (long k2 = -K; k2 <= K; ++k2) {
            const double d = spacing * std::hypot(static_cast<double>(k1), static_cast<double>(k2));
            if (d <= radius * (1.0 + 1e-12))
                pts.emplace_back(spacing * static_cast<double>(k1),
                                 spacing * static_cast<double>(k2));
        }
    return pts;
}

}  // namespace focklab
