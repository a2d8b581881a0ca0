#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace focklab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Thrown when adaptive quadrature cannot meet the requested tolerance.
/// Carries the best available estimate and the estimated error bound.
class quadrature_error : public std::runtime_error {
public:
    quadrature_error(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

/// Quadrature policy: tolerances, initial tiling and refinement depth.
struct QuadSpec {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    double base_tile = 1.0;
    int max_refine = 22;
    double truncation_margin = 2.0;

    void validate() const {
        if (!(rel_tol > 0.0 && rel_tol < 1.0))
            throw std::invalid_argument("QuadSpec: rel_tol must lie in (0,1)");
        if (!(abs_tol > 0.0 && abs_tol < 1.0))
            throw std::invalid_argument("QuadSpec: abs_tol must lie in (0,1)");
        if (!(base_tile > 0.0))
            throw std::invalid_argument("QuadSpec: base_tile must be positive");
        if (max_refine < 1)
            throw std::invalid_argument("QuadSpec: max_refine must be >= 1");
        if (!(truncation_margin > 0.0))
            throw std::invalid_argument("QuadSpec: truncation_margin must be positive");
    }

    std::string fingerprint() const {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "rel=%.3g;abs=%.3g;tile=%.3g;depth=%d;margin=%.3g",
                      rel_tol, abs_tol, base_tile, max_refine, truncation_margin);
        return buf;
    }
};

/// Growth/decay metadata for an integrand on the plane:
///   |f(z)| <= envelope_constant * (1+|z|)^poly_growth_degree
///             * exp(exp_linear_rate*|z|) * exp(-gaussian_decay_rate*|z-envelope_center|^2)
/// poly_growth_degree and exp_linear_rate may be negative (decaying factors);
/// tail bounds clamp them at zero.
struct IntegrandMeta {
    double gaussian_decay_rate = 0.0;
    double poly_growth_degree = 0.0;
    double exp_linear_rate = 0.0;
    double envelope_constant = 1.0;
    cplx envelope_center{0.0, 0.0};
    std::vector<cplx> singular_points;
};

inline IntegrandMeta meta_product(const IntegrandMeta& a, const IntegrandMeta& b) {
    IntegrandMeta m;
    const double beta = a.gaussian_decay_rate + b.gaussian_decay_rate;
    m.gaussian_decay_rate = beta;
    // exp(-b1|z-c1|^2 - b2|z-c2|^2) = exp(-(b1+b2)|z-c*|^2) * const<=1
    m.envelope_center = beta > 0.0
        ? (a.gaussian_decay_rate * a.envelope_center + b.gaussian_decay_rate * b.envelope_center) / beta
        : cplx{0.0, 0.0};
    m.poly_growth_degree = a.poly_growth_degree + b.poly_growth_degree;
    m.exp_linear_rate = a.exp_linear_rate + b.exp_linear_rate;
    m.envelope_constant = a.envelope_constant * b.envelope_constant;
    m.singular_points = a.singular_points;
    m.singular_points.insert(m.singular_points.end(), b.singular_points.begin(),
                             b.singular_points.end());
    return m;
}

inline IntegrandMeta meta_pow(const IntegrandMeta& a, double p) {
    IntegrandMeta m = a;
    m.gaussian_decay_rate *= p;
    m.poly_growth_degree *= p;
    m.exp_linear_rate *= p;
    m.envelope_constant = std::pow(a.envelope_constant, p);
    return m;
}

inline IntegrandMeta gaussian_meta(double decay_rate, cplx center = {0.0, 0.0}) {
    IntegrandMeta m;
    m.gaussian_decay_rate = decay_rate;
    m.envelope_center = center;
    return m;
}

/// Axis-parallel square Q_r(z0) or Euclidean disc D(a,t).
struct Region {
    enum class Kind { square, disc };

    Kind kind = Kind::square;
    cplx center{0.0, 0.0};
    double size = 1.0;  // side length for squares, radius for discs

    static Region square(cplx center, double side) {
        if (!(side > 0.0)) throw std::invalid_argument("Region: side must be positive");
        return Region{Kind::square, center, side};
    }
    static Region disc(cplx center, double radius) {
        if (!(radius > 0.0)) throw std::invalid_argument("Region: radius must be positive");
        return Region{Kind::disc, center, radius};
    }

    double area() const {
        return kind == Kind::square ? size * size : kPi * size * size;
    }

    bool contains(cplx z) const {
        if (kind == Kind::square)
            return std::abs(z.real() - center.real()) <= size / 2 &&
                   std::abs(z.imag() - center.imag()) <= size / 2;
        return std::abs(z - center) <= size;
    }

    std::string describe() const {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%s(%g%+gi,%g)",
                      kind == Kind::square ? "Q" : "D", center.real(), center.imag(), size);
        return buf;
    }
};

/// Neumaier compensated summation; used for all global reductions so that
/// results do not depend on how tile work would be scheduled.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

namespace detail {

template <class T>
struct Accum;

template <>
struct Accum<double> {
    CompensatedSum s;
    void add(double v) { s.add(v); }
    double value() const { return s.value(); }
};

template <>
struct Accum<cplx> {
    CompensatedSum re, im;
    void add(cplx v) {
        re.add(v.real());
        im.add(v.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

}  // namespace detail

}  // namespace focklab
