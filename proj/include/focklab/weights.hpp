#pragma once

#include <functional>
#include <map>
#include <optional>

#include "core.hpp"
#include "minilang.hpp"
#include "quadrature.hpp"

namespace focklab {

/// Evaluable weight on the plane with growth metadata and declared singular
/// points. Weights are immutable after construction and safe to share.
struct Weight {
    std::function<double(cplx)> eval;
    IntegrandMeta meta;
    std::string label;
    std::optional<double> constant_value;  // set when the weight is a.e. constant

    double operator()(cplx z) const { return eval(z); }
};

/// Conjugate exponent bookkeeping; p_conj is +inf for p = 1.
struct ApParams {
    double p;
    double p_conj;

    explicit ApParams(double p_) : p(p_) {
        if (!(p >= 1.0)) throw std::invalid_argument("ApParams: p must be >= 1");
        p_conj = p > 1.0 ? p / (p - 1.0) : std::numeric_limits<double>::infinity();
    }
};

namespace weights {

inline Weight constant(double c = 1.0) {
    if (!(c > 0.0)) throw std::invalid_argument("constant weight must be positive");
    Weight w;
    w.eval = [c](cplx) { return c; };
    w.meta.envelope_constant = c;
    w.label = c == 1.0 ? "constant" : "constant:" + std::to_string(c);
    w.constant_value = c;
    return w;
}

/// (1 + |z + z0|)^gamma
inline Weight power(double gamma, cplx z0 = {0.0, 0.0}) {
    Weight w;
    w.eval = [gamma, z0](cplx z) { return std::pow(1.0 + std::abs(z + z0), gamma); };
    w.meta.poly_growth_degree = gamma;
    w.meta.envelope_constant = std::pow(1.0 + std::abs(z0), std::abs(gamma));
    w.label = "power:gamma=" + std::to_string(gamma);
    return w;
}

/// e^{gamma |z + z0|}
inline Weight exp_abs(double gamma, cplx z0 = {0.0, 0.0}) {
    Weight w;
    w.eval = [gamma, z0](cplx z) { return std::exp(gamma * std::abs(z + z0)); };
    w.meta.exp_linear_rate = gamma;
    w.meta.envelope_constant = std::exp(std::abs(gamma) * std::abs(z0));
    w.label = "exp_abs:gamma=" + std::to_string(gamma);
    return w;
}

/// (1 + |z|^2)^{p-1}; lies in the restricted class but not the classical one.
inline Weight muckenhoupt_violating(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("muckenhoupt_violating: requires p > 1");
    Weight w;
    w.eval = [p](cplx z) { return std::pow(1.0 + std::norm(z), p - 1.0); };
    w.meta.poly_growth_degree = 2.0 * (p - 1.0);
    w.label = "muck:p=" + std::to_string(p);
    return w;
}

/// |z|^{2(delta-1)}
inline Weight power_pure(double delta) {
    Weight w;
    const double e = 2.0 * (delta - 1.0);
    w.eval = [e](cplx z) { return std::pow(std::abs(z), e); };
    w.meta.poly_growth_degree = std::max(e, 0.0);
    if (delta != 1.0) w.meta.singular_points = {cplx{0.0, 0.0}};
    w.label = "power_pure:delta=" + std::to_string(delta);
    return w;
}

/// |z|^{-2} (log 1/|z|)^{-2} on |z| < 1/e, frozen at its |z| = 1/e value outside.
inline Weight log_negative() {
    Weight w;
    w.eval = [](cplx z) {
        const double r = std::abs(z);
        if (r >= std::exp(-1.0)) return std::exp(2.0);
        if (r == 0.0) return std::numeric_limits<double>::infinity();
        const double L = std::log(1.0 / r);
        return 1.0 / (r * r * L * L);
    };
    w.meta.envelope_constant = std::exp(2.0);
    w.meta.singular_points = {cplx{0.0, 0.0}};
    w.label = "log_neg";
    return w;
}

/// |z|^2 (log 1/|z|)^2 on |z| < 1/e, frozen at its |z| = 1/e value outside.
inline Weight log_positive() {
    Weight w;
    w.eval = [](cplx z) {
        const double r = std::abs(z);
        if (r >= std::exp(-1.0)) return std::exp(-2.0);
        if (r == 0.0) return 0.0;
        const double L = std::log(1.0 / r);
        return r * r * L * L;
    };
    w.meta.singular_points = {cplx{0.0, 0.0}};
    w.label = "log_pos";
    return w;
}

inline Weight product(const Weight& a, const Weight& b) {
    Weight w;
    auto ea = a.eval, eb = b.eval;
    w.eval = [ea, eb](cplx z) { return ea(z) * eb(z); };
    w.meta = meta_product(a.meta, b.meta);
    w.label = "product:(" + a.label + ";" + b.label + ")";
    if (a.constant_value && b.constant_value)
        w.constant_value = *a.constant_value * *b.constant_value;
    return w;
}

}  // namespace weights

/// w(z) / (1+|z|)^gamma
inline Weight distort_weight(const Weight& w, double gamma) {
    Weight d;
    auto ev = w.eval;
    d.eval = [ev, gamma](cplx z) { return ev(z) / std::pow(1.0 + std::abs(z), gamma); };
    d.meta = w.meta;
    d.meta.poly_growth_degree -= gamma;
    d.label = w.label + "|distort:" + std::to_string(gamma);
    if (gamma == 0.0) d.constant_value = w.constant_value;
    return d;
}

/// u -> w(a + u)
inline Weight translate_weight(const Weight& w, cplx a) {
    Weight t;
    auto ev = w.eval;
    t.eval = [ev, a](cplx u) { return ev(a + u); };
    t.meta = w.meta;
    t.meta.singular_points.clear();
    for (const cplx& s : w.meta.singular_points) t.meta.singular_points.push_back(s - a);
    t.meta.envelope_center = w.meta.envelope_center - a;
    const double deg = std::max(w.meta.poly_growth_degree, 0.0);
    const double lin = std::max(w.meta.exp_linear_rate, 0.0);
    t.meta.envelope_constant =
        w.meta.envelope_constant * std::pow(1.0 + std::abs(a), deg) * std::exp(lin * std::abs(a));
    t.label = w.label + "|translate";
    t.constant_value = w.constant_value;
    return t;
}

/// Conjugate dual w^{-p'/p}; requires p > 1.
inline Weight dual_weight(const Weight& w, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("dual_weight: requires p > 1");
    const double s = p / (p - 1.0) / p;  // p'/p
    Weight d;
    auto ev = w.eval;
    d.eval = [ev, s](cplx z) { return std::pow(ev(z), -s); };
    d.meta = w.meta;
    d.meta.poly_growth_degree = -s * w.meta.poly_growth_degree;
    d.meta.exp_linear_rate = -s * w.meta.exp_linear_rate;
    d.meta.envelope_constant = std::pow(w.meta.envelope_constant, s);
    d.label = w.label + "|dual:" + std::to_string(p);
    if (w.constant_value) d.constant_value = std::pow(*w.constant_value, -s);
    return d;
}

using WeightParams = std::map<std::string, cplx>;

inline Weight make_weight(const std::string& family, const WeightParams& params = {}) {
    auto real_param = [&](const std::string& key, std::optional<double> dflt = {}) {
        auto it = params.find(key);
        if (it == params.end()) {
            if (dflt) return *dflt;
            throw std::invalid_argument("weight family '" + family + "' requires parameter " + key);
        }
        if (it->second.imag() != 0.0)
            throw std::invalid_argument("parameter " + key + " must be real");
        return it->second.real();
    };
    auto cplx_param = [&](const std::string& key, cplx dflt) {
        auto it = params.find(key);
        return it == params.end() ? dflt : it->second;
    };
    if (family == "constant") return weights::constant(real_param("c", 1.0));
    if (family == "power") return weights::power(real_param("gamma"));
    if (family == "shifted_power")
        return weights::power(real_param("gamma"), cplx_param("z0", {0.0, 0.0}));
    if (family == "exponential_abs" || family == "exp_abs")
        return weights::exp_abs(real_param("gamma"), cplx_param("z0", {0.0, 0.0}));
    if (family == "muckenhoupt_violating" || family == "muck")
        return weights::muckenhoupt_violating(real_param("p"));
    if (family == "power_pure") return weights::power_pure(real_param("delta"));
    if (family == "log_negative" || family == "log_neg") return weights::log_negative();
    if (family == "log_positive" || family == "log_pos") return weights::log_positive();
    throw std::invalid_argument("unknown weight family: " + family);
}

/// omega(E) = int_E omega dA for a bounded region.
inline double weight_measure(const Weight& w, const Region& region, const QuadSpec& spec) {
    if (w.constant_value) return *w.constant_value * region.area();
    return integrate_region(w.eval, region, spec, w.meta.singular_points);
}

/// Weight mini-language:
///   constant | power:gamma=G | shifted_power:gamma=G,z0=X+Yi | exp_abs:gamma=G,z0=X+Yi
///   | muck:p=P | power_pure:delta=D | log_neg | log_pos | product:(spec;spec)
/// with transform suffixes |distort:G |translate:X+Yi |dual:P
inline Weight parse_weight(const std::string& spec) {
    using namespace minilang;
    const std::vector<std::string> stages = split_top(trim(spec), '|');
    if (stages.empty()) throw std::invalid_argument("empty weight spec");

    const std::string base = trim(stages[0]);
    const size_t colon = base.find(':');
    const std::string head = trim(colon == std::string::npos ? base : base.substr(0, colon));
    const std::string rest = colon == std::string::npos ? "" : trim(base.substr(colon + 1));

    Weight w;
    if (head == "product") {
        const std::vector<std::string> parts = split_top(strip_parens(rest), ';');
        if (parts.size() < 2) throw std::invalid_argument("product: needs at least two factors");
        w = parse_weight(parts[0]);
        for (size_t i = 1; i < parts.size(); ++i)
            w = weights::product(w, parse_weight(parts[i]));
    } else {
        WeightParams params;
        for (const auto& [k, v] : parse_kv_list(rest)) params[k] = parse_complex(v);
        w = make_weight(head, params);
    }

    for (size_t i = 1; i < stages.size(); ++i) {
        const std::string st = trim(stages[i]);
        const size_t c2 = st.find(':');
        const std::string name = trim(c2 == std::string::npos ? st : st.substr(0, c2));
        const std::string arg = c2 == std::string::npos ? "" : trim(st.substr(c2 + 1));
        if (name == "distort")
            w = distort_weight(w, minilang::parse_real(arg));
        else if (name == "translate")
            w = translate_weight(w, minilang::parse_complex(arg));
        else if (name == "dual")
            w = dual_weight(w, minilang::parse_real(arg));
        else
            throw std::invalid_argument("unknown weight transform: " + name);
    }
    return w;
}

}  // namespace focklab
