#pragma once

#include <sstream>

#include "core.hpp"
#include "minilang.hpp"

namespace focklab {

/// Exact symbolic entire function: a polynomial plus terms c * z^m * e^{lambda z}.
/// The class is closed under addition, multiplication, differentiation,
/// antidifferentiation and Taylor truncation, all computed exactly. Reproducing
/// kernels K_a(z) = e^{alpha * conj(a) * z} are the rate = alpha*conj(a) terms.
class EntireFn {
public:
    struct Term {
        cplx coef;
        int power = 0;  // monomial factor z^power
        cplx rate;      // nonzero exponential rate
    };

    EntireFn() = default;

    static EntireFn polynomial(std::vector<cplx> coeffs) {
        EntireFn f;
        f.poly_ = std::move(coeffs);
        f.normalize();
        return f;
    }
    static EntireFn monomial(int m, cplx coef = 1.0) {
        if (m < 0) throw std::invalid_argument("EntireFn::monomial: negative degree");
        std::vector<cplx> c(static_cast<size_t>(m) + 1, 0.0);
        c.back() = coef;
        return polynomial(std::move(c));
    }
    static EntireFn constant(cplx c) { return polynomial({c}); }

    /// K_a(z) = e^{alpha * conj(a) * z}, scaled by coef.
    static EntireFn kernel(double alpha, cplx a, cplx coef = 1.0) {
        if (!(alpha > 0)) throw std::invalid_argument("EntireFn::kernel: alpha must be positive");
        EntireFn f;
        const cplx rate = alpha * std::conj(a);
        if (rate == cplx{0.0, 0.0}) {
            f.poly_ = {coef};
        } else {
            f.terms_.push_back(Term{coef, 0, rate});
        }
        f.normalize();
        return f;
    }

    cplx operator()(cplx z) const {
        cplx v = 0.0;
        for (size_t j = poly_.size(); j-- > 0;) v = v * z + poly_[j];
        for (const Term& t : terms_) {
            cplx mono = 1.0;
            for (int i = 0; i < t.power; ++i) mono *= z;
            v += t.coef * mono * std::exp(t.rate * z);
        }
        return v;
    }

    EntireFn operator+(const EntireFn& o) const {
        EntireFn f = *this;
        if (f.poly_.size() < o.poly_.size()) f.poly_.resize(o.poly_.size(), 0.0);
        for (size_t j = 0; j < o.poly_.size(); ++j) f.poly_[j] += o.poly_[j];
        f.terms_.insert(f.terms_.end(), o.terms_.begin(), o.terms_.end());
        f.normalize();
        return f;
    }
    EntireFn operator-(const EntireFn& o) const { return *this + o.scaled(-1.0); }

    EntireFn scaled(cplx c) const {
        EntireFn f = *this;
        for (cplx& p : f.poly_) p *= c;
        for (Term& t : f.terms_) t.coef *= c;
        f.normalize();
        return f;
    }

    EntireFn operator*(const EntireFn& o) const {
        EntireFn f;
        if (!poly_.empty() && !o.poly_.empty()) {
            f.poly_.assign(poly_.size() + o.poly_.size() - 1, 0.0);
            for (size_t i = 0; i < poly_.size(); ++i)
                for (size_t j = 0; j < o.poly_.size(); ++j)
                    f.poly_[i + j] += poly_[i] * o.poly_[j];
        }
        auto cross = [&f](const std::vector<cplx>& poly, const std::vector<Term>& terms) {
            for (size_t i = 0; i < poly.size(); ++i)
                if (poly[i] != cplx{0.0, 0.0})
                    for (const Term& t : terms)
                        f.terms_.push_back(
                            Term{poly[i] * t.coef, t.power + static_cast<int>(i), t.rate});
        };
        cross(poly_, o.terms_);
        cross(o.poly_, terms_);
        for (const Term& s : terms_)
            for (const Term& t : o.terms_) {
                const cplx rate = s.rate + t.rate;
                if (rate == cplx{0.0, 0.0}) {
                    const size_t deg = static_cast<size_t>(s.power + t.power);
                    if (f.poly_.size() <= deg) f.poly_.resize(deg + 1, 0.0);
                    f.poly_[deg] += s.coef * t.coef;
                } else {
                    f.terms_.push_back(Term{s.coef * t.coef, s.power + t.power, rate});
                }
            }
        f.normalize();
        return f;
    }

    EntireFn derivative(int n = 1) const {
        if (n < 0) throw std::invalid_argument("EntireFn::derivative: use antiderivative");
        EntireFn f = *this;
        for (int it = 0; it < n; ++it) f = f.derivative_once();
        return f;
    }

    /// Antiderivative vanishing at 0, applied n times.
    EntireFn antiderivative(int n = 1) const {
        if (n < 0) throw std::invalid_argument("EntireFn::antiderivative: n must be >= 0");
        EntireFn f = *this;
        for (int it = 0; it < n; ++it) f = f.antiderivative_once();
        return f;
    }

    /// Exact Taylor coefficient of z^j at the origin.
    cplx taylor_coeff(int j) const {
        if (j < 0) return 0.0;
        cplx c = static_cast<size_t>(j) < poly_.size() ? poly_[j] : cplx{0.0, 0.0};
        for (const Term& t : terms_) {
            if (j < t.power) continue;
            cplx p = 1.0;
            for (int i = 1; i <= j - t.power; ++i) p *= t.rate / static_cast<double>(i);
            c += t.coef * p;
        }
        return c;
    }

    /// f^{(j)}(0), exactly.
    cplx derivative_at0(int j) const {
        cplx c = taylor_coeff(j);
        for (int i = 2; i <= j; ++i) c *= static_cast<double>(i);
        return c;
    }

    /// Taylor polynomial of degree m at the origin.
    EntireFn taylor(int m) const {
        std::vector<cplx> c(static_cast<size_t>(std::max(m, -1)) + 1, 0.0);
        for (int j = 0; j <= m; ++j) c[j] = taylor_coeff(j);
        return polynomial(std::move(c));
    }

    bool is_zero() const { return poly_.empty() && terms_.empty(); }
    int poly_degree() const {
        int d = static_cast<int>(poly_.size()) - 1;
        for (const Term& t : terms_) d = std::max(d, t.power);
        return d;
    }

    /// |f(z)| <= constant * (1+|z|)^degree * e^{linear_rate |z|}.
    struct Envelope {
        double degree = 0;
        double linear_rate = 0;
        double constant = 1;
    };
    Envelope envelope() const {
        Envelope e;
        e.degree = std::max(0, poly_degree());
        e.constant = 0;
        for (const cplx& c : poly_) e.constant += std::abs(c);
        for (const Term& t : terms_) {
            e.constant += std::abs(t.coef);
            e.linear_rate = std::max(e.linear_rate, std::abs(t.rate));
        }
        e.constant = std::max(e.constant, 1e-300);
        return e;
    }
    IntegrandMeta meta() const {
        const Envelope e = envelope();
        IntegrandMeta m;
        m.poly_growth_degree = e.degree;
        m.exp_linear_rate = e.linear_rate;
        m.envelope_constant = e.constant;
        return m;
    }

    const std::vector<cplx>& poly_coeffs() const { return poly_; }
    const std::vector<Term>& kernel_terms() const { return terms_; }

    std::string describe() const {
        std::ostringstream os;
        os << "poly[";
        for (size_t j = 0; j < poly_.size(); ++j) {
            if (j) os << ",";
            os << poly_[j].real();
            if (poly_[j].imag() != 0) os << (poly_[j].imag() > 0 ? "+" : "") << poly_[j].imag() << "i";
        }
        os << "]";
        for (const Term& t : terms_) {
            os << "+(" << t.coef.real();
            if (t.coef.imag() != 0) os << (t.coef.imag() > 0 ? "+" : "") << t.coef.imag() << "i";
            os << ")z^" << t.power << "e^{(" << t.rate.real();
            if (t.rate.imag() != 0) os << (t.rate.imag() > 0 ? "+" : "") << t.rate.imag() << "i";
            os << ")z}";
        }
        return os.str();
    }

private:
    std::vector<cplx> poly_;
    std::vector<Term> terms_;

    EntireFn derivative_once() const {
        EntireFn f;
        if (poly_.size() > 1) {
            f.poly_.resize(poly_.size() - 1);
            for (size_t j = 1; j < poly_.size(); ++j)
                f.poly_[j - 1] = poly_[j] * static_cast<double>(j);
        }
        for (const Term& t : terms_) {
            if (t.power > 0)
                f.terms_.push_back(Term{t.coef * static_cast<double>(t.power), t.power - 1, t.rate});
            f.terms_.push_back(Term{t.coef * t.rate, t.power, t.rate});
        }
        f.normalize();
        return f;
    }

    EntireFn antiderivative_once() const {
        EntireFn f;
        f.poly_.assign(poly_.size() + 1, 0.0);
        for (size_t j = 0; j < poly_.size(); ++j)
            f.poly_[j + 1] = poly_[j] / static_cast<double>(j + 1);
        for (const Term& t : terms_) {
            // int_0^z w^m e^{r w} dw = e^{r z} A(z) - A(0), with
            // A_m(w) = w^m/r - (m/r) A_{m-1}(w), A_0 = 1/r.
            std::vector<cplx> A{1.0 / t.rate};
            for (int m = 1; m <= t.power; ++m) {
                std::vector<cplx> next(static_cast<size_t>(m) + 1, 0.0);
                next[m] = 1.0 / t.rate;
                const cplx fac = -static_cast<double>(m) / t.rate;
                for (size_t j = 0; j < A.size(); ++j) next[j] += fac * A[j];
                A = std::move(next);
            }
            for (size_t j = 0; j < A.size(); ++j)
                f.terms_.push_back(Term{t.coef * A[j], static_cast<int>(j), t.rate});
            f.poly_[0] -= t.coef * A[0];
        }
        f.normalize();
        return f;
    }

    void normalize() {
        // merge terms with identical (power, rate), drop zero coefficients
        std::vector<Term> merged;
        for (const Term& t : terms_) {
            bool found = false;
            for (Term& m : merged)
                if (m.power == t.power && m.rate == t.rate) {
                    m.coef += t.coef;
                    found = true;
                    break;
                }
            if (!found) merged.push_back(t);
        }
        terms_.clear();
        for (const Term& t : merged)
            if (t.coef != cplx{0.0, 0.0}) terms_.push_back(t);
        while (!poly_.empty() && poly_.back() == cplx{0.0, 0.0}) poly_.pop_back();
    }
};

/// D^{(n)}: n-th derivative for n >= 0, |n|-fold antiderivative from 0 for n < 0.
inline EntireFn diff_antidiff(const EntireFn& f, int n) {
    return n >= 0 ? f.derivative(n) : f.antiderivative(-n);
}

/// Function mini-language:
///   poly:c0,c1,...  kernel:alpha=A,a=X+Yi  monomial:m  sum:(spec;spec;...)
inline EntireFn parse_entire(const std::string& spec) {
    using namespace minilang;
    const std::string s = trim(spec);
    const size_t colon = s.find(':');
    const std::string head = trim(colon == std::string::npos ? s : s.substr(0, colon));
    const std::string rest = colon == std::string::npos ? "" : trim(s.substr(colon + 1));
    if (head == "poly") {
        std::vector<cplx> coeffs;
        for (const std::string& c : split_top(rest, ','))
            coeffs.push_back(parse_complex(c));
        return EntireFn::polynomial(std::move(coeffs));
    }
    if (head == "monomial") {
        const double m = parse_real(rest);
        if (m < 0 || m != std::floor(m))
            throw std::invalid_argument("monomial: degree must be a nonnegative integer");
        return EntireFn::monomial(static_cast<int>(m));
    }
    if (head == "kernel") {
        double alpha = 1.0;
        cplx a{0.0, 0.0};
        bool saw_alpha = false, saw_a = false;
        for (const auto& [k, v] : parse_kv_list(rest)) {
            if (k == "alpha") {
                alpha = parse_real(v);
                saw_alpha = true;
            } else if (k == "a") {
                a = parse_complex(v);
                saw_a = true;
            } else {
                throw std::invalid_argument("kernel: unknown parameter " + k);
            }
        }
        if (!saw_alpha || !saw_a)
            throw std::invalid_argument("kernel: requires alpha=A,a=X+Yi");
        return EntireFn::kernel(alpha, a);
    }
    if (head == "sum") {
        EntireFn f;
        for (const std::string& part : split_top(strip_parens(rest), ';'))
            f = f + parse_entire(part);
        return f;
    }
    throw std::invalid_argument("unknown function family: " + head);
}

}  // namespace focklab
