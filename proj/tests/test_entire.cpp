#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "focklab/entire.hpp"

using namespace focklab;

namespace {

void check_equal_on_grid(const EntireFn& a, const EntireFn& b, double tol = 1e-13) {
    for (double x : {-1.5, 0.0, 0.4, 2.0})
        for (double y : {-1.0, 0.0, 0.8}) {
            const cplx z{x, y};
            CHECK(std::abs(a(z) - b(z)) <= tol * (1.0 + std::abs(b(z))));
        }
}

}  // namespace

TEST_CASE("differentiation of polynomials and kernels") {
    const EntireFn z2 = EntireFn::monomial(2);
    const EntireFn d = z2.derivative();
    REQUIRE(d.poly_coeffs().size() == 2);
    CHECK(d.poly_coeffs()[0] == cplx{0, 0});
    CHECK(d.poly_coeffs()[1] == cplx{2, 0});

    const double alpha = 2.0;
    const cplx a{1, 1};
    const EntireFn K = EntireFn::kernel(alpha, a);
    const EntireFn dK = K.derivative();
    check_equal_on_grid(dK, K.scaled(alpha * std::conj(a)), 1e-14);
}

TEST_CASE("antiderivatives vanish to the right order") {
    // two antiderivatives of the constant 2 give z^2
    const EntireFn f = diff_antidiff(EntireFn::constant(2.0), -2);
    REQUIRE(f.poly_coeffs().size() == 3);
    CHECK(f.poly_coeffs()[2] == cplx{1, 0});
    CHECK(f(cplx{3, 0}) == cplx{9, 0});

    // kernel antiderivative: (1/rate)(e^{rate z} - 1)
    const EntireFn K = EntireFn::kernel(1.0, {2, 0});
    const EntireFn A = diff_antidiff(K, -1);
    CHECK(std::abs(A(cplx{0, 0})) < 1e-15);
    const cplx z{0.7, 0.3};
    CHECK(std::abs(A(z) - (std::exp(2.0 * z) - 1.0) / 2.0) < 1e-14);
}

TEST_CASE("round trip: derivative of antiderivative is the identity") {
    const EntireFn f =
        EntireFn::polynomial({1.0, cplx{0, 2}, 3.0}) + EntireFn::kernel(2.0, {1, -1}, 0.5);
    check_equal_on_grid(diff_antidiff(diff_antidiff(f, -1), 1), f, 1e-14);
    check_equal_on_grid(diff_antidiff(diff_antidiff(f, -3), 3), f, 1e-13);

    // integer data round-trips exactly
    const EntireFn g = EntireFn::polynomial({4.0, 2.0, 1.0});
    const EntireFn rt = diff_antidiff(diff_antidiff(g, -1), 1);
    REQUIRE(rt.poly_coeffs().size() == 3);
    for (int j = 0; j < 3; ++j) CHECK(rt.poly_coeffs()[j] == g.poly_coeffs()[j]);
}

TEST_CASE("taylor data is exact") {
    const double alpha = 1.5;
    const cplx a{0.5, -1.0};
    const cplx r = alpha * std::conj(a);
    const EntireFn K = EntireFn::kernel(alpha, a);
    CHECK(K.taylor_coeff(0) == cplx{1, 0});
    CHECK(std::abs(K.taylor_coeff(1) - r) < 1e-15);
    CHECK(std::abs(K.taylor_coeff(2) - r * r / 2.0) < 1e-15);
    CHECK(std::abs(K.derivative_at0(3) - r * r * r) < 1e-15);

    const EntireFn T = K.taylor(2);
    CHECK(T.kernel_terms().empty());
    CHECK(T.poly_coeffs().size() == 3);
}

TEST_CASE("products stay in the class") {
    const EntireFn p = EntireFn::polynomial({1.0, 1.0});  // 1 + z
    const EntireFn K = EntireFn::kernel(1.0, {1, 0});
    const EntireFn pk = p * K;
    const cplx z{0.4, 0.2};
    CHECK(std::abs(pk(z) - (1.0 + z) * std::exp(z)) < 1e-14);

    // kernel * kernel with opposite rates collapses to a polynomial
    const EntireFn K2 = EntireFn::kernel(1.0, {-1, 0});
    const EntireFn prod = K * K2;
    CHECK(prod.kernel_terms().empty());
    CHECK(std::abs(prod(z) - 1.0) < 1e-15);

    // derivative of a product, spot-checked numerically
    const EntireFn q = pk.derivative();
    CHECK(std::abs(q(z) - (std::exp(z) + (1.0 + z) * std::exp(z))) < 1e-13);
}

TEST_CASE("envelopes dominate") {
    std::mt19937 gen(7);
    auto u = [&] { return 2.0 * (gen() / 4294967295.0) - 1.0; };
    const EntireFn f = EntireFn::polynomial({u(), u(), u()}) +
                       EntireFn::kernel(2.0, {u(), u()}, cplx(u(), u()));
    const auto env = f.envelope();
    for (int i = 0; i < 50; ++i) {
        const cplx z{4.0 * u(), 4.0 * u()};
        const double bound = env.constant * std::pow(1.0 + std::abs(z), env.degree) *
                             std::exp(env.linear_rate * std::abs(z));
        CHECK(std::abs(f(z)) <= bound * (1.0 + 1e-12));
    }
}

TEST_CASE("function mini-language") {
    const EntireFn p = parse_entire("poly:1,0,1");
    CHECK(p(cplx{2, 0}) == cplx{5, 0});
    const EntireFn m = parse_entire("monomial:3");
    CHECK(m(cplx{2, 0}) == cplx{8, 0});
    const EntireFn k = parse_entire("kernel:alpha=2,a=1+1i");
    CHECK(std::abs(k(cplx{1, 0}) - std::exp(2.0 * std::conj(cplx{1, 1}))) < 1e-14);
    const EntireFn s = parse_entire("sum:(poly:1;monomial:1)");
    CHECK(s(cplx{3, 0}) == cplx{4, 0});
    CHECK_THROWS_AS(parse_entire("nosuch:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_entire("kernel:alpha=1"), std::invalid_argument);
}
