#include <catch2/catch_amalgamated.hpp>

#include "focklab/weights.hpp"
#include "test_util.hpp"

using namespace focklab;

namespace {
const QuadSpec kSpec{};
}

TEST_CASE("weight families evaluate correctly") {
    CHECK(make_weight("power", {{"gamma", 2.0}})(cplx{1, 0}) == 4.0);
    CHECK(make_weight("muck", {{"p", 2.0}})(cplx{0, 0}) == 1.0);
    CHECK_THAT(make_weight("exp_abs", {{"gamma", 1.0}})(cplx{0, 3}),
               Catch::Matchers::WithinRel(std::exp(3.0), 1e-15));
    CHECK_THAT(weights::power_pure(2.0)(cplx{0, 2}), Catch::Matchers::WithinRel(4.0, 1e-15));
    // log families freeze at |z| = 1/e
    CHECK_THAT(weights::log_negative()(cplx{0.9, 0}),
               Catch::Matchers::WithinRel(std::exp(2.0), 1e-15));
    CHECK_THAT(weights::log_positive()(cplx{0.9, 0}),
               Catch::Matchers::WithinRel(std::exp(-2.0), 1e-15));
    CHECK(weights::log_positive()(cplx{0, 0}) == 0.0);
}

TEST_CASE("weight measures against closed forms") {
    CHECK_THAT(weight_measure(weights::constant(), Region::disc({0, 0}, 1), kSpec),
               Catch::Matchers::WithinRel(kPi, 1e-10));
    CHECK_THAT(weight_measure(weights::power_pure(2.0), Region::disc({0, 0}, 1), kSpec),
               Catch::Matchers::WithinRel(kPi / 2, 1e-8));
    // separable oracle: int_{Q_1(0)} e^x dA = 2 sinh(1/2)
    CHECK_THAT(weight_measure(testutil::exp_re(), Region::square({0, 0}, 1), kSpec),
               Catch::Matchers::WithinRel(2.0 * std::sinh(0.5), 1e-10));
}

TEST_CASE("derive_weight transforms") {
    const Weight w = weights::power(3.0);
    const Weight flat = distort_weight(w, 3.0);
    for (cplx z : {cplx{0, 0}, cplx{1, 2}, cplx{-3, 0.5}})
        CHECK_THAT(flat(z), Catch::Matchers::WithinRel(1.0, 1e-14));

    const Weight t = translate_weight(testutil::exp_re(), cplx{1, 0});
    for (cplx z : {cplx{0, 0}, cplx{0.3, -2}})
        CHECK_THAT(t(z), Catch::Matchers::WithinRel(std::exp(1.0) * std::exp(z.real()), 1e-14));

    const Weight d = dual_weight(weights::power_pure(2.0), 2.0);
    CHECK_THAT(d(cplx{2, 0}), Catch::Matchers::WithinRel(0.25, 1e-14));
    CHECK_THROWS_AS(dual_weight(weights::constant(), 1.0), std::invalid_argument);
}

TEST_CASE("monotonicity of the region measure") {
    const Weight w = weights::power(1.5);
    const double small = weight_measure(w, Region::square({0.2, 0.1}, 1.0), kSpec);
    const double large = weight_measure(w, Region::square({0.2, 0.1}, 2.0), kSpec);
    CHECK(small <= large + kSpec.abs_tol);
}

TEST_CASE("dual involution on a grid") {
    const double p = 1.7;
    const double pc = p / (p - 1.0);
    for (const Weight& w : {weights::power(2.0), weights::muckenhoupt_violating(2.0)}) {
        const Weight back = dual_weight(dual_weight(w, p), pc);
        for (double x : {-2.0, 0.0, 0.7, 3.1})
            for (double y : {-1.0, 0.5}) {
                const cplx z{x, y};
                CHECK_THAT(back(z), Catch::Matchers::WithinRel(w(z), 1e-12));
            }
    }
}

TEST_CASE("translation consistency of measures") {
    const Weight w = weights::power(2.0);
    const cplx a{1.5, -0.5};
    const double lhs = weight_measure(translate_weight(w, a), Region::square({0, 0}, 1.0), kSpec);
    const double rhs = weight_measure(w, Region::square(a, 1.0), kSpec);
    CHECK_THAT(lhs, Catch::Matchers::WithinRel(rhs, 1e-8));
}

TEST_CASE("distortion comparability on squares") {
    const Weight w = weights::exp_abs(1.0);
    const double gamma = 2.5, r = 1.0;
    const Weight wg = distort_weight(w, gamma);
    for (cplx z0 : {cplx{0, 0}, cplx{3, 1}, cplx{-2, -4}}) {
        for (double dx : {-0.4, 0.0, 0.4})
            for (double dy : {-0.4, 0.3}) {
                const cplx z = z0 + cplx{dx, dy};
                const double q = wg(z) * std::pow(1.0 + std::abs(z0), gamma) / w(z);
                CHECK(q >= std::pow(1.0 + r, -gamma) - 1e-12);
                CHECK(q <= std::pow(1.0 + r, gamma) + 1e-12);
            }
    }
}

TEST_CASE("weight mini-language") {
    CHECK(parse_weight("power:gamma=2")(cplx{1, 0}) == 4.0);
    CHECK_THAT(parse_weight("shifted_power:gamma=1,z0=1+0i")(cplx{1, 0}),
               Catch::Matchers::WithinRel(3.0, 1e-14));
    CHECK_THAT(parse_weight("muck:p=2|dual:2")(cplx{1, 0}),
               Catch::Matchers::WithinRel(0.5, 1e-14));
    const Weight prod = parse_weight("product:(power:gamma=2;constant)");
    CHECK(prod(cplx{1, 0}) == 4.0);
    const Weight chain = parse_weight("power:gamma=3|distort:3");
    CHECK_THAT(chain(cplx{2, 1}), Catch::Matchers::WithinRel(1.0, 1e-14));
    CHECK_THAT(parse_weight("exp_abs:gamma=1|translate:1+0i")(cplx{0, 0}),
               Catch::Matchers::WithinRel(std::exp(1.0), 1e-14));
    CHECK_THROWS_AS(parse_weight("nosuch"), std::invalid_argument);
    CHECK_THROWS_AS(parse_weight("power:gamma=2|dual:1"), std::invalid_argument);
    CHECK_THROWS_AS(make_weight("power"), std::invalid_argument);
}
