#include "dappnet/powerlaw.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

using namespace dappnet;

TEST_SUITE("powerlaw")
{
    TEST_CASE("zeta against known values and direct sums")
    {
        CHECK(hurwitz_zeta(2.0, 1.0) == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-13));
        CHECK(hurwitz_zeta(4.0, 1.0) == doctest::Approx(std::pow(M_PI, 4) / 90.0).epsilon(1e-13));
        // zeta(s, q) - zeta(s, q + 1) = q^-s
        for (double s : {1.5, 2.5, 4.7})
            for (double q : {0.5, 1.0, 3.0, 141.5})
                CHECK(hurwitz_zeta(s, q) - hurwitz_zeta(s, q + 1.0) == doctest::Approx(std::pow(q, -s)).epsilon(1e-10));
    }

    TEST_CASE("recovers the exponent of a synthetic sample")
    {
        const oracle::PowerLawSampler draw(2.5, 1);
        std::mt19937_64 rng(2024);
        std::vector<std::uint64_t> xs(10000);
        for (auto& x : xs)
            x = draw(rng);
        const auto f = fit_powerlaw(xs);
        CHECK(f.alpha > 2.3);
        CHECK(f.alpha < 2.7);
        CHECK(f.reliable);
        CHECK(f.n_samples == 10000);
        CHECK(std::count(xs.begin(), xs.end(), f.x_min) > 0);
        CHECK(static_cast<std::size_t>(std::count_if(xs.begin(), xs.end(), [&](auto x) { return x >= f.x_min; })) ==
              f.n_tail);
    }

    TEST_CASE("shifted lower bound")
    {
        const oracle::PowerLawSampler draw(3.0, 20);
        std::mt19937_64 rng(77);
        std::vector<std::uint64_t> xs(5000);
        for (auto& x : xs)
            x = draw(rng);
        const auto f = fit_powerlaw(xs);
        CHECK(f.alpha == doctest::Approx(3.0).epsilon(0.1));
        CHECK(f.x_min >= 20);
    }

    TEST_CASE("constant sequence is unreliable")
    {
        const auto f = fit_powerlaw(std::vector<std::uint64_t>(60, 4));
        CHECK_FALSE(f.reliable);
    }

    TEST_CASE("argument errors")
    {
        CHECK_THROWS_AS(fit_powerlaw(std::vector<std::uint64_t>(49, 3)), std::invalid_argument);
        std::vector<std::uint64_t> zero(60, 2);
        zero[5] = 0;
        CHECK_THROWS_AS(fit_powerlaw(zero), std::invalid_argument);
    }
}
