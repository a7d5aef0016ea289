#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "a2dkit/numeric.hpp"

using namespace a2dkit;

TEST_CASE("exact_sum cancels catastrophically ill-conditioned inputs")
{
    const std::vector<double> v{1e30, 1e-30, -1e30};
    CHECK(exact_sum(v) == 1e-30);
    const std::vector<double> w{1.0, 1e100, 1.0, -1e100};
    CHECK(exact_sum(w) == 2.0);
    CHECK(exact_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("exact_sum returns the correctly rounded sum")
{
    const std::vector<double> v{0.1, 0.2, 0.3};
    CHECK(exact_sum(v) == 0.6);
}

TEST_CASE("exact_sum is order independent")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-40, 40);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(1 + trial % 37);
        for (auto& x : v)
            x = std::ldexp(unit(rng), expo(rng));
        const double ref = exact_sum(v);
        std::shuffle(v.begin(), v.end(), rng);
        CHECK(exact_sum(v) == ref);
        std::reverse(v.begin(), v.end());
        CHECK(exact_sum(v) == ref);
    }
}

TEST_CASE("format_double round-trips exactly")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = unit(rng);
        const auto back = parse_double(format_double(x));
        REQUIRE(back.has_value());
        CHECK(*back == x);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
}

TEST_CASE("parse_double is strict")
{
    CHECK_FALSE(parse_double("").has_value());
    CHECK_FALSE(parse_double("abc").has_value());
    CHECK_FALSE(parse_double("0.5x").has_value());
    CHECK_FALSE(parse_double("nan").has_value());
    CHECK_FALSE(parse_double("inf").has_value());
    CHECK_FALSE(parse_double("0,5").has_value());
    CHECK(*parse_double("+0.25") == 0.25);
    CHECK(*parse_double("1e-3") == 0.001);
}

TEST_CASE("parse_uint")
{
    CHECK(*parse_uint("42") == 42u);
    CHECK_FALSE(parse_uint("-1").has_value());
    CHECK_FALSE(parse_uint("1.0").has_value());
    CHECK_FALSE(parse_uint("").has_value());
}

TEST_CASE("format_percent uses one decimal")
{
    CHECK(format_percent(0.8333333) == "83.3");
    CHECK(format_percent(1.0) == "100.0");
    CHECK(format_percent(0.0) == "0.0");
}
