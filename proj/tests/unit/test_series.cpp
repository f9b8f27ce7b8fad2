#include <doctest.h>

#include "fracval/errors.hpp"
#include "fracval/rng.hpp"
#include "fracval/series.hpp"
#include "support.hpp"

using namespace fracval;
using fxt::vec;

TEST_CASE("rationals")
{
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-2/4") == Rational(-1, 2));
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("series arithmetic")
{
    const Series a({1, 1}, 6);         // 1 + t
    const Series b({1, -1}, 6);        // 1 - t
    const Series p = a * b;            // 1 - t^2
    CHECK(p[0] == 1);
    CHECK(p[1] == 0);
    CHECK(p[2] == -1);
    CHECK(p.order() == 0);
    CHECK((a - a).order() == std::nullopt);
    CHECK(Series::monomial(3, 6).order() == 3);
    CHECK((Rational(2) * a)[1] == 2);
    CHECK(a + b == Series::constant(2, 6));
}

TEST_CASE("values")
{
    CHECK(value(vec({{0, 1}, {0, 1, 1}}, 8)) == Point{1, 1});
    CHECK(value(vec({{0, 0, 1}, {0, 0, 0, 1}, {0, 2}}, 8)) == Point{2, 3, 1});
    CHECK_THROWS_AS(value(vec({{0, 1}, {0}, {0, 1}}, 8)), ZeroDivisor);
}

TEST_CASE("value of a truncated product can be inconclusive")
{
    // t^5 * (t^5 + ...) with the second factor itself truncated
    const Series a({0, 0, 0, 0, 0, 1}, 8);
    const Series b(std::vector<Rational>{0, 0, 0, 0, 0, 1, 0, 0}, 8, false);
    BranchVector h{{a * b, Series::monomial(1, 8)}};
    CHECK_THROWS_AS(value(h), TruncationInconclusive);
}

TEST_CASE("valuation is multiplicative")
{
    Rng rng(3);
    for (int iter = 0; iter < 200; ++iter) {
        const std::size_t r = 1 + rng.below(3);
        const std::size_t t = 16;
        std::vector<std::vector<std::int64_t>> ca(r), cb(r);
        for (std::size_t k = 0; k < r; ++k) {
            ca[k].assign(rng.below(4), 0);
            cb[k].assign(rng.below(4), 0);
            for (int j = 0; j < 3; ++j) {
                ca[k].push_back(rng.between(-3, 3));
                cb[k].push_back(rng.between(-3, 3));
            }
            ca[k].push_back(1);
            cb[k].push_back(1);
        }
        const BranchVector a = vec(ca, t), b = vec(cb, t);
        CHECK(value(a * b) == value(a) + value(b));
    }
}
