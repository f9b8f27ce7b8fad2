#include <doctest.h>

#include <algorithm>
#include <array>
#include <numeric>

#include "fracval/audit.hpp"
#include "fracval/colength.hpp"
#include "fracval/corpus.hpp"
#include "fracval/errors.hpp"
#include "fracval/maximals.hpp"
#include "fracval/rng.hpp"
#include "support.hpp"

using namespace fracval;
using fxt::Brute;

namespace {

std::int64_t all_agree(const ValueSet& e, const Point& gamma)
{
    const auto methods = applicable_methods(e.rank());
    const std::int64_t v = colength(e, gamma, methods.front()).value;
    for (Method m : methods) {
        const ColengthReport rep = colength(e, gamma, m);
        CHECK_MESSAGE(rep.value == v, to_string(m) << " on " << to_string(e));
        CHECK(rep.breakdown_sum() == rep.value);
    }
    return v;
}

}  // namespace

TEST_CASE("step")
{
    CHECK(step(fxt::e2l(), {0, 0}, 0) == 1);
    CHECK(step(fxt::e2l(), {2, 0}, 1) == 0);
    CHECK(step(fxt::e3c(), {2, 2, 1}, 2) == 0);
    CHECK_THROWS_AS(step(fxt::e2l(), {0, 0}, 2), PreconditionError);
}

TEST_CASE("fixture colengths")
{
    CHECK(all_agree(fxt::e2l(), {2, 2}) == 3);
    CHECK(all_agree(fxt::prod(), {2, 2}) == 2);
    CHECK(all_agree(fxt::prod(), {3, 3}) == 4);
    CHECK(all_agree(fxt::e3a(), {1, 1, 1}) == 1);
    CHECK(all_agree(fxt::e3c(), {2, 2, 2}) == 3);
    CHECK(all_agree(fxt::sss(), {2, 2, 2}) == 3);
    for (std::size_t r = 1; r <= 4; ++r) {
        const Point g = Point::filled(r, 3);
        CHECK(all_agree(fxt::natural(r), g) == static_cast<std::int64_t>(3 * r));
    }
    CHECK(colength_recursive(fxt::numerical({0, 2, 3}, 4), {4}).value == 3);
    CHECK(colength_recursive(fxt::numerical({0}, 2), {4}).value == 3);
}

TEST_CASE("hand breakdowns")
{
    const ColengthReport chain = colength_chain(fxt::e2l(), {2, 2});
    CHECK(chain.chain.front() == Point{0, 0});
    CHECK(chain.chain.back() == Point{2, 2});

    const ColengthReport sat = colength_saturated(fxt::e2l(), {2, 2});
    CHECK(sat.chain == std::vector<Point>{{0, 0}, {1, 1}, {2, 1}, {2, 2}});
    CHECK(colength_saturated(fxt::e3a(), {1, 1, 1}).chain == std::vector<Point>{{0, 0, 0}, {1, 1, 1}});

    const ColengthReport rec = colength_recursive(fxt::e3c(), {2, 2, 2});
    const auto union_term = std::find_if(rec.breakdown.begin(), rec.breakdown.end(),
                                         [](const Term& t) { return t.name == "union"; });
    REQUIRE(union_term != rec.breakdown.end());
    CHECK(union_term->value == -2);
    CHECK(union_term->levels == std::vector<Coord>{0, 1});
}

TEST_CASE("preconditions")
{
    CHECK_THROWS_WITH_AS(colength_chain(fxt::e3c(), {1, 1, 1}), "gamma below conductor", PreconditionError);
    CHECK_THROWS_AS(colength_closed_r2(fxt::e3c(), {2, 2, 2}), PreconditionError);
    CHECK_THROWS_AS(colength_closed_r3(fxt::e2l(), {2, 2}), PreconditionError);
    CHECK_THROWS_AS(colength_recursive(fxt::e2l(), {0, 4}), PreconditionError);
    Chain bad{{{0, 0}, {1, 1}, {2, 2}}};
    CHECK_THROWS_AS(colength_chain(fxt::e2l(), {2, 2}, bad), PreconditionError);
}

TEST_CASE("methods agree with brute-force chain lengths")
{
    Rng rng(77);
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const std::size_t r = 1 + seed % 3;
        const Flavor f = seed % 5 == 0 ? Flavor::Product : Flavor::Repair;
        const ValueSet e = generate({seed, r, r == 3 ? 4 : 6, f});
        Point gamma = e.conductor();
        for (std::size_t k = 0; k < r; ++k) gamma[k] += rng.between(0, 1);
        const auto [lo, hi] = Brute(e).chain_lengths(gamma);
        CHECK(lo == hi);
        CHECK(all_agree(e, gamma) == lo);
    }
}

TEST_CASE("path independence, tie orders and the step law")
{
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        const std::size_t r = 2 + seed % 2;
        const ValueSet e = generate({seed, r, 5, Flavor::Repair});
        const Point c = e.conductor();
        const std::int64_t base = colength_chain(e, c).value;
        for (std::uint64_t k = 0; k < 5; ++k) {
            CHECK(colength_chain(e, c, random_chain(e.min(), c, seed * 31 + k)).value == base);
            CHECK(colength_saturated(e, c, seed * 17 + k).value == base);
        }
        for (std::size_t i = 0; i < r; ++i) {
            CHECK(colength_chain(e, c + Point::unit(r, i)).value == base + step(e, c, i));
            CHECK(step(e, c, i) == 1);
        }
    }
}

TEST_CASE("permutation equivariance at r = 3")
{
    for (std::uint64_t seed = 200; seed < 215; ++seed) {
        const ValueSet e = generate({seed, 3, 4, Flavor::Repair});
        const Point gamma = e.conductor() + Point{1, 0, 2};
        const std::int64_t base = colength_recursive(e, gamma).value;
        std::array<std::size_t, 3> perm{0, 1, 2};
        do {
            CHECK(colength_recursive(permute(e, perm), permute(gamma, perm)).value == base);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("distance")
{
    CHECK(distance(fxt::natural(2), fxt::e2l()).value == 1);
    CHECK(distance(fxt::natural(3), fxt::e3a()).value == 2);
    const DistanceReport c = distance(fxt::natural(3), fxt::e3c());
    CHECK(c.value == 3);
    CHECK(c.gamma == Point{2, 2, 2});
    std::int64_t sum = 0;
    for (const Term& t : c.expansion) sum += t.value;
    CHECK(sum == 3);

    const DistanceReport s = distance(fxt::numerical({0}, 2), fxt::numerical({3}, 3));
    CHECK(s.value == 2);
    REQUIRE(s.direct_count);
    CHECK(*s.direct_count == 2);

    CHECK(distance(fxt::e3c(), fxt::e3c()).value == 0);
    CHECK_THROWS_AS(distance(fxt::e3c(), fxt::natural(3)), PreconditionError);
    CHECK_THROWS_AS(distance(fxt::e2l(), fxt::e3c()), PreconditionError);
}

TEST_CASE("distance does not depend on gamma")
{
    Rng rng(5);
    for (std::uint64_t seed = 300; seed < 320; ++seed) {
        const std::size_t r = 2 + seed % 2;
        const ValueSet e = generate({seed, r, 4, Flavor::Repair});
        // E(beta) = E n (beta + N^r) is the value set of a submodule
        Point beta = e.min();
        for (std::size_t i = 0; i < r; ++i) beta[i] = rng.between(e.min()[i], e.conductor()[i]);
        std::vector<Point> upper;
        for (const Point& p : e.points()) {
            if (leq(beta, p)) upper.push_back(p);
        }
        const ValueSet d = ValueSet::from_points(r, upper, e.conductor());
        REQUIRE(is_subset(d, e));
        const DistanceReport base = distance(e, d);
        for (int k = 0; k < 3; ++k) {
            Point g = base.gamma;
            for (std::size_t i = 0; i < r; ++i) g[i] += rng.between(0, 3);
            CHECK(distance(e, d, g).value == base.value);
        }
    }
}

TEST_CASE("eta audit on fixtures")
{
    const EtaAudit c = eta_audit(fxt::e3c());
    CHECK(c.passed());
    REQUIRE(c.levels.size() == 2);
    CHECK(c.levels[0].level == 0);
    CHECK(c.levels[0].tag == EtaCase::III);
    CHECK(c.levels[0].am == 1);
    CHECK(c.levels[1].level == 1);
    CHECK(c.levels[1].tag == EtaCase::V);
    CHECK(c.levels[1].am == 0);

    const EtaAudit a = eta_audit(fxt::e3a());
    CHECK(a.passed());
    REQUIRE(!a.levels.empty());
    CHECK(a.levels[0].tag == EtaCase::III);
    CHECK(a.levels[0].am == 1);

    CHECK_THROWS_AS(eta_audit(fxt::e2l()), PreconditionError);
}

TEST_CASE("audit of corpus cases")
{
    for (std::uint64_t seed = 400; seed < 420; ++seed) {
        const std::size_t r = 2 + seed % 2;
        const ValueSet e = generate({seed, r, 5, Flavor::Repair});
        const CaseAudit audit = audit_case(e, {seed, 2, false});
        for (const PropertyResult& p : audit.properties) CHECK_MESSAGE(p.passed, p.name << ": " << p.detail);
        CHECK(audit.methods.agree());
    }
}
