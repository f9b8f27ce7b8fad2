#include <doctest.h>

#include "fracval/colength.hpp"
#include "fracval/corpus.hpp"
#include "fracval/errors.hpp"
#include "fracval/oracle.hpp"
#include "support.hpp"

using namespace fracval;
using fxt::vec;

TEST_CASE("echelon")
{
    Echelon ech(3);
    CHECK(ech.insert({1, 2, 3}));
    CHECK(ech.insert({0, 1, 1}));
    CHECK_FALSE(ech.insert({2, 5, 7}));
    CHECK(ech.contains({1, 3, 4}));
    CHECK_FALSE(ech.contains({0, 0, 1}));
    CHECK(ech.rank() == 2);
}

TEST_CASE("value sets of the line rings")
{
    const OracleResult two = value_set_from_ideal(fxt::two_lines());
    CHECK(two.set == fxt::e2l());
    CHECK(validate(two.set).ok());
    const OracleResult three = value_set_from_ideal(fxt::three_lines());
    CHECK(three.set == fxt::e3c());
    CHECK(value_set_from_ideal(normalization_module(fxt::two_lines())).set == fxt::natural(2));
}

TEST_CASE("module basis dimensions")
{
    const ModuleBasis b = module_basis(fxt::two_lines(10));
    // 1 and the t^j on each line for 1 <= j < 10
    CHECK(b.basis.rank() == 19);
    const std::vector<std::int64_t> dims = dimension_table(b);
    CHECK(dims.front() == 19);

    // R (t,t) in the two-lines ring: (1,1) and everything above (2,2)
    BranchIdeal m = fxt::two_lines(12);
    m.module_generators = {vec({{0, 1}, {0, 1}}, 12)};
    const ValueSet e = value_set_from_ideal(m).set;
    CHECK(e.min() == Point{1, 1});
    CHECK(e.conductor() == Point{2, 2});
    CHECK(e.size() == 2);
}

TEST_CASE("colength by dimension counting")
{
    const BranchIdeal two = fxt::two_lines();
    CHECK(colength_dim(normalization_module(two), two) == 1);
    const BranchIdeal three = fxt::three_lines();
    CHECK(colength_dim(normalization_module(three), three) == 3);
    CHECK(colength_dim(three, three) == 0);
    CHECK(colength_dim(two, gamma_submodule(two, {2, 2})) == 3);
    CHECK(colength_dim(three, gamma_submodule(three, {2, 2, 2})) == 3);
    CHECK_THROWS_AS(colength_dim(two, normalization_module(two)), OracleError);
}

TEST_CASE("oracle agrees with the formula on random ideals")
{
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const std::size_t r = 2 + seed % 2;
        const BranchIdeal ideal = random_ideal({seed, r, 4, Flavor::Series}, 16);
        const OracleResult res = value_set_from_ideal(ideal);
        CHECK(validate(res.set).ok());
        const Point c = res.set.conductor();
        CHECK(colength_dim(ideal, gamma_submodule(ideal, c)) == colength(res.set, c, best_method(r)).value);
    }
}

TEST_CASE("ideal preconditions")
{
    BranchIdeal bad = fxt::two_lines();
    bad.ring_generators.push_back(vec({{1}, {2}}, 12));
    CHECK_THROWS_AS(check_ideal(bad), PreconditionError);
    BranchIdeal none = fxt::two_lines();
    none.module_generators = {vec({{0, 1}, {0}}, 12)};
    CHECK_THROWS_AS(check_ideal(none), PreconditionError);
}
