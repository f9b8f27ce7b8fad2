#include <doctest.h>

#include "fracval/corpus.hpp"
#include "fracval/io.hpp"
#include "fracval/maximals.hpp"
#include "support.hpp"

using namespace fracval;

TEST_CASE("generators are deterministic and valid")
{
    for (Flavor f : {Flavor::Product, Flavor::Repair}) {
        for (std::uint64_t seed = 1; seed <= 30; ++seed) {
            const GenSpec spec{seed, 1 + seed % 4, 6, f};
            const ValueSet a = generate(spec);
            CHECK(a == generate(spec));
            CHECK(validate(a).ok());
            CHECK(a.rank() == spec.r);
            for (Coord c : a.conductor()) CHECK(c <= spec.box_bound);
        }
    }
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const GenSpec spec{seed, 2, 4, Flavor::Series};
        const ValueSet a = generate(spec);
        CHECK(a == generate(spec));
        CHECK(validate(a).ok());
    }
}

TEST_CASE("products have no maximals")
{
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const ValueSet e = gen_product({seed, 1 + seed % 3, 8, Flavor::Product});
        CHECK(maximal_report(e).maximal.empty());
    }
    CHECK(gen_product({5, 1, 8, Flavor::Product}).rank() == 1);
}

TEST_CASE("frozen regressions")
{
    CHECK(gen_product({3, 2, 2, Flavor::Product}) == fxt::prod());

    const ValueSet e = gen_repair({3, 3, 4, Flavor::Repair});
    const ValueSet frozen = io::value_set_from_json(io::read_json_file(fxt::data_path("repair_r3_seed3.json")));
    CHECK(e == frozen);
    CHECK_FALSE(maximal_report(e).relative.empty());
}

TEST_CASE("seeds")
{
    CHECK(case_seed(1, 0) != case_seed(1, 1));
    CHECK(case_seed(1, 0) != case_seed(2, 0));
    CHECK(case_seed(9, 4) == case_seed(9, 4));
    CHECK(parse_flavor("repair") == Flavor::Repair);
    CHECK_FALSE(parse_flavor("other"));
}

TEST_CASE("shrink")
{
    const ValueSet e = gen_repair({11, 3, 6, Flavor::Repair});
    CHECK(shrink(e, [](const ValueSet&) { return true; }) == e);

    // synthetic failure: "has at least two points"; the shrinker must reduce it
    const auto fails = [](const ValueSet& s) { return s.size() < 2; };
    const ValueSet small = shrink(e, fails);
    CHECK(small.size() < e.size());
    CHECK_FALSE(fails(small));
    CHECK(validate(small).ok());
}

TEST_CASE("coverage of the repair corpus")
{
    const CoverageReport rep = repair_coverage(1, 200, 8, 14);
    CHECK(rep.sets == 200);
    CHECK(rep.met());
}
