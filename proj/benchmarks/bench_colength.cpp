#include <benchmark/benchmark.h>

#include "fracval/colength.hpp"
#include "fracval/corpus.hpp"
#include "fracval/maximals.hpp"
#include "fracval/oracle.hpp"

using namespace fracval;

namespace {

ValueSet sample(std::size_t r, Coord box) { return gen_repair({42, r, box, Flavor::Repair}); }

void BM_validate(benchmark::State& state)
{
    const ValueSet e = sample(static_cast<std::size_t>(state.range(0)), state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(validate(e).ok());
}

void BM_maximal_report(benchmark::State& state)
{
    const ValueSet e = sample(static_cast<std::size_t>(state.range(0)), state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(maximal_report(e).maximal.size());
}

void BM_colength(benchmark::State& state)
{
    const auto method = static_cast<Method>(state.range(0));
    const std::size_t r = static_cast<std::size_t>(state.range(1));
    const ValueSet e = sample(r, state.range(2));
    for (auto _ : state) benchmark::DoNotOptimize(colength(e, e.conductor(), method).value);
    state.SetLabel(to_string(method));
}

void BM_gen_repair(benchmark::State& state)
{
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            gen_repair({seed++, static_cast<std::size_t>(state.range(0)), state.range(1), Flavor::Repair}).size());
    }
}

void BM_oracle(benchmark::State& state)
{
    const auto r = static_cast<std::size_t>(state.range(0));
    const BranchIdeal ideal = random_ideal({7, r, 4, Flavor::Series}, static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(value_set_from_ideal(ideal).set.size());
}

}  // namespace

BENCHMARK(BM_validate)->Args({2, 20})->Args({3, 10})->Args({3, 15})->Args({4, 6});
BENCHMARK(BM_maximal_report)->Args({2, 20})->Args({3, 10})->Args({3, 15})->Args({4, 6});
BENCHMARK(BM_colength)
    ->ArgsProduct({{static_cast<int>(Method::Chain), static_cast<int>(Method::Saturated),
                    static_cast<int>(Method::Recursive)},
                   {3},
                   {8, 15}})
    ->Args({static_cast<int>(Method::ClosedR2), 2, 20})
    ->Args({static_cast<int>(Method::ClosedR3), 3, 15});
BENCHMARK(BM_gen_repair)->Args({2, 20})->Args({3, 15})->Args({4, 6});
BENCHMARK(BM_oracle)->Args({2, 16})->Args({3, 24})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
