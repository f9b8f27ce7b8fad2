#ifndef FRACVAL_CORPUS_HPP
#define FRACVAL_CORPUS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fracval/oracle.hpp"
#include "fracval/point.hpp"
#include "fracval/value_set.hpp"

namespace fracval {

enum class Flavor { Product, Repair, Series };

const char* to_string(Flavor f);
std::optional<Flavor> parse_flavor(std::string_view name);

struct GenSpec {
    std::uint64_t seed = 0;
    std::size_t r = 2;
    Coord box_bound = 8;  // largest conductor coordinate
    Flavor flavor = Flavor::Repair;
};

class CorpusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Product of r random numerical sets, each possibly shifted.
ValueSet gen_product(const GenSpec& spec);

/// Random points in a random box, closed under meets and repaired for (B)
/// with least witnesses until nothing changes. Retries with derived seeds;
/// CorpusError when they run out.
ValueSet gen_repair(const GenSpec& spec);

/// A random module over a random ring of branch polynomials with small
/// orders. `truncation` is the working cap recorded in the ideal.
BranchIdeal random_ideal(const GenSpec& spec, std::size_t truncation = 24);

/// Value set of random_ideal, retrying with derived seeds when the oracle
/// cannot certify a result.
ValueSet gen_series(const GenSpec& spec);

/// Dispatches on spec.flavor.
ValueSet generate(const GenSpec& spec);

/// Greedily removes points and lowers the conductor while the set stays valid
/// and `holds` still returns false. Returns the input if `holds` is true on it.
ValueSet shrink(const ValueSet& e, const std::function<bool(const ValueSet&)>& holds);

/// Seed of the i-th case of a run.
std::uint64_t case_seed(std::uint64_t run_seed, std::uint64_t index);

struct CoverageReport {
    std::size_t sets = 0;
    std::size_t multi_rm_sets = 0;  // some level carries >= 2 relative maximals
    std::size_t multi_am_sets = 0;  // some level carries >= 2 absolute maximals
    Coord box_bound = 0;            // bound finally used
    bool widened = false;
    std::string note;

    bool met() const { return multi_rm_sets > 0 && multi_am_sets > 0; }
};

/// Runs `count` repair sets at r = 3, widening the box until both coverage
/// targets are hit or `max_bound` is passed.
CoverageReport repair_coverage(std::uint64_t run_seed, std::size_t count, Coord box_bound, Coord max_bound);

}  // namespace fracval

#endif  // FRACVAL_CORPUS_HPP
