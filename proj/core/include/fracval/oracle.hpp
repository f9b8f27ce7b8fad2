#ifndef FRACVAL_ORACLE_HPP
#define FRACVAL_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fracval/point.hpp"
#include "fracval/series.hpp"
#include "fracval/value_set.hpp"

namespace fracval {

/// Stabilization not reached, unstable output across truncations, or a
/// failed inclusion.
class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A module over the subring of k[[t]]^r generated by `ring_generators`
/// (and the constants), spanned by `module_generators`. `truncation` caps the
/// working precision.
struct BranchIdeal {
    std::size_t r = 0;
    std::size_t truncation = 0;
    std::vector<BranchVector> ring_generators;
    std::vector<BranchVector> module_generators;
};

/// Throws PreconditionError on rank/truncation mismatches, ring generators
/// with unequal constant terms, or no generator regular at the truncation.
void check_ideal(const BranchIdeal& ideal);

/// Exact row echelon form; rows ordered by pivot column.
class Echelon {
public:
    explicit Echelon(std::size_t width) : width_(width) {}

    /// Reduces v against the basis; inserts it if independent.
    bool insert(std::vector<Rational> v);
    /// True if v lies in the span.
    bool contains(std::vector<Rational> v) const;

    std::size_t width() const noexcept { return width_; }
    std::size_t rank() const noexcept { return rows_.size(); }
    const std::vector<std::vector<Rational>>& rows() const noexcept { return rows_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

private:
    void reduce(std::vector<Rational>& v) const;

    std::size_t width_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> pivots_;
};

/// Coefficient basis of the module modulo t^T, coordinates ordered branch by
/// branch and by exponent within a branch. Throws OracleError if closing
/// under the ring takes more than T rounds.
struct ModuleBasis {
    std::size_t r = 0;
    std::size_t truncation = 0;
    std::size_t degrees = 0;  // rounds of multiplication until nothing new appeared
    Echelon basis{0};
};

ModuleBasis module_basis(const BranchIdeal& ideal, std::size_t truncation);
ModuleBasis module_basis(const BranchIdeal& ideal);

/// dim of the part of the module with order >= alpha in every branch, for
/// every alpha in [0, T]^r (row-major over that box).
std::vector<std::int64_t> dimension_table(const ModuleBasis& basis);

struct OracleOptions {
    std::optional<Point> gamma_hint;  // expected conductor bound; sets the first truncation
    std::size_t margin = 0;           // 0: r + 2
};

struct OracleResult {
    ValueSet set;
    std::size_t truncation = 0;  // the truncation at which the result was confirmed
};

/// Value set of the module. Starts at max(gamma_hint) + margin, confirms at
/// T + margin and doubles T until both agree; OracleError at the cap.
OracleResult value_set_from_ideal(const BranchIdeal& ideal, const OracleOptions& options = {});

/// l(big / small), with the inclusion checked. Both must share the ring.
std::int64_t colength_dim(const BranchIdeal& big, const BranchIdeal& small, std::size_t margin = 0);

/// t^gamma k[[t]]^r as a module over the ring of `ideal`.
BranchIdeal gamma_submodule(const BranchIdeal& ideal, const Point& gamma);

/// The normalization k[[t]]^r as a module over the ring of `ideal`.
BranchIdeal normalization_module(const BranchIdeal& ideal);

}  // namespace fracval

#endif  // FRACVAL_ORACLE_HPP
