#ifndef FRACVAL_VALUE_SET_HPP
#define FRACVAL_VALUE_SET_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fracval/point.hpp"

namespace fracval {

/// Answers fiber-emptiness queries over a capped box in O(1).
///
/// For every J (as a bitmask, including the empty set and the full set) and
/// every box point p, the table stores the smallest box index of an element
/// beta with beta_J = p_J and beta_k >= p_k off J, or -1. Queries outside the
/// box are clamped: coordinates at or above the conductor are interchangeable
/// under capped membership, so a strict bound there relaxes to the conductor.
class FiberIndex {
public:
    FiberIndex() = default;
    FiberIndex(const Box& box, const std::vector<std::uint8_t>& member);

    /// Box index of some beta in E with beta_J = alpha_J and, off J,
    /// beta_k > alpha_k (strict) or beta_k >= alpha_k (closed).
    std::optional<std::size_t> find(const Point& alpha, std::uint32_t mask, bool strict) const;

private:
    Box box_;
    std::vector<std::vector<std::int32_t>> table_;
};

/// Canonical finite representation of a value set E in Z^r: the points of E
/// inside the box [m, gamma], where m = min E and gamma = c(E). Membership of
/// an arbitrary alpha is alpha >= m and min(alpha, gamma) in the box set.
///
/// Instances are immutable and cheap to copy.
class ValueSet {
public:
    ValueSet() = default;

    /// Builds a validated value set. Points above gamma are capped, gamma is
    /// inserted, m is the componentwise minimum of the points and the
    /// conductor is shrunk to its least value. Throws ValidationError when
    /// the resulting data violates an axiom.
    static ValueSet from_points(std::size_t r, std::span<const Point> points, const Point& gamma);

    /// Structural construction without axiom checks: every point must lie in
    /// [min, conductor]. Intended for readers and for `validate` itself.
    static ValueSet unchecked(const Point& min, const Point& conductor, std::span<const Point> points);

    std::size_t rank() const noexcept { return impl_ ? impl_->min.dim() : 0; }
    const Point& min() const { return impl_->min; }
    const Point& conductor() const { return impl_->conductor; }
    /// Box points, lexicographically sorted and duplicate free.
    const std::vector<Point>& points() const { return impl_->points; }
    std::size_t size() const { return impl_->points.size(); }
    const Box& box() const { return impl_->box; }

    bool contains(const Point& alpha) const;
    bool contains_index(std::size_t box_index) const { return impl_->member[box_index] != 0; }
    /// min(alpha, conductor).
    Point cap(const Point& alpha) const;

    /// Box representative of an element of F_J(E, alpha) (strict) or of the
    /// closed fiber, if any.
    std::optional<Point> fiber_witness(const Point& alpha, const IndexSet& j, bool strict) const;
    bool fiber_nonempty(const Point& alpha, const IndexSet& j, bool strict) const
    {
        return fiber_witness(alpha, j, strict).has_value();
    }
    const FiberIndex& fibers() const { return impl_->fibers; }

    friend bool operator==(const ValueSet& a, const ValueSet& b);

private:
    struct Impl {
        Point min;
        Point conductor;
        Box box;
        std::vector<Point> points;
        std::vector<std::uint8_t> member;
        FiberIndex fibers;
    };
    std::shared_ptr<const Impl> impl_;
};

std::string to_string(const ValueSet& e);

/// One line of a validation report.
struct AxiomCheck {
    std::string axiom;  // "structure", "minimum", "A", "B", "C"
    bool passed = true;
    std::string detail;
    std::vector<Point> witness;
    std::optional<std::size_t> index;  // branch index (0-based) for (B) failures
};

struct ValidationReport {
    std::vector<AxiomCheck> checks;

    bool ok() const;
    const AxiomCheck* find(std::string_view axiom) const;
    std::string to_text() const;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(ValidationReport report);
    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

/// Checks the unique minimum, Properties (A), (B), (C) and conductor
/// minimality under capped semantics. Never throws for well-formed input.
ValidationReport validate(const ValueSet& e);

/// Checks everything except conductor minimality.
ValidationReport validate_axioms(const ValueSet& e);

/// pr_J(E), with minimized conductor.
ValueSet project(const ValueSet& e, const IndexSet& j);

/// Gaps of E_i strictly above min(E_i); 0-based branch index.
std::vector<Coord> gaps(const ValueSet& e, std::size_t i);

/// Coordinate permutation: new coordinate k is old coordinate perm[k].
ValueSet permute(const ValueSet& e, std::span<const std::size_t> perm);
Point permute(const Point& p, std::span<const std::size_t> perm);

/// For every (B) violation, the least admissible witness (a box point),
/// sorted and deduplicated.
std::vector<Point> missing_b_witnesses(const ValueSet& e);

/// D subset of E as infinite sets.
bool is_subset(const ValueSet& d, const ValueSet& e);

}  // namespace fracval

#endif  // FRACVAL_VALUE_SET_HPP
