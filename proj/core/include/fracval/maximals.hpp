#ifndef FRACVAL_MAXIMALS_HPP
#define FRACVAL_MAXIMALS_HPP

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fracval/point.hpp"
#include "fracval/value_set.hpp"

namespace fracval {

/// F_J(E, target) when `closed` is false, the closed fiber otherwise.
struct FiberQuery {
    Point target;
    IndexSet j;
    bool closed = false;
};

struct FiberAnswer {
    bool nonempty = false;
    std::optional<Point> witness;  // box representative
};

FiberAnswer fiber_nonempty(const ValueSet& e, const FiberQuery& q);

enum class MaximalKind { NotMaximal, Relative, Absolute, Intermediate };

const char* to_string(MaximalKind kind);

/// Flags of a point of E. At r = 2 a maximal point carries both the relative
/// and the absolute flag; kind() then reports Absolute.
struct PointClass {
    bool maximal = false;
    bool relative = false;
    bool absolute = false;

    MaximalKind kind() const;
};

/// Definitional classification; throws PreconditionError if a is not in E.
PointClass classify_point(const ValueSet& e, const Point& a);

struct LevelCounts {
    std::size_t rm = 0;
    std::size_t am = 0;

    friend bool operator==(const LevelCounts&, const LevelCounts&) = default;
};

struct MaximalReport {
    std::size_t rank = 0;
    std::vector<Point> maximal;       // M(E)
    std::vector<Point> relative;      // RM(E)
    std::vector<Point> absolute;      // AM(E)
    std::vector<Point> intermediate;  // maximal, neither relative nor absolute
    std::map<Coord, LevelCounts> by_level;  // keyed by the last coordinate
};

/// Scans [m, gamma) and classifies every member. All point lists are sorted.
MaximalReport maximal_report(const ValueSet& e);

/// Some index i has F_i empty and F_{i,j} nonempty for every j != i, with
/// {i, j} a proper subset of I. Always false for r <= 2.
bool relative_criterion(const ValueSet& e, const Point& a);
bool relative_criterion(const ValueSet& e, const Point& a, std::size_t i);

/// F_J(E, a) empty for every proper J containing i.
bool absolute_criterion(const ValueSet& e, const Point& a, std::size_t i);

/// Pairs of relative maximals on the plane x_3 = level with no relative
/// maximal strictly inside their rectangle; sorted by first coordinate.
/// Requires r = 3.
std::vector<std::pair<Point, Point>> adjacent_rm_pairs(const ValueSet& e, Coord level);
std::vector<std::pair<Point, Point>> adjacent_rm_pairs(const MaximalReport& report, Coord level);

/// Axis rectangle spanned by two coplanar points (equal third coordinate).
struct Rect {
    Point first;
    Point second;

    Point lower() const { return meet(first, second); }
    Point upper() const { return join(first, second); }
};

/// Whether a relative maximal lies in the closed rectangle. Corners must be
/// distinct absolute maximals on one level; throws PreconditionError otherwise.
bool rect_contains_rm(const ValueSet& e, const Rect& rect);
bool rect_contains_rm(const MaximalReport& report, const Rect& rect);

/// Which alternative of the absolute-maximal trichotomy (r = 3) applies.
enum class AbsoluteCase { AdjacentRelatives, RelativeAndProjection, BothProjections, None };

const char* to_string(AbsoluteCase c);

/// Throws PreconditionError unless r = 3 and a is an absolute maximal.
AbsoluteCase classify_absolute(const ValueSet& e, const Point& a);
/// The case of every absolute maximal, in AM order.
std::vector<std::pair<Point, AbsoluteCase>> classify_absolutes(const ValueSet& e);

/// alpha in F(Z^r, beta): agrees with beta at one coordinate and exceeds it
/// everywhere else.
bool in_lattice_fiber(const Point& alpha, const Point& beta);

/// Verifies: for every box point whose (r-1)-projections all lie in the
/// corresponding projections of E, membership in E is equivalent to avoiding
/// F(Z^r, beta) for every relative maximal beta. Requires r >= 2.
bool generation_check(const ValueSet& e);

/// The (r-1)-projections of E keyed by their index sets.
using ProjectionFamily = std::vector<std::pair<IndexSet, ValueSet>>;

ProjectionFamily codimension_one_projections(const ValueSet& e);

/// Rebuilds a value set from its (r-1)-projections and relative maximals over
/// the box [m, gamma]. Throws ValidationError if the candidate is invalid.
ValueSet reconstruct(const ProjectionFamily& projections, std::span<const Point> rm, const Point& m,
                     const Point& gamma);

}  // namespace fracval

#endif  // FRACVAL_MAXIMALS_HPP
