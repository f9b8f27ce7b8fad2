#include "fracval/maximals.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "fracval/errors.hpp"

namespace fracval {

namespace {

void require_member(const ValueSet& e, const Point& a)
{
    if (a.dim() != e.rank()) throw PreconditionError("dimension mismatch: " + to_string(a));
    if (!e.contains(a)) throw PreconditionError("point " + to_string(a) + " is not in E");
}

bool strict_fiber(const ValueSet& e, const Point& a, std::uint32_t mask)
{
    return e.fibers().find(a, mask, true).has_value();
}

// Assumes a is a member of E.
PointClass classify_member(const ValueSet& e, const Point& a)
{
    PointClass out;
    const std::size_t r = e.rank();
    for (std::size_t i = 0; i < r; ++i) {
        if (strict_fiber(e, a, 1U << i)) return out;
    }
    out.maximal = true;
    out.absolute = true;
    out.relative = true;
    const std::uint32_t full = IndexSet::full_mask(r);
    for (std::uint32_t j = 1; j < full; ++j) {
        const bool nonempty = strict_fiber(e, a, j);
        if (nonempty) out.absolute = false;
        if (!nonempty && std::popcount(j) >= 2) out.relative = false;
    }
    return out;
}

std::vector<Point> level_points(const std::vector<Point>& pts, Coord level)
{
    std::vector<Point> out;
    for (const Point& p : pts) {
        if (p[2] == level) out.push_back(p);
    }
    std::sort(out.begin(), out.end(), [](const Point& a, const Point& b) { return a[0] < b[0]; });
    return out;
}

bool contains_point(const std::vector<Point>& sorted, const Point& p)
{
    return std::binary_search(sorted.begin(), sorted.end(), p);
}

}  // namespace

FiberAnswer fiber_nonempty(const ValueSet& e, const FiberQuery& q)
{
    if (q.target.dim() != e.rank()) throw PreconditionError("fiber: dimension mismatch");
    auto w = e.fiber_witness(q.target, q.j, !q.closed);
    return {w.has_value(), w};
}

const char* to_string(MaximalKind kind)
{
    switch (kind) {
        case MaximalKind::NotMaximal: return "not-maximal";
        case MaximalKind::Relative: return "relative";
        case MaximalKind::Absolute: return "absolute";
        case MaximalKind::Intermediate: return "intermediate";
    }
    return "?";
}

MaximalKind PointClass::kind() const
{
    if (!maximal) return MaximalKind::NotMaximal;
    if (absolute) return MaximalKind::Absolute;
    if (relative) return MaximalKind::Relative;
    return MaximalKind::Intermediate;
}

PointClass classify_point(const ValueSet& e, const Point& a)
{
    require_member(e, a);
    return classify_member(e, a);
}

MaximalReport maximal_report(const ValueSet& e)
{
    MaximalReport report;
    report.rank = e.rank();
    const Point& c = e.conductor();
    for (const Point& p : e.points()) {
        if (!all_less(p, c)) continue;
        const PointClass pc = classify_member(e, p);
        if (!pc.maximal) continue;
        report.maximal.push_back(p);
        const Coord level = p[p.dim() - 1];
        if (pc.relative) {
            report.relative.push_back(p);
            report.by_level[level].rm += 1;
        }
        if (pc.absolute) {
            report.absolute.push_back(p);
            report.by_level[level].am += 1;
        }
        if (!pc.relative && !pc.absolute) report.intermediate.push_back(p);
    }
    return report;
}

bool relative_criterion(const ValueSet& e, const Point& a, std::size_t i)
{
    require_member(e, a);
    const std::size_t r = e.rank();
    if (i >= r) throw PreconditionError("relative criterion: index out of range");
    if (r <= 2) return false;
    if (strict_fiber(e, a, 1U << i)) return false;
    for (std::size_t j = 0; j < r; ++j) {
        if (j == i) continue;
        if (!strict_fiber(e, a, (1U << i) | (1U << j))) return false;
    }
    return true;
}

bool relative_criterion(const ValueSet& e, const Point& a)
{
    for (std::size_t i = 0; i < e.rank(); ++i) {
        if (relative_criterion(e, a, i)) return true;
    }
    return false;
}

bool absolute_criterion(const ValueSet& e, const Point& a, std::size_t i)
{
    require_member(e, a);
    const std::size_t r = e.rank();
    if (i >= r) throw PreconditionError("absolute criterion: index out of range");
    if (r == 1) return false;
    const std::uint32_t full = IndexSet::full_mask(r);
    for (std::uint32_t j = 1; j < full; ++j) {
        if (((j >> i) & 1U) && strict_fiber(e, a, j)) return false;
    }
    return true;
}

std::vector<std::pair<Point, Point>> adjacent_rm_pairs(const MaximalReport& report, Coord level)
{
    if (report.rank != 3) throw PreconditionError("adjacent pairs require r = 3");
    const std::vector<Point> row = level_points(report.relative, level);
    std::vector<std::pair<Point, Point>> out;
    for (std::size_t a = 0; a < row.size(); ++a) {
        for (std::size_t b = a + 1; b < row.size(); ++b) {
            const Point& lo = row[a];
            const Point& hi = row[b];
            if (!(lo[0] < hi[0])) continue;
            const bool blocked = std::any_of(row.begin(), row.end(), [&](const Point& t) {
                return lo[0] < t[0] && t[0] < hi[0] && hi[1] < t[1] && t[1] < lo[1];
            });
            if (!blocked) out.emplace_back(lo, hi);
        }
    }
    return out;
}

std::vector<std::pair<Point, Point>> adjacent_rm_pairs(const ValueSet& e, Coord level)
{
    if (e.rank() != 3) throw PreconditionError("adjacent pairs require r = 3");
    return adjacent_rm_pairs(maximal_report(e), level);
}

bool rect_contains_rm(const MaximalReport& report, const Rect& rect)
{
    if (report.rank != 3 || rect.first.dim() != 3 || rect.second.dim() != 3) {
        throw PreconditionError("rectangle queries require r = 3");
    }
    if (rect.first[2] != rect.second[2]) throw PreconditionError("rectangle corners are not coplanar");
    if (rect.first == rect.second) throw PreconditionError("rectangle corners coincide");
    if (!contains_point(report.absolute, rect.first) || !contains_point(report.absolute, rect.second)) {
        throw PreconditionError("rectangle corners must be absolute maximals");
    }
    const Point lo = rect.lower();
    const Point hi = rect.upper();
    return std::any_of(report.relative.begin(), report.relative.end(),
                       [&](const Point& p) { return leq(lo, p) && leq(p, hi); });
}

bool rect_contains_rm(const ValueSet& e, const Rect& rect)
{
    if (e.rank() != 3) throw PreconditionError("rectangle queries require r = 3");
    return rect_contains_rm(maximal_report(e), rect);
}

const char* to_string(AbsoluteCase c)
{
    switch (c) {
        case AbsoluteCase::AdjacentRelatives: return "(i)";
        case AbsoluteCase::RelativeAndProjection: return "(ii)";
        case AbsoluteCase::BothProjections: return "(iii)";
        case AbsoluteCase::None: return "none";
    }
    return "?";
}

namespace {

struct PlaneData {
    MaximalReport report;
    std::vector<Point> m13;
    std::vector<Point> m23;
};

PlaneData plane_data(const ValueSet& e)
{
    PlaneData d;
    d.report = maximal_report(e);
    d.m13 = maximal_report(project(e, IndexSet(3, {0, 2}))).maximal;
    d.m23 = maximal_report(project(e, IndexSet(3, {1, 2}))).maximal;
    return d;
}

AbsoluteCase classify_with(const PlaneData& d, const Point& a)
{
    const Coord level = a[2];
    const auto& rm = d.report.relative;
    const auto shares = [&](std::size_t k) {
        std::vector<Point> out;
        for (const Point& b : rm) {
            if (b[2] == level && b[k] == a[k]) out.push_back(b);
        }
        return out;
    };
    const std::vector<Point> same1 = shares(0);
    const std::vector<Point> same2 = shares(1);
    const auto pairs = adjacent_rm_pairs(d.report, level);
    for (const Point& b : same1) {
        for (const Point& t : same2) {
            const bool adjacent = std::any_of(pairs.begin(), pairs.end(), [&](const auto& pr) {
                return (pr.first == b && pr.second == t) || (pr.first == t && pr.second == b);
            });
            if (adjacent) return AbsoluteCase::AdjacentRelatives;
        }
    }
    const bool in13 = contains_point(d.m13, Point{a[0], a[2]});
    const bool in23 = contains_point(d.m23, Point{a[1], a[2]});
    if ((!same1.empty() && in23) || (!same2.empty() && in13)) return AbsoluteCase::RelativeAndProjection;
    if (in13 && in23) return AbsoluteCase::BothProjections;
    return AbsoluteCase::None;
}

}  // namespace

AbsoluteCase classify_absolute(const ValueSet& e, const Point& a)
{
    if (e.rank() != 3) throw PreconditionError("absolute cases require r = 3");
    const PlaneData d = plane_data(e);
    if (!contains_point(d.report.absolute, a)) {
        throw PreconditionError("point " + to_string(a) + " is not an absolute maximal");
    }
    return classify_with(d, a);
}

std::vector<std::pair<Point, AbsoluteCase>> classify_absolutes(const ValueSet& e)
{
    if (e.rank() != 3) throw PreconditionError("absolute cases require r = 3");
    const PlaneData d = plane_data(e);
    std::vector<std::pair<Point, AbsoluteCase>> out;
    for (const Point& a : d.report.absolute) out.emplace_back(a, classify_with(d, a));
    return out;
}

bool in_lattice_fiber(const Point& alpha, const Point& beta)
{
    if (alpha.dim() != beta.dim()) throw PreconditionError("lattice fiber: dimension mismatch");
    for (std::size_t i = 0; i < alpha.dim(); ++i) {
        if (alpha[i] != beta[i]) continue;
        bool above = true;
        for (std::size_t k = 0; k < alpha.dim() && above; ++k) {
            if (k != i && alpha[k] <= beta[k]) above = false;
        }
        if (above) return true;
    }
    return false;
}

ProjectionFamily codimension_one_projections(const ValueSet& e)
{
    const std::size_t r = e.rank();
    if (r < 2) throw PreconditionError("codimension-one projections require r >= 2");
    ProjectionFamily out;
    const std::uint32_t full = IndexSet::full_mask(r);
    for (std::size_t k = r; k-- > 0;) {
        const IndexSet j(r, full & ~(1U << k));
        out.emplace_back(j, project(e, j));
    }
    return out;
}

namespace {

bool projections_admit(const ProjectionFamily& projections, const Point& alpha)
{
    return std::all_of(projections.begin(), projections.end(),
                       [&](const auto& pj) { return pj.second.contains(project(alpha, pj.first)); });
}

}  // namespace

bool generation_check(const ValueSet& e)
{
    if (e.rank() < 2) throw PreconditionError("generation check requires r >= 2");
    const ProjectionFamily projections = codimension_one_projections(e);
    const std::vector<Point> rm = maximal_report(e).relative;
    const Box& box = e.box();
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        const Point alpha = box.point(idx);
        if (!projections_admit(projections, alpha)) continue;
        const bool avoided =
            std::none_of(rm.begin(), rm.end(), [&](const Point& beta) { return in_lattice_fiber(alpha, beta); });
        if (avoided != e.contains_index(idx)) return false;
    }
    return true;
}

ValueSet reconstruct(const ProjectionFamily& projections, std::span<const Point> rm, const Point& m,
                     const Point& gamma)
{
    const std::size_t r = m.dim();
    if (r < 2) throw PreconditionError("reconstruct requires r >= 2");
    if (gamma.dim() != r) throw PreconditionError("reconstruct: box dimension mismatch");
    std::set<std::uint32_t> seen;
    for (const auto& [j, ej] : projections) {
        if (j.ambient() != r || j.size() != r - 1 || ej.rank() != r - 1) {
            throw PreconditionError("reconstruct: projection " + to_string(j) + " has inconsistent dimension");
        }
        seen.insert(j.mask());
    }
    if (seen.size() != r) throw PreconditionError("reconstruct: need every (r-1)-projection exactly once");
    for (const Point& beta : rm) {
        if (beta.dim() != r) throw PreconditionError("reconstruct: relative maximal dimension mismatch");
    }
    const Box box(m, gamma);
    std::vector<Point> pts;
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        const Point alpha = box.point(idx);
        if (!projections_admit(projections, alpha)) continue;
        const bool avoided =
            std::none_of(rm.begin(), rm.end(), [&](const Point& beta) { return in_lattice_fiber(alpha, beta); });
        if (avoided) pts.push_back(alpha);
    }
    if (pts.empty()) throw PreconditionError("reconstruct: inputs admit no point in the box");
    return ValueSet::from_points(r, pts, gamma);
}

}  // namespace fracval
