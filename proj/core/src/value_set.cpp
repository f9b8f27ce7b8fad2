#include "fracval/value_set.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fracval/errors.hpp"

namespace fracval {

FiberIndex::FiberIndex(const Box& box, const std::vector<std::uint8_t>& member) : box_(box)
{
    const std::size_t r = box.dim();
    const std::size_t n = box.size();
    const std::uint32_t masks = 1U << r;
    table_.assign(masks, std::vector<std::int32_t>(n, -1));
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
        auto& t = table_[mask];
        for (std::size_t idx = n; idx-- > 0;) {
            std::int32_t best = member[idx] ? static_cast<std::int32_t>(idx) : -1;
            for (std::size_t k = 0; k < r; ++k) {
                if ((mask >> k) & 1U) continue;
                if (box.coord(idx, k) >= box.hi()[k]) continue;
                const std::int32_t cand = t[idx + box.stride(k)];
                if (cand >= 0 && (best < 0 || cand < best)) best = cand;
            }
            t[idx] = best;
        }
    }
}

std::optional<std::size_t> FiberIndex::find(const Point& alpha, std::uint32_t mask, bool strict) const
{
    const std::size_t r = box_.dim();
    if (alpha.dim() != r) throw PreconditionError("fiber query: dimension mismatch");
    Point q = alpha;
    const Point& lo = box_.lo();
    const Point& hi = box_.hi();
    for (std::size_t k = 0; k < r; ++k) {
        if ((mask >> k) & 1U) {
            if (alpha[k] < lo[k]) return std::nullopt;
            q[k] = std::min(alpha[k], hi[k]);
        } else {
            const Coord lower = strict ? alpha[k] + 1 : alpha[k];
            q[k] = std::clamp(lower, lo[k], hi[k]);
        }
    }
    const std::int32_t w = table_[mask][box_.index(q)];
    if (w < 0) return std::nullopt;
    return static_cast<std::size_t>(w);
}

ValueSet ValueSet::unchecked(const Point& min, const Point& conductor, std::span<const Point> points)
{
    const std::size_t r = min.dim();
    if (r == 0) throw PreconditionError("value set needs r >= 1");
    if (r > 16) throw PreconditionError("value set dimension too large");
    if (conductor.dim() != r) throw PreconditionError("conductor dimension mismatch");
    if (!leq(min, conductor)) throw PreconditionError("conductor does not dominate the minimum");

    auto impl = std::make_shared<Impl>();
    impl->min = min;
    impl->conductor = conductor;
    impl->box = Box(min, conductor);
    impl->member.assign(impl->box.size(), 0);
    for (const Point& p : points) {
        if (!impl->box.contains(p)) {
            throw PreconditionError("point " + to_string(p) + " outside the box [" + to_string(min) + ", " +
                                    to_string(conductor) + "]");
        }
        impl->member[impl->box.index(p)] = 1;
    }
    for (std::size_t idx = 0; idx < impl->member.size(); ++idx) {
        if (impl->member[idx]) impl->points.push_back(impl->box.point(idx));
    }
    impl->fibers = FiberIndex(impl->box, impl->member);
    ValueSet out;
    out.impl_ = std::move(impl);
    return out;
}

ValueSet ValueSet::from_points(std::size_t r, std::span<const Point> points, const Point& gamma)
{
    if (r == 0) throw PreconditionError("value set needs r >= 1");
    if (points.empty()) throw PreconditionError("from_points: no points");
    if (gamma.dim() != r) throw PreconditionError("from_points: conductor dimension mismatch");
    Point m = points.front();
    for (const Point& p : points) {
        if (p.dim() != r) throw PreconditionError("from_points: point dimension mismatch");
        m = meet(m, p);
    }
    if (!leq(m, gamma)) {
        throw PreconditionError("from_points: gamma " + to_string(gamma) + " does not dominate the minimum " +
                                to_string(m));
    }
    std::vector<Point> capped;
    capped.reserve(points.size() + 1);
    for (const Point& p : points) capped.push_back(meet(p, gamma));
    capped.push_back(gamma);

    const ValueSet raw = unchecked(m, gamma, capped);
    ValidationReport axioms = validate_axioms(raw);
    if (!axioms.ok()) throw ValidationError(std::move(axioms));

    // Under (A) and (B), gamma - e_i in E means the slabs at gamma_i - 1 and
    // gamma_i coincide, so lowering the cap keeps the membership unchanged.
    Point c = gamma;
    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        for (std::size_t i = 0; i < r; ++i) {
            if (c[i] == m[i]) continue;
            Point lower = c;
            lower[i] -= 1;
            if (raw.contains(lower)) {
                c = lower;
                shrunk = true;
            }
        }
    }
    ValueSet out = raw;
    if (c != gamma) {
        std::vector<Point> recapped;
        recapped.reserve(raw.size());
        for (const Point& p : raw.points()) recapped.push_back(meet(p, c));
        out = unchecked(m, c, recapped);
    }
    ValidationReport full = validate(out);
    if (!full.ok()) throw ValidationError(std::move(full));
    return out;
}

bool ValueSet::contains(const Point& alpha) const
{
    if (alpha.dim() != rank()) throw PreconditionError("contains: dimension mismatch");
    if (!leq(impl_->min, alpha)) return false;
    return impl_->member[impl_->box.index(meet(alpha, impl_->conductor))] != 0;
}

Point ValueSet::cap(const Point& alpha) const { return meet(alpha, impl_->conductor); }

std::optional<Point> ValueSet::fiber_witness(const Point& alpha, const IndexSet& j, bool strict) const
{
    if (j.ambient() != rank()) throw PreconditionError("fiber: index set dimension mismatch");
    if (j.empty()) throw PreconditionError("fiber: empty index set");
    auto idx = impl_->fibers.find(alpha, j.mask(), strict);
    if (!idx) return std::nullopt;
    return impl_->box.point(*idx);
}

bool operator==(const ValueSet& a, const ValueSet& b)
{
    if (a.impl_ == b.impl_) return true;
    if (!a.impl_ || !b.impl_) return false;
    return a.min() == b.min() && a.conductor() == b.conductor() && a.points() == b.points();
}

std::string to_string(const ValueSet& e)
{
    std::ostringstream os;
    os << "E(r=" << e.rank() << ", m=" << to_string(e.min()) << ", c=" << to_string(e.conductor()) << ", {";
    bool first = true;
    for (const Point& p : e.points()) {
        if (!first) os << ' ';
        os << to_string(p);
        first = false;
    }
    os << "})";
    return os.str();
}

bool ValidationReport::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck* ValidationReport::find(std::string_view axiom) const
{
    for (const AxiomCheck& c : checks) {
        if (c.axiom == axiom) return &c;
    }
    return nullptr;
}

std::string ValidationReport::to_text() const
{
    std::ostringstream os;
    for (const AxiomCheck& c : checks) {
        os << (c.passed ? "[ok]   " : "[FAIL] ") << c.axiom;
        if (!c.detail.empty()) os << ": " << c.detail;
        os << '\n';
    }
    return os.str();
}

namespace {

std::string first_failure(const ValidationReport& report)
{
    for (const AxiomCheck& c : report.checks) {
        if (!c.passed) return "value set violates " + c.axiom + ": " + c.detail;
    }
    return "value set invalid";
}

// Lifts a box witness of the strict fiber F_Z(E, x) to an actual element of
// the infinite set: coordinates off Z must exceed x even when capped.
Point lift_witness(const Point& box_witness, const Point& x, std::uint32_t z)
{
    Point u = box_witness;
    for (std::size_t k = 0; k < x.dim(); ++k) {
        if ((z >> k) & 1U) {
            u[k] = x[k];
        } else {
            u[k] = std::max(box_witness[k], x[k] + 1);
        }
    }
    return u;
}

AxiomCheck check_minimum(const ValueSet& e)
{
    AxiomCheck check{"minimum", true, {}, {}, {}};
    if (!e.contains_index(0)) {
        check.passed = false;
        check.detail = "componentwise minimum " + to_string(e.min()) +
                       " is not a member; the min-closure of the points would insert it";
        check.witness = {e.min()};
    }
    return check;
}

AxiomCheck check_property_a(const ValueSet& e)
{
    AxiomCheck check{"A", true, {}, {}, {}};
    const Box& box = e.box();
    const std::size_t r = e.rank();
    const std::uint32_t full = IndexSet::full_mask(r);
    std::size_t violations = 0;
    std::vector<std::pair<std::uint32_t, std::size_t>> patterns;
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        if (e.contains_index(idx)) continue;
        const Point x = box.point(idx);
        patterns.clear();
        for (std::uint32_t z = 1; z < full; ++z) {
            if (auto w = e.fibers().find(x, z, true)) patterns.emplace_back(z, *w);
        }
        bool hit = false;
        for (std::size_t a = 0; a < patterns.size() && !hit; ++a) {
            for (std::size_t b = a + 1; b < patterns.size() && !hit; ++b) {
                if ((patterns[a].first | patterns[b].first) != full) continue;
                hit = true;
                if (violations == 0) {
                    const Point u = lift_witness(box.point(patterns[a].second), x, patterns[a].first);
                    const Point v = lift_witness(box.point(patterns[b].second), x, patterns[b].first);
                    check.witness = {u, v};
                    check.detail = "min(" + to_string(u) + ", " + to_string(v) + ") = " + to_string(x) +
                                   " is missing";
                }
            }
        }
        if (hit) ++violations;
    }
    if (violations > 0) {
        check.passed = false;
        check.detail += " (" + std::to_string(violations) + " missing meet point(s))";
    }
    return check;
}

struct BViolation {
    Point t;
    std::size_t i;
    std::uint32_t za, zb;
    std::size_t wa, wb;
};

// Pairs alpha != beta with alpha_i = beta_i and meet t have zero patterns
// {k : alpha_k = t_k} that both contain i and cover I. The admissible witness
// equals t where they differ, exceeds t_i at i and is at least t elsewhere.
template <typename F>
void for_each_b_violation(const ValueSet& e, F&& visit)
{
    const Box& box = e.box();
    const std::size_t r = e.rank();
    const std::uint32_t full = IndexSet::full_mask(r);
    std::vector<std::pair<std::uint32_t, std::size_t>> patterns;
    std::vector<std::uint32_t> seen;
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        const Point t = box.point(idx);
        for (std::size_t i = 0; i < r; ++i) {
            const std::uint32_t bit = 1U << i;
            patterns.clear();
            for (std::uint32_t z = bit; z <= full; z = (z + 1) | bit) {
                if (auto w = e.fibers().find(t, z, true)) patterns.emplace_back(z, *w);
                if (z == full) break;
            }
            seen.clear();
            for (std::size_t a = 0; a < patterns.size(); ++a) {
                for (std::size_t b = a + 1; b < patterns.size(); ++b) {
                    const std::uint32_t za = patterns[a].first;
                    const std::uint32_t zb = patterns[b].first;
                    if ((za | zb) != full) continue;
                    const std::uint32_t differ = full & ~(za & zb);
                    if (std::find(seen.begin(), seen.end(), differ) != seen.end()) continue;
                    seen.push_back(differ);
                    Point q = t;
                    q[i] += 1;
                    if (e.fibers().find(q, differ, false)) continue;
                    visit(BViolation{t, i, za, zb, patterns[a].second, patterns[b].second});
                }
            }
        }
    }
}

AxiomCheck check_property_b(const ValueSet& e)
{
    AxiomCheck check{"B", true, {}, {}, {}};
    const Box& box = e.box();
    std::size_t violations = 0;
    for_each_b_violation(e, [&](const BViolation& v) {
        if (violations++ > 0) return;
        const Point alpha = lift_witness(box.point(v.wa), v.t, v.za);
        const Point beta = lift_witness(box.point(v.wb), v.t, v.zb);
        check.witness = {alpha, beta};
        check.index = v.i;
        check.detail = "pair " + to_string(alpha) + ", " + to_string(beta) + " agree at branch " +
                       std::to_string(v.i + 1) + " but no admissible gamma exists in E";
    });
    if (violations > 0) {
        check.passed = false;
        check.detail += " (" + std::to_string(violations) + " violation(s))";
    }
    return check;
}

AxiomCheck check_property_c(const ValueSet& e)
{
    AxiomCheck check{"C", true, {}, {}, {}};
    const Point& c = e.conductor();
    if (!e.contains_index(e.box().size() - 1)) {
        check.passed = false;
        check.detail = "conductor " + to_string(c) + " is not a member";
        check.witness = {c};
        return check;
    }
    for (std::size_t i = 0; i < e.rank(); ++i) {
        if (c[i] == e.min()[i]) continue;
        Point lower = c;
        lower[i] -= 1;
        if (e.contains(lower)) {
            check.passed = false;
            check.detail = "conductor " + to_string(c) + " is not minimal: " + to_string(lower) + " + N^r lies in E";
            check.witness = {lower};
            check.index = i;
            return check;
        }
    }
    return check;
}

}  // namespace

ValidationError::ValidationError(ValidationReport report)
    : std::runtime_error(first_failure(report)), report_(std::move(report))
{
}

ValidationReport validate_axioms(const ValueSet& e)
{
    ValidationReport report;
    report.checks.push_back({"structure", true, "r=" + std::to_string(e.rank()) + ", " + std::to_string(e.size()) +
                                                    " box point(s)",
                             {}, {}});
    report.checks.push_back(check_minimum(e));
    report.checks.push_back(check_property_a(e));
    report.checks.push_back(check_property_b(e));
    return report;
}

ValidationReport validate(const ValueSet& e)
{
    ValidationReport report = validate_axioms(e);
    report.checks.push_back(check_property_c(e));
    return report;
}

ValueSet project(const ValueSet& e, const IndexSet& j)
{
    if (j.ambient() != e.rank()) throw PreconditionError("project: index set dimension mismatch");
    if (j.empty()) throw PreconditionError("project: empty index set");
    if (j.is_full()) return e;
    std::vector<Point> pts;
    pts.reserve(e.size());
    for (const Point& p : e.points()) pts.push_back(project(p, j));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return ValueSet::from_points(j.size(), pts, project(e.conductor(), j));
}

std::vector<Coord> gaps(const ValueSet& e, std::size_t i)
{
    if (i >= e.rank()) throw PreconditionError("gaps: branch index out of range");
    const ValueSet ei = project(e, IndexSet::single(e.rank(), i));
    std::vector<Coord> out;
    for (Coord n = ei.min()[0] + 1; n < ei.conductor()[0]; ++n) {
        if (!ei.contains(Point{n})) out.push_back(n);
    }
    return out;
}

Point permute(const Point& p, std::span<const std::size_t> perm)
{
    if (perm.size() != p.dim()) throw PreconditionError("permute: size mismatch");
    Point q = p;
    for (std::size_t k = 0; k < perm.size(); ++k) q[k] = p[perm[k]];
    return q;
}

ValueSet permute(const ValueSet& e, std::span<const std::size_t> perm)
{
    std::vector<std::size_t> check(perm.begin(), perm.end());
    std::sort(check.begin(), check.end());
    std::vector<std::size_t> expect(e.rank());
    std::iota(expect.begin(), expect.end(), std::size_t{0});
    if (check != expect) throw PreconditionError("permute: not a permutation");
    std::vector<Point> pts;
    pts.reserve(e.size());
    for (const Point& p : e.points()) pts.push_back(permute(p, perm));
    return ValueSet::unchecked(permute(e.min(), perm), permute(e.conductor(), perm), pts);
}

std::vector<Point> missing_b_witnesses(const ValueSet& e)
{
    std::vector<Point> out;
    for_each_b_violation(e, [&](const BViolation& v) {
        Point w = v.t;
        w[v.i] += 1;
        out.push_back(e.box().clamp(std::move(w)));
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_subset(const ValueSet& d, const ValueSet& e)
{
    if (d.rank() != e.rank()) throw PreconditionError("subset: dimension mismatch");
    // Beyond join(c(D), c(E)) both memberships are constant along capped rays.
    const Box box(d.min(), join(d.conductor(), join(e.conductor(), d.min())));
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        const Point p = box.point(idx);
        if (d.contains(p) && !e.contains(p)) return false;
    }
    return true;
}

}  // namespace fracval
