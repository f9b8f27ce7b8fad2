#include "fracval/colength.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "fracval/errors.hpp"
#include "fracval/maximals.hpp"
#include "fracval/rng.hpp"

namespace fracval {

namespace {

void require_gamma(const ValueSet& e, const Point& gamma)
{
    if (gamma.dim() != e.rank()) throw PreconditionError("gamma: dimension mismatch");
    if (!leq(e.conductor(), gamma)) throw PreconditionError("gamma below conductor");
}

std::int64_t span(const ValueSet& e, const Point& gamma, std::size_t i) { return gamma[i] - e.min()[i]; }

std::int64_t count(std::size_t n) { return static_cast<std::int64_t>(n); }

std::string idx_name(std::string_view prefix, std::initializer_list<std::size_t> idx)
{
    std::string s(prefix);
    for (std::size_t i : idx) s += std::to_string(i + 1);
    return s;
}

std::vector<Coord> last_coords(const std::vector<Point>& pts)
{
    std::set<Coord> out;
    for (const Point& p : pts) out.insert(p[p.dim() - 1]);
    return {out.begin(), out.end()};
}

ColengthReport make_report(Method method, const Point& gamma)
{
    ColengthReport rep;
    rep.method = method;
    rep.gamma = gamma;
    return rep;
}

void finish(ColengthReport& rep)
{
    rep.value = rep.breakdown_sum();
    if (rep.value < 0) throw InvariantViolation(std::string("negative colength from ") + to_string(rep.method));
}

}  // namespace

const char* to_string(Method m)
{
    switch (m) {
        case Method::Chain: return "chain";
        case Method::Saturated: return "saturated";
        case Method::ClosedR2: return "closed_r2";
        case Method::Recursive: return "recursive";
        case Method::ClosedR3: return "closed_r3";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view name)
{
    for (Method m : {Method::Chain, Method::Saturated, Method::ClosedR2, Method::Recursive, Method::ClosedR3}) {
        if (name == to_string(m)) return m;
    }
    return std::nullopt;
}

std::int64_t ColengthReport::breakdown_sum() const
{
    std::int64_t s = 0;
    for (const Term& t : breakdown) s += t.value;
    return s;
}

Chain axis_chain(const Point& from, const Point& to)
{
    if (!leq(from, to)) throw PreconditionError("chain endpoints are not ordered");
    Chain c;
    Point p = from;
    c.nodes.push_back(p);
    for (std::size_t i = 0; i < p.dim(); ++i) {
        while (p[i] < to[i]) {
            ++p[i];
            c.nodes.push_back(p);
        }
    }
    return c;
}

Chain random_chain(const Point& from, const Point& to, std::uint64_t seed)
{
    if (!leq(from, to)) throw PreconditionError("chain endpoints are not ordered");
    std::vector<std::size_t> dirs;
    for (std::size_t i = 0; i < from.dim(); ++i) dirs.insert(dirs.end(), static_cast<std::size_t>(to[i] - from[i]), i);
    Rng rng(seed);
    rng.shuffle(dirs);
    Chain c;
    Point p = from;
    c.nodes.push_back(p);
    for (std::size_t i : dirs) {
        ++p[i];
        c.nodes.push_back(p);
    }
    return c;
}

void check_chain(const Chain& chain, const Point& from, const Point& to)
{
    if (chain.nodes.empty() || chain.nodes.front() != from || chain.nodes.back() != to) {
        throw PreconditionError("chain must run from " + to_string(from) + " to " + to_string(to));
    }
    for (std::size_t j = 1; j < chain.nodes.size(); ++j) {
        const Point& a = chain.nodes[j - 1];
        const Point& b = chain.nodes[j];
        if (a.dim() != b.dim()) throw PreconditionError("chain: dimension mismatch");
        Coord diff = 0;
        bool unit = true;
        for (std::size_t k = 0; k < a.dim(); ++k) {
            const Coord d = b[k] - a[k];
            if (d < 0 || d > 1) unit = false;
            diff += d;
        }
        if (!unit || diff != 1) {
            throw PreconditionError("chain step " + to_string(a) + " -> " + to_string(b) + " is not a unit step");
        }
    }
}

int step(const ValueSet& e, const Point& a, std::size_t i)
{
    if (a.dim() != e.rank()) throw PreconditionError("step: dimension mismatch");
    if (i >= e.rank()) throw PreconditionError("step: index out of range");
    return e.fibers().find(a, 1U << i, false).has_value() ? 1 : 0;
}

ColengthReport colength_chain(const ValueSet& e, const Point& gamma, const std::optional<Chain>& chain)
{
    require_gamma(e, gamma);
    const Chain c = chain ? *chain : axis_chain(e.min(), gamma);
    if (chain) check_chain(c, e.min(), gamma);

    const std::size_t r = e.rank();
    std::vector<Term> legs(r);
    for (std::size_t i = 0; i < r; ++i) legs[i].name = idx_name("L", {i});
    for (std::size_t j = 1; j < c.nodes.size(); ++j) {
        const Point& a = c.nodes[j - 1];
        std::size_t dir = 0;
        while (c.nodes[j][dir] == a[dir]) ++dir;
        if (step(e, a, dir)) {
            legs[dir].value += 1;
        } else {
            legs[dir].points.push_back(a);
        }
    }
    ColengthReport rep = make_report(Method::Chain, gamma);
    rep.breakdown = std::move(legs);
    rep.chain = c.nodes;
    finish(rep);
    return rep;
}

ColengthReport colength_saturated(const ValueSet& e, const Point& gamma, std::optional<std::uint64_t> tie_seed)
{
    require_gamma(e, gamma);
    if (!e.contains(gamma)) throw PreconditionError("gamma is not in E");
    const std::size_t r = e.rank();
    const Box region(e.min(), gamma);
    std::vector<std::uint8_t> mem(region.size());
    for (std::size_t idx = 0; idx < region.size(); ++idx) mem[idx] = e.contains(region.point(idx)) ? 1 : 0;

    std::optional<Rng> rng;
    if (tie_seed) rng.emplace(*tie_seed);

    Point p = e.min();
    std::vector<Point> nodes{p};
    std::vector<std::uint8_t> below;
    std::vector<std::size_t> minimal;
    while (p != gamma) {
        const Box sub(p, gamma);
        below.assign(sub.size(), 0);
        minimal.clear();
        const std::size_t base = region.index(p);
        for (std::size_t idx = 1; idx < sub.size(); ++idx) {
            std::size_t ridx = base;
            bool under = false;
            for (std::size_t k = 0; k < r; ++k) {
                const auto off = static_cast<std::size_t>(sub.coord(idx, k) - p[k]);
                ridx += off * region.stride(k);
            }
            for (std::size_t k = 0; k < r && !under; ++k) {
                if (sub.coord(idx, k) == p[k]) continue;
                const std::size_t prev = idx - sub.stride(k);
                if (below[prev] || (prev != 0 && mem[ridx - region.stride(k)])) under = true;
            }
            below[idx] = under ? 1 : 0;
            if (!under && mem[ridx]) minimal.push_back(idx);
        }
        if (minimal.empty()) throw InvariantViolation("saturated chain stalled at " + to_string(p));
        std::size_t pick = minimal.front();
        if (rng) {
            pick = minimal[static_cast<std::size_t>(rng->below(minimal.size()))];
        } else {
            // colex least: move along the early axes first, as the axis chain does
            const auto colex = [&](std::size_t a, std::size_t b) {
                for (std::size_t k = r; k-- > 0;) {
                    if (sub.coord(a, k) != sub.coord(b, k)) return sub.coord(a, k) < sub.coord(b, k);
                }
                return false;
            };
            pick = *std::min_element(minimal.begin(), minimal.end(), colex);
        }
        p = sub.point(pick);
        nodes.push_back(p);
    }

    ColengthReport rep = make_report(Method::Saturated, gamma);
    rep.breakdown.push_back({"links", count(nodes.size() - 1), {}, {}});
    rep.chain = std::move(nodes);
    finish(rep);
    return rep;
}

ColengthReport colength_closed_r2(const ValueSet& e, const Point& gamma)
{
    if (e.rank() != 2) throw PreconditionError("closed_r2 requires r = 2");
    require_gamma(e, gamma);
    ColengthReport rep = make_report(Method::ClosedR2, gamma);
    for (std::size_t i = 0; i < 2; ++i) rep.breakdown.push_back({idx_name("span", {i}), span(e, gamma, i), {}, {}});
    for (std::size_t i = 0; i < 2; ++i) {
        const auto g = gaps(e, i);
        rep.breakdown.push_back({idx_name("gaps", {i}), -count(g.size()), g, {}});
    }
    const auto m = maximal_report(e).maximal;
    rep.breakdown.push_back({"M", -count(m.size()), {}, m});
    finish(rep);
    return rep;
}

ColengthReport colength_recursive(const ValueSet& e, const Point& gamma)
{
    require_gamma(e, gamma);
    const std::size_t r = e.rank();
    ColengthReport rep = make_report(Method::Recursive, gamma);

    if (r == 1) {
        std::vector<Coord> members;
        for (Coord x = e.min()[0]; x < gamma[0]; ++x) {
            if (e.contains(Point{x})) members.push_back(x);
        }
        rep.breakdown.push_back({"base", count(members.size()), members, {}});
        finish(rep);
        return rep;
    }

    const std::size_t last = r - 1;
    const std::uint32_t full = IndexSet::full_mask(r);
    const IndexSet head(r, full & ~(1U << last));
    ColengthReport child = colength_recursive(project(e, head), project(gamma, head));

    const auto g = gaps(e, last);
    const std::set<Coord> gap_set(g.begin(), g.end());
    std::set<Coord> uni;
    std::set<Coord> uni_m;
    for (std::uint32_t j = 1; j <= full; ++j) {
        if (!((j >> last) & 1U) || j == (1U << last)) continue;
        const IndexSet js(r, j);
        const MaximalReport mr = maximal_report(project(e, js));
        const auto levels = last_coords(mr.relative);
        for (Coord c : levels) {
            if (gap_set.count(c)) {
                throw InvariantViolation("gap " + std::to_string(c) + " of the last branch is also a level of RM(E_" +
                                         to_string(js) + ")");
            }
        }
        uni.insert(levels.begin(), levels.end());
        const auto m_levels = last_coords(mr.maximal);
        uni_m.insert(m_levels.begin(), m_levels.end());
        rep.notes.push_back({"RM(E_" + to_string(js) + ")", count(mr.relative.size()), levels, mr.relative});
    }
    rep.notes.push_back({"union with M", count(uni_m.size()), {uni_m.begin(), uni_m.end()}, {}});
    rep.notes.push_back({"union M differs", uni_m == uni ? 0 : 1, {}, {}});

    rep.breakdown.push_back({"ell(E_" + to_string(head) + ")", child.value, {}, {}});
    rep.breakdown.push_back({idx_name("span", {last}), span(e, gamma, last), {}, {}});
    rep.breakdown.push_back({idx_name("gaps", {last}), -count(g.size()), g, {}});
    rep.breakdown.push_back({"union", -count(uni.size()), {uni.begin(), uni.end()}, {}});
    rep.children.push_back(std::move(child));
    finish(rep);
    return rep;
}

ColengthReport colength_closed_r3(const ValueSet& e, const Point& gamma)
{
    if (e.rank() != 3) throw PreconditionError("closed_r3 requires r = 3");
    require_gamma(e, gamma);
    ColengthReport rep = make_report(Method::ClosedR3, gamma);
    for (std::size_t i = 0; i < 3; ++i) rep.breakdown.push_back({idx_name("span", {i}), span(e, gamma, i), {}, {}});
    for (std::size_t i = 0; i < 3; ++i) {
        const auto g = gaps(e, i);
        rep.breakdown.push_back({idx_name("gaps", {i}), -count(g.size()), g, {}});
    }
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
            const auto m = maximal_report(project(e, IndexSet(3, {i, j}))).maximal;
            rep.breakdown.push_back({idx_name("M", {i, j}), -count(m.size()), {}, m});
        }
    }
    const MaximalReport mr = maximal_report(e);
    rep.breakdown.push_back({"RM", -count(mr.relative.size()), {}, mr.relative});
    rep.breakdown.push_back({"AM", count(mr.absolute.size()), {}, mr.absolute});
    finish(rep);
    return rep;
}

ColengthReport colength(const ValueSet& e, const Point& gamma, Method method)
{
    switch (method) {
        case Method::Chain: return colength_chain(e, gamma);
        case Method::Saturated: return colength_saturated(e, gamma);
        case Method::ClosedR2: return colength_closed_r2(e, gamma);
        case Method::Recursive: return colength_recursive(e, gamma);
        case Method::ClosedR3: return colength_closed_r3(e, gamma);
    }
    throw PreconditionError("unknown method");
}

Method best_method(std::size_t r)
{
    if (r == 2) return Method::ClosedR2;
    if (r == 3) return Method::ClosedR3;
    return Method::Recursive;
}

std::vector<Method> applicable_methods(std::size_t r)
{
    std::vector<Method> out{Method::Chain, Method::Saturated, Method::Recursive};
    if (r == 2) out.push_back(Method::ClosedR2);
    if (r == 3) out.push_back(Method::ClosedR3);
    return out;
}

namespace {

struct R3Terms {
    Point min;
    std::array<std::int64_t, 3> gaps{};
    std::array<std::int64_t, 3> m_pairs{};  // 12, 13, 23
    std::int64_t rm = 0;
    std::int64_t am = 0;
};

R3Terms r3_terms(const ValueSet& e)
{
    R3Terms t;
    t.min = e.min();
    for (std::size_t i = 0; i < 3; ++i) t.gaps[i] = count(gaps(e, i).size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
            t.m_pairs[k++] = count(maximal_report(project(e, IndexSet(3, {i, j}))).maximal.size());
        }
    }
    const MaximalReport mr = maximal_report(e);
    t.rm = count(mr.relative.size());
    t.am = count(mr.absolute.size());
    return t;
}

}  // namespace

DistanceReport distance(const ValueSet& e, const ValueSet& d, const std::optional<Point>& gamma)
{
    if (e.rank() != d.rank()) throw PreconditionError("distance: dimension mismatch");
    if (!is_subset(d, e)) throw PreconditionError("D is not contained in E");
    const std::size_t r = e.rank();

    DistanceReport rep;
    rep.gamma = gamma ? *gamma : join(e.conductor(), d.conductor());
    if (rep.gamma.dim() != r) throw PreconditionError("gamma: dimension mismatch");
    if (!leq(e.conductor(), rep.gamma) || !leq(d.conductor(), rep.gamma)) {
        throw PreconditionError("gamma below conductor");
    }
    rep.method = best_method(r);
    rep.ell_big = colength(e, rep.gamma, rep.method).value;
    rep.ell_small = colength(d, rep.gamma, rep.method).value;
    // both quotients share the submodule cut out by gamma
    rep.value = rep.ell_big - rep.ell_small;
    if (rep.value < 0) throw InvariantViolation("negative distance");

    if (r == 1) {
        std::int64_t n = 0;
        for (Coord x = e.min()[0]; x < rep.gamma[0]; ++x) {
            const Point p{x};
            if (e.contains(p) && !d.contains(p)) ++n;
        }
        rep.direct_count = n;
        if (n != rep.value) throw InvariantViolation("r = 1 distance disagrees with #(E \\ D)");
    }
    if (r == 3) {
        const R3Terms te = r3_terms(e);
        const R3Terms td = r3_terms(d);
        for (std::size_t i = 0; i < 3; ++i) rep.expansion.push_back({idx_name("min", {i}), td.min[i] - te.min[i], {}, {}});
        for (std::size_t i = 0; i < 3; ++i) rep.expansion.push_back({idx_name("gaps", {i}), td.gaps[i] - te.gaps[i], {}, {}});
        const char* pair_names[] = {"M12", "M13", "M23"};
        for (std::size_t k = 0; k < 3; ++k) rep.expansion.push_back({pair_names[k], td.m_pairs[k] - te.m_pairs[k], {}, {}});
        rep.expansion.push_back({"RM", td.rm - te.rm, {}, {}});
        rep.expansion.push_back({"AM", te.am - td.am, {}, {}});
        std::int64_t s = 0;
        for (const Term& t : rep.expansion) s += t.value;
        if (s != rep.value) throw InvariantViolation("r = 3 expansion disagrees with the colength difference");
    }
    return rep;
}

const char* to_string(EtaCase c)
{
    switch (c) {
        case EtaCase::I: return "(i)";
        case EtaCase::II: return "(ii)";
        case EtaCase::III: return "(iii)";
        case EtaCase::IV: return "(iv)";
        case EtaCase::V: return "(v)";
        case EtaCase::None: return "-";
    }
    return "?";
}

bool EtaAudit::levels_ok() const
{
    return std::all_of(levels.begin(), levels.end(), [](const EtaLevel& l) { return l.passed; });
}

EtaAudit eta_audit(const ValueSet& e)
{
    if (e.rank() != 3) throw PreconditionError("eta audit requires r = 3");
    EtaAudit audit;
    const MaximalReport mr = maximal_report(e);
    const auto m13 = maximal_report(project(e, IndexSet(3, {0, 2}))).maximal;
    const auto m23 = maximal_report(project(e, IndexSet(3, {1, 2}))).maximal;
    const auto g3 = gaps(e, 2);
    audit.gaps3 = g3.size();
    audit.m13 = m13.size();
    audit.m23 = m23.size();
    audit.rm = mr.relative.size();
    audit.am = mr.absolute.size();

    const auto l13 = last_coords(m13);
    const auto l23 = last_coords(m23);
    std::set<Coord> all(l13.begin(), l13.end());
    all.insert(l23.begin(), l23.end());
    for (const auto& [level, counts] : mr.by_level) all.insert(level);

    const auto has = [](const std::vector<Coord>& v, Coord c) { return std::binary_search(v.begin(), v.end(), c); };
    for (Coord level : all) {
        EtaLevel l;
        l.level = level;
        l.in_m13 = has(l13, level);
        l.in_m23 = has(l23, level);
        if (auto it = mr.by_level.find(level); it != mr.by_level.end()) {
            l.s = it->second.rm;
            l.am = it->second.am;
        }
        l.in_rm = l.s > 0;
        const auto s = count(l.s);
        if (l.in_m13 && !l.in_m23 && l.in_rm) {
            l.tag = EtaCase::I;
            l.predicted_am = s;
        } else if (l.in_m23 && !l.in_m13 && l.in_rm) {
            l.tag = EtaCase::II;
            l.predicted_am = s;
        } else if (l.in_m13 && l.in_m23 && !l.in_rm) {
            l.tag = EtaCase::III;
            l.predicted_am = 1;
        } else if (l.in_m13 && l.in_m23 && l.in_rm) {
            l.tag = EtaCase::IV;
            l.predicted_am = s + 1;
        } else if (l.in_rm) {
            l.tag = EtaCase::V;
            l.predicted_am = s - 1;
        } else {
            l.predicted_am = 0;
        }
        l.passed = count(l.am) == l.predicted_am;
        const std::int64_t mult = (l.in_m13 ? 1 : 0) + (l.in_m23 ? 1 : 0) + s;
        if (mult > 0) audit.eta += mult - 1;
        audit.levels.push_back(l);
    }

    const Point& c = e.conductor();
    for (Coord a = e.min()[2]; a < c[2]; ++a) {
        if (step(e, Point{c[0], c[1], a}, 2) == 0) ++audit.l3_prime_direct;
    }
    audit.l3_prime_formula = count(audit.gaps3 + audit.m13 + audit.m23 + audit.rm) - audit.eta;
    return audit;
}

}  // namespace fracval
