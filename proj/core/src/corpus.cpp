#include "fracval/corpus.hpp"

#include <algorithm>

#include "fracval/errors.hpp"
#include "fracval/maximals.hpp"
#include "fracval/rng.hpp"

namespace fracval {

namespace {

constexpr int kRetries = 16;

void require_spec(const GenSpec& spec)
{
    if (spec.r == 0 || spec.r > 8) throw PreconditionError("spec: r must lie in 1..8");
    if (spec.box_bound < 1) throw PreconditionError("spec: box bound must be at least 1");
}

std::uint64_t retry_seed(std::uint64_t seed, int attempt)
{
    return attempt == 0 ? seed : mix_seed(seed ^ (0x5bd1e995ULL * static_cast<std::uint64_t>(attempt)));
}

// Members of a random numerical set, shifted, within [shift, conductor].
std::vector<Coord> numerical_factor(Rng& rng, Coord bound)
{
    const Coord c = rng.between(1, bound);
    const Coord shift = rng.chance(1, 3) ? rng.between(0, c - 1) : 0;
    const Coord base_c = c - shift;
    std::vector<Coord> out{shift};
    for (Coord x = 1; x + 1 < base_c; ++x) {
        if (rng.chance(1, 2)) out.push_back(shift + x);
    }
    if (base_c > 0 && out.back() != c) out.push_back(c);
    return out;
}

// x is a meet of members iff every closed single-branch fiber at x is nonempty.
std::vector<std::uint8_t> meet_closure(const Box& box, const std::vector<std::uint8_t>& member)
{
    const FiberIndex fib(box, member);
    std::vector<std::uint8_t> out(member.size(), 0);
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        if (member[idx]) {
            out[idx] = 1;
            continue;
        }
        const Point x = box.point(idx);
        bool all = true;
        for (std::size_t k = 0; k < box.dim() && all; ++k) all = fib.find(x, 1U << k, false).has_value();
        out[idx] = all ? 1 : 0;
    }
    return out;
}

std::vector<Point> members_of(const Box& box, const std::vector<std::uint8_t>& member)
{
    std::vector<Point> out;
    for (std::size_t idx = 0; idx < member.size(); ++idx) {
        if (member[idx]) out.push_back(box.point(idx));
    }
    return out;
}

std::optional<ValueSet> repair_attempt(std::size_t r, Coord bound, std::uint64_t seed)
{
    Rng rng(seed);
    Point gamma = Point::filled(r, 0);
    for (std::size_t k = 0; k < r; ++k) gamma[k] = rng.between(1, bound);
    const Box box(Point::filled(r, 0), gamma);
    std::vector<std::uint8_t> member(box.size(), 0);
    member[box.size() - 1] = 1;

    const auto samples = static_cast<std::size_t>(rng.between(2, 2 + static_cast<Coord>(r) * bound / 2));
    for (std::size_t s = 0; s < samples; ++s) {
        Point p = Point::filled(r, 0);
        for (std::size_t k = 0; k < r; ++k) p[k] = rng.between(0, gamma[k]);
        member[box.index(p)] = 1;
    }

    while (true) {
        member = meet_closure(box, member);
        const ValueSet raw = ValueSet::unchecked(box.lo(), gamma, members_of(box, member));
        const std::vector<Point> wit = missing_b_witnesses(raw);
        if (wit.empty()) break;
        for (const Point& w : wit) member[box.index(w)] = 1;
    }
    try {
        return ValueSet::from_points(r, members_of(box, member), gamma);
    } catch (const ValidationError&) {
        return std::nullopt;
    }
}

Coord max_coord(const Point& p)
{
    Coord hi = p[0];
    for (Coord c : p.coords()) hi = std::max(hi, c);
    return hi;
}

}  // namespace

const char* to_string(Flavor f)
{
    switch (f) {
        case Flavor::Product: return "product";
        case Flavor::Repair: return "repair";
        case Flavor::Series: return "series";
    }
    return "?";
}

std::optional<Flavor> parse_flavor(std::string_view name)
{
    for (Flavor f : {Flavor::Product, Flavor::Repair, Flavor::Series}) {
        if (name == to_string(f)) return f;
    }
    return std::nullopt;
}

std::uint64_t case_seed(std::uint64_t run_seed, std::uint64_t index) { return mix_seed(run_seed + mix_seed(index)); }

ValueSet gen_product(const GenSpec& spec)
{
    require_spec(spec);
    Rng rng(spec.seed);
    std::vector<std::vector<Coord>> factors;
    Point gamma = Point::filled(spec.r, 0);
    for (std::size_t k = 0; k < spec.r; ++k) {
        factors.push_back(numerical_factor(rng, spec.box_bound));
        gamma[k] = factors.back().back();
    }
    std::vector<Point> pts;
    std::vector<std::size_t> at(spec.r, 0);
    while (true) {
        Point p = Point::filled(spec.r, 0);
        for (std::size_t k = 0; k < spec.r; ++k) p[k] = factors[k][at[k]];
        pts.push_back(std::move(p));
        std::size_t k = spec.r;
        while (k-- > 0) {
            if (++at[k] < factors[k].size()) break;
            at[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1)) break;
    }
    return ValueSet::from_points(spec.r, pts, gamma);
}

ValueSet gen_repair(const GenSpec& spec)
{
    require_spec(spec);
    for (int attempt = 0; attempt < kRetries; ++attempt) {
        if (auto e = repair_attempt(spec.r, spec.box_bound, retry_seed(spec.seed, attempt))) return *e;
    }
    throw CorpusError("repair generator exhausted its retries for seed " + std::to_string(spec.seed));
}

BranchIdeal random_ideal(const GenSpec& spec, std::size_t truncation)
{
    require_spec(spec);
    Rng rng(spec.seed);
    const std::size_t r = spec.r;
    const auto max_order = static_cast<std::size_t>(std::clamp<Coord>(spec.box_bound / 3, 1, 3));
    const auto series = [&](std::size_t order, Coord constant) {
        std::vector<Rational> c(order + 3);
        c[0] = constant;
        c[order] = rng.chance(1, 2) ? 1 : rng.between(-3, 3) | 1;
        for (std::size_t j = order + 1; j < c.size(); ++j) c[j] = rng.between(-2, 2);
        return Series(std::move(c), truncation);
    };

    BranchIdeal ideal;
    ideal.r = r;
    ideal.truncation = truncation;
    const auto ring_count = r + 1 + static_cast<std::size_t>(rng.below(2));
    for (std::size_t g = 0; g < ring_count; ++g) {
        const Coord constant = rng.between(-1, 1);
        BranchVector x;
        for (std::size_t k = 0; k < r; ++k) {
            x.components.push_back(series(1 + static_cast<std::size_t>(rng.below(max_order)), constant));
        }
        ideal.ring_generators.push_back(std::move(x));
    }
    const auto module_count = 1 + static_cast<std::size_t>(rng.below(2));
    for (std::size_t g = 0; g < module_count; ++g) {
        BranchVector h;
        for (std::size_t k = 0; k < r; ++k) {
            h.components.push_back(series(static_cast<std::size_t>(rng.below(max_order)), 0));
        }
        ideal.module_generators.push_back(std::move(h));
    }
    return ideal;
}

ValueSet gen_series(const GenSpec& spec)
{
    require_spec(spec);
    for (int attempt = 0; attempt < kRetries; ++attempt) {
        GenSpec sub = spec;
        sub.seed = retry_seed(spec.seed, attempt);
        try {
            ValueSet e = value_set_from_ideal(random_ideal(sub)).set;
            if (max_coord(e.conductor()) <= spec.box_bound || attempt + 1 == kRetries) return e;
        } catch (const OracleError&) {
        } catch (const ValidationError&) {
        }
    }
    throw CorpusError("series generator exhausted its retries for seed " + std::to_string(spec.seed));
}

ValueSet generate(const GenSpec& spec)
{
    switch (spec.flavor) {
        case Flavor::Product: return gen_product(spec);
        case Flavor::Repair: return gen_repair(spec);
        case Flavor::Series: return gen_series(spec);
    }
    throw PreconditionError("unknown flavor");
}

ValueSet shrink(const ValueSet& e, const std::function<bool(const ValueSet&)>& holds)
{
    if (holds(e)) return e;
    const auto attempt = [&](std::span<const Point> pts, const Point& gamma) -> std::optional<ValueSet> {
        try {
            ValueSet c = ValueSet::from_points(e.rank(), pts, gamma);
            if (!holds(c)) return c;
        } catch (const ValidationError&) {
        } catch (const PreconditionError&) {
        }
        return std::nullopt;
    };

    ValueSet cur = e;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < cur.rank() && !changed; ++i) {
            Point gamma = cur.conductor();
            if (gamma[i] == cur.min()[i]) continue;
            gamma[i] -= 1;
            std::vector<Point> pts;
            for (const Point& p : cur.points()) pts.push_back(meet(p, gamma));
            if (auto c = attempt(pts, gamma)) {
                cur = *c;
                changed = true;
            }
        }
        const std::vector<Point> pts = cur.points();
        for (std::size_t skip = 0; skip < pts.size() && !changed; ++skip) {
            if (pts[skip] == cur.conductor() || pts.size() < 2) continue;
            std::vector<Point> rest;
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (j != skip) rest.push_back(pts[j]);
            }
            if (auto c = attempt(rest, cur.conductor())) {
                cur = *c;
                changed = true;
            }
        }
    }
    return cur;
}

CoverageReport repair_coverage(std::uint64_t run_seed, std::size_t count, Coord box_bound, Coord max_bound)
{
    CoverageReport rep;
    rep.box_bound = box_bound;
    while (true) {
        rep.sets = 0;
        rep.multi_rm_sets = 0;
        rep.multi_am_sets = 0;
        for (std::size_t i = 0; i < count; ++i) {
            const ValueSet e = gen_repair({case_seed(run_seed, i), 3, rep.box_bound, Flavor::Repair});
            const MaximalReport mr = maximal_report(e);
            bool rm2 = false;
            bool am2 = false;
            for (const auto& [level, c] : mr.by_level) {
                rm2 = rm2 || c.rm >= 2;
                am2 = am2 || c.am >= 2;
            }
            ++rep.sets;
            rep.multi_rm_sets += rm2 ? 1 : 0;
            rep.multi_am_sets += am2 ? 1 : 0;
        }
        if (rep.met() || rep.box_bound >= max_bound) break;
        rep.widened = true;
        rep.box_bound = std::min(max_bound, rep.box_bound + 2);
    }
    if (rep.widened) rep.note = "box bound widened to " + std::to_string(rep.box_bound);
    if (!rep.met()) rep.note += (rep.note.empty() ? "" : "; ") + std::string("coverage targets not met");
    return rep;
}

}  // namespace fracval
