#include "fracval/oracle.hpp"

#include <algorithm>

#include "fracval/errors.hpp"

namespace fracval {

namespace {

using Row = std::vector<Rational>;

std::optional<std::size_t> pivot_of(const Row& v)
{
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] != 0) return k;
    }
    return std::nullopt;
}

std::size_t resolve_margin(std::size_t r, std::size_t margin) { return margin ? margin : r + 2; }

Row flatten(const BranchVector& h, std::size_t t)
{
    Row v;
    v.reserve(h.rank() * t);
    for (const Series& s : h.components) {
        const Series u = s.retruncated(t);
        v.insert(v.end(), u.coeffs().begin(), u.coeffs().end());
    }
    return v;
}

// x * v, branch by branch, modulo t^T
Row multiply(const Row& v, const Row& x, std::size_t r, std::size_t t)
{
    Row out(r * t);
    for (std::size_t k = 0; k < r; ++k) {
        const std::size_t off = k * t;
        for (std::size_t i = 0; i < t; ++i) {
            if (x[off + i] == 0) continue;
            for (std::size_t j = 0; i + j < t; ++j) {
                if (v[off + j] != 0) out[off + i + j] += x[off + i] * v[off + j];
            }
        }
    }
    return out;
}

bool same_ring(const BranchIdeal& a, const BranchIdeal& b)
{
    if (a.r != b.r || a.ring_generators.size() != b.ring_generators.size()) return false;
    const std::size_t t = std::min(a.truncation, b.truncation);
    for (std::size_t g = 0; g < a.ring_generators.size(); ++g) {
        if (flatten(a.ring_generators[g], t) != flatten(b.ring_generators[g], t)) return false;
    }
    return true;
}

}  // namespace

void check_ideal(const BranchIdeal& ideal)
{
    if (ideal.r == 0) throw PreconditionError("ideal: r must be at least 1");
    if (ideal.truncation == 0) throw PreconditionError("ideal: truncation must be at least 1");
    const auto check_vec = [&](const BranchVector& h, const char* what) {
        if (h.rank() != ideal.r) throw PreconditionError(std::string(what) + " has the wrong number of branches");
        h.truncation();
    };
    for (const BranchVector& x : ideal.ring_generators) {
        check_vec(x, "ring generator");
        for (const Series& s : x.components) {
            if (s[0] != x.components.front()[0]) {
                throw PreconditionError("ring generator constant terms differ across branches");
            }
        }
    }
    if (ideal.module_generators.empty()) throw PreconditionError("ideal has no module generators");
    bool regular = false;
    for (const BranchVector& h : ideal.module_generators) {
        check_vec(h, "module generator");
        regular = regular || std::all_of(h.components.begin(), h.components.end(),
                                         [](const Series& s) { return s.order().has_value(); });
    }
    if (!regular) throw PreconditionError("no module generator is regular at the truncation");
}

void Echelon::reduce(Row& v) const
{
    if (v.size() != width_) throw PreconditionError("echelon: row width mismatch");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const std::size_t p = pivots_[i];
        if (v[p] == 0) continue;
        const Rational f = v[p];
        const Row& row = rows_[i];
        for (std::size_t k = p; k < width_; ++k) {
            if (row[k] != 0) v[k] -= f * row[k];
        }
    }
}

bool Echelon::insert(Row v)
{
    reduce(v);
    const auto p = pivot_of(v);
    if (!p) return false;
    const Rational lead = v[*p];
    for (std::size_t k = *p; k < width_; ++k) v[k] /= lead;
    const auto at = std::lower_bound(pivots_.begin(), pivots_.end(), *p) - pivots_.begin();
    pivots_.insert(pivots_.begin() + at, *p);
    rows_.insert(rows_.begin() + at, std::move(v));
    return true;
}

bool Echelon::contains(Row v) const
{
    reduce(v);
    return !pivot_of(v).has_value();
}

ModuleBasis module_basis(const BranchIdeal& ideal, std::size_t truncation)
{
    check_ideal(ideal);
    const std::size_t r = ideal.r;
    const std::size_t t = truncation;
    ModuleBasis out;
    out.r = r;
    out.truncation = t;
    out.basis = Echelon(r * t);

    std::vector<Row> xs;
    for (const BranchVector& x : ideal.ring_generators) {
        Row v = flatten(x, t);
        const Rational c = v[0];
        for (std::size_t k = 0; k < r; ++k) v[k * t] -= c;
        if (pivot_of(v)) xs.push_back(std::move(v));
    }

    std::vector<Row> frontier;
    for (const BranchVector& h : ideal.module_generators) {
        Row v = flatten(h, t);
        if (out.basis.insert(v)) frontier.push_back(std::move(v));
    }
    while (!frontier.empty()) {
        if (out.degrees >= t) {
            throw OracleError("module did not stabilize within degree " + std::to_string(out.degrees));
        }
        ++out.degrees;
        std::vector<Row> next;
        for (const Row& f : frontier) {
            for (const Row& x : xs) {
                Row p = multiply(f, x, r, t);
                if (out.basis.insert(p)) next.push_back(std::move(p));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

ModuleBasis module_basis(const BranchIdeal& ideal) { return module_basis(ideal, ideal.truncation); }

namespace {

// rows: echelon basis restricted to branches k..r-1
void fill_dims(const std::vector<Row>& rows, const std::vector<std::size_t>& pivots, std::size_t k, std::size_t r,
               std::size_t t, std::vector<std::int64_t>& out, std::size_t base, std::int64_t add)
{
    std::size_t stride = 1;
    for (std::size_t j = k + 1; j < r; ++j) stride *= t + 1;

    // walk a = T..0; S_a = rows with pivot >= a, a suffix of the pivot order
    std::size_t first = rows.size();
    Echelon proj(k + 1 < r ? (r - k - 1) * t : 0);
    for (std::size_t a = t + 1; a-- > 0;) {
        const std::size_t old_first = first;
        while (first > 0 && pivots[first - 1] >= a) --first;
        const auto in_s = static_cast<std::int64_t>(rows.size() - first);
        if (k + 1 == r) {
            out[base + a * stride] = add + in_s;
            continue;
        }
        for (std::size_t i = first; i < old_first; ++i) {
            proj.insert(Row(rows[i].begin() + static_cast<std::ptrdiff_t>(t), rows[i].end()));
        }
        const std::int64_t kernel = in_s - static_cast<std::int64_t>(proj.rank());
        fill_dims(proj.rows(), proj.pivots(), k + 1, r, t, out, base + a * stride, add + kernel);
    }
}

}  // namespace

std::vector<std::int64_t> dimension_table(const ModuleBasis& basis)
{
    const std::size_t r = basis.r;
    const std::size_t t = basis.truncation;
    std::size_t size = 1;
    for (std::size_t k = 0; k < r; ++k) size *= t + 1;
    std::vector<std::int64_t> out(size);
    fill_dims(basis.basis.rows(), basis.basis.pivots(), 0, r, t, out, 0, 0);
    return out;
}

namespace {

std::optional<ValueSet> attempt_value_set(const BranchIdeal& ideal, std::size_t t, std::size_t margin)
{
    const std::size_t r = ideal.r;
    const ModuleBasis basis = module_basis(ideal, t);
    const std::vector<std::int64_t> dims = dimension_table(basis);
    const Box box(Point::filled(r, 0), Point::filled(r, static_cast<Coord>(t)));

    std::optional<Point> conductor;
    std::vector<Point> members;
    for (std::size_t idx = 0; idx < box.size(); ++idx) {
        const Point a = box.point(idx);
        bool full_range = true;
        std::int64_t free = 0;
        for (std::size_t k = 0; k < r; ++k) {
            if (a[k] + static_cast<Coord>(margin) > static_cast<Coord>(t)) full_range = false;
            free += static_cast<std::int64_t>(t) - a[k];
        }
        if (full_range && dims[idx] == free) conductor = conductor ? meet(*conductor, a) : a;

        bool member = true;
        for (std::size_t k = 0; k < r && member; ++k) {
            if (a[k] >= static_cast<Coord>(t) || dims[idx] <= dims[idx + box.stride(k)]) member = false;
        }
        if (member) members.push_back(a);
    }
    if (!conductor || members.empty()) return std::nullopt;
    std::vector<Point> kept;
    for (const Point& p : members) {
        if (leq(p, *conductor)) kept.push_back(p);
    }
    return ValueSet::from_points(r, kept, *conductor);
}

std::optional<std::int64_t> attempt_colength(const BranchIdeal& big, const BranchIdeal& small, std::size_t t,
                                             std::size_t margin)
{
    const ModuleBasis b = module_basis(big, t);
    const ModuleBasis s = module_basis(small, t);
    for (const Row& row : s.basis.rows()) {
        if (!b.basis.contains(row)) throw OracleError("the smaller module is not contained in the larger one");
    }
    // the quotient is finite only once the smaller module holds t^(T-margin)
    for (std::size_t k = 0; k < small.r; ++k) {
        for (std::size_t j = t - margin; j < t; ++j) {
            Row v(small.r * t);
            v[k * t + j] = 1;
            if (!s.basis.contains(v)) return std::nullopt;
        }
    }
    return static_cast<std::int64_t>(b.basis.rank()) - static_cast<std::int64_t>(s.basis.rank());
}

template <typename T, typename Attempt>
T stable_search(std::size_t cap, std::size_t margin, std::size_t start, Attempt attempt)
{
    if (cap <= margin) throw OracleError("truncation cap " + std::to_string(cap) + " is not above the margin");
    std::size_t t = std::max(start, margin + 1);
    while (true) {
        bool last = false;
        if (t + margin >= cap) {
            t = cap - margin;
            last = true;
        }
        const std::optional<T> a = attempt(t);
        if (a) {
            const std::optional<T> b = attempt(t + margin);
            if (b && *a == *b) return *a;
        }
        if (last) {
            throw OracleError("no stable answer up to truncation " + std::to_string(cap));
        }
        t *= 2;
    }
}

}  // namespace

OracleResult value_set_from_ideal(const BranchIdeal& ideal, const OracleOptions& options)
{
    check_ideal(ideal);
    const std::size_t margin = resolve_margin(ideal.r, options.margin);
    std::size_t start = 2 * margin;
    if (options.gamma_hint) {
        if (options.gamma_hint->dim() != ideal.r) throw PreconditionError("gamma hint: dimension mismatch");
        Coord hi = 0;
        for (Coord c : options.gamma_hint->coords()) hi = std::max(hi, c);
        start = static_cast<std::size_t>(std::max<Coord>(hi, 0)) + margin;
    }
    std::size_t confirmed = 0;
    ValueSet set = stable_search<ValueSet>(ideal.truncation, margin, start, [&](std::size_t t) {
        confirmed = t;
        return attempt_value_set(ideal, t, margin);
    });
    return {set, confirmed};
}

std::int64_t colength_dim(const BranchIdeal& big, const BranchIdeal& small, std::size_t margin)
{
    check_ideal(big);
    check_ideal(small);
    if (!same_ring(big, small)) throw PreconditionError("colength_dim: modules over different rings");
    margin = resolve_margin(big.r, margin);
    const std::size_t cap = std::min(big.truncation, small.truncation);
    return stable_search<std::int64_t>(cap, margin, 2 * margin,
                                       [&](std::size_t t) { return attempt_colength(big, small, t, margin); });
}

BranchIdeal gamma_submodule(const BranchIdeal& ideal, const Point& gamma)
{
    check_ideal(ideal);
    if (gamma.dim() != ideal.r) throw PreconditionError("gamma: dimension mismatch");
    const std::size_t t = ideal.truncation;
    BranchIdeal out;
    out.r = ideal.r;
    out.truncation = t;
    out.ring_generators = ideal.ring_generators;

    BranchVector regular;
    for (std::size_t k = 0; k < ideal.r; ++k) {
        if (gamma[k] < 0) throw PreconditionError("gamma must be nonnegative");
        regular.components.push_back(Series::monomial(static_cast<std::size_t>(gamma[k]), t));
    }
    out.module_generators.push_back(regular);
    for (std::size_t k = 0; k < ideal.r; ++k) {
        for (auto j = static_cast<std::size_t>(gamma[k]); j < t; ++j) {
            BranchVector h;
            for (std::size_t b = 0; b < ideal.r; ++b) h.components.push_back(b == k ? Series::monomial(j, t) : Series(t));
            out.module_generators.push_back(std::move(h));
        }
    }
    return out;
}

BranchIdeal normalization_module(const BranchIdeal& ideal)
{
    return gamma_submodule(ideal, Point::filled(ideal.r, 0));
}

}  // namespace fracval
