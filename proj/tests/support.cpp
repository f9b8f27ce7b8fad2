#include "support.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "fracval/series.hpp"

namespace fxt {

using fracval::BranchIdeal;
using fracval::BranchVector;
using fracval::Series;
using V = std::vector<std::int64_t>;

std::vector<std::int64_t> coords(const Point& p) { return {p.begin(), p.end()}; }

namespace {

ValueSet build(std::size_t r, const std::vector<Point>& pts, const Point& gamma)
{
    return ValueSet::from_points(r, pts, gamma);
}

}  // namespace

ValueSet e2l() { return build(2, {{0, 0}, {1, 1}}, {1, 1}); }

ValueSet e3a() { return build(3, {{0, 0, 0}, {1, 1, 1}}, {1, 1, 1}); }

ValueSet e3c()
{
    return build(3, {{0, 0, 0}, {1, 1, 1}, {1, 1, 2}, {1, 2, 1}, {2, 1, 1}, {2, 2, 2}}, {2, 2, 2});
}

ValueSet prod() { return build(2, {{0, 0}, {0, 2}, {2, 0}, {2, 2}}, {2, 2}); }

ValueSet sss()
{
    std::vector<Point> pts;
    for (std::int64_t a : {0, 2})
        for (std::int64_t b : {0, 2})
            for (std::int64_t c : {0, 2}) pts.push_back({a, b, c});
    return build(3, pts, {2, 2, 2});
}

ValueSet natural(std::size_t r) { return build(r, {Point::filled(r, 0)}, Point::filled(r, 0)); }

ValueSet numerical(std::vector<std::int64_t> below, std::int64_t conductor)
{
    std::vector<Point> pts;
    for (auto x : below) pts.push_back({x});
    pts.push_back({conductor});
    return build(1, pts, {conductor});
}

BranchVector vec(const std::vector<std::vector<std::int64_t>>& coeffs, std::size_t truncation)
{
    BranchVector h;
    for (const auto& c : coeffs) {
        std::vector<fracval::Rational> q(truncation);
        for (std::size_t k = 0; k < c.size() && k < truncation; ++k) q[k] = c[k];
        h.components.emplace_back(std::move(q), truncation);
    }
    return h;
}

BranchIdeal two_lines(std::size_t t)
{
    BranchIdeal i;
    i.r = 2;
    i.truncation = t;
    i.ring_generators = {vec({{0, 1}, {0}}, t), vec({{0}, {0, 1}}, t)};
    i.module_generators = {vec({{1}, {1}}, t)};
    return i;
}

BranchIdeal three_lines(std::size_t t)
{
    BranchIdeal i;
    i.r = 3;
    i.truncation = t;
    i.ring_generators = {vec({{0, 1}, {0}, {0, 1}}, t), vec({{0}, {0, 1}, {0, 1}}, t)};
    i.module_generators = {vec({{1}, {1}, {1}}, t)};
    return i;
}

std::string data_path(const std::string& name) { return std::string(FRACVAL_TEST_DATA) + "/" + name; }

// --- brute force ---------------------------------------------------------

Brute::Brute(const ValueSet& e) : r(e.rank()), m(e.min()), c(e.conductor())
{
    for (const Point& p : e.points()) box.insert(coords(p));
}

bool Brute::in(const V& a) const
{
    V capped(r);
    for (std::size_t k = 0; k < r; ++k) {
        if (a[k] < m[k]) return false;
        capped[k] = std::min(a[k], c[k]);
    }
    return box.count(capped) != 0;
}

std::vector<V> Brute::grid(const V& lo, const V& hi)
{
    std::vector<V> out;
    for (std::size_t k = 0; k < lo.size(); ++k) {
        if (hi[k] < lo[k]) return out;
    }
    V cur = lo;
    while (true) {
        out.push_back(cur);
        std::size_t k = 0;
        while (k < cur.size() && cur[k] == hi[k]) {
            cur[k] = lo[k];
            ++k;
        }
        if (k == cur.size()) break;
        ++cur[k];
    }
    return out;
}

std::vector<V> Brute::members_upto(const V& hi) const
{
    std::vector<V> out;
    for (const V& a : grid(coords(m), hi)) {
        if (in(a)) out.push_back(a);
    }
    return out;
}

bool Brute::fiber(const V& a, std::uint32_t mask, bool closed) const
{
    V lo(r), hi(r);
    for (std::size_t k = 0; k < r; ++k) {
        if (mask >> k & 1U) {
            lo[k] = hi[k] = a[k];
        } else {
            lo[k] = std::max(m[k], closed ? a[k] : a[k] + 1);
            hi[k] = std::max(lo[k], c[k]);
        }
    }
    for (const V& b : grid(lo, hi)) {
        if (in(b)) return true;
    }
    return false;
}

bool Brute::property_a() const
{
    for (const V& a : box) {
        for (const V& b : box) {
            V mn(r);
            for (std::size_t k = 0; k < r; ++k) mn[k] = std::min(a[k], b[k]);
            if (!in(mn)) return false;
        }
    }
    return true;
}

bool Brute::property_b() const
{
    V hi(r), top(r);
    for (std::size_t k = 0; k < r; ++k) {
        hi[k] = c[k] + 1;
        top[k] = c[k] + 2;
    }
    const std::vector<V> members = members_upto(hi);
    const std::vector<V> witnesses = members_upto(top);
    for (const V& a : members) {
        for (const V& b : members) {
            if (a == b) continue;
            for (std::size_t i = 0; i < r; ++i) {
                if (a[i] != b[i]) continue;
                const bool found = std::any_of(witnesses.begin(), witnesses.end(), [&](const V& d) {
                    if (d[i] <= a[i]) return false;
                    for (std::size_t k = 0; k < r; ++k) {
                        if (k == i) continue;
                        const auto lo = std::min(a[k], b[k]);
                        if (d[k] < lo) return false;
                        if (a[k] != b[k] && d[k] != lo) return false;
                    }
                    return true;
                });
                if (!found) return false;
            }
        }
    }
    return true;
}

bool Brute::maximal(const V& a) const
{
    if (!in(a)) return false;
    for (std::size_t i = 0; i < r; ++i) {
        if (fiber(a, 1U << i, false)) return false;
    }
    return true;
}

bool Brute::relative(const V& a) const
{
    if (!maximal(a)) return false;
    const std::uint32_t full = (1U << r) - 1;
    for (std::uint32_t j = 1; j < full; ++j) {
        if (__builtin_popcount(j) >= 2 && !fiber(a, j, false)) return false;
    }
    return true;
}

bool Brute::absolute(const V& a) const
{
    if (!maximal(a)) return false;
    const std::uint32_t full = (1U << r) - 1;
    for (std::uint32_t j = 1; j < full; ++j) {
        if (fiber(a, j, false)) return false;
    }
    return true;
}

namespace {

template <typename Pred>
std::vector<Point> scan(const Brute& b, Pred pred)
{
    std::vector<Point> out;
    V hi(b.r);
    for (std::size_t k = 0; k < b.r; ++k) hi[k] = b.c[k] + 1;
    for (const V& a : b.members_upto(hi)) {
        if (pred(a)) out.emplace_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<Point> Brute::maximals() const
{
    return scan(*this, [&](const V& a) { return maximal(a); });
}

std::vector<Point> Brute::relatives() const
{
    return scan(*this, [&](const V& a) { return relative(a); });
}

std::vector<Point> Brute::absolutes() const
{
    return scan(*this, [&](const V& a) { return absolute(a); });
}

std::pair<std::int64_t, std::int64_t> Brute::chain_lengths(const Point& gamma) const
{
    std::vector<V> pts = members_upto(coords(gamma));
    const std::size_t n = pts.size();
    const auto less = [&](const V& a, const V& b) {
        bool strict = false;
        for (std::size_t k = 0; k < r; ++k) {
            if (a[k] > b[k]) return false;
            strict = strict || a[k] < b[k];
        }
        return strict;
    };
    // sort by coordinate sum, a linear extension of the product order
    std::sort(pts.begin(), pts.end(), [](const V& a, const V& b) {
        std::int64_t sa = 0, sb = 0;
        for (auto x : a) sa += x;
        for (auto x : b) sb += x;
        return sa != sb ? sa < sb : a < b;
    });
    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> shortest(n, kInf), longest(n, -kInf);
    shortest[0] = longest[0] = 0;  // pts[0] is m
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (!less(pts[i], pts[j]) || shortest[i] == kInf) continue;
            bool cover = true;
            for (std::size_t k = i + 1; k < j && cover; ++k) {
                if (less(pts[i], pts[k]) && less(pts[k], pts[j])) cover = false;
            }
            if (!cover) continue;
            shortest[j] = std::min(shortest[j], shortest[i] + 1);
            longest[j] = std::max(longest[j], longest[i] + 1);
        }
    }
    return {shortest[n - 1], longest[n - 1]};
}

std::vector<std::int64_t> Brute::gaps(std::size_t i) const
{
    std::vector<std::int64_t> out;
    std::set<std::int64_t> seen;
    for (const V& a : box) seen.insert(a[i]);
    for (std::int64_t x = m[i] + 1; x < c[i]; ++x) {
        if (!seen.count(x)) out.push_back(x);
    }
    return out;
}

}  // namespace fxt
