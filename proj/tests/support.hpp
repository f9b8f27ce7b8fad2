#ifndef FRACVAL_TESTS_SUPPORT_HPP
#define FRACVAL_TESTS_SUPPORT_HPP

#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "fracval/oracle.hpp"
#include "fracval/value_set.hpp"

namespace fracval {

// for doctest messages
inline std::ostream& operator<<(std::ostream& os, const Point& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const ValueSet& e) { return os << to_string(e); }

}  // namespace fracval

namespace fxt {

using fracval::Point;
using fracval::ValueSet;

// Hand fixtures.
ValueSet e2l();   // {0} u {a >= (1,1)}
ValueSet e3a();   // {0} u {a >= (1,1,1)}
ValueSet e3c();   // three concurrent coplanar lines
ValueSet prod();  // S x S, S = {0,2,3,...}
ValueSet sss();   // S x S x S
ValueSet natural(std::size_t r);  // N^r
ValueSet numerical(std::vector<std::int64_t> elements_below_conductor, std::int64_t conductor);

// Rings given by branch parametrizations; module = ring.
fracval::BranchIdeal two_lines(std::size_t truncation = 12);
fracval::BranchIdeal three_lines(std::size_t truncation = 12);
fracval::BranchVector vec(const std::vector<std::vector<std::int64_t>>& coeffs, std::size_t truncation);

std::string data_path(const std::string& name);

// Brute force over an explicit membership predicate. Nothing here calls the
// library's fibers, colength or classification code.
struct Brute {
    std::size_t r;
    Point m;
    Point c;
    std::set<std::vector<std::int64_t>> box;  // stored points

    explicit Brute(const ValueSet& e);

    bool in(const std::vector<std::int64_t>& a) const;
    // all lattice points of [lo, hi]
    static std::vector<std::vector<std::int64_t>> grid(const std::vector<std::int64_t>& lo,
                                                       const std::vector<std::int64_t>& hi);
    // members of E in [m, hi]
    std::vector<std::vector<std::int64_t>> members_upto(const std::vector<std::int64_t>& hi) const;

    // F_J (strict off J) or closed F-bar_J; J as a bitmask
    bool fiber(const std::vector<std::int64_t>& a, std::uint32_t mask, bool closed) const;

    bool property_a() const;
    bool property_b() const;

    bool maximal(const std::vector<std::int64_t>& a) const;
    bool relative(const std::vector<std::int64_t>& a) const;
    bool absolute(const std::vector<std::int64_t>& a) const;

    std::vector<Point> maximals() const;
    std::vector<Point> relatives() const;
    std::vector<Point> absolutes() const;

    // lengths of the shortest and longest saturated chains from m to gamma
    std::pair<std::int64_t, std::int64_t> chain_lengths(const Point& gamma) const;

    std::vector<std::int64_t> gaps(std::size_t i) const;
};

std::vector<std::int64_t> coords(const Point& p);

}  // namespace fxt

#endif
