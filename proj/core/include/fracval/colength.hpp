#ifndef FRACVAL_COLENGTH_HPP
#define FRACVAL_COLENGTH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracval/point.hpp"
#include "fracval/value_set.hpp"

namespace fracval {

enum class Method { Chain, Saturated, ClosedR2, Recursive, ClosedR3 };

const char* to_string(Method m);
std::optional<Method> parse_method(std::string_view name);

/// Unit-step path from m to gamma.
struct Chain {
    std::vector<Point> nodes;
};

/// The default chain: raise coordinate 1 to gamma_1, then coordinate 2, ...
Chain axis_chain(const Point& from, const Point& to);
/// A uniformly shuffled order of the same unit steps.
Chain random_chain(const Point& from, const Point& to, std::uint64_t seed);
/// Throws PreconditionError unless the chain runs from `from` to `to` by unit steps.
void check_chain(const Chain& chain, const Point& from, const Point& to);

/// One signed summand of a colength formula, or an informational note.
struct Term {
    std::string name;
    std::int64_t value = 0;
    std::vector<Coord> levels;  // e.g. gap values or union members
    std::vector<Point> points;  // e.g. maximal points counted
};

struct ColengthReport {
    Method method = Method::Chain;
    Point gamma;
    std::int64_t value = 0;
    std::vector<Term> breakdown;  // sums to value
    std::vector<Term> notes;      // not summed
    std::vector<Point> chain;     // chain and saturated only
    std::vector<ColengthReport> children;

    std::int64_t breakdown_sum() const;
};

/// 1 iff the closed fiber of a at index i is nonempty.
int step(const ValueSet& e, const Point& a, std::size_t i);

ColengthReport colength_chain(const ValueSet& e, const Point& gamma, const std::optional<Chain>& chain = {});

/// Greedy saturated chain in E within [m, gamma]. Without a seed the next node
/// is the colex least minimal strictly larger element; a seed
/// picks uniformly among them instead.
ColengthReport colength_saturated(const ValueSet& e, const Point& gamma,
                                  std::optional<std::uint64_t> tie_seed = {});

ColengthReport colength_closed_r2(const ValueSet& e, const Point& gamma);

/// Drops the last coordinate at each level; base case r = 1. Throws
/// InvariantViolation if the gaps of the last branch meet the union term.
ColengthReport colength_recursive(const ValueSet& e, const Point& gamma);

ColengthReport colength_closed_r3(const ValueSet& e, const Point& gamma);

ColengthReport colength(const ValueSet& e, const Point& gamma, Method method);

/// closed_r2 / closed_r3 where they exist, recursive otherwise.
Method best_method(std::size_t r);
/// Every method that applies at the rank of E.
std::vector<Method> applicable_methods(std::size_t r);

struct DistanceReport {
    std::int64_t value = 0;
    Point gamma;
    Method method = Method::Recursive;
    std::int64_t ell_big = 0;    // colength of E at gamma
    std::int64_t ell_small = 0;  // colength of D at gamma
    std::vector<Term> expansion;  // r = 3 only; sums to value
    std::optional<std::int64_t> direct_count;  // r = 1: #(E \ D)
};

/// l(I/J) for value sets D of J and E of I. gamma defaults to the join of the
/// conductors.
DistanceReport distance(const ValueSet& e, const ValueSet& d, const std::optional<Point>& gamma = {});

enum class EtaCase { I, II, III, IV, V, None };

const char* to_string(EtaCase c);

struct EtaLevel {
    Coord level = 0;
    EtaCase tag = EtaCase::None;
    bool in_m13 = false;
    bool in_m23 = false;
    bool in_rm = false;
    std::size_t s = 0;   // RM at the level
    std::size_t am = 0;  // AM at the level
    std::int64_t predicted_am = 0;
    bool passed = true;
};

struct EtaAudit {
    std::vector<EtaLevel> levels;
    std::size_t gaps3 = 0;
    std::size_t m13 = 0;
    std::size_t m23 = 0;
    std::size_t rm = 0;
    std::size_t am = 0;
    std::int64_t eta = 0;
    std::int64_t l3_prime_direct = 0;
    std::int64_t l3_prime_formula = 0;

    bool levels_ok() const;
    bool eq6_ok() const { return l3_prime_direct == l3_prime_formula; }
    bool eta_matches_am() const { return eta == static_cast<std::int64_t>(am); }
    bool passed() const { return levels_ok() && eq6_ok() && eta_matches_am(); }
};

EtaAudit eta_audit(const ValueSet& e);

}  // namespace fracval

#endif  // FRACVAL_COLENGTH_HPP
