#include "fracval/audit.hpp"

#include <algorithm>
#include <exception>

#include "fracval/maximals.hpp"
#include "fracval/rng.hpp"

namespace fracval {

namespace {

template <typename F>
PropertyResult run_property(std::string name, F&& body)
{
    PropertyResult res{std::move(name), true, {}};
    try {
        res.detail = body();
        res.passed = res.detail.empty();
    } catch (const std::exception& ex) {
        res.passed = false;
        res.detail = std::string("error: ") + ex.what();
    }
    return res;
}

std::string join_lines(const std::vector<std::string>& v)
{
    std::string out;
    for (const std::string& s : v) out += (out.empty() ? "" : "; ") + s;
    return out;
}

bool holds(const std::vector<Point>& sorted, const Point& p) { return std::binary_search(sorted.begin(), sorted.end(), p); }

}  // namespace

bool MethodValues::agree() const
{
    if (!error.empty() || values.empty()) return false;
    const std::int64_t first = values.begin()->second;
    return std::all_of(values.begin(), values.end(), [&](const auto& kv) { return kv.second == first; });
}

MethodValues all_methods(const ValueSet& e, const Point& gamma)
{
    MethodValues out;
    out.gamma = gamma;
    try {
        for (Method m : applicable_methods(e.rank())) out.values[to_string(m)] = colength(e, gamma, m).value;
    } catch (const std::exception& ex) {
        out.error = ex.what();
    }
    return out;
}

std::vector<std::string> geometry_violations(const ValueSet& e)
{
    std::vector<std::string> out;
    if (e.rank() != 3) return out;
    const MaximalReport mr = maximal_report(e);
    for (const auto& [level, counts] : mr.by_level) {
        for (const auto& [a, b] : adjacent_rm_pairs(mr, level)) {
            const Point top = join(a, b);
            if (!holds(mr.absolute, top)) {
                out.push_back("max of adjacent " + to_string(a) + ", " + to_string(b) + " is not in AM");
            }
        }
        std::vector<Point> am;
        for (const Point& p : mr.absolute) {
            if (p[2] == level) am.push_back(p);
        }
        for (std::size_t i = 0; i < am.size(); ++i) {
            for (std::size_t j = i + 1; j < am.size(); ++j) {
                if (!rect_contains_rm(mr, Rect{am[i], am[j]})) {
                    out.push_back("rectangle of " + to_string(am[i]) + ", " + to_string(am[j]) + " has no RM");
                }
            }
        }
    }
    return out;
}

bool CaseAudit::passed() const
{
    return methods.agree() &&
           std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.passed; });
}

CaseAudit audit_case(const ValueSet& e, const AuditOptions& options)
{
    CaseAudit audit;
    const std::size_t r = e.rank();
    Rng rng(options.seed);
    const Point& c = e.conductor();
    audit.methods = all_methods(e, c);
    const std::int64_t base = audit.methods.values.count("chain") ? audit.methods.values.at("chain") : -1;

    audit.properties.push_back(run_property("path independence", [&]() -> std::string {
        for (std::size_t k = 0; k < options.chains; ++k) {
            const auto v = colength_chain(e, c, random_chain(e.min(), c, rng.next())).value;
            if (v != base) return "random chain gave " + std::to_string(v) + ", axis chain " + std::to_string(base);
        }
        return {};
    }));
    audit.properties.push_back(run_property("saturated tie orders", [&]() -> std::string {
        for (int k = 0; k < 2; ++k) {
            const auto v = colength_saturated(e, c, rng.next()).value;
            if (v != base) return "saturated chain of length " + std::to_string(v);
        }
        return {};
    }));
    audit.properties.push_back(run_property("step law", [&]() -> std::string {
        for (std::size_t i = 0; i < r; ++i) {
            const Point up = c + Point::unit(r, i);
            if (colength_recursive(e, up).value != base + 1) return "l(c + e_" + std::to_string(i + 1) + ") != l(c) + 1";
        }
        return {};
    }));
    audit.properties.push_back(run_property("conductor bound", [&]() -> std::string {
        const std::uint32_t full = IndexSet::full_mask(r);
        for (std::uint32_t j = 1; j <= full; ++j) {
            const IndexSet js(r, j);
            const ValueSet p = project(e, js);
            if (!leq(p.conductor(), project(c, js))) return "c(E_" + to_string(js) + ") exceeds pr(c(E))";
        }
        return {};
    }));
    if (r >= 2) {
        audit.properties.push_back(run_property("generation", [&]() -> std::string {
            return generation_check(e) ? std::string() : "membership differs from the relative-maximal rule";
        }));
        audit.properties.push_back(run_property("round trip", [&]() -> std::string {
            const ValueSet back = reconstruct(codimension_one_projections(e), maximal_report(e).relative, e.min(), c);
            return back == e ? std::string() : "reconstruction differs";
        }));
        audit.properties.push_back(run_property("criteria soundness", [&]() -> std::string {
            const MaximalReport mr = maximal_report(e);
            for (const Point& p : e.points()) {
                if (!all_less(p, c)) continue;
                if (relative_criterion(e, p) && !holds(mr.relative, p)) return "relative criterion at " + to_string(p);
                for (std::size_t i = 0; i < r; ++i) {
                    if (absolute_criterion(e, p, i) && !holds(mr.absolute, p)) {
                        return "absolute criterion at " + to_string(p);
                    }
                }
            }
            return {};
        }));
    }
    if (r == 3) {
        audit.properties.push_back(run_property("eta audit", [&]() -> std::string {
            const EtaAudit a = eta_audit(e);
            if (!a.levels_ok()) return "AM prediction failed at some level";
            if (!a.eq6_ok()) return "L3' direct " + std::to_string(a.l3_prime_direct) + " vs formula " +
                                    std::to_string(a.l3_prime_formula);
            if (!a.eta_matches_am()) return "eta != #AM";
            return {};
        }));
        audit.properties.push_back(run_property("geometry", [&] { return join_lines(geometry_violations(e)); }));
        audit.properties.push_back(run_property("absolute trichotomy", [&]() -> std::string {
            for (const auto& [p, kind] : classify_absolutes(e)) {
                if (kind == AbsoluteCase::None) return "no case applies to " + to_string(p);
            }
            return {};
        }));
    }
    if (options.expect_no_maximals) {
        audit.properties.push_back(run_property("products have no maximals", [&]() -> std::string {
            return maximal_report(e).maximal.empty() ? std::string() : "maximal points in a product";
        }));
    }
    return audit;
}

}  // namespace fracval
