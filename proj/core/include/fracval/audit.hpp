#ifndef FRACVAL_AUDIT_HPP
#define FRACVAL_AUDIT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fracval/colength.hpp"
#include "fracval/value_set.hpp"

namespace fracval {

struct PropertyResult {
    std::string name;
    bool passed = true;
    std::string detail;
};

/// Every applicable colength method at gamma; throws nothing, failures are
/// recorded as "error: ..." details.
struct MethodValues {
    Point gamma;
    std::map<std::string, std::int64_t> values;
    std::string error;

    bool agree() const;
};

MethodValues all_methods(const ValueSet& e, const Point& gamma);

/// Geometry of r = 3 maximals: max of adjacent RM pairs lies in AM, and the
/// rectangle of two same-level AM points contains an RM. Returns violations.
std::vector<std::string> geometry_violations(const ValueSet& e);

struct CaseAudit {
    MethodValues methods;
    std::vector<PropertyResult> properties;

    bool passed() const;
};

struct AuditOptions {
    std::uint64_t seed = 0;   // random chains, tie orders and gamma offsets
    std::size_t chains = 3;
    bool expect_no_maximals = false;  // products
};

/// Runs the cross-checks that apply at the rank of E.
CaseAudit audit_case(const ValueSet& e, const AuditOptions& options);

}  // namespace fracval

#endif  // FRACVAL_AUDIT_HPP
