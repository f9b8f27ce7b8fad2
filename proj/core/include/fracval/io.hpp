#ifndef FRACVAL_IO_HPP
#define FRACVAL_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fracval/colength.hpp"
#include "fracval/maximals.hpp"
#include "fracval/oracle.hpp"
#include "fracval/value_set.hpp"

namespace fracval::io {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

json to_json(const Point& p);
Point point_from_json(const json& j);

/// {"version", "r", "min", "conductor", "points"}; points sorted.
json to_json(const ValueSet& e);
/// Rebuilds and re-validates. ParseError on malformed JSON, ValidationError
/// when the data violates an axiom (unless `check` is false).
ValueSet value_set_from_json(const json& j, bool check = true);

json to_json(const ValidationReport& report);
json to_json(const MaximalReport& report);
json to_json(const ColengthReport& report);
json to_json(const DistanceReport& report);
json to_json(const EtaAudit& audit);

/// Ingestion format: {"r", "truncation", "ring_generators", "module_generators"}
/// with each generator a list of r coefficient lists ("p/q" strings or ints).
json to_json(const BranchIdeal& ideal);
BranchIdeal ideal_from_json(const json& j);

/// Input of `reconstruct`: the (r-1)-projections (index sets 1-based), the
/// relative maximals and the box.
struct ReconstructInput {
    ProjectionFamily projections;
    std::vector<Point> rm;
    Point min;
    Point conductor;
};

json to_json(const ReconstructInput& in);
ReconstructInput reconstruct_input_from_json(const json& j);
/// Projections and RM of an existing set, in the reconstruct input format.
ReconstructInput reconstruct_input_of(const ValueSet& e);

/// IoError when the file cannot be opened, ParseError on bad JSON.
json read_json_file(const std::filesystem::path& path);
/// Pretty printed, newline terminated.
void write_json_file(const std::filesystem::path& path, const json& j);
std::string dump(const json& j);

}  // namespace fracval::io

#endif  // FRACVAL_IO_HPP
