#include "fracval/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fracval/errors.hpp"

namespace fracval::io {

namespace {

const json& field(const json& j, const char* key)
{
    if (!j.is_object()) throw ParseError("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

std::size_t read_rank(const json& j)
{
    const json& r = field(j, "r");
    if (!r.is_number_integer() || r.get<std::int64_t>() < 1) throw ParseError("'r' must be a positive integer");
    return r.get<std::size_t>();
}

Point read_point(const json& j, std::size_t r, const char* what)
{
    Point p = point_from_json(j);
    if (p.dim() != r) throw ParseError(std::string(what) + " has the wrong dimension");
    return p;
}

std::vector<Point> read_points(const json& j, std::size_t r, const char* what)
{
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<Point> out;
    for (const json& p : j) out.push_back(read_point(p, r, what));
    return out;
}

json points_json(std::vector<Point> pts)
{
    std::sort(pts.begin(), pts.end());
    json out = json::array();
    for (const Point& p : pts) out.push_back(to_json(p));
    return out;
}

json levels_json(const std::vector<Coord>& v) { return json(v); }

json term_json(const Term& t)
{
    json out{{"name", t.name}, {"value", t.value}};
    if (!t.levels.empty()) out["levels"] = levels_json(t.levels);
    if (!t.points.empty()) out["points"] = points_json(t.points);
    return out;
}

json index_set_json(const IndexSet& j)
{
    json out = json::array();
    for (std::size_t i : j.members()) out.push_back(i + 1);
    return out;
}

Series read_series(const json& j, std::size_t truncation)
{
    if (!j.is_array()) throw ParseError("series must be a list of coefficients");
    std::vector<Rational> c;
    for (const json& q : j) {
        if (q.is_number_integer()) {
            c.emplace_back(std::to_string(q.get<std::int64_t>()), 10);
        } else if (q.is_string()) {
            c.push_back(parse_rational(q.get<std::string>()));
        } else {
            throw ParseError("coefficient must be an integer or a \"p/q\" string");
        }
    }
    if (c.size() > truncation) throw ParseError("series has more coefficients than the truncation");
    return Series(std::move(c), truncation);
}

std::vector<BranchVector> read_generators(const json& j, std::size_t r, std::size_t truncation, const char* what)
{
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<BranchVector> out;
    for (const json& g : j) {
        if (!g.is_array() || g.size() != r) {
            throw ParseError(std::string(what) + ": each generator needs one series per branch");
        }
        BranchVector h;
        for (const json& s : g) h.components.push_back(read_series(s, truncation));
        out.push_back(std::move(h));
    }
    return out;
}

json generators_json(const std::vector<BranchVector>& gens)
{
    json out = json::array();
    for (const BranchVector& h : gens) {
        json g = json::array();
        for (const Series& s : h.components) {
            std::size_t len = 0;
            for (std::size_t k = 0; k < s.truncation(); ++k) {
                if (s[k] != 0) len = k + 1;
            }
            json c = json::array();
            for (std::size_t k = 0; k < len; ++k) {
                if (s[k].get_den() == 1 && s[k].get_num().fits_slong_p()) {
                    c.push_back(s[k].get_num().get_si());
                } else {
                    c.push_back(to_string(s[k]));
                }
            }
            g.push_back(std::move(c));
        }
        out.push_back(std::move(g));
    }
    return out;
}

template <typename F>
auto guarded(F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const json::exception& ex) {
        throw ParseError(ex.what());
    }
}

}  // namespace

json to_json(const Point& p) { return json(std::vector<Coord>(p.begin(), p.end())); }

Point point_from_json(const json& j)
{
    if (!j.is_array() || j.empty()) throw ParseError("a point must be a nonempty array of integers");
    std::vector<Coord> v;
    for (const json& c : j) {
        if (!c.is_number_integer()) throw ParseError("point coordinates must be integers");
        v.push_back(c.get<Coord>());
    }
    return Point(std::move(v));
}

json to_json(const ValueSet& e)
{
    return json{{"version", kFormatVersion},
                {"r", e.rank()},
                {"min", to_json(e.min())},
                {"conductor", to_json(e.conductor())},
                {"points", points_json(e.points())}};
}

ValueSet value_set_from_json(const json& j, bool check)
{
    return guarded([&] {
        const std::size_t r = read_rank(j);
        const Point m = read_point(field(j, "min"), r, "min");
        const Point c = read_point(field(j, "conductor"), r, "conductor");
        const std::vector<Point> pts = read_points(field(j, "points"), r, "points");
        if (!leq(m, c)) throw ParseError("conductor does not dominate min");
        for (const Point& p : pts) {
            if (!leq(m, p) || !leq(p, c)) throw ParseError("point " + to_string(p) + " lies outside the box");
        }
        ValueSet e = ValueSet::unchecked(m, c, pts);
        if (!check) return e;
        ValidationReport report = validate(e);
        if (!report.ok()) throw ValidationError(std::move(report));
        return e;
    });
}

json to_json(const ValidationReport& report)
{
    json checks = json::array();
    for (const AxiomCheck& c : report.checks) {
        json item{{"axiom", c.axiom}, {"passed", c.passed}};
        if (!c.detail.empty()) item["detail"] = c.detail;
        if (!c.witness.empty()) {
            json w = json::array();
            for (const Point& p : c.witness) w.push_back(to_json(p));
            item["witness"] = std::move(w);
        }
        if (c.index) item["index"] = *c.index + 1;
        checks.push_back(std::move(item));
    }
    return json{{"version", kFormatVersion}, {"ok", report.ok()}, {"checks", std::move(checks)}};
}

json to_json(const MaximalReport& report)
{
    json levels = json::object();
    for (const auto& [level, c] : report.by_level) levels[std::to_string(level)] = {{"rm", c.rm}, {"am", c.am}};
    return json{{"version", kFormatVersion}, {"r", report.rank},
                {"M", points_json(report.maximal)},      {"RM", points_json(report.relative)},
                {"AM", points_json(report.absolute)},    {"INT", points_json(report.intermediate)},
                {"by_level", std::move(levels)}};
}

json to_json(const ColengthReport& report)
{
    json out{{"method", to_string(report.method)}, {"gamma", to_json(report.gamma)}, {"value", report.value}};
    json terms = json::array();
    for (const Term& t : report.breakdown) terms.push_back(term_json(t));
    out["breakdown"] = std::move(terms);
    if (!report.notes.empty()) {
        json notes = json::array();
        for (const Term& t : report.notes) notes.push_back(term_json(t));
        out["notes"] = std::move(notes);
    }
    if (!report.chain.empty()) {
        json chain = json::array();
        for (const Point& p : report.chain) chain.push_back(to_json(p));
        out["chain"] = std::move(chain);
    }
    if (!report.children.empty()) {
        json kids = json::array();
        for (const ColengthReport& c : report.children) kids.push_back(to_json(c));
        out["children"] = std::move(kids);
    }
    return out;
}

json to_json(const DistanceReport& report)
{
    json out{{"version", kFormatVersion},  {"value", report.value},         {"gamma", to_json(report.gamma)},
             {"method", to_string(report.method)}, {"ell_E", report.ell_big}, {"ell_D", report.ell_small}};
    if (!report.expansion.empty()) {
        json terms = json::array();
        for (const Term& t : report.expansion) terms.push_back(term_json(t));
        out["expansion"] = std::move(terms);
    }
    if (report.direct_count) out["direct_count"] = *report.direct_count;
    return out;
}

json to_json(const EtaAudit& audit)
{
    json levels = json::array();
    for (const EtaLevel& l : audit.levels) {
        levels.push_back({{"level", l.level},
                          {"case", to_string(l.tag)},
                          {"in_M13", l.in_m13},
                          {"in_M23", l.in_m23},
                          {"in_RM", l.in_rm},
                          {"s", l.s},
                          {"am", l.am},
                          {"predicted_am", l.predicted_am},
                          {"passed", l.passed}});
    }
    return json{{"version", kFormatVersion},
                {"levels", std::move(levels)},
                {"gaps3", audit.gaps3},
                {"M13", audit.m13},
                {"M23", audit.m23},
                {"RM", audit.rm},
                {"AM", audit.am},
                {"eta", audit.eta},
                {"L3_prime_direct", audit.l3_prime_direct},
                {"L3_prime_formula", audit.l3_prime_formula},
                {"passed", audit.passed()}};
}

json to_json(const BranchIdeal& ideal)
{
    return json{{"version", kFormatVersion},
                {"r", ideal.r},
                {"truncation", ideal.truncation},
                {"ring_generators", generators_json(ideal.ring_generators)},
                {"module_generators", generators_json(ideal.module_generators)}};
}

BranchIdeal ideal_from_json(const json& j)
{
    return guarded([&] {
        BranchIdeal ideal;
        ideal.r = read_rank(j);
        const json& t = field(j, "truncation");
        if (!t.is_number_integer() || t.get<std::int64_t>() < 1) {
            throw ParseError("'truncation' must be a positive integer");
        }
        ideal.truncation = t.get<std::size_t>();
        ideal.ring_generators = read_generators(field(j, "ring_generators"), ideal.r, ideal.truncation, "ring_generators");
        ideal.module_generators =
            read_generators(field(j, "module_generators"), ideal.r, ideal.truncation, "module_generators");
        return ideal;
    });
}

json to_json(const ReconstructInput& in)
{
    json projections = json::array();
    for (const auto& [j, set] : in.projections) projections.push_back({{"J", index_set_json(j)}, {"set", to_json(set)}});
    return json{{"version", kFormatVersion},
                {"r", in.min.dim()},
                {"min", to_json(in.min)},
                {"conductor", to_json(in.conductor)},
                {"projections", std::move(projections)},
                {"rm", points_json(in.rm)}};
}

ReconstructInput reconstruct_input_from_json(const json& j)
{
    return guarded([&] {
        ReconstructInput in;
        const std::size_t r = read_rank(j);
        in.min = read_point(field(j, "min"), r, "min");
        in.conductor = read_point(field(j, "conductor"), r, "conductor");
        in.rm = read_points(field(j, "rm"), r, "rm");
        const json& ps = field(j, "projections");
        if (!ps.is_array()) throw ParseError("'projections' must be an array");
        for (const json& p : ps) {
            const json& members = field(p, "J");
            if (!members.is_array()) throw ParseError("'J' must be an array of 1-based indices");
            std::uint32_t mask = 0;
            for (const json& i : members) {
                if (!i.is_number_integer() || i.get<std::int64_t>() < 1 || i.get<std::size_t>() > r) {
                    throw ParseError("index in 'J' out of range");
                }
                mask |= 1U << (i.get<std::size_t>() - 1);
            }
            in.projections.emplace_back(IndexSet(r, mask), value_set_from_json(field(p, "set")));
        }
        return in;
    });
}

ReconstructInput reconstruct_input_of(const ValueSet& e)
{
    return {codimension_one_projections(e), maximal_report(e).relative, e.min(), e.conductor()};
}

json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& ex) {
        throw ParseError(path.string() + ": " + ex.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::filesystem::path& path, const json& j)
{
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << dump(j);
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace fracval::io
