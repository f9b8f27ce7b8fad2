#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "fracval/audit.hpp"
#include "fracval/colength.hpp"
#include "fracval/corpus.hpp"
#include "fracval/errors.hpp"
#include "fracval/io.hpp"
#include "fracval/maximals.hpp"
#include "fracval/oracle.hpp"

namespace fracval::cli {

namespace {

using io::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A property failure that is reported, not thrown by the library.
struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Point parse_point(const std::string& text)
{
    std::vector<Coord> v;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoll(part, &used));
            if (used != part.size()) throw UsageError("bad point '" + text + "'");
        } catch (const std::logic_error&) {
            throw UsageError("bad point '" + text + "'");
        }
    }
    if (v.empty()) throw UsageError("empty point");
    return Point(std::move(v));
}

ValueSet load_set(const std::string& path, bool check = true)
{
    return io::value_set_from_json(io::read_json_file(path), check);
}

void print_points(std::ostream& out, const char* label, const std::vector<Point>& pts)
{
    out << std::left << std::setw(4) << label << ' ' << pts.size();
    for (const Point& p : pts) out << ' ' << to_string(p);
    out << '\n';
}

void print_report(std::ostream& out, const ColengthReport& rep, int indent = 0)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    out << pad << to_string(rep.method) << " at " << to_string(rep.gamma) << ": " << rep.value << '\n';
    for (const Term& t : rep.breakdown) {
        out << pad << "  " << std::left << std::setw(12) << t.name << std::right << std::setw(6) << t.value;
        for (Coord c : t.levels) out << ' ' << c;
        for (const Point& p : t.points) out << ' ' << to_string(p);
        out << '\n';
    }
    for (const ColengthReport& c : rep.children) print_report(out, c, indent + 2);
}

struct Options {
    bool json = false;
    std::string file;
    std::string file2;
    std::string output;
    std::string gamma;
    std::string method = "chain";
    std::string emit;
    bool eta = false;
    std::uint64_t seed = 1;
    std::size_t r = 2;
    Coord box = 8;
    std::string flavor = "repair";
    std::size_t count = 100;
};

int cmd_validate(const Options& o, std::ostream& out)
{
    const ValidationReport rep = validate(load_set(o.file, false));
    if (o.json) {
        out << io::dump(io::to_json(rep));
    } else {
        out << rep.to_text();
        out << (rep.ok() ? "valid" : "invalid") << '\n';
    }
    return rep.ok() ? kOk : kFailure;
}

int cmd_classify(const Options& o, std::ostream& out)
{
    const ValueSet e = load_set(o.file);
    const MaximalReport rep = maximal_report(e);
    if (!o.emit.empty()) io::write_json_file(o.emit, io::to_json(io::reconstruct_input_of(e)));
    std::optional<EtaAudit> audit;
    if (o.eta) audit = eta_audit(e);
    if (o.json) {
        json j = io::to_json(rep);
        if (audit) j["eta_audit"] = io::to_json(*audit);
        out << io::dump(j);
    } else {
        print_points(out, "M", rep.maximal);
        print_points(out, "RM", rep.relative);
        print_points(out, "AM", rep.absolute);
        print_points(out, "INT", rep.intermediate);
        if (audit) {
            out << "level case  M13 M23 s  AM predicted\n";
            for (const EtaLevel& l : audit->levels) {
                out << std::right << std::setw(5) << l.level << ' ' << std::left << std::setw(5) << to_string(l.tag) << std::right
                    << std::setw(4) << l.in_m13 << std::setw(4) << l.in_m23 << std::setw(3) << l.s << std::setw(4)
                    << l.am << std::setw(10) << l.predicted_am << (l.passed ? "" : "  FAIL") << '\n';
            }
            out << "eta " << audit->eta << ", #L3' direct " << audit->l3_prime_direct << ", formula "
                << audit->l3_prime_formula << '\n';
        }
    }
    if (audit && !audit->passed()) throw Failure("eta audit failed");
    return kOk;
}

std::vector<Method> resolve_methods(const std::string& name, std::size_t r)
{
    if (name == "all") return applicable_methods(r);
    if (name == "closed") {
        if (r == 2) return {Method::ClosedR2};
        if (r == 3) return {Method::ClosedR3};
        throw PreconditionError("no closed formula for r = " + std::to_string(r));
    }
    if (auto m = parse_method(name)) return {*m};
    throw UsageError("unknown method '" + name + "'");
}

int cmd_colength(const Options& o, std::ostream& out)
{
    const ValueSet e = load_set(o.file);
    const Point gamma = o.gamma.empty() ? e.conductor() : parse_point(o.gamma);
    if (gamma.dim() != e.rank()) throw UsageError("gamma has " + std::to_string(gamma.dim()) + " coordinates");
    const std::vector<Method> methods = resolve_methods(o.method, e.rank());
    std::vector<ColengthReport> reps;
    for (Method m : methods) reps.push_back(colength(e, gamma, m));
    const bool agree = std::all_of(reps.begin(), reps.end(), [&](const auto& r) { return r.value == reps[0].value; });
    if (o.json) {
        json j{{"version", io::kFormatVersion}, {"gamma", io::to_json(gamma)}, {"agree", agree}};
        if (agree) j["value"] = reps[0].value;
        json list = json::array();
        for (const auto& r : reps) list.push_back(io::to_json(r));
        j["reports"] = std::move(list);
        out << io::dump(j);
    } else {
        out << reps[0].value << '\n';
        for (const auto& r : reps) print_report(out, r, 2);
    }
    if (!agree) throw Failure("colength methods disagree");
    return kOk;
}

int cmd_distance(const Options& o, std::ostream& out)
{
    const ValueSet e = load_set(o.file);
    const ValueSet d = load_set(o.file2);
    std::optional<Point> gamma;
    if (!o.gamma.empty()) gamma = parse_point(o.gamma);
    const DistanceReport rep = distance(e, d, gamma);
    if (o.json) {
        out << io::dump(io::to_json(rep));
    } else {
        out << rep.value << '\n';
        out << "  gamma " << to_string(rep.gamma) << ", " << to_string(rep.method) << ": " << rep.ell_big << " - "
            << rep.ell_small << '\n';
        for (const Term& t : rep.expansion) out << "  " << std::left << std::setw(8) << t.name << std::right << std::setw(6) << t.value << '\n';
    }
    return kOk;
}

void emit(const Options& o, std::ostream& out, const json& j)
{
    if (o.output.empty()) {
        out << io::dump(j);
    } else {
        io::write_json_file(o.output, j);
    }
}

int cmd_reconstruct(const Options& o, std::ostream& out)
{
    const io::ReconstructInput in = io::reconstruct_input_from_json(io::read_json_file(o.file));
    const ValueSet e = reconstruct(in.projections, in.rm, in.min, in.conductor);
    emit(o, out, io::to_json(e));
    if (!o.output.empty() && !o.json) out << to_string(e) << '\n';
    return kOk;
}

int cmd_ingest(const Options& o, std::ostream& out)
{
    const BranchIdeal ideal = io::ideal_from_json(io::read_json_file(o.file));
    OracleOptions opts;
    if (!o.gamma.empty()) opts.gamma_hint = parse_point(o.gamma);
    const OracleResult res = value_set_from_ideal(ideal, opts);
    emit(o, out, io::to_json(res.set));
    if (!o.output.empty() && !o.json) {
        out << to_string(res.set) << "\nconfirmed at truncation " << res.truncation << '\n';
    }
    return kOk;
}

int cmd_fuzz(const Options& o, std::ostream& out)
{
    const auto flavor = parse_flavor(o.flavor);
    if (!flavor) throw UsageError("unknown flavor '" + o.flavor + "'");
    std::ofstream file;
    if (!o.output.empty()) {
        file.open(o.output);
        if (!file) throw IoError("cannot write " + o.output);
    }
    std::ostream& sink = o.output.empty() ? out : file;
    std::size_t failed = 0;
    for (std::size_t i = 0; i < o.count; ++i) {
        const GenSpec spec{case_seed(o.seed, i), o.r, o.box, *flavor};
        json rec{{"case", i},
                 {"seed", spec.seed},
                 {"spec", {{"r", spec.r}, {"box_bound", spec.box_bound}, {"flavor", to_string(spec.flavor)}}}};
        bool ok = true;
        try {
            const ValueSet e = generate(spec);
            const CaseAudit audit = audit_case(e, {spec.seed, 3, *flavor == Flavor::Product});
            rec["set"] = io::to_json(e);
            rec["gamma"] = io::to_json(audit.methods.gamma);
            rec["methods"] = audit.methods.values;
            json props = json::array();
            for (const PropertyResult& p : audit.properties) {
                json pj{{"name", p.name}, {"passed", p.passed}};
                if (!p.detail.empty()) pj["detail"] = p.detail;
                props.push_back(std::move(pj));
            }
            rec["properties"] = std::move(props);
            ok = audit.passed();
        } catch (const std::exception& ex) {
            rec["error"] = ex.what();
            ok = false;
        }
        rec["passed"] = ok;
        failed += ok ? 0 : 1;
        sink << rec.dump() << '\n';
    }
    if (!o.output.empty()) out << o.count - failed << '/' << o.count << " cases passed\n";
    if (failed) throw Failure(std::to_string(failed) + " fuzz case(s) failed");
    return kOk;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message)
{
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Value sets of fractional ideals: validation, maximals, colengths", "fracval"};
    app.require_subcommand(1, 1);
    app.set_help_all_flag("--help-all");

    const auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "JSON output"); };

    auto* validate_cmd = app.add_subcommand("validate", "Check the axioms of a value-set file");
    validate_cmd->add_option("file", o.file)->required();
    add_json(validate_cmd);

    auto* classify_cmd = app.add_subcommand("classify", "Maximal points of a value set");
    classify_cmd->add_option("file", o.file)->required();
    classify_cmd->add_option("--emit-reconstruct", o.emit, "Write projections and RM for `reconstruct`");
    classify_cmd->add_flag("--eta", o.eta, "Add the per-level audit (r = 3)");
    add_json(classify_cmd);

    auto* colength_cmd = app.add_subcommand("colength", "Colength l(I/I(gamma))");
    colength_cmd->add_option("file", o.file)->required();
    colength_cmd->add_option("--gamma", o.gamma, "Comma separated; defaults to the conductor");
    colength_cmd->add_option("--method", o.method, "chain|saturated|recursive|closed|closed_r2|closed_r3|all");
    add_json(colength_cmd);

    auto* distance_cmd = app.add_subcommand("distance", "l(I/J) from the value sets of I and J");
    distance_cmd->add_option("E", o.file, "Value set of the larger module")->required();
    distance_cmd->add_option("D", o.file2, "Value set of the submodule")->required();
    distance_cmd->add_option("--gamma", o.gamma, "Comparison point; defaults to the join of the conductors");
    add_json(distance_cmd);

    auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Rebuild a value set from projections and RM");
    reconstruct_cmd->add_option("file", o.file)->required();
    reconstruct_cmd->add_option("-o,--output", o.output);
    add_json(reconstruct_cmd);

    auto* ingest_cmd = app.add_subcommand("ingest", "Value set of a module given by branch series");
    ingest_cmd->add_option("file", o.file)->required();
    ingest_cmd->add_option("-o,--output", o.output);
    ingest_cmd->add_option("--gamma", o.gamma, "Expected conductor bound; sets the first truncation");
    add_json(ingest_cmd);

    auto* fuzz_cmd = app.add_subcommand("fuzz", "Generate sets and cross-check every method (JSONL)");
    fuzz_cmd->add_option("--seed", o.seed);
    fuzz_cmd->add_option("--r", o.r)->check(CLI::Range(1, 8));
    fuzz_cmd->add_option("--box", o.box)->check(CLI::Range(1, 64));
    fuzz_cmd->add_option("--flavor", o.flavor, "product|repair|series");
    fuzz_cmd->add_option("--count", o.count);
    fuzz_cmd->add_option("-o,--output", o.output);

    std::vector<std::string> argv_store{"fracval"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& ex) {
        report_error(err, "usage", ex.what());
        return kUsage;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(o, out);
        if (classify_cmd->parsed()) return cmd_classify(o, out);
        if (colength_cmd->parsed()) return cmd_colength(o, out);
        if (distance_cmd->parsed()) return cmd_distance(o, out);
        if (reconstruct_cmd->parsed()) return cmd_reconstruct(o, out);
        if (ingest_cmd->parsed()) return cmd_ingest(o, out);
        if (fuzz_cmd->parsed()) return cmd_fuzz(o, out);
    } catch (const UsageError& ex) {
        report_error(err, "usage", ex.what());
        return kUsage;
    } catch (const IoError& ex) {
        report_error(err, "io", ex.what());
        return kIo;
    } catch (const ParseError& ex) {
        report_error(err, "parse", ex.what());
        return kIo;
    } catch (const ValidationError& ex) {
        report_error(err, "validation", ex.what());
        return kFailure;
    } catch (const PreconditionError& ex) {
        report_error(err, "precondition", ex.what());
        return kFailure;
    } catch (const InvariantViolation& ex) {
        report_error(err, "invariant", ex.what());
        return kFailure;
    } catch (const Failure& ex) {
        report_error(err, "property", ex.what());
        return kFailure;
    } catch (const std::exception& ex) {
        report_error(err, "failure", ex.what());
        return kFailure;
    }
    report_error(err, "usage", "no command");
    return kUsage;
}

}  // namespace fracval::cli
