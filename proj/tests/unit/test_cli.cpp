#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "fracval/io.hpp"
#include "support.hpp"

using namespace fracval;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::string data(const char* name) { return fxt::data_path(name); }

}  // namespace

TEST_CASE("colength verb")
{
    const Result all = run({"colength", data("e2l.json"), "--gamma", "2,2", "--method", "all"});
    CHECK(all.code == 0);
    CHECK(first_line(all.out) == "3");

    const Result closed = run({"colength", data("e3c.json"), "--method", "closed"});
    CHECK(closed.code == 0);
    CHECK(first_line(closed.out) == "3");

    const Result below = run({"colength", data("e3c.json"), "--gamma", "1,1,1", "--method", "chain"});
    CHECK(below.code == 1);
    const io::json err = io::json::parse(below.err);
    CHECK(err.at("message") == "gamma below conductor");

    const Result js = run({"colength", data("e3c.json"), "--gamma", "3,2,2", "--method", "all", "--json"});
    CHECK(js.code == 0);
    const io::json j = io::json::parse(js.out);
    CHECK(j.at("value") == 4);
    CHECK(j.at("agree") == true);
    CHECK(j.at("version") == io::kFormatVersion);

    CHECK(run({"colength", data("e3c.json"), "--gamma", "2,x,2"}).code == 2);
    CHECK(run({"colength", data("e3c.json"), "--gamma", "2,2"}).code == 2);
    CHECK(run({"colength", data("e3c.json"), "--method", "nope"}).code == 2);
}

TEST_CASE("distance verb")
{
    const Result r = run({"distance", data("n3.json"), data("e3c.json")});
    CHECK(r.code == 0);
    CHECK(first_line(r.out) == "3");
    CHECK(r.out.find("AM") != std::string::npos);
    CHECK(run({"distance", data("e3c.json"), data("n3.json")}).code == 1);
}

TEST_CASE("validate and classify verbs")
{
    CHECK(run({"validate", data("e3c.json")}).code == 0);
    CHECK(run({"validate", data("not_meet_closed.json")}).code == 1);
    const Result c = run({"classify", data("e3c.json"), "--eta", "--json"});
    CHECK(c.code == 0);
    const io::json j = io::json::parse(c.out);
    CHECK(j.at("RM").size() == 1);
    CHECK(j.at("eta_audit").at("eta") == 1);
}

TEST_CASE("reconstruct round trip through files")
{
    const fs::path dir = fs::temp_directory_path() / "fracval_cli_test";
    fs::create_directories(dir);
    const std::string in = (dir / "rec.json").string();
    const std::string out = (dir / "out.json").string();
    CHECK(run({"classify", data("repair_r3_seed3.json"), "--emit-reconstruct", in}).code == 0);
    CHECK(run({"reconstruct", in, "-o", out}).code == 0);
    const ValueSet back = io::value_set_from_json(io::read_json_file(out));
    CHECK(back == io::value_set_from_json(io::read_json_file(data("repair_r3_seed3.json"))));
    fs::remove_all(dir);
}

TEST_CASE("ingest")
{
    const Result r = run({"ingest", data("three_lines.json")});
    CHECK(r.code == 0);
    CHECK(io::value_set_from_json(io::json::parse(r.out)) == fxt::e3c());
}

TEST_CASE("fuzz")
{
    const Result a = run({"fuzz", "--seed", "4", "--r", "3", "--box", "4", "--count", "5"});
    const Result b = run({"fuzz", "--seed", "4", "--r", "3", "--box", "4", "--count", "5"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    std::istringstream lines(a.out);
    std::string line;
    std::size_t n = 0;
    while (std::getline(lines, line)) {
        const io::json rec = io::json::parse(line);
        CHECK(rec.at("passed") == true);
        CHECK(rec.at("case") == n);
        CHECK(rec.contains("methods"));
        ++n;
    }
    CHECK(n == 5);
    CHECK(run({"fuzz", "--flavor", "bogus"}).code == 2);
}

TEST_CASE("exit codes")
{
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    const Result missing = run({"validate", "no_such_file.json"});
    CHECK(missing.code == 3);
    CHECK(io::json::parse(missing.err).at("error") == "io");
    CHECK(run({"validate", data("broken.json")}).code == 3);
    CHECK(run({"--help"}).code == 0);
}
