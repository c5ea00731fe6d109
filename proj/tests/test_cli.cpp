#include "test_support.hpp"

#include "cli.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;

    std::vector<json> records() const {
        std::vector<json> r;
        std::istringstream is(out);
        std::string line;
        while (std::getline(is, line)) r.push_back(json::parse(line));
        return r;
    }
    json record() const {
        auto r = records();
        REQUIRE(r.size() == 1);
        return r[0];
    }
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
    args.insert(args.begin(), "polycurve");
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = polycurve::cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
    const std::string path = std::string("/tmp/polycurve_cli_") + name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("spec examples") {
    auto r = run({"classify-cubic", "x0*x1*x2"});
    CHECK(r.code == 0);
    CHECK(r.record()["class"] == "ThreeGeneralLines");
    CHECK(r.record()["verdict"] == "SplitsCompletely");

    r = run({"cohomology", "--n", "3", "--a", "2", "--b", "1"});
    CHECK(r.code == 0);
    CHECK(r.record()["h0"] == 2);

    r = run({"classify-surface", "--P12", "0", "--q", "1", "--K2", "0"});
    CHECK(r.code == 0);
    CHECK(r.record()["cover"] == "P1xC");
    r = run({"classify-surface", "--record", R"({"P12":0,"q":1,"K2":0})"});
    CHECK(r.record()["cover"] == "P1xC");
}

TEST_CASE("exit codes") {
    auto r = run({"frobnicate"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.find("unknown subcommand") != std::string::npos);

    CHECK(run({}).code == 2);
    CHECK(run({"cohomology", "--bogus", "1"}).code == 2);
    CHECK(run({"cohomology"}).code == 2);                                // missing --n
    CHECK(run({"--mode", "symbolic", "cohomology", "--n", "1"}).code == 2);
    CHECK(run({"--tol", "-1", "cohomology", "--n", "1"}).code == 2);
    CHECK(run({"--mode", "exact", "verify-holonomy"}).code == 2);
    CHECK(run({"--mode", "float", "check-tensor", "--a11", "x"}).code == 2);
    CHECK(run({"--help"}).code == 0);

    r = run({"cohomology", "--n", "-2"});
    CHECK(r.code == 1);
    CHECK(r.record()["error"]["code"] == "negative_n");

    r = run({"classify-cubic", "x0*x1*(x0+x2"});
    CHECK(r.code == 1);
    CHECK(r.record()["error"]["code"] == "parse_error");
    CHECK(r.record()["error"].contains("position"));

    r = run({"classify-cubic", "x0^2*x1 + x2"});
    CHECK(r.code == 1);
    CHECK(r.record()["error"]["code"] == "not_a_plane_cubic");

    r = run({"classify-surface", "--record", "{\"K2\": 1,"});
    CHECK(r.code == 1);
    CHECK(r.record()["error"]["code"] == "malformed_record");
}

TEST_CASE("tolerance from the environment") {
    ::setenv("POLYCURVE_TOL", "not-a-number", 1);
    CHECK(run({"cohomology", "--n", "2"}).code == 2);
    CHECK(run({"--tol", "1e-6", "cohomology", "--n", "2"}).code == 0);  // the flag wins
    ::setenv("POLYCURVE_TOL", "1e-7", 1);
    auto r = run({"--mode", "float", "classify-cubic", "x0^3 + x1^3 + x2^3"});
    CHECK(r.code == 0);
    CHECK(r.record()["class"] == "SmoothIrreducible");
    ::unsetenv("POLYCURVE_TOL");
}

TEST_CASE("batch mode") {
    const std::string three = "{\"P12\":0,\"q\":1,\"K2\":0}\n{\"K2\":9,\"chi\":1,\"P2\":2}\n{\"P12\":5,\"e\":0}\n";
    auto r = run({"classify-surface", "--input", temp_file("three.jsonl", three)});
    CHECK(r.code == 0);
    auto recs = r.records();
    REQUIRE(recs.size() == 4);
    CHECK(recs[0]["cover"] == "P1xC");
    CHECK(recs[1]["cover"] == "Ball");
    CHECK(recs[2]["cover"] == "CxH");
    CHECK(recs[3]["summary"]["records"] == 3);
    CHECK(recs[3]["summary"]["by_verdict"]["Ball"] == 1);

    const std::string bad = "{\"P12\":0,\"q\":1,\"K2\":0}\n{\"K2\": nine}\n{\"P12\":5,\"e\":0}\n";
    r = run({"classify-surface", "--input", "-"}, bad);
    CHECK(r.code == 1);
    recs = r.records();
    REQUIRE(recs.size() == 4);
    CHECK(recs[0]["cover"] == "P1xC");
    CHECK(recs[1]["error"]["line"] == 2);
    CHECK(recs[2]["cover"] == "CxH");
    CHECK(recs[3]["summary"]["errors"] == 1);

    r = run({"classify-surface", "--input", temp_file("empty.jsonl", "")});
    CHECK(r.code == 0);
    CHECK(r.out.empty());

    r = run({"classify-surface", "--input", "/nonexistent/records.jsonl"});
    CHECK(r.code == 1);
    CHECK(r.record()["error"]["code"] == "unreadable_file");

    // Field errors are per record; unknown fields are malformed.
    r = run({"classify-surface", "--input", "-"}, "{\"K3\": 1}\n");
    CHECK(r.code == 1);
    CHECK(r.records()[0]["error"]["field"] == "K3");

    // Cubic batches take plain polynomial lines too, in input order.
    r = run({"classify-cubic", "--input", "-"}, "x0*x1*x2\n{\"poly\": \"x0^3\"}\nx1^2*x2 - x0^3 - x0^2*x2\n");
    recs = r.records();
    REQUIRE(recs.size() == 4);
    CHECK(recs[0]["class"] == "ThreeGeneralLines");
    CHECK(recs[1]["class"] == "TripleLine");
    CHECK(recs[2]["class"] == "IrreducibleNodal");

    // A record array behaves like a batch.
    r = run({"classify-surface", "--record", "[{\"K2\":9,\"chi\":1,\"P2\":2}, {\"q\":0,\"p_g\":1,\"chi\":3}]"});
    recs = r.records();
    REQUIRE(recs.size() == 3);
    CHECK(recs[1]["cover"] == "Inconsistent");
}

TEST_CASE("human output") {
    auto r = run({"--output", "human", "cohomology", "--n", "3", "--a", "2", "--b", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "n=3  a=2  b=1  h0=2\n");
}

TEST_CASE("subcommand coverage") {
    auto r = run({"check-tensor", "--a11", "y^2", "--a12", "-x*y", "--a22", "x^2"});
    CHECK(r.code == 0);
    auto rec = r.record();
    CHECK(rec["nilpotent"]["beta"] == "x");
    CHECK(rec["nilpotent"]["gamma"] == "y");
    CHECK(rec["endomorphism"][1][0] == "y^2");

    r = run({"check-tensor", "--a11", "1", "--a12", "0", "--a22", "1"});
    CHECK(r.record()["eigendirections"].is_null());
    r = run({"check-tensor", "--a11", "1", "--a12", "0", "--a22", "1", "--field", "Qi"});
    CHECK(r.record()["eigendirections"].size() == 2);

    r = run({"check-tensor", "--perm", "2,1"});
    CHECK(r.record()["product_sign"] == "-1");

    r = run({"elliptic", "--b", "2", "--p_g", "2"});
    CHECK(r.record()["exists"] == false);
    r = run({"elliptic", "--weierstrass", "1"});
    CHECK(r.record()["weierstrass"]["b"] == 7);
    CHECK(r.record()["weierstrass"]["deg_KB"] == 12);
    r = run({"elliptic", "--b", "3", "--p_g", "3", "--chi", "5"});
    CHECK(r.code == 1);
    r = run({"elliptic", "--fibers", "2,3"});
    CHECK(r.code == 1);
    CHECK(r.record()["error"]["code"] == "bad_fiber");

    r = run({"--seed", "3", "verify-holonomy", "--samples", "50"});
    CHECK(r.code == 0);
    CHECK(r.record()["pass"] == true);
    CHECK(r.record()["seed"] == 3);
    CHECK(run({"--seed", "3", "verify-holonomy", "--samples", "50"}).out == r.out);  // reproducible

    r = run({"fixed-point", "--sigma", "1", "--psi", "1,1,0,1"});
    CHECK(r.record()["point"][0] == "inf");
    CHECK(r.record()["cycle_kinds"][0] == "parabolic");
    r = run({"--mode", "exact", "fixed-point", "--sigma", "2,1", "--psi", "2,0,0,1;1,1,0,1", "--choice", "smaller"});
    CHECK(r.record()["point"] == json::array({"-2", "-1"}));
    r = run({"--mode", "exact", "fixed-point", "--sigma", "1", "--psi", "0,-1,1,0"});
    CHECK(r.code == 1);
    CHECK(r.record()["error"]["code"] == "irrational_eigenvalues");
    r = run({"fixed-point", "--sigma", "1", "--psi", "0,-1,1,0"});
    CHECK(r.code == 0);
    r = run({"fixed-point", "--random", "50"});
    CHECK(r.record()["pass"] == true);
}
