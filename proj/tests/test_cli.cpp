#include <doctest.h>

#include <sstream>

#include "iq/cli.hpp"
#include "iq/json_io.hpp"

using namespace iq;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return RunResult{code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("field command") {
  RunResult r = run({"field", "-3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("(1+sqrt(-3))/2") != std::string::npos);
  CHECK(r.out.find("Euclidean: yes") != std::string::npos);
  CHECK(r.out.find("units (6)") != std::string::npos);

  RunResult j = run({"field", "-19", "--json"});
  CHECK(j.code == 0);
  json parsed = json::parse(j.out);
  CHECK(parsed["euclidean"] == false);
  CHECK(parsed["units"].size() == 2);

  CHECK(run({"field", "-5"}).code == 3);
}

TEST_CASE("usage errors exit with 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"torsion"}).code == 1);          // missing --curve
  CHECK(run({"no-such-command"}).code == 1);
  RunResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("torsion") != std::string::npos);
}

TEST_CASE("parse errors exit with 2") {
  CHECK(run({"torsion", "--D", "-1", "--curve", "{not json"}).code == 2);
  CHECK(run({"factor", "--D", "-1", "--elem", "(1+2w)/3"}).code == 2);
  CHECK(run({"order", "--D", "-1", "--curve",
             R"({"A":[4,0,1],"B":[0,0,1]})", "--point", R"({"x":[1,0,1]})"})
            .code == 2);
}

TEST_CASE("domain errors exit with 3") {
  CHECK(run({"torsion", "--D", "-1", "--curve", R"({"A":[-3,0,1],"B":[2,0,1]})"})
            .code == 3);  // singular
  CHECK(run({"order", "--D", "-1", "--curve", R"({"A":[4,0,1],"B":[0,0,1]})",
             "--point", R"({"x":[1,0,1],"y":[1,0,1]})"})
            .code == 3);  // off the curve
  CHECK(run({"torsion", "--D", "-7", "--curve",
             R"({"D":-1,"A":[4,0,1],"B":[0,0,1]})"})
            .code == 3);  // D disagreement
}

TEST_CASE("budget errors exit with 4") {
  CHECK(run({"factor", "--D", "-1", "--elem", "[2000000,1,1]"}).code == 4);
}

TEST_CASE("factor command round trip") {
  RunResult r = run({"factor", "--D", "-1", "--elem", "[5,0,1]", "--json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["factors"].size() == 2);
  // the text form parses too
  RunResult r2 = run({"factor", "--D", "-1", "--elem", "(5+0*w)/1", "--json"});
  CHECK(r2.code == 0);
  CHECK(json::parse(r2.out) == j);
}

TEST_CASE("normalize command") {
  RunResult r = run({"normalize", "--D", "-1", "--curve",
                     R"({"A":[1,0,2],"B":[0,0,1]})", "--json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["normalization"]["c"] == 2);
  CHECK(j["curve"]["A"] == json::parse("[8,0,1]"));
  CHECK(j["curve"]["B"] == json::parse("[0,0,1]"));
}

TEST_CASE("torsion command finds the order-4 point and reparses") {
  RunResult r = run({"torsion", "--D", "-1", "--curve",
                     R"({"A":[4,0,1],"B":[0,0,1]})", "--json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["torsion"]["structure"] == "Z/2xZ/4");
  bool has_order4 = false;
  for (const json& v : j["torsion"]["verdicts"])
    if (v["order"] == 4) has_order4 = true;
  CHECK(has_order4);
  // wire round trip: the reported model and points re-parse exactly
  Curve model = curve_from_json(j["model"]);
  for (const json& pj : j["torsion"]["points"])
    CHECK(on_curve(point_from_json(pj, model.field()), model));
}

TEST_CASE("torsion auto-normalizes rational input") {
  RunResult r = run({"torsion", "--D", "-1", "--curve",
                     R"({"A":[1,0,4],"B":[0,0,1]})", "--json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.contains("normalization"));
  CHECK(j["model"]["A"] == json::parse("[64,0,1]"));  // c = 4, A' = c^3 * 1 * 1
}

TEST_CASE("order and check commands") {
  RunResult r = run({"order", "--D", "-1", "--curve",
                     R"({"A":[4,0,1],"B":[0,0,1]})", "--point",
                     R"({"x":[2,0,1],"y":[4,0,1]})", "--json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["result"]["status"] == "finite");
  CHECK(j["result"]["order"] == 4);

  RunResult chk = run({"check", "--D", "-1", "--curve",
                       R"({"A":[0,0,1],"B":[3,0,1]})", "--point",
                       R"({"x":[-23,0,16],"y":[-11,0,64]})", "--json"});
  CHECK(chk.code == 0);
  json cj = json::parse(chk.out);
  CHECK(cj["on_curve"] == true);
  CHECK(cj["in_OK"] == false);
  CHECK(cj["order"]["status"] == "proved_infinite");
  REQUIRE(cj["filtration"].size() == 1);
  CHECK(cj["filtration"][0]["q"] == 4);
  CHECK(cj["filtration"][0]["r"] == 4);
}

TEST_CASE("verify-paper on the separating curve") {
  RunResult r = run({"verify-paper", "--D", "-3", "--curve",
                     R"({"A":[0,0,1],"B":[1,0,1]})", "--json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["in_OK_violations"] == 0);
  CHECK(j["in_ZsqrtD_failures"] == 2);
  CHECK(j["failures"].size() == 2);
}

TEST_CASE("verify-paper corpus runs are deterministic") {
  std::vector<std::string> args = {"verify-paper", "--corpus",
                                   R"({"D":-2,"coeff_bound":4,"count":6,"seed":7})",
                                   "--height", "20", "--json"};
  RunResult a = run(args);
  RunResult b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  json j = json::parse(a.out);
  CHECK(j["curves"] == 6);
  CHECK(j["in_OK_violations"] == 0);
  // --seed overrides the corpus seed
  RunResult c = run({"verify-paper", "--corpus",
                     R"({"D":-2,"coeff_bound":4,"count":6,"seed":7})", "--seed",
                     "8", "--height", "20", "--json"});
  CHECK(c.code == 0);
  CHECK(json::parse(c.out)["spec"]["seed"] == 8);
}
