#include <doctest.h>

#include <random>
#include <sstream>

#include "cli.hpp"
#include "sclean/serialize.hpp"
#include "sclean/verify.hpp"
#include "test_support.hpp"

using namespace sclean;
using namespace testsupport;
using nlohmann::json;

namespace {

struct Run {
  int rc;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int rc = cli::cli_run(args, out, err);
  return {rc, out.str(), err.str()};
}

const std::string kZ2Z2 = R"({"type":"product","factors":[{"type":"zloc","p":2},{"type":"zloc","p":2}]})";

}  // namespace

TEST_CASE("element JSON round trip") {
  const std::vector<Ring> rings{Ring::zmod(360), Ring::zloc(3), Ring::build(json::parse(kZ2Z2)),
                                Ring::build({{"type", "product"}, {"factors", {{{"type", "zmod"}, {"n", 6}}, {{"type", "zloc"}, {"p", 5}}}}})};
  std::mt19937_64 rng(2);
  for (const auto& r : rings)
    for (int i = 0; i < 30; ++i) {
      const Element x = random_element(r, rng);
      CHECK(element_from_json(r, to_json(x)) == x);
    }
  CHECK(to_json(Ring::zmod(12).from_int(7)) == json(7));
}

TEST_CASE("matrix and polynomial JSON round trip") {
  const Ring r = Ring::zmod(10);
  const Matrix a = Matrix::from_ints(r, {{1, 2}, {3, 4}});
  CHECK(matrix_from_json(r, to_json(a)) == a);
  const auto h = MonicPoly::from_ints(r, {3, 0, 1});
  CHECK(monic_from_json(r, to_json(h.poly())) == h);
  CHECK_THROWS(monic_from_json(r, json::parse("[1,2]")));
}

TEST_CASE("certificate JSON re-verifies and detects tampering") {
  const Ring r = Ring::zmod(12);
  const auto h = MonicPoly::from_ints(r, {2, 3, 1});
  const auto g = gsrc_search(h);
  REQUIRE(g.found());
  json doc = certificate_json(*g.value);
  CHECK(verify_certificate_json(doc));
  CHECK(verify_gsrc(gsrc_from_json(doc)));
  doc["blocks"][0]["f0"][0] = 6;
  CHECK_FALSE(verify_certificate_json(doc));
}

TEST_CASE("cli: documented examples") {
  const auto yes = run({"decide", "--ring", kZ2Z2, "--poly", "[[2,3],[3,1],[1,1]]", "--companion"});
  CHECK(yes.rc == 0);
  const json y = json::parse(yes.out);
  CHECK(y["verdict"] == "Yes");
  CHECK(y["route"] == "gSRC");
  CHECK(y["gsrc"]["blocks"].size() == 2);

  const auto no = run({"decide", "--ring", R"({"type":"zloc","p":2})", "--poly", "[2,-1,1]", "--companion"});
  CHECK(no.rc == 0);
  CHECK(json::parse(no.out)["verdict"] == "No");

  const auto audit = run({"audit", "--ring", R"({"type":"zmod","n":6})", "--degree", "2"});
  CHECK(audit.rc == 0);
  const json a = json::parse(audit.out);
  CHECK(a["instances"] == 36);
  CHECK(a["disagreements"].empty());
}

TEST_CASE("cli: determinism") {
  const std::vector<std::vector<std::string>> cmds{
      {"decide", "--ring", kZ2Z2, "--poly", "[[2,3],[3,1],[1,1]]", "--companion"},
      {"audit", "--ring", R"({"type":"zmod","n":4})", "--degree", "2", "--workers", "3"},
      {"z5-example"},
      {"factor", "--ring", R"({"type":"zmod","n":6})", "--poly", "[2,3,1]", "--mode", "sp"},
      {"ring", "--ring", R"({"type":"zmod","n":60})"},
  };
  for (const auto& c : cmds) {
    const auto first = run(c), second = run(c);
    CHECK(first.rc == 0);
    CHECK(first.out == second.out);
  }
}

TEST_CASE("cli: every emitted certificate round-trips through --verify") {
  const std::vector<std::vector<std::string>> cmds{
      {"decide", "--ring", kZ2Z2, "--poly", "[[2,3],[3,1],[1,1]]", "--companion"},
      {"decide", "--ring", R"({"type":"zmod","n":8})", "--degree", "2"},
      {"pi-regular", "--ring", R"({"type":"zmod","n":6})", "--matrix", "[[2,1],[0,3]]"},
      {"factor", "--ring", R"({"type":"zmod","n":6})", "--poly", "[2,3,1]", "--mode", "sp"},
      {"factor", "--ring", R"({"type":"zmod","n":12})", "--poly", "[2,3,1]"},
      {"z5-example"},
  };
  for (const auto& c : cmds) {
    const auto r = run(c);
    REQUIRE(r.rc == 0);
    const auto v = run({"--verify", r.out});
    INFO(c[0], " ", r.out.substr(0, 200));
    CHECK(v.rc == 0);
    CHECK(json::parse(v.out)["ok"] == true);
  }
}

TEST_CASE("cli: exit codes") {
  CHECK(run({"decide"}).rc == 1);
  CHECK(run({"nonsense"}).rc == 1);
  CHECK(run({"decide", "--ring", "{bad json"}).rc == 1);
  CHECK(run({"decide", "--ring", R"({"type":"zmod","n":6})", "--matrix", "[[1,2,3]]"}).rc == 1);
  const auto budget = run({"decide", "--ring", R"({"type":"zmod","n":64})", "--degree", "3", "--budget", "10"});
  CHECK(budget.rc == 2);
  CHECK(json::parse(budget.out)["verdict"] == "Unknown");
  CHECK(run({"--verify", R"({"kind":"strong_clean","ring":{"type":"zmod","n":4},"A":[[1]],"E":[[1]],"U":[[1]],"U_inv":[[1]]})"}).rc == 3);
  CHECK(run({"--help"}).rc == 0);
}
