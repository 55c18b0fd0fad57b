#include "wittkit/cli.hpp"
#include "wittkit/normalize.hpp"
#include "wittkit/witt.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace wittkit;

namespace {

struct RunResult {
  int status;
  std::string out, err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string write_temp(const std::string &name, const std::string &content) {
  std::string path = std::string("/tmp/wittkit_test_") + name;
  std::ofstream f(path);
  f << content;
  return path;
}

} // namespace

TEST_CASE("witt subcommand: spec example F3 -> Z/4") {
  auto r = run({"witt", "--ring", "F3", "--flavor", "symmetric", "--cap", "4"});
  CHECK(r.status == 0);
  CHECK(r.out == "Z/4\n");
}

TEST_CASE("gw subcommand: spec example 8Z (+) Z inside Z (+) Z") {
  auto r = run({"gw", "--ring", "Z", "--flavor", "quadratic"});
  CHECK(r.status == 0);
  CHECK(r.out == "8Z (+) Z inside Z (+) Z\n");
}

TEST_CASE("check subcommand accepts a hyperbolic form and reports OK") {
  auto p = formcore::FormParameter::quadratic(exactalg::RingSpec::mod(2), 1);
  auto h = formcore::UnimodularForm::hyperbolic(p, 2);
  std::string path =
      write_temp("hyperbolic.json", formcore::form_to_json(h).dump());
  auto r = run({"check", "--in", path});
  CHECK(r.status == 0);
  CHECK(r.out.find("form OK") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("check subcommand: malformed JSON gives status 2 with line/column") {
  std::string path = write_temp("broken.json", "{\n  \"ring\": \"Z\",\n  oops\n}");
  auto r = run({"check", "--in", path});
  CHECK(r.status == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(r.err.find("column") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("check subcommand: invalid form gives status 2") {
  // gram with non-unit determinant
  std::string body = R"({"ring":"Z","flavor":"symmetric","epsilon":1,
    "gram":[["2"]],"q":["2"]})";
  std::string path = write_temp("badform.json", body);
  auto r = run({"check", "--in", path});
  CHECK(r.status == 2);
  CHECK(r.err.find("unit") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("witt subcommand: cap errors give status 3") {
  auto r = run({"qcat", "--ring", "F3", "--flavor", "symmetric", "--cap", "9",
                "--components"});
  CHECK(r.status == 3);
}

TEST_CASE("classify emits the CSV invariant table") {
  auto p = formcore::FormParameter::quadratic(exactalg::RingSpec::integers(), 1);
  auto e8 = formcore::e8_form(p);
  std::string path = write_temp("e8.json", formcore::form_to_json(e8).dump());
  auto r = run({"classify", "--in", path});
  CHECK(r.status == 0);
  CHECK(r.out.find("rank,signature,parity,det-class,witt-class") !=
        std::string::npos);
  CHECK(r.out.find("8,8,even,1,8") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("classify compares two forms") {
  auto p = formcore::FormParameter::symmetric(exactalg::RingSpec::integers(), 1);
  auto one = formcore::UnimodularForm::from_gram(
      p, exactalg::Matrix::from_rows(p.ring(), {{Int(1)}}));
  auto anti = formcore::UnimodularForm::from_gram(
      p, exactalg::Matrix::from_rows(p.ring(), {{Int(-1)}}));
  std::string a = write_temp("one.json", formcore::form_to_json(one).dump());
  std::string b = write_temp("anti.json", formcore::form_to_json(anti).dump());
  auto r = run({"classify", "--in", a, "--other", b});
  CHECK(r.status == 0);
  CHECK(r.out.find("isometric: no") != std::string::npos);
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("normalize subcommand: form in degree 0 round-trips with log") {
  auto p = formcore::FormParameter::quadratic(exactalg::RingSpec::integers(), 1);
  auto x = qsurgery::QuadraticComplex::from_form(
      formcore::UnimodularForm::hyperbolic(p, 1));
  std::string path =
      write_temp("complex.json", qsurgery::quadratic_to_json(x).dump());
  std::string log = "/tmp/wittkit_test_steps.jsonl";
  std::string outj = "/tmp/wittkit_test_form.json";
  auto r = run({"normalize", "--in", path, "--log", log, "--out", outj});
  CHECK(r.status == 0);
  CHECK(r.out.find("recovered form: rank 2") != std::string::npos);
  CHECK(r.out.find("signature: 0") != std::string::npos);
  // the emitted form parses back
  std::ifstream f(outj);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  auto back = formcore::form_from_json(nlohmann::json::parse(ss.str()));
  CHECK(back.rank() == 2);
  std::remove(path.c_str());
  std::remove(log.c_str());
  std::remove(outj.c_str());
}

TEST_CASE("qcat subcommand prints the partition and writes DOT") {
  std::string dot = "/tmp/wittkit_test_quiver.dot";
  auto r = run({"qcat", "--ring", "F2", "--flavor", "symmetric", "--cap", "2",
                "--components", "--dot", dot});
  CHECK(r.status == 0);
  CHECK(r.out.find("components: 2") != std::string::npos);
  std::ifstream f(dot);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str().find("digraph") != std::string::npos);
  std::remove(dot.c_str());
}

TEST_CASE("reports are byte-for-byte reproducible") {
  auto a = run({"witt", "--ring", "F2", "--flavor", "quadratic", "--cap", "4",
                "--seed", "7"});
  auto b = run({"witt", "--ring", "F2", "--flavor", "quadratic", "--cap", "4",
                "--seed", "7"});
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
}
