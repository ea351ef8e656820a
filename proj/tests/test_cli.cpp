#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "fraisse/cli/cli.hpp"
#include "fraisse/io/certificate.hpp"

namespace fs = std::filesystem;
using fraisse::cli::run;
using fraisse::io::Json;

namespace {

struct Out {
  int code;
  std::string out;
  std::string err;
};

Out call(std::vector<std::string> args) {
  std::ostringstream o, e;
  int code = run(args, o, e);
  return {code, o.str(), e.str()};
}

fs::path scratch() {
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("fraisse_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string file(const std::string& name) { return (scratch() / name).string(); }

std::string build(const std::string& instance, int steps, const std::string& name) {
  auto r = call({"build", "--instance", instance, "--steps", std::to_string(steps), "--seed", "1", "--out", file(name)});
  REQUIRE(r.code == 0);
  return file(name);
}

}  // namespace

TEST_CASE("build with zero steps writes the seed only") {
  auto r = call({"build", "--instance", "metric-embed", "--steps", "0", "--seed", "3"});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["format"] == "fraisse-sequence/1");
  CHECK(j["objects"].size() == 1);
  CHECK(j["bondings"].empty());
  CHECK(j["log"].empty());
}

TEST_CASE("input errors exit with 2") {
  CHECK(call({"build", "--instance", "nope", "--steps", "1"}).code == 2);
  CHECK(call({"build", "--steps", "1"}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"check", "--property", "U", "--eps", "1", "--depth", "0", file("missing.json")}).code == 2);
  auto e = build("metric-embed", 4, "e4.json");
  CHECK(call({"check", "--property", "Z", "--eps", "1", "--depth", "0", e}).code == 2);
  CHECK(call({"check", "--property", "U", "--eps", "-1", "--depth", "0", e}).code == 2);
  CHECK(call({"check", "--property", "U", "--eps", "x/y", "--depth", "0", e}).code == 2);
  CHECK(call({"check", "--property", "P", "--tent", "--eps", "1/8", "--depth", "2", e}).code == 2);
  fraisse::io::write_file(file("garbage.json"), "{ not json");
  CHECK(call({"verify", file("garbage.json")}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("check U at the seed level returns the identity") {
  auto e = build("metric-embed", 4, "e4u.json");
  auto r = call({"check", "--property", "U", "--eps", "1", "--depth", "0", "--level", "0", e});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["verdict"] == "holds");
  CHECK(j["witness"]["m"] == 0);
  CHECK(j["witness"]["g"]["payload"] == Json::array({0}));
  CHECK(j["margins"]["mu"] == "0/1");
}

TEST_CASE("check P for the tent map") {
  auto pl = build("pl-interval", 40, "pl40.json");
  auto cert = file("p_tent.json");
  auto r = call({"check", "--property", "P", "--tent", "--eps", "1/8", "--depth", "40", pl, "--out", cert});
  CHECK(r.code == 0);
  CHECK(call({"verify", cert}).code == 0);
}

TEST_CASE("check G on a metric file is an input error, on a Banach file it holds") {
  auto e = build("metric-embed", 4, "e4g.json");
  CHECK(call({"check", "--property", "G", "--eps", "1/4", "--depth", "3", "--y", "linf:2", "--incl", "1;0", "--f", "1",
              e})
            .code == 2);
  auto b = build("banach", 25, "ban25.json");
  auto cert = file("g.json");
  CHECK(call({"check", "--property", "G", "--eps", "1/4", "--depth", "25", "--y", "linf:2", "--incl", "1;0", "--f", "1",
              b, "--out", cert})
            .code == 0);
  CHECK(call({"verify", cert}).code == 0);
  // Not an isometry.
  CHECK(call({"check", "--property", "G", "--eps", "1/4", "--depth", "25", "--y", "linf:2", "--incl", "1/2;0", "--f",
              "1", b})
            .code == 2);
}

TEST_CASE("bnf of a file with itself holds") {
  auto e = build("metric-embed", 12, "e12.json");
  auto cert = file("bnf.json");
  CHECK(call({"bnf", e, e, "--eps", "1", "--rounds", "3", "--out", cert}).code == 0);
  CHECK(call({"verify", cert}).code == 0);
}

TEST_CASE("embed and verify") {
  auto x = build("metric-embed", 5, "x5.json");
  auto u = build("metric-embed", 20, "u20.json");
  auto cert = file("embed.json");
  auto r = call({"embed", x, u, "--stages", "3", "--out", cert});
  CHECK(r.code == 0);
  CHECK(call({"verify", cert}).code == 0);
}

TEST_CASE("export of a three-object tower") {
  auto t = build("metric-embed", 4, "t3.json");
  REQUIRE(Json::parse(fraisse::io::read_file(t))["objects"].size() == 3);
  auto r = call({"export", t, "--dot"});
  REQUIRE(r.code == 0);
  std::size_t nodes = 0, edges = 0;
  std::istringstream in(r.out);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("->") != std::string::npos) {
      ++edges;
      CHECK(line.find("label=") != std::string::npos);
    } else if (line.rfind("  u", 0) == 0) {
      ++nodes;
    }
  }
  CHECK(nodes == 3);
  CHECK(edges == 2);
}

TEST_CASE("round trip is byte identical") {
  for (const char* inst : {"metric-embed", "metric-quotient", "pl-interval", "banach"}) {
    auto f = build(inst, 15, std::string("rt_") + inst + ".json");
    CHECK(call({"roundtrip", f}).code == 0);
    CHECK(call({"verify", f}).code == 0);
  }
}

TEST_CASE("tampered certificates and inputs are rejected") {
  auto e = build("metric-embed", 4, "tamper_in.json");
  auto cert = file("tamper.json");
  REQUIRE(call({"check", "--property", "U", "--eps", "1", "--depth", "2", e, "--out", cert}).code == 0);
  auto text = fraisse::io::read_file(cert);
  auto j = Json::parse(text);
  j["margins"]["mu"] = "1/2";
  fraisse::io::write_file(cert, fraisse::io::dump(j));
  CHECK(call({"verify", cert}).code == 1);
  fraisse::io::write_file(cert, text);
  CHECK(call({"verify", cert}).code == 0);
  build("metric-embed", 6, "tamper_in.json");
  CHECK(call({"verify", cert}).code == 2);
}

TEST_CASE("FORGE_DIM_CAP bounds Banach builds") {
  ::setenv("FORGE_DIM_CAP", "2", 1);
  auto f = build("banach", 20, "cap2.json");
  ::unsetenv("FORGE_DIM_CAP");
  auto j = Json::parse(fraisse::io::read_file(f));
  CHECK(j["params"]["dim_cap"] == 2);
  for (const auto& o : j["objects"]) CHECK(o["dim"].get<std::size_t>() <= 2);
}
