#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "wakimoto");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = wakimoto::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"verify", "--k", "1/0"}).code == 2);
  CHECK(run({"verify", "--k", "seven"}).code == 2);
  CHECK(run({"verify", "--chi", "1//3"}).code == 2);
  CHECK(run({"verify", "--D", "1", "--mode-bound", "1"}).code == 2);
  CHECK(run({"verify", "--D", "1/3", "--mode-bound", "0"}).code == 2);
  CHECK(run({"verify", "--output", "xml"}).code == 2);
  CHECK(run({"verify", "--space", "restricted", "--k", "1"}).code == 2);
  CHECK(run({"char", "--restricted", "--k", "1"}).code == 2);
  CHECK(run({"kk", "--bogus-flag"}).code == 2);
  CHECK(run({"verify", "--config", "/nonexistent/config.json"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli: verify") {
  const auto r = run({"verify", "--k", "7/3", "--chi", "1/3", "--D", "2", "--mode-bound", "1"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "361 relations, 0 failures"));
  const auto s = run({"verify", "--k", "symbolic", "--D", "1", "--mode-bound", "1/2"});
  CHECK(s.code == 0);
  CHECK(contains(s.out, "level symbolic"));
}

TEST_CASE("cli: config file values are overridden by flags") {
  const std::string path = "wakimoto_cli_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"k": "1", "chi": "1/3", "D": "1", "mode_bound": "1/2", "output": "json"})";
  }
  const auto from_file = run({"verify", "--config", path});
  CHECK(from_file.code == 0);
  const auto j = nlohmann::json::parse(from_file.out);
  CHECK(j["schema"] == 1);
  CHECK(j["reports"][0]["level"] == "1");
  const auto overridden = run({"verify", "--config", path, "--k", "0", "--output", "text"});
  CHECK(overridden.code == 0);
  CHECK(contains(overridden.out, "level 0 on tensor"));
  std::remove(path.c_str());
}

TEST_CASE("cli: char") {
  const auto r = run({"char", "--k", "1", "--chi", "2/7", "--D", "3"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "FOCK"));
  CHECK(contains(r.out, "VERMA"));
  CHECK(r.out.substr(r.out.rfind("DIFF")) == "DIFF\n");

  const auto c = run({"char", "--critical", "--restricted", "--D", "3"});
  CHECK(c.code == 0);
  CHECK(contains(c.out, "KK"));
  CHECK(c.out.substr(c.out.rfind("DIFF")) == "DIFF\n");

  const auto z = run({"char", "--D", "0"});
  CHECK(z.code == 0);
  CHECK(z.out == "degree 0: dimension 1\n");
}

TEST_CASE("cli: kk") {
  const auto g = run({"kk", "--k", "-3", "--chi", "7/5", "--bound", "10"});
  CHECK(g.code == 0);
  CHECK(contains(g.out, "generic: true"));
  const auto n = run({"kk", "--k", "-3", "--chi", "-1", "--bound", "10"});
  CHECK(n.code == 1);
  CHECK(contains(n.out, "generic: false"));
  const auto v = run({"kk", "--k", "-3", "--chi", "0", "--bound", "0"});
  CHECK(v.code == 0);
  CHECK(contains(v.out, "vacuous"));
}

TEST_CASE("cli: singular") {
  const auto r = run({"singular", "--k", "-3", "--chi", "7/5", "--deg", "2"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "vacuum only"));
  const auto n = run({"singular", "--k", "-3", "--chi", "-1", "--deg", "1"});
  CHECK(n.code == 1);
  CHECK(contains(n.out, "singular vectors found"));
  const auto t = run({"singular", "--k", "-3", "--chi", "7/5", "--deg", "1", "--space", "contragredient"});
  CHECK(t.code == 0);
}

TEST_CASE("cli: dump-currents") {
  const auto r = run({"dump-currents"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "(-1 - 2k)"));
  const auto j = run({"dump-currents", "--output", "json"});
  CHECK(j.code == 0);
  CHECK(nlohmann::json::parse(j.out)["currents"].size() == 8);
}

TEST_CASE("cli: JSON output is deterministic") {
  const std::vector<std::vector<std::string>> commands = {
      {"verify", "--k", "0,symbolic", "--D", "1", "--mode-bound", "1/2", "--output", "json"},
      {"char", "--k", "1", "--D", "2", "--output", "json"},
      {"kk", "--k", "-3", "--chi", "7/5", "--output", "json"},
      {"singular", "--k", "-3", "--chi", "-1", "--deg", "1", "--output", "json"},
      {"dump-currents", "--output", "json"},
  };
  for (const auto& c : commands) {
    const auto a = run(c);
    const auto b = run(c);
    CAPTURE(c[0]);
    CHECK(a.out == b.out);
    CHECK(nlohmann::json::parse(a.out)["schema"] == 1);
  }
}
