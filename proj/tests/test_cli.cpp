#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sidon/cli.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Outcome run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = sidon::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / ("sidon_cli_test_" + name);
  std::ofstream(p) << content;
  return p.string();
}

// every leaf number in a report is an integer; reals travel as strings
bool no_bare_floats(const json& j) {
  if (j.is_number_float()) return false;
  if (j.is_structured())
    for (const auto& e : j)
      if (!no_bare_floats(e)) return false;
  return true;
}

}  // namespace

TEST_CASE("generate writes the shared text format") {
  Outcome o = run({"generate", "--pattern", "sidon", "--count", "10"});
  CHECK(o.code == 0);
  CHECK(o.out == "1\n2\n4\n8\n13\n21\n31\n45\n66\n81\n");

  Outcome j = run({"--format", "json", "generate", "--count", "10"});
  REQUIRE(j.code == 0);
  json r = j.report();
  CHECK(r["command"] == "generate");
  CHECK(r["results"]["terms"] == json::array({1, 2, 4, 8, 13, 21, 31, 45, 66, 81}));
  CHECK(r.contains("provenance"));

  Outcome z = run({"generate", "--preset", "zhang", "--count", "15"});
  CHECK(z.out.substr(z.out.rfind('\n', z.out.size() - 2) + 1) == "229\n");
  CHECK(run({"generate", "--cap", "100"}).out == run({"generate", "--count", "11"}).out);
  CHECK(run({"generate"}).code == 2);
  CHECK(run({"generate", "--count", "3", "--cap", "9"}).code == 2);
  CHECK(run({"generate", "--preset", "ruzsa", "--count", "3"}).code == 2);
}

TEST_CASE("generate then verify round-trips for every pattern and preset") {
  std::vector<std::vector<std::string>> gens = {
      {"generate", "--count", "40"},
      {"generate", "--pattern", "sum-free", "--count", "30"},
      {"generate", "--pattern", "bhg", "--h", "2", "--g", "2", "--count", "30"},
      {"generate", "--pattern", "bhg", "--h", "3", "--g", "1", "--count", "12"},
      {"generate", "--preset", "mian-chowla", "--count", "50"},
      {"generate", "--preset", "zhang", "--count", "50"},
  };
  for (auto g : gens) {
    Outcome o = run(g);
    REQUIRE(o.code == 0);
    std::vector<std::string> v{"verify"};
    for (std::size_t i = 1; i < g.size(); ++i)
      if (g[i] == "--pattern" || g[i] == "--h" || g[i] == "--g") {
        v.push_back(g[i]);
        v.push_back(g[i + 1]);
      }
    Outcome check = run(v, o.out);
    INFO(o.out);
    CHECK(check.code == 0);
    CHECK(check.report()["results"]["holds"] == true);
  }
}

TEST_CASE("verify reports the collision") {
  Outcome o = run({"verify", "--pattern", "sidon"}, "1\n2\n3\n");
  CHECK(o.code == 1);
  json r = o.report();
  CHECK(r["results"]["holds"] == false);
  CHECK(r["results"]["holds_by_differences"] == false);
  CHECK(r["results"]["violation"]["description"] == "1+3 = 2+2");

  std::string path = temp_file("verify", "1\n2\n4\n8\n");
  CHECK(run({"verify", path}).code == 0);
}

TEST_CASE("malformed input exits 2 with the line number") {
  Outcome o = run({"verify"}, "1\n5\n5\n");
  CHECK(o.code == 2);
  CHECK(o.err.find("line 3") != std::string::npos);
  Outcome p = run({"sum"}, "1\nabc\n");
  CHECK(p.code == 2);
  CHECK(p.err.find("line 2") != std::string::npos);
  CHECK(run({"verify", "/nonexistent/file"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("tail and sum") {
  Outcome t = run({"tail", "--rule", "lindstrom-sharp", "--n", "1100"});
  REQUIRE(t.code == 0);
  json r = t.report();
  CHECK(r["results"]["rendered"] == "≤ 0.000947");
  CHECK(r["results"]["upper"]["hi"] == "0.000947");
  CHECK(no_bare_floats(r));
  CHECK(run({"tail", "--rule", "lindstrom-sharp", "--n", "1"}).code == 2);
  CHECK(run({"tail"}).code == 2);

  Outcome s = run({"sum", "--alpha", "1"}, "1\n2\n4\n");
  REQUIRE(s.code == 0);
  CHECK(s.report()["results"]["partial_sum"]["value"] == "7/4");
  Outcome w = run({"sum", "--rule", "lindstrom-sharp"}, "1\n2\n4\n");
  REQUIRE(w.code == 0);
  CHECK(w.report()["parameters"]["rule"] == "lindstrom-sharp(4)");
}

TEST_CASE("ddc reports list every block") {
  Outcome d = run({"ddc", "--mode", "differential"});
  REQUIRE(d.code == 0);
  json r = d.report();
  CHECK(r["results"]["blocks"].size() == 3);
  CHECK(r["results"]["blocks"][0]["externally_sourced"] == true);
  CHECK(r["results"]["upper_bound"] == "2.24730700");
  CHECK(no_bare_floats(r));

  Outcome s = run({"ddc"});
  REQUIRE(s.code == 0);
  json q = s.report();
  CHECK(q["results"]["blocks"][0]["externally_sourced"] == false);
  CHECK(sidon::parse_rational(q["results"]["upper_bound"].get<std::string>()) < sidon::rational(237366, 100000));

  Outcome l = run({"--format", "table", "ddc", "--mode", "levine"});
  CHECK(l.code == 0);
  CHECK(l.out.find("results.upper_bound") != std::string::npos);
}

TEST_CASE("search, sweeps and determinism") {
  Outcome a = run({"search", "--n-cap", "20"});
  REQUIRE(a.code == 0);
  CHECK(a.report()["results"]["optimum_set"][2] == 4);
  CHECK(run({"search", "--n-cap", "20"}).out == a.out);

  Outcome o = run({"search", "--n-cap", "16", "--oracle", "--pattern", "sum-free"});
  CHECK(o.code == 0);

  Outcome c1 = run({"--format", "csv", "search", "--from", "8", "--to", "20", "--workers", "1"});
  Outcome c4 = run({"--format", "csv", "search", "--from", "8", "--to", "20", "--workers", "4"});
  CHECK(c1.code == 0);
  CHECK(c1.out == c4.out);
  CHECK(c1.out.rfind("n_cap,objective_lo", 0) == 0);

  Outcome k = run({"search", "--k", "4", "--value-cap", "20"});
  CHECK(k.report()["results"]["objective"]["value"] == "15/8");

  Outcome b = run({"search", "--n-cap", "60", "--max-nodes", "50"});
  CHECK(b.code == 3);
  CHECK(b.report()["results"]["status"] == "lower-bound-only");
  CHECK(run({"search", "--k", "5", "--value-cap", "5"}).code == 3);
  CHECK(run({"search"}).code == 2);
}

TEST_CASE("crosscheck, cover and saturate") {
  std::string mc50 = run({"generate", "--count", "50"}).out;
  Outcome x = run({"crosscheck"}, mc50);
  INFO(x.out << x.err);
  CHECK(x.code == 0);
  json r = x.report();
  CHECK(r["results"]["passed"] == true);
  CHECK(r["results"]["mellin"].size() == 3);
  CHECK(no_bare_floats(r));

  Outcome s = run({"crosscheck", "--check", "structure"}, "1\n2\n3\n");
  CHECK(s.code == 0);
  CHECK(s.report()["results"]["structure"]["sidon"] == false);

  Outcome cov = run({"cover", "--m-max", "8"}, "1\n2\n4\n");
  CHECK(cov.report()["results"]["uncovered"] == json::array({8}));

  Outcome sat = run({"saturate", "--cap", "21"}, "1\n2\n4\n8\n13\n");
  CHECK(sat.out == "1\n2\n4\n8\n13\n21\n");
  Outcome satj = run({"--format", "json", "saturate", "--cap", "21"}, "1\n2\n4\n8\n13\n");
  CHECK(satj.report()["results"]["added"] == json::array({21}));
  CHECK(satj.report()["results"]["uncovered_through_cap"].empty());
}

TEST_CASE("the installed executable behaves like run()") {
  const char* exe = std::getenv("SIDON_CLI");
  if (!exe) SKIP("SIDON_CLI not set");
  std::string cmd = std::string(exe) + " generate --count 10";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[256];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  int status = pclose(pipe);
  CHECK(status == 0);
  CHECK(out == "1\n2\n4\n8\n13\n21\n31\n45\n66\n81\n");

  std::string bad = temp_file("bad", "3\n1\n");
  CHECK(WEXITSTATUS(std::system((std::string(exe) + " verify " + bad + " 2>/dev/null >/dev/null").c_str())) == 2);
  std::string col = temp_file("col", "1\n2\n3\n");
  CHECK(WEXITSTATUS(std::system((std::string(exe) + " verify < " + col + " >/dev/null").c_str())) == 1);
}
