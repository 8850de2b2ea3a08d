#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mhlab/rational.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(MHLAB_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("mhlab_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("analyze writes a complete report") {
  TempDir dir;
  Run r = run("analyze \"y2^4+y1^12\" --json " + (dir / "r.json") + " --svg " + (dir / "r.svg"));
  CHECK(r.code == 0);
  CHECK(r.out.find("case C") != std::string::npos);
  auto j = ordered_json::parse(slurp(dir / "r.json"));
  for (const char* key : {"input", "kappa", "d_h", "factorization", "N", "hessian", "case", "conditions", "vertices",
                          "endpoints", "flags", "notes"})
    CHECK(j.contains(key));
  CHECK(j["tool"]["version"] == MHLAB_VERSION);
  CHECK(j["input"] == "y2^4+y1^12");
  CHECK(j["case"] == "C");
  CHECK(mhlab::parse_rat(j["d_h"].get<std::string>()) == 3);
  CHECK(j["hessian"]["T"] == 10);
  CHECK(j["N"] == 0);
  CHECK(j["kappa"]["s"] == 1);
  CHECK(j["kappa"]["swapped"] == false);
  CHECK(j["factorization"]["factors"].size() == 1);
  CHECK(mhlab::parse_rat(j["endpoints"]["summability"]["u"].get<std::string>()) == mhlab::rat(13, 16));
  CHECK(slurp(dir / "r.svg").find("<polygon") != std::string::npos);
  for (const auto& e : fs::directory_iterator(dir.path)) CHECK(e.path().extension() != ".tmp");
}

TEST_CASE("reports are byte-identical across runs") {
  TempDir dir;
  run("analyze \"y2^4+y2^2*y1^6-y2*y1^9+y1^12\" --json " + (dir / "a.json"));
  run("analyze \"y2^4+y2^2*y1^6-y2*y1^9+y1^12\" --json " + (dir / "b.json"));
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  run("verify-lemmas --seed 3 --count 10 --json " + (dir / "l1.json"));
  run("verify-lemmas --seed 3 --count 10 --json " + (dir / "l2.json"));
  CHECK(slurp(dir / "l1.json") == slurp(dir / "l2.json"));
}

TEST_CASE("exit codes") {
  TempDir dir;
  Run ex = run("analyze \"y1^2*y2^2\" --json " + (dir / "x.json"));
  CHECK(ex.code == 2);
  CHECK(ex.out.find("Monomial") != std::string::npos);
  CHECK(ordered_json::parse(slurp(dir / "x.json"))["reason"] == "Monomial");

  Run bad = run("analyze \"y1 + * y2\"");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("position 5") != std::string::npos);

  CHECK(run("analyze").code == 1);
  CHECK(run("no-such-command").code == 1);
  CHECK(run("--help").code == 0);
}

TEST_CASE("third worked example") {
  Run r = run("analyze \"y1^5+y2*y1^3+9/40*y2^2*y1\"");
  CHECK(r.code == 0);
  CHECK(r.out.find("d_h = 5/3") != std::string::npos);
  CHECK(r.out.find("T = 2") != std::string::npos);
}

TEST_CASE("irrational input falls back to the advisory classifier") {
  TempDir dir;
  Run r = run("analyze \"y1*(y2+y1^3)*(y2+(5+sqrt(21))/2*y1^3)\" --json " + (dir / "d.json"));
  CHECK(r.code == 0);
  auto j = ordered_json::parse(slurp(dir / "d.json"));
  CHECK(j["flags"]["advisory"] == true);
  CHECK(j["case"] == "D");
  CHECK(mhlab::parse_rat(j["d_h"].get<std::string>()) == mhlab::rat(7, 4));
  CHECK(j["hessian"]["T"] == 2);
}

TEST_CASE("region command") {
  TempDir dir;
  Run r = run("region \"y2^4+y1^12\" --json " + (dir / "g.json") + " --csv " + (dir / "g.csv"));
  CHECK(r.code == 0);
  auto j = ordered_json::parse(slurp(dir / "g.json"));
  CHECK(j.contains("vertices"));
  CHECK(slurp(dir / "g.csv").find("13/16,9/16,0") != std::string::npos);
}

TEST_CASE("verification commands") {
  TempDir dir;
  Run l = run("verify-lemmas --seed 7 --count 20");
  CHECK(l.code == 0);
  CHECK(l.out.find("FAIL") == std::string::npos);

  Run s = run("verify-scaling \"(y2-y1^2)^2\" --family c2 --pq 4/3,4 --csv " + (dir / "s.csv") + " --json " + (dir / "s.json"));
  CHECK(s.code == 0);
  auto sj = ordered_json::parse(slurp(dir / "s.json"));
  CHECK(std::abs(sj["fitted_slope"].get<double>() - 2.25) < 0.1);
  CHECK(slurp(dir / "s.csv").rfind("delta,", 0) == 0);

  Run d = run("verify-decay \"(y2-y1^2)^3\" --l 1 --j 1 --k 6 --rays e2,e3");
  CHECK(d.code == 0);

  Run c = run("search-case-d --seed 1 --trials 200");
  CHECK(c.code == 0);
  CHECK(c.out.find("case D instances") != std::string::npos);

  CHECK(run("verify-scaling \"y2^4+y1^12\" --family n1").code == 1);
}
