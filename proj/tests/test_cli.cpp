#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

std::string bin() {
  const char *b = std::getenv("MUBSDP_BIN");
  REQUIRE(b != nullptr);
  return b;
}

Run run(const std::string &args, const std::string &env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + "'" + bin() + "' " + args + " 2>&1";
  FILE *p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p)) out += buf.data();
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::map<std::string, std::string> keys(const std::string &out) {
  std::map<std::string, std::string> kv;
  std::istringstream is(out);
  for (std::string line; std::getline(is, line);) {
    auto eq = line.find('=');
    if (eq != std::string::npos && line.find(' ') > eq) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

std::string slurp(const fs::path &p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("mubsdp_cli_" + std::to_string(::getpid()) + "_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

// Stand-in for an SDPA binary: copies a fixed phase line to the output file.
fs::path fake_solver(const fs::path &dir, const std::string &phase) {
  auto p = dir / ("solver_" + phase + ".sh");
  std::ofstream f(p);
  f << "#!/bin/sh\necho \"input $1\" > \"$2\"\necho \"phase.value = " << phase << "\" >> \"$2\"\n";
  f.close();
  fs::permissions(p, fs::perms::owner_all);
  return p;
}

}  // namespace

TEST_CASE("stats prints table and key=value lines") {
  auto r = run("stats --d 2 --k 2 --t 2");
  CHECK(r.code == 0);
  auto kv = keys(r.out);
  CHECK(kv["size"] == "16");
  CHECK(kv["mode"] == "full");
  CHECK(kv["result"] == "-");
  CHECK(r.out.find("d k t size vars linear sum max result") != std::string::npos);
  CHECK(run("stats --d 2 --k 2 --t 2").out == r.out);
}

TEST_CASE("bases-only stats") {
  auto r = run("stats --d 2 --k 4 --t 4.5 --mode bases_only");
  CHECK(r.code == 0);
  auto kv = keys(r.out);
  CHECK(kv["size"] == "256");
  CHECK(kv["vars"] == "5");
  CHECK(kv["t"] == "4.5");
}

TEST_CASE("check reports linear infeasibility") {
  auto r = run("check --d 2 --k 4 --t 4.5");
  CHECK(r.code == 10);
  auto kv = keys(r.out);
  CHECK(kv["verdict"] == "infeasible");
  CHECK(kv["vars"] == "7");
  CHECK(kv["linear"] == "8");
  CHECK(r.out.find("witness.") != std::string::npos);

  auto ok = run("check --d 2 --k 3 --t 3");
  CHECK(ok.code == 0);
  CHECK(keys(ok.out)["verdict"] == "undetermined");
}

TEST_CASE("invalid arguments") {
  CHECK(run("stats --d 1 --k 2 --t 2").code == 1);
  CHECK(run("stats --d 2 --k 2 --t 2.3").code == 1);
  CHECK(run("stats --d 2 --k 2 --t 2 --mode nope").code == 1);
  CHECK(run("").code != 0);
}

TEST_CASE("generate is deterministic") {
  TempDir a, b;
  auto r1 = run("generate --d 2 --k 3 --t 2 --out '" + a.path.string() + "'");
  auto r2 = run("generate --d 2 --k 3 --t 2 --out '" + b.path.string() + "' --threads 1");
  REQUIRE(r1.code == 0);
  REQUIRE(r2.code == 0);
  auto dat = "sdp_d2_k3_t2_full.dat-s", side = "sdp_d2_k3_t2_full.txt";
  REQUIRE(fs::exists(a.path / dat));
  CHECK(slurp(a.path / dat) == slurp(b.path / dat));
  CHECK(slurp(a.path / side) == slurp(b.path / side));
  CHECK(slurp(a.path / side).find("verdict=undetermined") != std::string::npos);
}

TEST_CASE("generate on a linearly infeasible level writes only the sidecar") {
  TempDir dir;
  auto r = run("generate --d 2 --k 4 --t 4.5 --out '" + dir.path.string() + "'");
  CHECK(r.code == 10);
  CHECK(!fs::exists(dir.path / "sdp_d2_k4_t4.5_full.dat-s"));
  auto side = slurp(dir.path / "sdp_d2_k4_t4.5_full.txt");
  CHECK(side.find("verdict=infeasible(linear)") != std::string::npos);
  CHECK(side.find("witness.") != std::string::npos);
}

TEST_CASE("bases-only export has five variables") {
  TempDir dir;
  auto r = run("generate --d 2 --k 4 --t 4.5 --mode bases_only --out '" + dir.path.string() + "'");
  CHECK(r.code == 0);
  CHECK(keys(r.out)["free_vars"] == "5");
  std::istringstream is(slurp(dir.path / "sdp_d2_k4_t4.5_bases_only.dat-s"));
  std::string line;
  while (std::getline(is, line) && line[0] == '*') {
  }
  CHECK(line == "5");
}

TEST_CASE("solver round trip through a stand-in solver") {
  TempDir dir;
  auto inf = fake_solver(dir.path, "pINF");
  auto opt = fake_solver(dir.path, "pdOPT");
  auto out = "--out '" + dir.path.string() + "'";
  auto r = run("generate --d 2 --k 2 --t 2 " + out + " --solver '" + inf.string() + "'");
  CHECK(r.code == 11);
  CHECK(keys(r.out)["result"] == "infeasible");
  auto r2 = run("stats --d 2 --k 2 --t 2 " + out, "MUBSDP_SOLVER='" + opt.string() + "'");
  CHECK(r2.code == 0);
  CHECK(keys(r2.out)["result"] == "feasible");
  auto parsed = run("parse '" + (dir.path / "sdp_d2_k2_t2_full.dat-s.out").string() + "'");
  CHECK(parsed.code == 0);
  CHECK(keys(parsed.out)["result"] == "feasible");
}

TEST_CASE("parse") {
  TempDir dir;
  auto write = [&](const std::string &name, const std::string &text) {
    std::ofstream(dir.path / name) << text;
    return "'" + (dir.path / name).string() + "'";
  };
  auto a = run("parse " + write("a", "phase.value = pdOPT\n"));
  CHECK(a.code == 0);
  CHECK(keys(a.out)["result"] == "feasible");
  auto b = run("parse " + write("b", "phase.value = dINF\n"));
  CHECK(b.code == 11);
  CHECK(keys(b.out)["result"] == "infeasible");
  auto c = run("parse " + write("c", "phase.value = noINFO\n"));
  CHECK(c.code == 0);
  CHECK(keys(c.out)["result"] == "unknown");
  CHECK(run("parse " + write("d", "garbage\n")).code == 1);
}

TEST_CASE("selftest") {
  auto ok = run("selftest");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  auto bad = run("selftest --corrupt-nu-order");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL phi_oracle") != std::string::npos);
}
