#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

std::string g_bin;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = g_bin + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.exit_code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string write_tmp(const std::string& name, const json& j) {
  std::string path = "/tmp/grpbase_cli_" + name + ".json";
  std::ofstream f(path);
  f << j.dump();
  return path;
}

json dihedral_scalars_group() {
  // scalars of GF(5) extended by a dihedral group of order 8
  return json{{"kind", "matrix"},
              {"p", 5},
              {"dim", 2},
              {"generators",
               json::array({json::array({json::array({2, 0}), json::array({0, 2})}),
                            json::array({json::array({1, 0}), json::array({0, 4})}),
                            json::array({json::array({0, 1}), json::array({1, 0})})})}};
}

json cyclic_perm_group() {
  return json{{"kind", "perm"},
              {"degree", 4},
              {"generators", json::array({json::array({1, 2, 3, 0})})}};
}

}  // namespace

TEST_CASE("partition emits valid JSON and verifies against its own group") {
  std::string gf = write_tmp("c4", cyclic_perm_group());
  auto part = run_cli("partition --q 2 --n 2");
  CHECK(part.exit_code == 0);
  json pj = json::parse(part.out);
  CHECK(pj.contains("parts"));
  CHECK(pj["q"] == 2);
  CHECK(pj["n"] == 2);

  std::string pf = "/tmp/grpbase_cli_part.json";
  {
    std::ofstream f(pf);
    f << part.out;
  }
  auto ver = run_cli("verify --group " + gf + " --partition " + pf);
  CHECK(ver.exit_code == 0);
}

TEST_CASE("base2 round-trips through verify") {
  std::string gf = write_tmp("d8", dihedral_scalars_group());
  auto base = run_cli("base2 --group " + gf);
  CHECK(base.exit_code == 0);
  json bj = json::parse(base.out);
  CHECK(bj["certificate_order"] == 1);
  CHECK(bj.contains("path"));

  auto ver = run_cli("verify --group " + gf + " --x '" + bj["x"].dump() + "' --y '" +
                     bj["y"].dump() + "'");
  CHECK(ver.exit_code == 0);
}

TEST_CASE("identical invocations give byte-identical output") {
  std::string gf = write_tmp("d8b", dihedral_scalars_group());
  auto a = run_cli("base2 --group " + gf);
  auto b = run_cli("base2 --group " + gf);
  CHECK(a.out == b.out);
  auto p1 = run_cli("partition --q 3 --n 2");
  auto p2 = run_cli("partition --q 3 --n 2");
  CHECK(p1.out == p2.out);
}

TEST_CASE("broken pair fails verification with a witness") {
  std::string gf = write_tmp("d8c", dihedral_scalars_group());
  auto ver = run_cli("verify --group " + gf + " --x '[0,0]' --y '[0,0]'");
  CHECK(ver.exit_code == 1);
  json wj = json::parse(ver.out);
  CHECK(wj.contains("witness"));
}

TEST_CASE("malformed input exits with code 2") {
  {
    std::ofstream f("/tmp/grpbase_cli_bad.json");
    f << "{not json";
  }
  auto r = run_cli("base2 --group /tmp/grpbase_cli_bad.json");
  CHECK(r.exit_code == 2);
  auto missing = run_cli("base2 --group /tmp/grpbase_cli_does_not_exist.json");
  CHECK(missing.exit_code == 2);
  auto badflag = run_cli("partition --q 6 --n 1");
  CHECK(badflag.exit_code == 2);
}

TEST_CASE("orbit of a vector under a matrix group") {
  std::string gf = write_tmp("d8d", dihedral_scalars_group());
  auto r = run_cli("orbit --group " + gf + " --x '[1,0]'");
  CHECK(r.exit_code == 0);
  json oj = json::parse(r.out);
  CHECK(oj["size"] == 8);
}

TEST_CASE("coloring of a permutation group") {
  std::string gf = write_tmp("c4b", cyclic_perm_group());
  auto r = run_cli("color --group " + gf + " --p 3");
  CHECK(r.exit_code == 0);
  json cj = json::parse(r.out);
  CHECK(cj["colors"].size() == 4);
}

int main(int argc, char** argv) {
  if (argc > 1 && argv[argc - 1][0] != '-') {
    g_bin = argv[argc - 1];
    --argc;
  }
  doctest::Context ctx;
  ctx.applyCommandLine(argc, argv);
  return ctx.run();
}
