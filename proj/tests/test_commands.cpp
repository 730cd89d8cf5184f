#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qgd/commands.hpp"
#include "qgd/grass.hpp"

#include <cstdlib>
#include <sys/wait.h>

using namespace qgd;

namespace {

int cli(const std::string& args) {
  const int status = std::system((std::string(QGD_CLI) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const std::string kTilted = QGD_DATA_DIR "/modules/d4_tilted.json";
const std::string kNonrigid = QGD_DATA_DIR "/modules/a3_nonrigid.json";

}  // namespace

TEST_CASE("setup flags override the module setup") {
  SetupFlags f;
  f.window = "-2:4";
  Setup s = resolve_setup(f, read_json_file(kTilted).at("setup"));
  CHECK(s.dynkin == "D4");
  CHECK(s.pmin == -2);
  CHECK(s.pmax == 4);
  f.config = "(1,3);(2,4)";
  s = resolve_setup(f, Json{{"dynkin", "A2"}});
  CHECK(s.config == "explicit");
  CHECK(s.members == std::vector<std::string>{"(1,3)", "(2,4)"});
}

TEST_CASE("an invalid configuration vertex is an input error naming it") {
  SetupFlags f;
  f.dynkin = "A2";
  f.window = "0:6";
  f.config = "(1,9)";
  try {
    cmd_mesh_build(resolve_setup(f, Json::object()));
    FAIL("no error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("(1,9)") != std::string::npos);
  }
}

TEST_CASE("desing verify refuses a non-rigid K_LR") {
  RunOptions opt;
  Json m = read_json_file(kNonrigid);
  Report r = cmd_desing_verify(parse_setup(m.at("setup")), m, Json{{"(2',5)", 1}}, opt);
  CHECK_FALSE(r.ok());
  CHECK(r.data().at("refused") == "K_LR M is not rigid");
}

TEST_CASE("the budget is enforced") {
  RunOptions opt;
  opt.budget = 3;
  Json m = read_json_file(kTilted);
  CHECK_THROWS_AS(cmd_grass_enumerate(parse_setup(m.at("setup")), m, Json(), opt), BudgetExceeded);
}

TEST_CASE("exit codes") {
  CHECK(cli("example run d4-tilted --q 3") == 0);
  CHECK(cli("mesh build --dynkin D4 --orientation source --config " QGD_DATA_DIR "/setups/d4_mutated.json --window 0:14") == 1);
  CHECK(cli("desing verify --module " + kNonrigid + " --q 3 --dimvec '{\"(2'\"'\"',5)\": 1}'") == 1);
  CHECK(cli("mesh build --dynkin A2 --config '(1,9)' --window 0:6") == 2);
  CHECK(cli("grass enumerate --module " + kTilted + " --q 4") == 2);
  CHECK(cli("grass enumerate --module /nonexistent.json --q 3") == 2);
  CHECK(cli("frobnicate") == 2);
  CHECK(cli("grass enumerate --module " + kTilted + " --q 3 --budget 2") == 3);
}
