// qgd: command-line front end. Exit codes: 0 ok, 1 check failure, 2 input
// error, 3 budget exceeded.

#include "CLI11.hpp"
#include "qgd/commands.hpp"
#include "qgd/grass.hpp"

#include <fstream>
#include <iostream>
#include <thread>

#ifndef QGD_DATA_DIR
#define QGD_DATA_DIR "data"
#endif

using namespace qgd;

namespace {

int finish(const Report& r, const std::string& out) {
  const std::string text = r.to_json().dump(2) + "\n";
  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw InputError("cannot write " + out);
    f << text;
  }
  std::cout << r.summary() << (r.ok() ? "ok" : "FAILED") << "\n";
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quiver Grassmannians, Nakajima categories and intermediate extensions"};
  app.require_subcommand(1);

  SetupFlags flags;
  RunOptions opt;
  opt.jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string out, module_path, dimvec, data_dir = QGD_DATA_DIR;

  auto setup_flags = [&](CLI::App* c) {
    c->add_option("--quiver", flags.quiver, "quiver JSON file");
    c->add_option("--dynkin", flags.dynkin, "Dynkin type, e.g. D4");
    c->add_option("--orientation", flags.orientation, "linear, source or a list like 1->2,3->2");
    c->add_option("--config", flags.config, "full, dynkin-kQ, \"(1,3);(2,4)\" or a JSON file");
    c->add_option("--window", flags.window, "levels lo:hi");
  };
  auto run_flags = [&](CLI::App* c) {
    c->add_option("--q", opt.q, "size of the prime field");
    c->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
    c->add_option("--budget", opt.budget, "maximal number of search nodes");
    c->add_option("--out", out, "write the JSON report here");
  };

  auto* mesh = app.add_subcommand("mesh", "mesh categories")->require_subcommand(1);
  auto* mesh_build = mesh->add_subcommand("build", "build R_C and S_C and validate the configuration");
  setup_flags(mesh_build);
  run_flags(mesh_build);

  auto* kan = app.add_subcommand("kan", "Kan extensions")->require_subcommand(1);
  auto* klr = kan->add_subcommand("klr", "K_L, K_R and K_LR of an S_C-module");
  klr->add_option("--module", module_path, "module JSON file")->required();
  setup_flags(klr);
  run_flags(klr);

  auto* grass = app.add_subcommand("grass", "quiver Grassmannians")->require_subcommand(1);
  auto* enumerate = grass->add_subcommand("enumerate", "points of Gr_w(M) over F_q with strata");
  auto* desing = app.add_subcommand("desing", "desingularizations")->require_subcommand(1);
  auto* verify = desing->add_subcommand("verify", "check the fibre formula for pi: Gr(K_LR M) -> Gr_w(M)");
  for (auto* c : {enumerate, verify}) {
    c->add_option("--module", module_path, "module JSON file")->required();
    c->add_option("--dimvec", dimvec, "dimension vector: JSON object or file");
    setup_flags(c);
    run_flags(c);
  }

  auto* hq = app.add_subcommand("hq", "the category H_Q")->require_subcommand(1);
  auto* hq_check = hq->add_subcommand("check", "compare M^ with K_LR for every indecomposable");
  hq_check->add_option("--dynkin", flags.dynkin, "Dynkin type")->required();
  hq_check->add_option("--orientation", flags.orientation, "orientation");
  run_flags(hq_check);

  auto* example = app.add_subcommand("example", "worked examples")->require_subcommand(1);
  auto* example_run = example->add_subcommand("run", "run a worked example");
  std::string example_name;
  example_run->add_option("name", example_name, "a3-nonrigid, d4-tilted or a3-cfr")->required();
  example_run->add_option("--data", data_dir, "fixture directory");
  run_flags(example_run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (mesh_build->parsed()) return finish(cmd_mesh_build(resolve_setup(flags, Json::object())), out);
    if (klr->parsed() || enumerate->parsed() || verify->parsed()) {
      Json module = read_json_file(module_path);
      Setup setup = resolve_setup(flags, module.value("setup", Json::object()));
      Json w = dimvec.empty() ? Json() : json_argument(dimvec);
      if (klr->parsed()) {
        if (klr->count("--q") == 0) opt.q = 0;
        return finish(cmd_kan_klr(setup, module, opt), out);
      }
      if (enumerate->parsed()) return finish(cmd_grass_enumerate(setup, module, w, opt), out);
      return finish(cmd_desing_verify(setup, module, w, opt), out);
    }
    if (hq_check->parsed()) {
      if (hq_check->count("--q") == 0) opt.q = 0;
      Quiver q = dynkin_quiver(parse_dynkin_type(flags.dynkin), flags.orientation.empty() ? "linear" : flags.orientation);
      return finish(cmd_hq_check(q, opt), out);
    }
    if (example_run->parsed()) return finish(cmd_example(example_name, opt, data_dir), out);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
