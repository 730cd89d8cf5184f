#pragma once

// The operations behind the command-line tool. Each returns a Report; input
// problems throw InputError and exhausted budgets throw BudgetExceeded.

#include "qgd/io.hpp"

#include <string>

namespace qgd {

/// Setup flags as given on the command line; empty strings are unset.
struct SetupFlags {
  std::string quiver;       // path to a quiver JSON file
  std::string dynkin;       // e.g. D4
  std::string orientation;  // linear | source | "1->2,3->2"
  std::string config;       // full | dynkin | dynkin-kQ | "(1,3);(2,4)" | path to a JSON array
  std::string window;       // lo:hi
};

struct RunOptions {
  long q = 3;  // field size; 0 means the rationals where allowed
  int jobs = 1;
  long long budget = 10'000'000;
};

/// Applies the flags on top of `base` (a setup JSON object, possibly empty).
Setup resolve_setup(const SetupFlags& flags, const Json& base);

/// An inline JSON object or the path of a file holding one.
Json json_argument(const std::string& arg);

Report cmd_mesh_build(const Setup& setup);
Report cmd_kan_klr(const Setup& setup, const Json& module, const RunOptions& opt);
Report cmd_grass_enumerate(const Setup& setup, const Json& module, const Json& dimvec, const RunOptions& opt);
Report cmd_desing_verify(const Setup& setup, const Json& module, const Json& dimvec, const RunOptions& opt);
Report cmd_hq_check(const Quiver& quiver, const RunOptions& opt);
/// a3-nonrigid | d4-tilted | a3-cfr, with fixtures read from `data_dir`.
Report cmd_example(const std::string& name, const RunOptions& opt, const std::string& data_dir);

}  // namespace qgd
