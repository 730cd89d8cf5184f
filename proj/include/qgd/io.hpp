#pragma once

// JSON formats for quivers, category setups and modules.
//
// quiver:   {"vertices": ["1","2"], "arrows": [{"name": "a", "from": "1", "to": "2"}]}
// setup:    {"quiver": <quiver> | "dynkin": "D4", "orientation": "source",
//            "config": "full" | "dynkin" | ["(2,3)", ...], "window": [pmin, pmax], "reach": n}
// module:   {"setup": <setup>, "side": "S" | "R",
//            "dims": {"(1',3)": 1, ...}, "actions": {"<generator name>": [[1]], ...}}
//           or {"setup": ..., "summands": [{"name": ..., "dims": ..., "actions": ...}, ...]}

#include "qgd/category.hpp"
#include "qgd/module.hpp"
#include "qgd/report.hpp"

#include <stdexcept>

namespace qgd {

/// Malformed or inconsistent input; the CLI maps it to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Setup {
  Quiver quiver;  // unframed
  std::string dynkin;
  std::string orientation;
  std::string config = "full";     // full | dynkin | explicit
  std::vector<std::string> members;  // explicit configuration, as labels
  int pmin = 0, pmax = 0;
  int reach = -1;

  RepetitionWindow window() const;
  Configuration configuration(const RepetitionWindow& w) const;
  Json to_json() const;
};

Quiver parse_quiver(const Json& j);
Json quiver_to_json(const Quiver& q);
Setup parse_setup(const Json& j);
/// "lo:hi" or "lo,hi".
std::pair<int, int> parse_window(const std::string& s);
ZVertex parse_vertex(const Quiver& framed, const std::string& label);
Json read_json_file(const std::string& path);

template <class K>
Nakajima<K> build_setup(const Setup& s) {
  RepetitionWindow w = s.window();
  return build_nakajima<K>(w, s.configuration(w), s.reach);
}

template <class K>
K parse_scalar(const Json& v) {
  if (v.is_number_integer()) return K(v.get<long>());
  if (v.is_string()) return FieldTraits<K>::parse(v.get<std::string>());
  throw InputError("matrix entries must be integers or strings");
}

template <class K>
Json scalar_to_json(const K& a) {
  std::string s = FieldTraits<K>::to_string(a);
  if (s.find('/') == std::string::npos) return std::stol(s);
  return s;
}

template <class K>
Json matrix_to_json(const Matrix<K>& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

/// Module over `cat` from {"dims", "actions"} or {"summands"}.
template <class K>
Module<K> parse_module(const Json& j, std::shared_ptr<const LinCategory<K>> cat) {
  if (j.contains("summands")) {
    Module<K> m(cat);
    for (const auto& s : j.at("summands")) m = direct_sum(m, parse_module<K>(s, cat));
    m.check_relations();
    return m;
  }
  std::vector<int> dims(cat->size(), 0);
  for (const auto& [label, d] : j.at("dims").items()) {
    int x = -1;
    for (int y = 0; y < cat->size(); ++y)
      if (cat->label(y) == label) x = y;
    if (x < 0) throw InputError("module: unknown object " + label);
    dims[x] = d.template get<int>();
  }
  std::vector<Matrix<K>> action(cat->generators().size());
  if (j.contains("actions"))
    for (const auto& [name, mat] : j.at("actions").items()) {
      int g = -1;
      for (int k = 0; k < static_cast<int>(cat->generators().size()); ++k)
        if (cat->generator(k).name == name) g = k;
      if (g < 0) throw InputError("module: unknown generator " + name);
      const auto& gen = cat->generator(g);
      Matrix<K> a(dims[gen.source], dims[gen.target]);
      if (static_cast<int>(mat.size()) != a.rows()) throw InputError("module: wrong row count for " + name);
      for (int r = 0; r < a.rows(); ++r) {
        if (static_cast<int>(mat[r].size()) != a.cols()) throw InputError("module: wrong column count for " + name);
        for (int c = 0; c < a.cols(); ++c) a(r, c) = parse_scalar<K>(mat[r][c]);
      }
      action[g] = a;
    }
  try {
    return Module<K>(cat, dims, action);
  } catch (const std::exception& e) {
    throw InputError(std::string("module: ") + e.what());
  }
}

template <class K>
Json module_to_json(const Module<K>& m) {
  const auto& cat = m.category();
  Json dims = Json::object(), actions = Json::object();
  for (int x = 0; x < cat.size(); ++x)
    if (m.dim(x) > 0) dims[cat.label(x)] = m.dim(x);
  for (int g = 0; g < static_cast<int>(cat.generators().size()); ++g) {
    const auto& a = m.action(g);
    if (a.rows() == 0 || a.cols() == 0) continue;
    bool zero = true;
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < a.cols(); ++c)
        if (!FieldTraits<K>::is_zero(a(r, c))) zero = false;
    if (!zero) actions[cat.generator(g).name] = matrix_to_json(a);
  }
  return {{"dims", dims}, {"actions", actions}};
}

/// Dimension vector keyed by object label (nonzero entries only).
template <class K>
Json dims_to_json(const LinCategory<K>& cat, const std::vector<int>& d) {
  Json j = Json::object();
  for (int x = 0; x < cat.size(); ++x)
    if (d[x] != 0) j[cat.label(x)] = d[x];
  return j;
}

template <class K>
std::vector<int> parse_dims(const Json& j, const LinCategory<K>& cat) {
  std::vector<int> d(cat.size(), 0);
  for (const auto& [label, v] : j.items()) {
    int x = -1;
    for (int y = 0; y < cat.size(); ++y)
      if (cat.label(y) == label) x = y;
    if (x < 0) throw InputError("unknown object " + label);
    d[x] = v.template get<int>();
  }
  return d;
}

}  // namespace qgd
