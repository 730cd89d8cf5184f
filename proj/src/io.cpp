#include "qgd/io.hpp"

#include <fstream>
#include <regex>

namespace qgd {

Quiver parse_quiver(const Json& j) {
  try {
    std::vector<std::string> names = j.at("vertices").get<std::vector<std::string>>();
    std::vector<Arrow> arrows;
    auto find = [&](const std::string& n) {
      auto it = std::find(names.begin(), names.end(), n);
      if (it == names.end()) throw InputError("quiver: unknown vertex " + n);
      return static_cast<int>(it - names.begin());
    };
    int k = 0;
    for (const auto& a : j.at("arrows")) {
      std::string name = a.contains("name") ? a.at("name").get<std::string>() : "a" + std::to_string(k);
      arrows.push_back({name, find(a.at("from").get<std::string>()), find(a.at("to").get<std::string>())});
      ++k;
    }
    return Quiver(names, arrows);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("quiver: ") + e.what());
  }
}

Json quiver_to_json(const Quiver& q) {
  Json arrows = Json::array();
  for (const auto& a : q.arrows()) arrows.push_back({{"name", a.name}, {"from", q.name(a.source)}, {"to", q.name(a.target)}});
  return {{"vertices", q.names()}, {"arrows", arrows}};
}

std::pair<int, int> parse_window(const std::string& s) {
  static const std::regex re(R"(\s*(-?\d+)\s*[:,]\s*(-?\d+)\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw InputError("window must look like lo:hi, got '" + s + "'");
  int lo = std::stoi(m[1]), hi = std::stoi(m[2]);
  if (lo > hi) throw InputError("window: lo > hi");
  return {lo, hi};
}

ZVertex parse_vertex(const Quiver& framed, const std::string& label) {
  static const std::regex re(R"(\(\s*([^,\s]+)\s*,\s*(-?\d+)\s*\))");
  std::smatch m;
  if (!std::regex_match(label, m, re)) throw InputError("vertex label must look like (name,level), got '" + label + "'");
  try {
    return {framed.index_of(m[1]), std::stoi(m[2])};
  } catch (const std::invalid_argument&) {
    throw InputError("unknown vertex " + std::string(m[1]) + " in " + label);
  }
}

Setup parse_setup(const Json& j) {
  Setup s;
  try {
    if (j.contains("quiver")) {
      s.quiver = parse_quiver(j.at("quiver"));
    } else if (j.contains("dynkin")) {
      s.dynkin = j.at("dynkin").get<std::string>();
      s.orientation = j.value("orientation", std::string("linear"));
      s.quiver = dynkin_quiver(parse_dynkin_type(s.dynkin), s.orientation);
    } else {
      throw InputError("setup: needs \"quiver\" or \"dynkin\"");
    }
    const auto& c = j.contains("config") ? j.at("config") : Json("full");
    if (c.is_string()) {
      s.config = c.get<std::string>();
      if (s.config == "dynkin-kQ") s.config = "dynkin";
      if (s.config != "full" && s.config != "dynkin") throw InputError("setup: unknown configuration " + s.config);
    } else {
      s.config = "explicit";
      s.members = c.get<std::vector<std::string>>();
    }
    auto w = j.at("window");
    if (w.is_string()) {
      std::tie(s.pmin, s.pmax) = parse_window(w.get<std::string>());
    } else {
      s.pmin = w.at(0).get<int>();
      s.pmax = w.at(1).get<int>();
    }
    s.reach = j.value("reach", -1);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("setup: ") + e.what());
  }
  return s;
}

RepetitionWindow Setup::window() const { return RepetitionWindow(build_framed(quiver), pmin, pmax); }

Configuration Setup::configuration(const RepetitionWindow& w) const {
  if (config == "full") return full_configuration();
  std::vector<ZVertex> vs;
  for (const auto& m : members) vs.push_back(parse_vertex(w.quiver(), m));
  try {
    if (config == "dynkin") return dynkin_configuration(w, quiver);
    return explicit_configuration(w, vs);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

Json Setup::to_json() const {
  Json j;
  if (!dynkin.empty()) {
    j["dynkin"] = dynkin;
    j["orientation"] = orientation;
  } else {
    j["quiver"] = quiver_to_json(quiver);
  }
  if (config == "explicit")
    j["config"] = members;
  else
    j["config"] = config;
  j["window"] = {pmin, pmax};
  if (reach >= 0) j["reach"] = reach;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace qgd
