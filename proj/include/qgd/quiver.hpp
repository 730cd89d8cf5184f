#pragma once

// Quivers, framing, finite windows of the repetition quiver of a framed
// quiver, Dynkin classification, knitting, the Serre/suspension action on
// vertex positions, and configurations of non-frozen vertices.

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qgd {

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
};

/// A finite acyclic quiver. Vertices may carry a frozen flag; a framed
/// quiver records for each original vertex i its frozen partner i'.
class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<std::string> names, std::vector<Arrow> arrows);

  int vertex_count() const { return static_cast<int>(names_.size()); }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int v) const { return names_.at(v); }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(int a) const { return arrows_.at(a); }
  int index_of(const std::string& name) const;

  bool is_framed() const { return framed_; }
  bool frozen(int v) const { return framed_ && v >= original_count_; }
  /// Number of non-frozen vertices.
  int original_count() const { return framed_ ? original_count_ : vertex_count(); }
  /// For a framed quiver: i <-> i'. Returns -1 when unframed.
  int partner(int v) const;

  /// Vertices in a topological order (every arrow goes forward).
  const std::vector<int>& topological_order() const { return topo_; }
  int topological_position(int v) const { return topo_pos_.at(v); }

  /// Number of paths from u to v (including the trivial path when u == v).
  long path_count(int u, int v) const;

  friend Quiver build_framed(const Quiver& q);

 private:
  void compute_topology();

  std::vector<std::string> names_;
  std::vector<Arrow> arrows_;
  bool framed_ = false;
  int original_count_ = 0;
  std::vector<int> topo_;
  std::vector<int> topo_pos_;
};

/// Adds a frozen vertex i' and an arrow i -> i' for each vertex i.
/// Throws std::invalid_argument when q is already framed.
Quiver build_framed(const Quiver& q);

/// A vertex (base, level) of the repetition quiver. `base` indexes the
/// quiver the repetition is built from (the framed quiver for Nakajima
/// categories), so frozenness is a property of the base.
struct ZVertex {
  int base = 0;
  int level = 0;
  auto operator<=>(const ZVertex&) const = default;
};

std::string format_vertex(const Quiver& q, const ZVertex& v);

struct WindowArrow {
  int source = 0;  // window vertex indices
  int target = 0;
  int quiver_arrow = 0;
  bool sigma = false;  // true for the translated copy (j,p-1) -> (i,p)
  int level = 0;
};

/// One summand of a mesh relation: tau(x) --first--> middle --second--> x.
struct MeshTerm {
  int middle = 0;
  int first = 0;   // window arrow index
  int second = 0;  // window arrow index
};

/// The full subquiver of the repetition quiver on levels [pmin, pmax].
class RepetitionWindow {
 public:
  RepetitionWindow(Quiver quiver, int pmin, int pmax);

  const Quiver& quiver() const { return quiver_; }
  int pmin() const { return pmin_; }
  int pmax() const { return pmax_; }

  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<ZVertex>& vertices() const { return vertices_; }
  const ZVertex& vertex(int i) const { return vertices_.at(i); }
  /// Window index of v, or -1 when outside the window.
  int index(const ZVertex& v) const;
  bool contains(const ZVertex& v) const { return index(v) >= 0; }
  bool frozen(int i) const { return quiver_.frozen(vertices_.at(i).base); }

  const std::vector<WindowArrow>& arrows() const { return arrows_; }
  const std::vector<int>& in_arrows(int i) const { return in_.at(i); }
  const std::vector<int>& out_arrows(int i) const { return out_.at(i); }

  static ZVertex tau(const ZVertex& v) { return {v.base, v.level - 1}; }
  static ZVertex tau_inverse(const ZVertex& v) { return {v.base, v.level + 1}; }
  /// sigma(i,p) = (i',p-1) and sigma(i',p) = (i,p); framed quivers only.
  ZVertex sigma(const ZVertex& v) const;

  /// Mesh ending at window vertex i; empty when i is frozen or tau(i) lies
  /// outside the window (boundary meshes are not imposed).
  std::vector<MeshTerm> mesh(int i) const;

 private:
  Quiver quiver_;
  int pmin_ = 0;
  int pmax_ = 0;
  std::vector<ZVertex> vertices_;
  std::map<ZVertex, int> index_;
  std::vector<WindowArrow> arrows_;
  std::vector<std::vector<int>> in_;
  std::vector<std::vector<int>> out_;
};

RepetitionWindow repetition_window(const Quiver& framed, int pmin, int pmax);

// ---------------------------------------------------------------- Dynkin

struct DynkinType {
  char family = 'A';  // 'A', 'D' or 'E'
  int rank = 1;
  std::string name() const { return std::string(1, family) + std::to_string(rank); }
  friend bool operator==(const DynkinType&, const DynkinType&) = default;
};

DynkinType parse_dynkin_type(const std::string& s);

/// Classifies the underlying graph of an unframed quiver; nullopt when it is
/// not a connected simply-laced Dynkin diagram.
std::optional<DynkinType> classify_dynkin(const Quiver& q);

int coxeter_number(const DynkinType& t);

/// Standard orientations: "linear" (A: 1->2->...->n), "source" (D: arms
/// point away from the branch path as in 1->2->3, 2->4), or an explicit list
/// of arrows "1->2,2->3,...".
Quiver dynkin_quiver(const DynkinType& t, const std::string& orientation);

/// Dimension vectors obtained by knitting from the projectives placed at
/// level 0 (P_i at (i,0), P_i(k) = number of paths k -> i). Levels 0..max_level.
std::map<ZVertex, std::vector<long>> knit(const Quiver& q, int max_level);

/// The Serre functor S = Sigma tau on vertex positions of ZQ, derived from
/// the knitted positions of the injectives: S(i,p) = (image[i], p + shift[i]).
/// Sigma(x) = S(tau^{-1} x).
struct CoxeterData {
  DynkinType type;
  int h = 0;
  std::vector<int> image;
  std::vector<int> shift;

  ZVertex serre(const ZVertex& v) const { return {image.at(v.base), v.level + shift.at(v.base)}; }
  ZVertex serre_inverse(const ZVertex& v) const;
  ZVertex suspension(const ZVertex& v) const { return serre({v.base, v.level + 1}); }
  ZVertex suspension_inverse(const ZVertex& v) const;
};

/// Coxeter data for the Dynkin quiver q. Validates Sigma^2 = tau^{-h} and the
/// tabulated closed forms; throws std::runtime_error on disagreement.
CoxeterData coxeter_data(const Quiver& q);

/// Closed-form suspension where one is tabulated for (type, orientation):
/// linear A_n gives Sigma(i,p) = (n+1-i, p+i); D_even, E7, E8 give
/// tau^{-h/2}. nullopt when no closed form applies.
std::optional<ZVertex> tabulated_suspension(const DynkinType& t, const Quiver& q, const ZVertex& v);

// ---------------------------------------------------------- configurations

enum class ConfigurationOrigin { Full, Explicit, DynkinKQ };

/// A set C of non-frozen vertices (bases index the unframed quiver). The
/// frozen vertex kept for c = (i,p) is the one in the mesh ending at c,
/// namely (i', p-1).
struct Configuration {
  ConfigurationOrigin origin = ConfigurationOrigin::Full;
  std::string label;
  std::set<ZVertex> members;  // non-frozen vertices, framed-quiver bases

  /// Whether the frozen window vertex f survives in R_C.
  bool keeps_frozen(const RepetitionWindow& w, const ZVertex& f) const;
};

Configuration full_configuration();
Configuration explicit_configuration(const RepetitionWindow& w, const std::vector<ZVertex>& members);
/// C = { tau^{k(h-1)} S^{-1}(s_i) } restricted to levels [pmin, pmax+1].
Configuration dynkin_configuration(const RepetitionWindow& w, const Quiver& q);

/// Positions of the simples s_i (first level >= 0 where the knitted
/// dimension vector is the unit vector e_i).
std::vector<ZVertex> simple_positions(const Quiver& q);
/// Positions of the injectives I_i.
std::vector<ZVertex> injective_positions(const Quiver& q);

}  // namespace qgd
