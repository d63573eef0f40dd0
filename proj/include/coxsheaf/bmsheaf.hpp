#pragma once

// Sheaves on moment graphs, the Braden-MacPherson construction, graded
// characters, and the checks relating them to the Kazhdan-Lusztig basis.
//
// Grading: a free module with generators in degrees k_i has graded rank
// sum_i v^{k_i}.  For B(x) the character coefficient at y is
// f_{y,x} = v^{l(y) - l(x)} * (graded rank of the costalk at y).

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coxsheaf/gradedlin.hpp"
#include "coxsheaf/hecke.hpp"
#include "coxsheaf/momentgraph.hpp"

namespace coxsheaf::bmsheaf {

using coxeter::Element;
using gradedlin::Degreewise;
using gradedlin::DegreewiseMap;
using gradedlin::ModuleElt;
using gradedlin::Shape;
using hecke::HeckeElt;
using momentgraph::MomentGraph;

struct EdgeData {
  Shape module;  // over S/(label)
  std::vector<ModuleElt> rho_lower;  // images of the lower stalk generators
  std::vector<ModuleElt> rho_upper;
};

class Sheaf {
 public:
  Sheaf(std::shared_ptr<const MomentGraph> graph, std::vector<std::vector<int>> stalks, std::vector<EdgeData> edges);

  const MomentGraph& graph() const { return *graph_; }
  std::shared_ptr<const MomentGraph> graph_ptr() const { return graph_; }
  Shape stalk(int v) const;
  const std::vector<int>& stalk_degrees(int v) const { return stalks_[v]; }
  const EdgeData& edge(int e) const { return edges_[e]; }

  /// rho_{v,E} as a map from the stalk at v to the edge module.
  DegreewiseMap rho(int v, int e) const;
  /// Stalk at v to the sum of the edge modules of the given edges.
  DegreewiseMap restriction(int v, const std::vector<int>& edges) const;

 private:
  std::shared_ptr<const MomentGraph> graph_;
  std::vector<std::vector<int>> stalks_;
  std::vector<EdgeData> edges_;
};

/// Kernel of the stalk at v into the edge modules of all upward edges.
Degreewise costalk_module(const Sheaf& sheaf, int v, int cap);
/// Sections supported at v: kernel into the edge modules of all edges at v.
Degreewise supported_module(const Sheaf& sheaf, int v, int cap);

/// Dimensions of the section space over omega in the given degrees, computed
/// by direct elimination of the edge equations.
std::map<int, int> section_dims(const Sheaf& sheaf, const std::vector<int>& omega, const std::vector<int>& degrees);
/// Section space over omega with bases in degrees 0..cap; the ambient is the
/// direct sum of the stalks in the order given.
Degreewise sections(const Sheaf& sheaf, const std::vector<int>& omega, int cap);

/// Dimensions of sections over the growing sets {v_1}, {v_1, v_2}, ... for
/// the given vertex order: result[k][d].
std::vector<std::map<int, int>> section_dims_chain(const Sheaf& sheaf, const std::vector<int>& order,
                                                   const std::vector<int>& degrees);

struct VertexLog {
  int vertex = 0;
  int cap = 0;
  std::map<int, int> image_dims;    // image of upper sections in the edge modules
  std::map<int, int> costalk_dims;  // kernel of the stalk into the edge modules
};

struct BMSheaf {
  Sheaf sheaf;
  int top = 0;
  std::vector<std::vector<int>> costalks;  // generator degrees per vertex
  std::vector<int> caps;
  std::vector<VertexLog> log;  // in processing order
};

struct BMOptions {
  /// Fixed degree cap at every vertex; default 2(l(x) - l(y)) + 4.
  std::optional<int> cap;
};

int default_cap(const MomentGraph& g, int v);

/// Braden-MacPherson sheaf of the full graph (its top vertex is x).
BMSheaf bm_construct(std::shared_ptr<const MomentGraph> graph, const BMOptions& opts = {});

/// f_{y,x} T~_y summed over the vertices of a regular graph.
HeckeElt character(const BMSheaf& bm);

/// Graded rank of costalk generator degrees as a Laurent polynomial.
LaurentPoly costalk_rank(const BMSheaf& bm, int v);

/// The module B^{[ys,y]} of sections on {>= ys} supported on {ys, y}, as a
/// Z(E)-module inside stalk(ys) (+) stalk(y).  Requires ys < y; either vertex
/// may lie outside the support.
momentgraph::PairModule costalk_interval_module(const BMSheaf& bm, const Element& y, int s);
std::vector<int> costalk_interval(const BMSheaf& bm, const Element& y, int s);

/// Character of theta_s B built from the ranks of B^{[ys,y]}.
HeckeElt theta_character(const BMSheaf& bm, int s);

/// Sheaf on the regular graph obtained from a sheaf on the quotient graph.
Sheaf translate_out(const Sheaf& quotient_sheaf, std::shared_ptr<const MomentGraph> target);
/// Character of the lifted sheaf, shifted so that lifting B(x<s>) gives a
/// self-dual element: sum_y v^{l(y) - 1 - l(x_min)} (costalk rank at y).
HeckeElt lift_character(const Sheaf& lifted, int quotient_top_length);

// ------------------------------------------------------------------ checks

struct CheckResult {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(std::string msg) {
    ok = false;
    failures.push_back(std::move(msg));
  }
  void merge(const CheckResult& o) {
    if (!o.ok) ok = false;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
  }
};

/// f_{y,x} in vZ[v] for y < x, and the costalk pattern {l(x)-l(y),
/// 2(l(x)-l(y))} never occurs.
CheckResult check_positive_degrees(const BMSheaf& bm);

/// Sections supported at y = (product of the down-edge labels) * costalk,
/// and costalk degrees = 2(l(x) - l(y)) - stalk degrees.
CheckResult check_supported_sections(const BMSheaf& bm, int v);

/// Flabbiness and section additivity by direct elimination, in degrees up to
/// 2(l(x) - l(y)) + 2 at each vertex.
CheckResult check_sections(const BMSheaf& bm);

/// B^{[ys,y]} has no summand supported at y, for every pair in the graph.
CheckResult check_no_upper_summand(const BMSheaf& bm, int s);

/// rank B^{[ys,y]} = rank B^{[y]} + rank B^{[ys]} for every pair.
CheckResult check_interval_additivity(const BMSheaf& bm, int s);

}  // namespace coxsheaf::bmsheaf
