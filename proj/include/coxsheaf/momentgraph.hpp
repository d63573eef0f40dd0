#pragma once

// Moment graphs of Bruhat intervals in W and in W/<s>, tuples in the
// structure algebra, and modules over the local structure algebra of an edge.

#include <map>
#include <string>
#include <vector>

#include "coxsheaf/coxeter.hpp"
#include "coxsheaf/gradedlin.hpp"

namespace coxsheaf::momentgraph {

using coxeter::CoxeterSystem;
using coxeter::Element;
using coxeter::Root;
using coxeter::RootVector;
using gradedlin::Polynomial;

enum class OrbitKind { Regular, Quotient };

struct Vertex {
  Element rep;  // minimal coset representative for quotient graphs
  int length = 0;
};

struct Edge {
  int lower = 0;
  int upper = 0;
  RootVector label;  // positive root of the reflection
  Element reflection;
};

class MomentGraph {
 public:
  const CoxeterSystem& system() const { return W_; }
  OrbitKind kind() const { return kind_; }
  /// The generator s for W/<s>; -1 for regular graphs.
  int quotient_generator() const { return s_; }
  /// Index of the top vertex.
  int top() const { return top_; }

  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(int i) const { return vertices_[i]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& incident(int v) const { return incident_[v]; }
  std::vector<int> up_edges(int v) const;
  std::vector<int> down_edges(int v) const;
  int other(int edge, int v) const;
  /// Edge joining u and v, or -1.
  int edge_between(int u, int v) const;

  bool leq(int a, int b) const { return order_[a][b]; }
  /// Vertex index of w (any coset member for quotient graphs); -1 if absent.
  int find(const Element& w) const;
  std::string name(int v) const;

  /// Vertices by decreasing length, ShortLex within a length.
  std::vector<int> processing_order() const;

 private:
  friend MomentGraph build_graph(const CoxeterSystem&, const Element&);
  friend MomentGraph build_quotient_graph(const CoxeterSystem&, const Element&, int);
  explicit MomentGraph(CoxeterSystem W) : W_(std::move(W)) {}
  void finish();

  CoxeterSystem W_;
  OrbitKind kind_ = OrbitKind::Regular;
  int s_ = -1;
  int top_ = 0;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
  std::vector<std::vector<bool>> order_;
  std::map<Element, int> index_;
};

/// Moment graph of [e, x]; edges y -- ty for reflections t.  Throws
/// RealizationError on double edges or proportional labels.
MomentGraph build_graph(const CoxeterSystem& W, const Element& x);
/// Moment graph of the cosets below x<s> in W/<s>.
MomentGraph build_quotient_graph(const CoxeterSystem& W, const Element& x, int s);

/// Per-vertex count of upward edges minus l(x) - l(y); all entries must be
/// non-negative.
std::vector<int> deodhar_slack(const MomentGraph& g);

/// Deterministic DOT rendering, edges directed from lower to upper vertex.
std::string to_dot(const MomentGraph& g);

// ------------------------------------------------------------------ Z tuples

/// Element of Z^Omega, Omega = the key set.
using ZTuple = std::map<int, Polynomial>;

bool z_contains(const MomentGraph& g, const ZTuple& z);
/// (w.alpha)_w; on quotient graphs requires s.alpha = alpha.
ZTuple sigma(const MomentGraph& g, const RootVector& alpha);
/// (1, 1) and (alpha_t, 0) on the endpoints (lower, upper) of the edge.
std::pair<ZTuple, ZTuple> ze_projection_generators(const MomentGraph& g, int edge);

ZTuple z_add(const ZTuple& a, const ZTuple& b);
ZTuple z_mul(const ZTuple& a, const ZTuple& b);
ZTuple z_scale(const ZTuple& a, const mpq_class& c);

/// z = z_plus + c^s z_quot with both parts invariant under w -> ws, where
/// c^s_w = w(alpha_s).  Regular graphs only; Omega must be right s-stable.
struct Splitting {
  ZTuple plus;
  ZTuple quot;
};
Splitting split_invariant(const MomentGraph& g, int s, const ZTuple& z);
ZTuple c_s(const MomentGraph& g, int s, const std::vector<int>& omega);

// ------------------------------------------------------------------ Z(E)-modules

/// A Z(E)-module realized inside lo (+) hi, with (z_lo, z_hi) acting
/// componentwise.  The module is given by bases in every even degree.
struct PairModule {
  gradedlin::Shape lo;
  gradedlin::Shape hi;
  RootVector alpha;
  gradedlin::Degreewise module;  // ambient = direct_sum(lo, hi)
};

/// Builds the Z(E)-submodule of lo (+) hi generated by the given elements.
PairModule pair_module_span(const gradedlin::Shape& lo, const gradedlin::Shape& hi, const RootVector& alpha,
                            const std::vector<gradedlin::ModuleElt>& gens, int cap);

enum class SummandKind { Lower, Upper, Pair };

struct Summand {
  SummandKind kind;
  int degree;  // generator degree

  friend bool operator==(const Summand&, const Summand&) = default;
  friend auto operator<=>(const Summand&, const Summand&) = default;
};

/// Greedy degree-by-degree splitting into M(lower), M(upper), P(lower, upper);
/// checks that the summands reproduce the Hilbert function.
std::vector<Summand> decompose_ze_module(const PairModule& m);

std::string to_string(SummandKind k);

}  // namespace coxsheaf::momentgraph
