#include "coxsheaf/momentgraph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "coxsheaf/error.hpp"

namespace coxsheaf::momentgraph {

using gradedlin::Echelon;
using gradedlin::ModuleElt;
using gradedlin::Shape;
using gradedlin::SparseVec;

std::vector<int> MomentGraph::up_edges(int v) const {
  std::vector<int> out;
  for (int e : incident_[v])
    if (edges_[e].lower == v) out.push_back(e);
  return out;
}

std::vector<int> MomentGraph::down_edges(int v) const {
  std::vector<int> out;
  for (int e : incident_[v])
    if (edges_[e].upper == v) out.push_back(e);
  return out;
}

int MomentGraph::other(int edge, int v) const {
  const Edge& e = edges_[edge];
  return e.lower == v ? e.upper : e.lower;
}

int MomentGraph::edge_between(int u, int v) const {
  for (int e : incident_[u])
    if (other(e, u) == v) return e;
  return -1;
}

int MomentGraph::find(const Element& w) const {
  auto it = index_.find(w);
  if (it != index_.end()) return it->second;
  if (kind_ == OrbitKind::Quotient) {
    it = index_.find(W_.multiply_right(w, s_));
    if (it != index_.end()) return it->second;
  }
  return -1;
}

std::string MomentGraph::name(int v) const {
  const std::string w = W_.format(vertices_[v].rep);
  return w.empty() ? "e" : w;
}

std::vector<int> MomentGraph::processing_order() const {
  std::vector<int> order(vertices_.size());
  for (int i = 0; i < size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (vertices_[a].length != vertices_[b].length) return vertices_[a].length > vertices_[b].length;
    return vertices_[a].rep < vertices_[b].rep;
  });
  return order;
}

void MomentGraph::finish() {
  const int n = size();
  for (int i = 0; i < n; ++i) index_[vertices_[i].rep] = i;
  incident_.assign(n, {});
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    incident_[edges_[e].lower].push_back(e);
    incident_[edges_[e].upper].push_back(e);
  }
  order_.assign(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) order_[a][b] = W_.bruhat_leq(vertices_[a].rep, vertices_[b].rep);

  std::map<RootVector, Element> by_label;
  for (const auto& e : edges_) {
    if (!order_[e.lower][e.upper]) throw InvariantError("edge endpoints are not comparable");
    auto [it, inserted] = by_label.emplace(e.label, e.reflection);
    if (!inserted && it->second != e.reflection)
      throw RealizationError("distinct reflections " + W_.format(it->second) + " and " + W_.format(e.reflection) +
                             " have proportional roots");
  }
  for (int v = 0; v < n; ++v) {
    std::set<int> seen;
    for (int e : incident_[v])
      if (!seen.insert(other(e, v)).second) throw RealizationError("double edge at vertex " + name(v));
  }
}

namespace {

void add_edge(std::vector<Edge>& edges, const CoxeterSystem& W, const std::vector<Vertex>& vs, int a, int b,
              const Element& t) {
  Edge e;
  const bool a_low = vs[a].length < vs[b].length || (vs[a].length == vs[b].length && vs[a].rep < vs[b].rep);
  e.lower = a_low ? a : b;
  e.upper = a_low ? b : a;
  e.reflection = t;
  e.label = W.reflection_root(t).coords;
  edges.push_back(std::move(e));
}

}  // namespace

MomentGraph build_graph(const CoxeterSystem& W, const Element& x) {
  W.require_same(x);
  MomentGraph g(W);
  g.kind_ = OrbitKind::Regular;
  for (const auto& y : W.bruhat_interval(x)) g.vertices_.push_back({y, y.length()});
  g.top_ = g.size() - 1;
  for (int a = 0; a < g.size(); ++a)
    for (int b = a + 1; b < g.size(); ++b) {
      if ((g.vertices_[a].length + g.vertices_[b].length) % 2 == 0) continue;
      Element t = W.multiply(g.vertices_[b].rep, W.inverse(g.vertices_[a].rep));
      if (W.is_reflection(t)) add_edge(g.edges_, W, g.vertices_, a, b, t);
    }
  g.finish();
  return g;
}

MomentGraph build_quotient_graph(const CoxeterSystem& W, const Element& x, int s) {
  W.require_same(x);
  if (s < 0 || s >= W.rank()) throw InputError("quotient generator out of range");
  MomentGraph g(W);
  g.kind_ = OrbitKind::Quotient;
  g.s_ = s;
  const Element xmin = W.is_right_descent(x, s) ? W.multiply_right(x, s) : x;
  for (const auto& y : W.bruhat_interval(xmin))
    if (!W.is_right_descent(y, s)) g.vertices_.push_back({y, y.length()});
  g.top_ = g.size() - 1;
  const Element gen = W.generator(s);
  for (int a = 0; a < g.size(); ++a)
    for (int b = a + 1; b < g.size(); ++b) {
      const Element& ya = g.vertices_[a].rep;
      const Element& yb = g.vertices_[b].rep;
      const Element ainv = W.inverse(ya);
      const Element t1 = W.multiply(yb, ainv);
      const Element t2 = W.multiply(W.multiply(yb, gen), ainv);
      const bool r1 = W.is_reflection(t1), r2 = W.is_reflection(t2);
      if (r1 && r2) throw RealizationError("double edge between cosets " + g.name(a) + " and " + g.name(b));
      if (r1 || r2) add_edge(g.edges_, W, g.vertices_, a, b, r1 ? t1 : t2);
    }
  g.finish();
  return g;
}

std::vector<int> deodhar_slack(const MomentGraph& g) {
  std::vector<int> out;
  const int top_len = g.vertex(g.top()).length;
  for (int v = 0; v < g.size(); ++v)
    out.push_back(static_cast<int>(g.up_edges(v).size()) - (top_len - g.vertex(v).length));
  return out;
}

std::string to_dot(const MomentGraph& g) {
  std::ostringstream out;
  out << "digraph moment_graph {\n  rankdir=BT;\n";
  for (int v = 0; v < g.size(); ++v)
    out << "  v" << v << " [label=\"" << g.name(v) << " (" << g.vertex(v).length << ")\"];\n";
  std::vector<int> order(g.edges().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ea = g.edges()[a];
    const auto& eb = g.edges()[b];
    return std::pair(ea.lower, ea.upper) < std::pair(eb.lower, eb.upper);
  });
  for (int e : order) {
    const auto& edge = g.edges()[e];
    out << "  v" << edge.lower << " -> v" << edge.upper << " [label=\"(";
    for (std::size_t i = 0; i < edge.label.size(); ++i) out << (i ? "," : "") << edge.label[i];
    out << ")\"];\n";
  }
  out << "}\n";
  return out.str();
}

// ------------------------------------------------------------------ Z tuples

bool z_contains(const MomentGraph& g, const ZTuple& z) {
  for (const auto& e : g.edges()) {
    auto a = z.find(e.lower), b = z.find(e.upper);
    if (a == z.end() || b == z.end()) continue;
    if (!(a->second - b->second).divisible_by(e.label)) return false;
  }
  return true;
}

ZTuple sigma(const MomentGraph& g, const RootVector& alpha) {
  const auto& W = g.system();
  if (static_cast<int>(alpha.size()) != W.rank()) throw InputError("linear form has wrong dimension");
  if (g.kind() == OrbitKind::Quotient && W.act(W.generator(g.quotient_generator()), alpha) != alpha)
    throw InputError("sigma on W/<s> needs an s-invariant linear form");
  ZTuple z;
  for (int v = 0; v < g.size(); ++v) z[v] = Polynomial::linear(W.act(g.vertex(v).rep, alpha));
  return z;
}

std::pair<ZTuple, ZTuple> ze_projection_generators(const MomentGraph& g, int edge) {
  const auto& e = g.edges().at(edge);
  const int n = g.system().rank();
  ZTuple one{{e.lower, Polynomial::constant(1, n)}, {e.upper, Polynomial::constant(1, n)}};
  ZTuple low{{e.lower, Polynomial::linear(e.label)}, {e.upper, Polynomial{}}};
  return {one, low};
}

ZTuple z_add(const ZTuple& a, const ZTuple& b) {
  ZTuple r = a;
  for (const auto& [v, p] : b) r[v] += p;
  return r;
}

ZTuple z_mul(const ZTuple& a, const ZTuple& b) {
  ZTuple r;
  for (const auto& [v, p] : a) {
    auto it = b.find(v);
    if (it == b.end()) throw InputError("product of tuples on different vertex sets");
    r[v] = p * it->second;
  }
  return r;
}

ZTuple z_scale(const ZTuple& a, const mpq_class& c) {
  ZTuple r;
  for (const auto& [v, p] : a) r[v] = p.scaled(c);
  return r;
}

ZTuple c_s(const MomentGraph& g, int s, const std::vector<int>& omega) {
  ZTuple r;
  for (int v : omega) r[v] = Polynomial::linear(g.vertex(v).rep.matrix().column(s));
  return r;
}

Splitting split_invariant(const MomentGraph& g, int s, const ZTuple& z) {
  if (g.kind() != OrbitKind::Regular) throw InputError("split_invariant needs a regular moment graph");
  const auto& W = g.system();
  Splitting out;
  for (const auto& [v, zv] : z) {
    const int vs = g.find(W.multiply_right(g.vertex(v).rep, s));
    if (vs < 0 || !z.count(vs)) throw InputError("vertex set is not stable under w -> ws");
    const Polynomial& zs = z.at(vs);
    out.plus[v] = (zv + zs).scaled(mpq_class(1, 2));
    const RootVector c = g.vertex(v).rep.matrix().column(s);
    auto q = (zv - zs).scaled(mpq_class(1, 2)).divide(c);
    if (!q) throw InvariantError("z_w - z_ws is not divisible by w(alpha_s) at " + g.name(v) + ": tuple is not in Z");
    out.quot[v] = *q;
  }
  return out;
}

// ------------------------------------------------------------------ Z(E)-modules

namespace {

ModuleElt act_e(const PairModule& m, const ModuleElt& x) {
  ModuleElt r = x;
  const Polynomial a = Polynomial::linear(m.alpha);
  for (int j = 0; j < static_cast<int>(r.size()); ++j) r[j] = j < m.lo.size() ? r[j] * a : Polynomial{};
  return r;
}

}  // namespace

PairModule pair_module_span(const Shape& lo, const Shape& hi, const RootVector& alpha,
                            const std::vector<ModuleElt>& gens, int cap) {
  PairModule m{lo, hi, alpha, {}};
  std::vector<ModuleElt> all = gens;
  for (const auto& g : gens) all.push_back(act_e(m, g));
  m.module = gradedlin::span_of(Shape::direct_sum({lo, hi}), all, cap);
  return m;
}

std::string to_string(SummandKind k) {
  switch (k) {
    case SummandKind::Lower: return "M(lower)";
    case SummandKind::Upper: return "M(upper)";
    case SummandKind::Pair: return "P(lower,upper)";
  }
  return "?";
}

std::vector<Summand> decompose_ze_module(const PairModule& m) {
  const Shape& amb = m.module.ambient;
  const int n = amb.nvars();
  std::vector<Summand> out;
  for (int d = 0; d <= m.module.cap; d += 2) {
    const int lo_dim = m.lo.dim(d);
    auto in_lo = [&](const SparseVec& v) { return std::all_of(v.begin(), v.end(), [&](auto& t) { return t.first < lo_dim; }); };
    auto in_hi = [&](const SparseVec& v) { return std::all_of(v.begin(), v.end(), [&](auto& t) { return t.first >= lo_dim; }); };

    const std::vector<SparseVec> empty;
    const auto& md = m.module.basis.count(d) ? m.module.basis.at(d) : empty;
    // Degree-d parts of M_lo and M_hi: module elements with vanishing other
    // component.  Computed as kernels of the projections.
    gradedlin::KernelBuilder kill_hi(static_cast<int>(md.size())), kill_lo(static_cast<int>(md.size()));
    for (const auto& b : md) {
      SparseVec hi_part, lo_part;
      for (const auto& t : b) (t.first < lo_dim ? lo_part : hi_part).push_back(t);
      kill_hi.add_column(hi_part);
      kill_lo.add_column(lo_part);
    }
    auto combine = [&](const std::vector<SparseVec>& combos) {
      std::vector<SparseVec> vs;
      for (const auto& c : combos) {
        SparseVec acc;
        for (const auto& [i, x] : c) acc = gradedlin::sparse_sub_scaled(acc, -x, md[i]);
        vs.push_back(acc);
      }
      return vs;
    };
    const auto m_lo = combine(kill_hi.kernel());
    const auto m_hi = combine(kill_lo.kernel());

    Echelon x(amb.dim(d));
    if (d >= 2 && m.module.basis.count(d - 2))
      for (const auto& b : m.module.basis.at(d - 2)) {
        const ModuleElt e = amb.element(b, d - 2);
        for (int i = 0; i < n; ++i) x.insert(amb.coords(gradedlin::module_scale(e, Polynomial::variable(i, n)), d));
        x.insert(amb.coords(act_e(m, e), d));
      }
    const int x_dim = x.rank();

    auto dim_plus = [&](Echelon base, const std::vector<SparseVec>& vs) {
      for (const auto& v : vs) base.insert(v);
      return base.rank();
    };
    const int x_plus_lo = dim_plus(x, m_lo);
    const int x_plus_hi = dim_plus(x, m_hi);
    Echelon all = x;
    for (const auto& v : m_lo) all.insert(v);
    for (const auto& v : m_hi) all.insert(v);
    const int x_plus_both = all.rank();

    const int a = x_plus_lo - x_dim;
    const int b = x_plus_hi - x_dim;
    const int c = static_cast<int>(md.size()) - x_plus_both;
    for (const auto& v : m_lo)
      if (!in_lo(v)) throw InvariantError("lower part has an upper component");
    for (const auto& v : m_hi)
      if (!in_hi(v)) throw InvariantError("upper part has a lower component");
    for (int i = 0; i < a; ++i) out.push_back({SummandKind::Lower, d});
    for (int i = 0; i < b; ++i) out.push_back({SummandKind::Upper, d});
    for (int i = 0; i < c; ++i) out.push_back({SummandKind::Pair, d});
  }

  for (int d = 0; d <= m.module.cap; d += 2) {
    long predicted = 0;
    for (const auto& s : out) {
      switch (s.kind) {
        case SummandKind::Lower:
        case SummandKind::Upper: predicted += gradedlin::dim_s(n, d - s.degree); break;
        case SummandKind::Pair:
          predicted += gradedlin::dim_s(n, d - s.degree) + gradedlin::dim_s(n, d - s.degree - 2);
          break;
      }
    }
    if (predicted != m.module.dim(d))
      throw InvariantError("Z(E)-module decomposition does not reproduce the Hilbert function in degree " +
                           std::to_string(d));
  }
  return out;
}

}  // namespace coxsheaf::momentgraph
