#include "coxsheaf/bmsheaf.hpp"

#include <algorithm>
#include <set>

#include "coxsheaf/error.hpp"

namespace coxsheaf::bmsheaf {

using gradedlin::Echelon;
using gradedlin::KernelBuilder;
using gradedlin::Polynomial;
using gradedlin::SparseVec;

namespace {

Shape empty_shape(int n) { return Shape(n, {}); }

Shape sum_or_empty(int n, const std::vector<Shape>& parts) {
  return parts.empty() ? empty_shape(n) : Shape::direct_sum(parts);
}

std::vector<ModuleElt> units(const Shape& s) {
  std::vector<ModuleElt> out;
  for (int j = 0; j < s.size(); ++j) out.push_back(s.unit(j));
  return out;
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::string join(const std::vector<int>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "}";
}

}  // namespace

// ------------------------------------------------------------------ Sheaf

Sheaf::Sheaf(std::shared_ptr<const MomentGraph> graph, std::vector<std::vector<int>> stalks,
             std::vector<EdgeData> edges)
    : graph_(std::move(graph)), stalks_(std::move(stalks)), edges_(std::move(edges)) {
  if (static_cast<int>(stalks_.size()) != graph_->size()) throw InvariantError("sheaf needs one stalk per vertex");
  if (edges_.size() != graph_->edges().size()) throw InvariantError("sheaf needs data for every edge");
}

Shape Sheaf::stalk(int v) const { return Shape::free(graph_->system().rank(), stalks_[v]); }

DegreewiseMap Sheaf::rho(int v, int e) const {
  const auto& ge = graph_->edges()[e];
  const auto& data = edges_[e];
  return DegreewiseMap(stalk(v), data.module, ge.lower == v ? data.rho_lower : data.rho_upper);
}

DegreewiseMap Sheaf::restriction(int v, const std::vector<int>& edges) const {
  const int n = graph_->system().rank();
  std::vector<Shape> parts;
  for (int e : edges) parts.push_back(edges_[e].module);
  const Shape target = sum_or_empty(n, parts);
  std::vector<ModuleElt> images(stalks_[v].size());
  for (int e : edges) {
    const auto& ge = graph_->edges()[e];
    const auto& rho = ge.lower == v ? edges_[e].rho_lower : edges_[e].rho_upper;
    for (std::size_t j = 0; j < images.size(); ++j) images[j].insert(images[j].end(), rho[j].begin(), rho[j].end());
  }
  for (auto& im : images) im.resize(target.size());
  return DegreewiseMap(stalk(v), target, images);
}

Degreewise costalk_module(const Sheaf& sheaf, int v, int cap) {
  return gradedlin::kernel_module(sheaf.restriction(v, sheaf.graph().up_edges(v)), cap);
}

Degreewise supported_module(const Sheaf& sheaf, int v, int cap) {
  return gradedlin::kernel_module(sheaf.restriction(v, sheaf.graph().incident(v)), cap);
}

// ------------------------------------------------------------------ sections

namespace {

// Rows of the degree-d matrix of rho_{v,E}: edge coordinate -> entries.
std::map<int, SparseVec> transposed(const DegreewiseMap& map, int d, int offset, const mpq_class& sign) {
  std::map<int, SparseVec> rows;
  const auto cols = map.columns(d);
  for (int i = 0; i < static_cast<int>(cols.size()); ++i)
    for (const auto& [k, c] : cols[i]) rows[k].emplace_back(offset + i, sign * c);
  return rows;
}

}  // namespace

std::vector<std::map<int, int>> section_dims_chain(const Sheaf& sheaf, const std::vector<int>& order,
                                                   const std::vector<int>& degrees) {
  const MomentGraph& g = sheaf.graph();
  std::vector<std::map<int, int>> out(order.size());
  for (int d : degrees) {
    Echelon eqs;
    std::map<int, int> offset;
    int total = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const int v = order[k];
      offset[v] = total;
      total += sheaf.stalk(v).dim(d);
      for (int e : g.incident(v)) {
        const int u = g.other(e, v);
        if (!offset.count(u) || u == v) continue;
        auto ru = transposed(sheaf.rho(u, e), d, offset[u], -1);
        auto rv = transposed(sheaf.rho(v, e), d, offset[v], 1);
        for (auto& [kk, row] : rv) {
          SparseVec full = ru[kk];
          full.insert(full.end(), row.begin(), row.end());
          eqs.insert(full);
        }
        for (auto& [kk, row] : ru)
          if (!rv.count(kk)) eqs.insert(row);
      }
      out[k][d] = total - eqs.rank();
    }
  }
  return out;
}

std::map<int, int> section_dims(const Sheaf& sheaf, const std::vector<int>& omega, const std::vector<int>& degrees) {
  if (omega.empty()) {
    std::map<int, int> zero;
    for (int d : degrees) zero[d] = 0;
    return zero;
  }
  return section_dims_chain(sheaf, omega, degrees).back();
}

Degreewise sections(const Sheaf& sheaf, const std::vector<int>& omega, int cap) {
  const MomentGraph& g = sheaf.graph();
  const int n = g.system().rank();
  std::vector<Shape> parts;
  for (int v : omega) parts.push_back(sheaf.stalk(v));
  Degreewise out{sum_or_empty(n, parts), cap, {}};
  std::set<int> in(omega.begin(), omega.end());
  std::vector<int> inner;
  for (int e = 0; e < static_cast<int>(g.edges().size()); ++e)
    if (in.count(g.edges()[e].lower) && in.count(g.edges()[e].upper)) inner.push_back(e);
  for (int d = 0; d <= cap; d += 2) {
    std::map<int, int> eq_offset;
    int neq = 0;
    for (int e : inner) {
      eq_offset[e] = neq;
      neq += sheaf.edge(e).module.dim(d);
    }
    KernelBuilder kb(out.ambient.dim(d));
    for (int v : omega) {
      std::vector<std::pair<int, int>> at;  // (edge, sign)
      for (int e : g.incident(v))
        if (std::find(inner.begin(), inner.end(), e) != inner.end()) at.emplace_back(e, g.edges()[e].lower == v ? 1 : -1);
      std::vector<std::vector<SparseVec>> cols;
      for (auto [e, sign] : at) cols.push_back(sheaf.rho(v, e).columns(d));
      const int dimv = sheaf.stalk(v).dim(d);
      for (int i = 0; i < dimv; ++i) {
        SparseVec col;
        for (std::size_t a = 0; a < at.size(); ++a)
          for (const auto& [k, c] : cols[a][i]) col.emplace_back(eq_offset[at[a].first] + k, at[a].second * c);
        std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        kb.add_column(col);
      }
    }
    out.basis[d] = kb.kernel();
  }
  return out;
}

// ------------------------------------------------------------------ construction

int default_cap(const MomentGraph& g, int v) {
  return 2 * (g.vertex(g.top()).length - g.vertex(v).length) + 4;
}

namespace {

struct GlobalGenerator {
  int degree = 0;
  std::map<int, ModuleElt> value;  // absent = zero
};

}  // namespace

BMSheaf bm_construct(std::shared_ptr<const MomentGraph> graph, const BMOptions& opts) {
  const MomentGraph& g = *graph;
  const int n = g.system().rank();
  const auto order = g.processing_order();
  for (const auto& e : g.edges())
    if (g.vertex(e.lower).length == g.vertex(e.upper).length)
      throw InvariantError("vertices of equal length are adjacent: " + g.name(e.lower) + ", " + g.name(e.upper));
  if (order.front() != g.top()) throw InvariantError("top vertex is not the unique longest vertex");

  std::vector<std::vector<int>> stalks(g.size());
  std::vector<EdgeData> edges(g.edges().size());
  std::vector<std::vector<int>> costalks(g.size());
  std::vector<int> caps(g.size());
  std::vector<VertexLog> log;
  std::vector<GlobalGenerator> gens;

  for (int y : order) {
    const int cap = opts.cap.value_or(default_cap(g, y));
    caps[y] = cap;
    VertexLog entry{y, cap, {}, {}};
    const auto up = g.up_edges(y);

    if (up.empty()) {
      if (y != g.top()) throw InvariantError("vertex " + g.name(y) + " has no upward edge");
      stalks[y] = {0};
      costalks[y] = {0};
      for (int d = 0; d <= cap; d += 2) entry.costalk_dims[d] = static_cast<int>(gradedlin::dim_s(n, d));
      gens.push_back({0, {{y, Shape::free(n, {0}).unit(0)}}});
      log.push_back(std::move(entry));
      continue;
    }

    std::vector<Shape> parts;
    for (int e : up) {
      const int w = g.other(e, y);
      edges[e].module = Shape::quotient(n, stalks[w], g.edges()[e].label);
      edges[e].rho_upper = units(edges[e].module);
      parts.push_back(edges[e].module);
    }
    const Shape target = Shape::direct_sum(parts);

    // Restrictions of the known global sections to the edges at y.
    std::vector<ModuleElt> phi;
    for (const auto& gen : gens) {
      ModuleElt m;
      for (int e : up) {
        const int w = g.other(e, y);
        auto it = gen.value.find(w);
        if (it == gen.value.end()) m.resize(m.size() + stalks[w].size());
        else m.insert(m.end(), it->second.begin(), it->second.end());
      }
      phi.push_back(target.reduce(m));
    }

    // Projective cover: minimal generators of the image, chosen among the
    // restrictions degree by degree.
    std::set<int> degs;
    for (const auto& gen : gens) degs.insert(gen.degree);
    std::vector<int> chosen;
    for (int d : degs) {
      Echelon x(target.dim(d));
      for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].degree < d)
          for (const auto& mono : gradedlin::monomial_basis(n, d - gens[i].degree))
            x.insert(target.coords(gradedlin::module_scale(phi[i], Polynomial::monomial(mono)), d));
      for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].degree == d && x.insert(target.coords(phi[i], d))) chosen.push_back(static_cast<int>(i));
    }

    std::vector<int> stalk_degrees;
    std::vector<ModuleElt> images;
    for (int i : chosen) {
      stalk_degrees.push_back(gens[i].degree);
      images.push_back(phi[i]);
    }
    stalks[y] = stalk_degrees;
    const Shape stalk = Shape::free(n, stalk_degrees);
    std::size_t off = 0;
    for (std::size_t k = 0; k < up.size(); ++k) {
      const int e = up[k];
      const int width = edges[e].module.size();
      edges[e].rho_lower.clear();
      for (const auto& im : images)
        edges[e].rho_lower.emplace_back(im.begin() + static_cast<long>(off), im.begin() + static_cast<long>(off + width));
      off += width;
    }
    const DegreewiseMap cover(stalk, target, images);
    for (int d = 0; d <= cap; d += 2) entry.image_dims[d] = cover.rank(d);

    // Extend every known section to y.
    for (std::size_t i = 0; i < gens.size(); ++i) {
      auto pos = std::find(chosen.begin(), chosen.end(), static_cast<int>(i));
      if (pos != chosen.end()) {
        gens[i].value[y] = stalk.unit(static_cast<int>(pos - chosen.begin()));
        continue;
      }
      if (gradedlin::module_is_zero(phi[i])) continue;
      const int d = gens[i].degree;
      auto sol = gradedlin::solve(cover.columns(d), target.coords(phi[i], d));
      if (!sol) throw InvariantError("section does not lift through the cover at " + g.name(y));
      gens[i].value[y] = stalk.element(*sol, d);
    }

    const Degreewise costalk = gradedlin::kernel_module(cover, cap);
    const auto mg = gradedlin::free_generators(costalk);
    costalks[y] = mg.degrees;
    for (int d = 0; d <= cap; d += 2) entry.costalk_dims[d] = costalk.dim(d);
    for (std::size_t k = 0; k < mg.degrees.size(); ++k) gens.push_back({mg.degrees[k], {{y, mg.lifts[k]}}});
    log.push_back(std::move(entry));
  }

  return BMSheaf{Sheaf(std::move(graph), std::move(stalks), std::move(edges)), g.top(), std::move(costalks),
                 std::move(caps), std::move(log)};
}

LaurentPoly costalk_rank(const BMSheaf& bm, int v) { return gradedlin::graded_rank(bm.costalks[v]); }

HeckeElt character(const BMSheaf& bm) {
  const MomentGraph& g = bm.sheaf.graph();
  if (g.kind() != momentgraph::OrbitKind::Regular) throw InputError("character needs a regular moment graph");
  const int lx = g.vertex(bm.top).length;
  HeckeElt h;
  for (int v = 0; v < g.size(); ++v) h.add(g.vertex(v).rep, costalk_rank(bm, v).shift(g.vertex(v).length - lx));
  return h;
}

// ------------------------------------------------------------------ translation

momentgraph::PairModule costalk_interval_module(const BMSheaf& bm, const Element& y, int s) {
  const MomentGraph& g = bm.sheaf.graph();
  const auto& W = g.system();
  const int n = W.rank();
  if (g.kind() != momentgraph::OrbitKind::Regular) throw InputError("costalk_interval needs a regular moment graph");
  const Element ys = W.multiply_right(y, s);
  if (ys.length() > y.length()) throw InputError("costalk_interval needs ys < y");
  const int iy = g.find(y), iys = g.find(ys);
  const Element t = W.multiply(W.multiply(y, W.generator(s)), W.inverse(y));
  const auto alpha = W.reflection_root(t).coords;

  const Shape lo = iys >= 0 ? bm.sheaf.stalk(iys) : empty_shape(n);
  const Shape hi = iy >= 0 ? bm.sheaf.stalk(iy) : empty_shape(n);
  const int e0 = iy >= 0 && iys >= 0 ? g.edge_between(iys, iy) : -1;
  if (iy >= 0 && iys >= 0 && e0 < 0) throw InvariantError("no edge between y and ys");

  std::vector<Shape> parts;
  std::vector<ModuleElt> images(lo.size() + hi.size());
  auto append = [&](int e, const std::vector<ModuleElt>& lo_im, const std::vector<ModuleElt>& hi_im) {
    const Shape& mod = bm.sheaf.edge(e).module;
    parts.push_back(mod);
    for (int j = 0; j < lo.size(); ++j) {
      ModuleElt part = lo_im.empty() ? mod.zero() : lo_im[j];
      images[j].insert(images[j].end(), part.begin(), part.end());
    }
    for (int j = 0; j < hi.size(); ++j) {
      ModuleElt part = hi_im.empty() ? mod.zero() : hi_im[j];
      images[lo.size() + j].insert(images[lo.size() + j].end(), part.begin(), part.end());
    }
  };
  auto rho_images = [&](int v, int e) { return bm.sheaf.rho(v, e).images(); };
  if (iy >= 0)
    for (int e : g.up_edges(iy)) append(e, {}, rho_images(iy, e));
  if (iys >= 0)
    for (int e : g.up_edges(iys)) {
      if (e == e0) {
        std::vector<ModuleElt> neg;
        for (const auto& m : rho_images(iy, e)) neg.push_back(gradedlin::module_scale(m, Polynomial::constant(-1, n)));
        append(e, rho_images(iys, e), neg);
      } else {
        append(e, rho_images(iys, e), {});
      }
    }
  const Shape source = Shape::direct_sum({lo, hi});
  const Shape target = sum_or_empty(n, parts);
  for (auto& im : images) im.resize(target.size());
  const int cap = iys >= 0 ? bm.caps[iys] : default_cap(g, g.top());
  const DegreewiseMap map(source, target, images);
  return momentgraph::PairModule{lo, hi, alpha, gradedlin::kernel_module(map, cap)};
}

std::vector<int> costalk_interval(const BMSheaf& bm, const Element& y, int s) {
  return gradedlin::free_generator_degrees(costalk_interval_module(bm, y, s).module);
}

namespace {

// The longer element of each coset {w, ws} meeting the graph.
std::vector<Element> coset_tops(const MomentGraph& g, int s) {
  std::set<Element> out;
  for (const auto& v : g.vertices()) {
    const Element ws = g.system().multiply_right(v.rep, s);
    out.insert(ws.length() > v.rep.length() ? ws : v.rep);
  }
  return {out.begin(), out.end()};
}

}  // namespace

HeckeElt theta_character(const BMSheaf& bm, int s) {
  const MomentGraph& g = bm.sheaf.graph();
  const auto& W = g.system();
  const int lx = g.vertex(bm.top).length;
  HeckeElt h;
  for (const auto& y : coset_tops(g, s)) {
    const LaurentPoly q = gradedlin::graded_rank(costalk_interval(bm, y, s));
    h.add(y, q.shift(y.length() - 1 - lx));
    h.add(W.multiply_right(y, s), q.shift(y.length() - lx));
  }
  return h;
}

Sheaf translate_out(const Sheaf& quotient_sheaf, std::shared_ptr<const MomentGraph> target) {
  const MomentGraph& q = quotient_sheaf.graph();
  const MomentGraph& g = *target;
  const int n = g.system().rank();
  if (q.kind() != momentgraph::OrbitKind::Quotient || g.kind() != momentgraph::OrbitKind::Regular)
    throw InputError("translate_out maps sheaves on W/<s> to sheaves on W");
  if (q.system().id() != g.system().id()) throw InputError("graphs belong to different Coxeter systems");

  std::vector<int> image(g.size());
  std::vector<std::vector<int>> stalks(g.size());
  for (int v = 0; v < g.size(); ++v) {
    image[v] = q.find(g.vertex(v).rep);
    if (image[v] < 0) throw InputError("graph mismatch: " + g.name(v) + " has no coset in the quotient graph");
    stalks[v] = quotient_sheaf.stalk_degrees(image[v]);
  }
  std::vector<int> hits(q.size());
  for (int c : image) ++hits[c];
  for (int c = 0; c < q.size(); ++c)
    if (hits[c] != 2) throw InputError("graph mismatch: coset of " + q.name(c) + " is not contained in the target");
  std::vector<EdgeData> edges;
  for (const auto& e : g.edges()) {
    const int qa = image[e.lower], qb = image[e.upper];
    EdgeData data;
    if (qa == qb) {
      data.module = Shape::quotient(n, stalks[e.lower], e.label);
      data.rho_lower = units(data.module);
      data.rho_upper = units(data.module);
    } else {
      const int qe = q.edge_between(qa, qb);
      if (qe < 0 || q.edges()[qe].label != e.label)
        throw InputError("graph mismatch at edge " + g.name(e.lower) + " -- " + g.name(e.upper));
      const auto& src = quotient_sheaf.edge(qe);
      data.module = src.module;
      data.rho_lower = q.edges()[qe].lower == qa ? src.rho_lower : src.rho_upper;
      data.rho_upper = q.edges()[qe].lower == qb ? src.rho_lower : src.rho_upper;
    }
    edges.push_back(std::move(data));
  }
  return Sheaf(std::move(target), std::move(stalks), std::move(edges));
}

HeckeElt lift_character(const Sheaf& lifted, int quotient_top_length) {
  const MomentGraph& g = lifted.graph();
  HeckeElt h;
  for (int v = 0; v < g.size(); ++v) {
    const auto gens = gradedlin::free_generator_degrees(costalk_module(lifted, v, default_cap(g, v)));
    h.add(g.vertex(v).rep, gradedlin::graded_rank(gens).shift(g.vertex(v).length - 1 - quotient_top_length));
  }
  return h;
}

// ------------------------------------------------------------------ checks

CheckResult check_positive_degrees(const BMSheaf& bm) {
  CheckResult r;
  const MomentGraph& g = bm.sheaf.graph();
  const int lx = g.vertex(bm.top).length;
  for (int v = 0; v < g.size(); ++v) {
    if (v == bm.top) continue;
    const int diff = lx - g.vertex(v).length;
    const LaurentPoly f = costalk_rank(bm, v).shift(-diff);
    if (!f.in_v_z_v()) r.fail("f_{" + g.name(v) + ",x} = " + f.str() + " is not in vZ[v]");
    if (sorted(bm.costalks[v]) == std::vector<int>{diff, 2 * diff})
      r.fail("forbidden costalk pattern at " + g.name(v) + ": " + join(bm.costalks[v]));
  }
  return r;
}

CheckResult check_supported_sections(const BMSheaf& bm, int v) {
  CheckResult r;
  const MomentGraph& g = bm.sheaf.graph();
  const int n = g.system().rank();
  const int lx = g.vertex(bm.top).length, ly = g.vertex(v).length;
  const auto down = g.down_edges(v);
  if (g.kind() == momentgraph::OrbitKind::Regular && static_cast<int>(down.size()) != ly)
    r.fail("vertex " + g.name(v) + " has " + std::to_string(down.size()) + " downward edges, expected l(y)");

  const int shift = 2 * static_cast<int>(down.size());
  const Degreewise supported = supported_module(bm.sheaf, v, bm.caps[v] + shift);
  const auto supported_gens = gradedlin::free_generator_degrees(supported);
  std::vector<int> expect;
  for (int k : bm.costalks[v]) expect.push_back(k + shift);
  if (sorted(supported_gens) != sorted(expect))
    r.fail("supported sections at " + g.name(v) + " have generators " + join(supported_gens) + ", expected " +
           join(expect));

  Polynomial prod = Polynomial::constant(1, n);
  for (int e : down) prod = prod * Polynomial::linear(g.edges()[e].label);
  const auto costalk = gradedlin::minimal_generators(costalk_module(bm.sheaf, v, bm.caps[v]));
  const DegreewiseMap all = bm.sheaf.restriction(v, g.incident(v));
  for (const auto& c : costalk.lifts)
    if (!gradedlin::module_is_zero(all.apply(gradedlin::module_scale(c, prod))))
      r.fail("product of down-edge labels times a costalk generator at " + g.name(v) + " is not supported at y");

  std::vector<int> dual;
  for (int k : bm.sheaf.stalk_degrees(v)) dual.push_back(2 * (lx - ly) - k);
  if (sorted(dual) != sorted(bm.costalks[v]))
    r.fail("costalk " + join(bm.costalks[v]) + " at " + g.name(v) + " is not dual to stalk " +
           join(bm.sheaf.stalk_degrees(v)));
  return r;
}

CheckResult check_sections(const BMSheaf& bm) {
  CheckResult r;
  const MomentGraph& g = bm.sheaf.graph();
  const int n = g.system().rank();
  const int lx = g.vertex(bm.top).length;
  const auto order = g.processing_order();
  auto costalk_dim = [&](int v, int d) {
    long total = 0;
    for (int k : bm.costalks[v]) total += gradedlin::dim_s(n, d - k);
    return static_cast<int>(total);
  };
  auto degrees_upto = [](int top) {
    std::vector<int> out;
    for (int d = 0; d <= top; d += 2) out.push_back(d);
    return out;
  };

  // Flabbiness: sections over {>= y} restrict onto sections over {> y}.
  for (int y : order) {
    std::vector<int> upper;
    for (int w : order)
      if (w != y && g.leq(y, w)) upper.push_back(w);
    upper.push_back(y);
    const auto degs = degrees_upto(2 * (lx - g.vertex(y).length) + 2);
    const auto chain = section_dims_chain(bm.sheaf, upper, degs);
    for (int d : degs) {
      const int above = upper.size() > 1 ? chain[upper.size() - 2].at(d) : 0;
      const int with = chain.back().at(d);
      if (with - above != costalk_dim(y, d))
        r.fail("restriction to {>" + g.name(y) + "} is not surjective in degree " + std::to_string(d));
    }
  }

  // Additivity along the processing order.
  const auto degs = degrees_upto(2 * lx + 2);
  const auto chain = section_dims_chain(bm.sheaf, order, degs);
  for (std::size_t k = 0; k < order.size(); ++k)
    for (int d : degs) {
      const int prev = k ? chain[k - 1].at(d) : 0;
      if (chain[k].at(d) - prev != costalk_dim(order[k], d))
        r.fail("section dimensions are not additive at " + g.name(order[k]) + " in degree " + std::to_string(d));
    }
  return r;
}

CheckResult check_no_upper_summand(const BMSheaf& bm, int s) {
  CheckResult r;
  const MomentGraph& g = bm.sheaf.graph();
  for (const auto& y : coset_tops(g, s)) {
    const auto summands = momentgraph::decompose_ze_module(costalk_interval_module(bm, y, s));
    for (const auto& sm : summands)
      if (sm.kind == momentgraph::SummandKind::Upper)
        r.fail("B^{[ys,y]} for y = " + g.system().format(y) + " has a summand supported at y in degree " +
               std::to_string(sm.degree));
  }
  return r;
}

CheckResult check_interval_additivity(const BMSheaf& bm, int s) {
  CheckResult r;
  const MomentGraph& g = bm.sheaf.graph();
  const auto& W = g.system();
  for (const auto& y : coset_tops(g, s)) {
    const int iy = g.find(y), iys = g.find(W.multiply_right(y, s));
    std::vector<int> expect;
    if (iy >= 0) expect = bm.costalks[iy];
    if (iys >= 0) expect.insert(expect.end(), bm.costalks[iys].begin(), bm.costalks[iys].end());
    const auto got = costalk_interval(bm, y, s);
    if (sorted(got) != sorted(expect))
      r.fail("rank of B^{[ys,y]} at y = " + W.format(y) + " is " + join(got) + ", expected " + join(expect));
  }
  return r;
}

}  // namespace coxsheaf::bmsheaf
