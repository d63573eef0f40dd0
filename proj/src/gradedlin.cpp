#include "coxsheaf/gradedlin.hpp"

#include <algorithm>
#include <mutex>

#include "coxsheaf/error.hpp"

namespace coxsheaf::gradedlin {

// ------------------------------------------------------------------ Polynomial

Polynomial Polynomial::constant(const mpq_class& c, int n) { return monomial(Exponents(n, 0), c); }

Polynomial Polynomial::variable(int i, int n) {
  Exponents e(n, 0);
  e[i] = 1;
  return monomial(e);
}

Polynomial Polynomial::linear(const RootVector& alpha) {
  Polynomial p;
  const int n = static_cast<int>(alpha.size());
  for (int i = 0; i < n; ++i)
    if (alpha[i] != 0) {
      Exponents e(n, 0);
      e[i] = 1;
      p.add_term(e, mpq_class(static_cast<long>(alpha[i])));
    }
  return p;
}

Polynomial Polynomial::monomial(const Exponents& e, const mpq_class& c) {
  Polynomial p;
  p.add_term(e, c);
  return p;
}

void Polynomial::add_term(const Exponents& e, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

mpq_class Polynomial::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

namespace {
int total(const Exponents& e) {
  int t = 0;
  for (int x : e) t += x;
  return t;
}
}  // namespace

int Polynomial::degree() const {
  if (terms_.empty()) throw InvariantError("degree of the zero polynomial");
  return 2 * total(terms_.begin()->first);
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = total(terms_.begin()->first);
  for (const auto& [e, c] : terms_)
    if (total(e) != d) return false;
  return true;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(ea.size());
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial Polynomial::scaled(const mpq_class& c) const {
  Polynomial r;
  if (c == 0) return r;
  for (const auto& [e, x] : terms_) r.terms_.emplace(e, x * c);
  return r;
}

int pivot_variable(const RootVector& alpha) {
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] != 0) return static_cast<int>(i);
  throw InputError("linear form must be non-zero");
}

Polynomial Polynomial::reduce_mod(const RootVector& alpha) const {
  const int p = pivot_variable(alpha);
  const int n = static_cast<int>(alpha.size());
  // a_p = -(sum_{j != p} alpha_j a_j) / alpha_p
  Polynomial sub;
  for (int j = 0; j < n; ++j)
    if (j != p && alpha[j] != 0) {
      Exponents e(n, 0);
      e[j] = 1;
      mpq_class c(-static_cast<long>(alpha[j]), static_cast<long>(alpha[p]));
      c.canonicalize();
      sub.add_term(e, c);
    }
  std::vector<Polynomial> powers{Polynomial::constant(1, n)};
  Polynomial r;
  for (const auto& [e, c] : terms_) {
    if (e[p] == 0) {
      r.add_term(e, c);
      continue;
    }
    while (static_cast<int>(powers.size()) <= e[p]) powers.push_back(powers.back() * sub);
    Exponents rest = e;
    rest[p] = 0;
    r += Polynomial::monomial(rest, c) * powers[e[p]];
  }
  return r;
}

std::optional<Polynomial> Polynomial::divide(const RootVector& alpha) const {
  const int p = pivot_variable(alpha);
  const Polynomial a = linear(alpha);
  const mpq_class lead(static_cast<long>(alpha[p]));
  Polynomial work = *this, q;
  for (;;) {
    auto it = std::max_element(work.terms_.begin(), work.terms_.end(),
                               [p](const auto& x, const auto& y) { return x.first[p] < y.first[p]; });
    if (it == work.terms_.end() || it->first[p] == 0) break;
    Exponents e = it->first;
    e[p] -= 1;
    Polynomial t = monomial(e, it->second / lead);
    q += t;
    work -= t * a;
  }
  if (!work.is_zero()) return std::nullopt;
  return q;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    mpq_class mag = abs(c);
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "a" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) out += mag.get_str();
    else if (mag == 1) out += mono;
    else out += mag.get_str() + "*" + mono;
  }
  return out;
}

// ------------------------------------------------------------------ bases

long dim_s(int n, int d) {
  if (d < 0 || d % 2 != 0) return 0;
  const long k = d / 2;
  // C(n + k - 1, k)
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n + k - 1), static_cast<unsigned long>(k));
  return r.get_si();
}

long dim_quotient(int n, int d) { return dim_s(n - 1, d); }

namespace {

void enumerate(int n, int k, int i, Exponents& cur, std::vector<Exponents>& out) {
  if (i == n - 1) {
    cur[i] = k;
    out.push_back(cur);
    return;
  }
  for (int a = k; a >= 0; --a) {
    cur[i] = a;
    enumerate(n, k - a, i + 1, cur, out);
  }
}

}  // namespace

const std::vector<Exponents>& monomial_basis(int n, int d) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<Exponents>> cache;
  static const std::vector<Exponents> empty;
  if (d % 2 != 0) throw InputError("odd degree " + std::to_string(d) + " in an evenly graded ring");
  if (d < 0) return empty;
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.try_emplace({n, d});
  if (inserted) {
    Exponents cur(n, 0);
    if (n > 0) enumerate(n, d / 2, 0, cur, it->second);
    else if (d == 0) it->second.push_back({});
  }
  return it->second;
}

std::vector<Exponents> quotient_basis(int n, const RootVector& alpha, int d) {
  const int p = pivot_variable(alpha);
  std::vector<Exponents> out;
  for (const auto& e : monomial_basis(n, d))
    if (e[p] == 0) out.push_back(e);
  return out;
}

// ------------------------------------------------------------------ vectors

SparseVec sparse_sub_scaled(const SparseVec& a, const mpq_class& c, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -c * b[j].second);
      ++j;
    } else {
      mpq_class v = a[i].second - c * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec sparse_scale(const SparseVec& a, const mpq_class& c) {
  SparseVec out;
  if (c == 0) return out;
  out.reserve(a.size());
  for (const auto& [i, x] : a) out.emplace_back(i, x * c);
  return out;
}

SparseVec Echelon::reduce(const SparseVec& v) const {
  SparseVec w = v;
  std::size_t i = 0;
  while (i < w.size()) {
    auto it = rows_.find(w[i].first);
    if (it == rows_.end()) {
      ++i;
      continue;
    }
    const mpq_class c = w[i].second;
    w = sparse_sub_scaled(w, c, it->second);
  }
  return w;
}

bool Echelon::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  const mpq_class lead = r.front().second;
  if (lead != 1) r = sparse_scale(r, 1 / lead);
  const int pivot = r.front().first;
  rows_.emplace(pivot, std::move(r));
  return true;
}

std::vector<SparseVec> Echelon::basis() const {
  std::vector<SparseVec> out;
  for (const auto& [p, r] : rows_) out.push_back(r);
  return out;
}

void KernelBuilder::add_column(const SparseVec& image) {
  if (next_ >= source_dim_) throw InvariantError("KernelBuilder: too many columns");
  SparseVec img = image;
  SparseVec combo{{next_, mpq_class(1)}};
  ++next_;
  std::size_t i = 0;
  while (i < img.size()) {
    auto it = rows_.find(img[i].first);
    if (it == rows_.end()) {
      ++i;
      continue;
    }
    const mpq_class c = img[i].second;
    img = sparse_sub_scaled(img, c, it->second.image);
    combo = sparse_sub_scaled(combo, c, it->second.combo);
  }
  if (img.empty()) {
    kernel_.push_back(std::move(combo));
    return;
  }
  const mpq_class inv = 1 / img.front().second;
  const int pivot = img.front().first;
  rows_.emplace(pivot, Row{sparse_scale(img, inv), sparse_scale(combo, inv)});
}

// ------------------------------------------------------------------ Shape

Shape::Shape(int n, std::vector<Generator> gens) : n_(n), gens_(std::move(gens)) {
  for (const auto& g : gens_) {
    if (g.degree % 2 != 0) throw InputError("generator degrees must be even");
    if (!g.modulus.empty()) {
      if (static_cast<int>(g.modulus.size()) != n_) throw InputError("modulus has wrong dimension");
      pivot_variable(g.modulus);
    }
  }
}

Shape Shape::free(int n, const std::vector<int>& degrees) {
  std::vector<Generator> g;
  for (int d : degrees) g.push_back({d, {}});
  return Shape(n, std::move(g));
}

Shape Shape::quotient(int n, const std::vector<int>& degrees, const RootVector& alpha) {
  std::vector<Generator> g;
  for (int d : degrees) g.push_back({d, alpha});
  return Shape(n, std::move(g));
}

Shape Shape::direct_sum(const std::vector<Shape>& parts) {
  if (parts.empty()) throw InputError("direct sum of no parts");
  std::vector<Generator> g;
  for (const auto& p : parts) {
    if (p.n_ != parts.front().n_) throw InputError("direct sum of modules over different rings");
    g.insert(g.end(), p.gens_.begin(), p.gens_.end());
  }
  return Shape(parts.front().n_, std::move(g));
}

std::vector<int> Shape::degrees() const {
  std::vector<int> out;
  for (const auto& g : gens_) out.push_back(g.degree);
  return out;
}

const std::vector<Exponents>& Shape::basis(int d, int j) const {
  auto [it, inserted] = basis_cache_.try_emplace({d, j});
  if (inserted) {
    const auto& g = gens_[j];
    const int e = d - g.degree;
    if (e >= 0) it->second = g.modulus.empty() ? monomial_basis(n_, e) : quotient_basis(n_, g.modulus, e);
  }
  return it->second;
}

int Shape::dim(int d) const {
  int total_dim = 0;
  for (int j = 0; j < size(); ++j) total_dim += static_cast<int>(basis(d, j).size());
  return total_dim;
}

int Shape::offset(int d, int j) const {
  int off = 0;
  for (int i = 0; i < j; ++i) off += static_cast<int>(basis(d, i).size());
  return off;
}

ModuleElt Shape::unit(int j) const {
  ModuleElt m = zero();
  m[j] = Polynomial::constant(1, n_);
  return m;
}

ModuleElt Shape::reduce(const ModuleElt& m) const {
  if (static_cast<int>(m.size()) != size()) throw InvariantError("module element has wrong length");
  ModuleElt out = m;
  for (int j = 0; j < size(); ++j)
    if (!gens_[j].modulus.empty() && !out[j].is_zero()) out[j] = out[j].reduce_mod(gens_[j].modulus);
  return out;
}

SparseVec Shape::coords(const ModuleElt& m, int d) const {
  const ModuleElt r = reduce(m);
  SparseVec out;
  int off = 0;
  for (int j = 0; j < size(); ++j) {
    const auto& b = basis(d, j);
    if (!r[j].is_zero()) {
      // basis is deglex descending; terms are stored ascending
      std::vector<std::pair<int, mpq_class>> part;
      for (const auto& [e, c] : r[j].terms()) {
        auto it = std::lower_bound(b.begin(), b.end(), e, std::greater<>());
        if (it == b.end() || *it != e)
          throw InvariantError("element is not homogeneous of degree " + std::to_string(d));
        part.emplace_back(off + static_cast<int>(it - b.begin()), c);
      }
      std::sort(part.begin(), part.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      out.insert(out.end(), part.begin(), part.end());
    }
    off += static_cast<int>(b.size());
  }
  return out;
}

std::pair<int, Exponents> Shape::basis_vector(int d, int index) const {
  for (int j = 0; j < size(); ++j) {
    const auto& b = basis(d, j);
    if (index < static_cast<int>(b.size())) return {j, b[index]};
    index -= static_cast<int>(b.size());
  }
  throw InvariantError("basis index out of range");
}

ModuleElt Shape::element(const SparseVec& v, int d) const {
  ModuleElt m = zero();
  for (const auto& [i, c] : v) {
    auto [j, e] = basis_vector(d, i);
    m[j].add_term(e, c);
  }
  return m;
}

ModuleElt module_add(const ModuleElt& a, const ModuleElt& b) {
  ModuleElt r = a;
  for (std::size_t j = 0; j < r.size(); ++j) r[j] += b[j];
  return r;
}

ModuleElt module_scale(const ModuleElt& a, const Polynomial& p) {
  ModuleElt r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j)
    if (!a[j].is_zero()) r[j] = a[j] * p;
  return r;
}

bool module_is_zero(const ModuleElt& m) {
  return std::all_of(m.begin(), m.end(), [](const Polynomial& p) { return p.is_zero(); });
}

// ------------------------------------------------------------------ maps

DegreewiseMap::DegreewiseMap(Shape source, Shape target, std::vector<ModuleElt> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != source_.size()) throw InvariantError("map needs one image per generator");
  for (auto& im : images_) im = target_.reduce(im);
}

ModuleElt DegreewiseMap::apply(const ModuleElt& m) const {
  ModuleElt r = target_.zero();
  for (int j = 0; j < source_.size(); ++j)
    if (!m[j].is_zero()) r = module_add(r, module_scale(images_[j], m[j]));
  return target_.reduce(r);
}

std::vector<SparseVec> DegreewiseMap::columns(int d) const {
  auto [it, inserted] = column_cache_.try_emplace(d);
  if (!inserted) return it->second;
  for (int j = 0; j < source_.size(); ++j)
    for (const auto& e : source_.basis(d, j))
      it->second.push_back(target_.coords(module_scale(images_[j], Polynomial::monomial(e)), d));
  return it->second;
}

std::vector<SparseVec> DegreewiseMap::kernel(int d) const {
  const auto cols = columns(d);
  KernelBuilder kb(static_cast<int>(cols.size()));
  for (const auto& c : cols) kb.add_column(c);
  return kb.kernel();
}

std::vector<SparseVec> DegreewiseMap::image(int d) const {
  Echelon e(target_.dim(d));
  for (const auto& c : columns(d)) e.insert(c);
  return e.basis();
}

int DegreewiseMap::rank(int d) const { return static_cast<int>(image(d).size()); }

// ------------------------------------------------------------------ submodules

int Degreewise::dim(int d) const {
  auto it = basis.find(d);
  return it == basis.end() ? 0 : static_cast<int>(it->second.size());
}

namespace {

int element_degree(const Shape& s, const ModuleElt& m) {
  for (int j = 0; j < s.size(); ++j)
    if (!m[j].is_zero()) return m[j].degree() + s.gens()[j].degree;
  return -1;
}

}  // namespace

Degreewise span_of(const Shape& ambient, const std::vector<ModuleElt>& gens, int cap) {
  Degreewise out{ambient, cap, {}};
  std::vector<std::pair<int, ModuleElt>> reduced;
  for (const auto& g : gens) {
    ModuleElt r = ambient.reduce(g);
    const int deg = element_degree(ambient, r);
    if (deg >= 0) reduced.emplace_back(deg, std::move(r));
  }
  for (int d = 0; d <= cap; d += 2) {
    Echelon e(ambient.dim(d));
    for (const auto& [deg, g] : reduced)
      if (deg <= d)
        for (const auto& mono : monomial_basis(ambient.nvars(), d - deg))
          e.insert(ambient.coords(module_scale(g, Polynomial::monomial(mono)), d));
    out.basis[d] = e.basis();
  }
  return out;
}

MinimalGenerators minimal_generators(const Degreewise& sub, bool check_cap) {
  MinimalGenerators out;
  const Shape& amb = sub.ambient;
  const int n = amb.nvars();
  for (int d = 0; d <= sub.cap; d += 2) {
    Echelon x(amb.dim(d));
    if (d >= 2 && sub.basis.count(d - 2))
      for (const auto& b : sub.basis.at(d - 2)) {
        const ModuleElt m = amb.element(b, d - 2);
        for (int i = 0; i < n; ++i) x.insert(amb.coords(module_scale(m, Polynomial::variable(i, n)), d));
      }
    if (!sub.basis.count(d)) continue;
    for (const auto& b : sub.basis.at(d))
      if (x.insert(b)) {
        if (check_cap && d >= sub.cap - 2)
          throw CapError("new minimal generator in degree " + std::to_string(d) + " at cap " +
                         std::to_string(sub.cap) + "; raise the degree cap");
        out.degrees.push_back(d);
        out.lifts.push_back(amb.element(b, d));
      }
  }
  return out;
}

std::vector<int> deconvolve(int n, const std::map<int, int>& dims, int cap) {
  std::map<int, long> c;
  std::vector<int> out;
  for (int d = 0; d <= cap; d += 2) {
    auto it = dims.find(d);
    long v = it == dims.end() ? 0 : it->second;
    for (const auto& [e, ce] : c) v -= ce * dim_s(n, d - e);
    if (v < 0) throw NotFreeError("Hilbert function is not that of a graded free module (degree " +
                                  std::to_string(d) + ")");
    if (v > 0) c[d] = v;
    for (long i = 0; i < v; ++i) out.push_back(d);
  }
  return out;
}

LaurentPoly graded_rank(const std::vector<int>& degrees) {
  LaurentPoly r;
  for (int k : degrees) r.add_term(k, 1);
  return r;
}

MinimalGenerators free_generators(const Degreewise& sub, bool check_cap) {
  MinimalGenerators mg = minimal_generators(sub, check_cap);
  std::map<int, int> dims;
  for (int d = 0; d <= sub.cap; d += 2) dims[d] = sub.dim(d);
  std::vector<int> dc = deconvolve(sub.ambient.nvars(), dims, sub.cap);
  if (dc != mg.degrees) throw NotFreeError("minimal generators do not match the Hilbert function: not graded free");
  return mg;
}

std::vector<int> free_generator_degrees(const Degreewise& sub, bool check_cap) {
  return free_generators(sub, check_cap).degrees;
}

std::optional<SparseVec> solve(const std::vector<SparseVec>& columns, const SparseVec& rhs) {
  // Echelon form of the columns, remembering how each row was combined.
  std::map<int, std::pair<SparseVec, SparseVec>> rows;
  auto reduce = [&](SparseVec& v, SparseVec& combo) {
    std::size_t i = 0;
    while (i < v.size()) {
      auto it = rows.find(v[i].first);
      if (it == rows.end()) {
        ++i;
        continue;
      }
      const mpq_class c = v[i].second;
      v = sparse_sub_scaled(v, c, it->second.first);
      combo = sparse_sub_scaled(combo, c, it->second.second);
    }
  };
  for (std::size_t j = 0; j < columns.size(); ++j) {
    SparseVec v = columns[j];
    SparseVec combo{{static_cast<int>(j), mpq_class(1)}};
    reduce(v, combo);
    if (v.empty()) continue;
    const mpq_class inv = 1 / v.front().second;
    const int pivot = v.front().first;
    rows.emplace(pivot, std::pair(sparse_scale(v, inv), sparse_scale(combo, inv)));
  }
  SparseVec v = rhs, combo;
  reduce(v, combo);
  if (!v.empty()) return std::nullopt;
  // rhs - sum(c_k row_k) = 0 with combo = -sum(c_k combo_k)
  return sparse_scale(combo, -1);
}

Degreewise kernel_module(const DegreewiseMap& map, int cap) {
  Degreewise out{map.source(), cap, {}};
  for (int d = 0; d <= cap; d += 2) out.basis[d] = map.kernel(d);
  return out;
}

}  // namespace coxsheaf::gradedlin
