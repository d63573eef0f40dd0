#include "coxsheaf/coxeter.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <sstream>

#include "coxsheaf/error.hpp"

namespace coxsheaf::coxeter {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw RealizationError("integer overflow in group matrix arithmetic");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw RealizationError("integer overflow in group matrix arithmetic");
  return r;
}

std::atomic<std::uint64_t> next_system_id{1};

// a_st * a_ts for the finite orders we can realize over the integers.
std::optional<int> cartan_product_for(int m) {
  switch (m) {
    case 2: return 0;
    case 3: return 1;
    case 4: return 2;
    case 6: return 3;
    default: return std::nullopt;
  }
}

std::pair<int, int> default_cartan_pair(int m) {
  switch (m) {
    case 2: return {0, 0};
    case 3: return {-1, -1};
    case 4: return {-1, -2};
    case 6: return {-1, -3};
    default: return {-2, -2};  // infinity
  }
}

}  // namespace

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, 0) {}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  IntMatrix out(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const std::int64_t a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < n_; ++j) out(i, j) = checked_add(out(i, j), checked_mul(a, rhs(k, j)));
    }
  return out;
}

RootVector IntMatrix::apply(std::span<const std::int64_t> v) const {
  RootVector out(n_, 0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out[i] = checked_add(out[i], checked_mul((*this)(i, j), v[j]));
  return out;
}

RootVector IntMatrix::column(int j) const {
  RootVector out(n_);
  for (int i = 0; i < n_; ++i) out[i] = (*this)(i, j);
  return out;
}

std::int64_t IntMatrix::trace() const {
  std::int64_t t = 0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

int IntMatrix::rank_minus_identity() const {
  std::vector<std::vector<mpq_class>> a(n_, std::vector<mpq_class>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) a[i][j] = mpq_class((*this)(i, j) - (i == j ? 1 : 0));
  int rank = 0;
  for (int col = 0; col < n_ && rank < n_; ++col) {
    int pivot = -1;
    for (int r = rank; r < n_; ++r)
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[pivot], a[rank]);
    for (int r = rank + 1; r < n_; ++r) {
      if (a[r][col] == 0) continue;
      mpq_class f = a[r][col] / a[rank][col];
      for (int c = col; c < n_; ++c) a[r][c] -= f * a[rank][c];
    }
    ++rank;
  }
  return rank;
}

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  std::size_t h = std::hash<std::uint64_t>{}(e.system_id());
  for (int s : e.word()) h = h * 1315423911u + static_cast<std::size_t>(s + 1);
  return h;
}

// ---------------------------------------------------------------- system

struct CoxeterSystem::Impl {
  int rank = 0;
  std::uint64_t id = 0;
  std::vector<std::vector<int>> coxeter;
  std::vector<std::vector<int>> cartan;
  std::vector<std::string> labels;
  std::vector<IntMatrix> generators;
  bool universal = false;
};

CoxeterSystem CoxeterSystem::make(const std::vector<std::vector<int>>& coxeter,
                                  const std::optional<std::vector<std::vector<int>>>& cartan,
                                  std::vector<std::string> labels) {
  const int n = static_cast<int>(coxeter.size());
  if (n == 0) throw InputError("Coxeter matrix must be non-empty");
  for (const auto& row : coxeter)
    if (static_cast<int>(row.size()) != n) throw InputError("Coxeter matrix must be square");

  for (int s = 0; s < n; ++s) {
    if (coxeter[s][s] != 1) throw InputError("Coxeter matrix must have unit diagonal");
    for (int t = 0; t < n; ++t) {
      if (coxeter[s][t] != coxeter[t][s]) throw InputError("Coxeter matrix must be symmetric");
      if (s == t) continue;
      const int m = coxeter[s][t];
      if (m == 1 || m < 0) throw InputError("off-diagonal Coxeter entries must be >= 2 or infinity");
      if (m != kInfinity && !cartan_product_for(m))
        throw InputError("m_st = " + std::to_string(m) + " has no rational realization (supported: 2, 3, 4, 6, inf)");
    }
  }

  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  if (cartan) {
    if (static_cast<int>(cartan->size()) != n) throw InputError("Cartan matrix has wrong size");
    for (const auto& row : *cartan)
      if (static_cast<int>(row.size()) != n) throw InputError("Cartan matrix must be square");
    a = *cartan;
  } else {
    for (int s = 0; s < n; ++s) {
      a[s][s] = 2;
      for (int t = s + 1; t < n; ++t) {
        auto [ast, ats] = default_cartan_pair(coxeter[s][t]);
        a[s][t] = ast;
        a[t][s] = ats;
      }
    }
  }

  for (int s = 0; s < n; ++s) {
    if (a[s][s] != 2) throw InputError("Cartan matrix must have 2 on the diagonal");
    for (int t = 0; t < n; ++t) {
      if (s == t) continue;
      if (a[s][t] > 0) throw InputError("off-diagonal Cartan entries must be <= 0");
      const int product = a[s][t] * a[t][s];
      const int m = coxeter[s][t];
      if (m == kInfinity) {
        if (product < 4) throw InputError("Cartan entries incompatible with m_st = inf (need a_st a_ts >= 4)");
      } else if (product != *cartan_product_for(m)) {
        throw InputError("Cartan entries incompatible with m_st = " + std::to_string(m));
      }
    }
  }

  if (labels.empty())
    for (int s = 0; s < n; ++s) labels.push_back("s" + std::to_string(s + 1));
  if (static_cast<int>(labels.size()) != n) throw InputError("label count must equal the rank");

  auto impl = std::make_shared<Impl>();
  impl->rank = n;
  impl->id = next_system_id.fetch_add(1);
  impl->coxeter = coxeter;
  impl->cartan = a;
  impl->labels = std::move(labels);
  impl->universal = true;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (s != t && coxeter[s][t] != kInfinity) impl->universal = false;
  for (int s = 0; s < n; ++s) {
    IntMatrix g = IntMatrix::identity(n);
    for (int j = 0; j < n; ++j) g(s, j) -= a[s][j];
    impl->generators.push_back(std::move(g));
  }
  return CoxeterSystem(std::move(impl));
}

int CoxeterSystem::rank() const { return impl_->rank; }
std::uint64_t CoxeterSystem::id() const { return impl_->id; }
int CoxeterSystem::coxeter_entry(int s, int t) const { return impl_->coxeter[s][t]; }
int CoxeterSystem::cartan_entry(int i, int j) const { return impl_->cartan[i][j]; }
const std::vector<std::vector<int>>& CoxeterSystem::coxeter_matrix() const { return impl_->coxeter; }
const std::vector<std::vector<int>>& CoxeterSystem::cartan_matrix() const { return impl_->cartan; }
const std::vector<std::string>& CoxeterSystem::labels() const { return impl_->labels; }
bool CoxeterSystem::is_universal() const { return impl_->universal; }

void CoxeterSystem::require_same(const Element& e) const {
  if (e.system_id() != impl_->id) throw InputError("element belongs to a different Coxeter system");
}

Element CoxeterSystem::build(Word canonical) const {
  const int n = rank();
  Element e;
  e.system_id_ = impl_->id;
  e.matrix_ = IntMatrix::identity(n);
  e.inverse_ = IntMatrix::identity(n);
  for (int s : canonical) {
    e.matrix_ = e.matrix_ * impl_->generators[s];
    e.inverse_ = impl_->generators[s] * e.inverse_;
  }
  e.word_ = std::move(canonical);
  return e;
}

Element CoxeterSystem::identity() const { return build({}); }

Element CoxeterSystem::generator(int s) const {
  if (s < 0 || s >= rank()) throw InputError("generator index out of range");
  return build({s});
}

Element CoxeterSystem::normal_form(const Word& word) const {
  const int n = rank();
  // inv holds the matrix of w^{-1}; s is a left descent of w iff w^{-1}(alpha_s) < 0.
  IntMatrix inv = IntMatrix::identity(n);
  for (int s : word) {
    if (s < 0 || s >= n) throw InputError("generator index out of range in word");
    inv = impl_->generators[s] * inv;
  }
  Word canonical;
  for (;;) {
    int descent = -1;
    for (int s = 0; s < n && descent < 0; ++s) {
      Root r = classify(inv.column(s));
      if (!r.positive) descent = s;
    }
    if (descent < 0) break;
    canonical.push_back(descent);
    inv = inv * impl_->generators[descent];
    if (canonical.size() > word.size()) throw InvariantError("normal form longer than input word");
  }
  if (inv != IntMatrix::identity(n)) throw RealizationError("no left descent but matrix is not the identity");
  return build(std::move(canonical));
}

Element CoxeterSystem::multiply(const Element& a, const Element& b) const {
  require_same(a);
  require_same(b);
  if (b.is_identity()) return a;
  if (a.is_identity()) return b;
  Word w = a.word();
  w.insert(w.end(), b.word().begin(), b.word().end());
  return normal_form(w);
}

Element CoxeterSystem::multiply_right(const Element& a, int s) const {
  require_same(a);
  Word w = a.word();
  w.push_back(s);
  return normal_form(w);
}

Element CoxeterSystem::multiply_left(int s, const Element& a) const {
  require_same(a);
  Word w{s};
  w.insert(w.end(), a.word().begin(), a.word().end());
  return normal_form(w);
}

Element CoxeterSystem::inverse(const Element& a) const {
  require_same(a);
  Word w(a.word().rbegin(), a.word().rend());
  return normal_form(w);
}

bool CoxeterSystem::is_right_descent(const Element& w, int s) const {
  require_same(w);
  return !classify(w.matrix().column(s)).positive;
}

bool CoxeterSystem::is_left_descent(const Element& w, int s) const {
  require_same(w);
  return !classify(w.inverse_matrix().column(s)).positive;
}

std::vector<int> CoxeterSystem::right_descents(const Element& w) const {
  std::vector<int> out;
  for (int s = 0; s < rank(); ++s)
    if (is_right_descent(w, s)) out.push_back(s);
  return out;
}

bool CoxeterSystem::is_reflection(const Element& w) const {
  require_same(w);
  if (w.length() % 2 == 0) return false;
  const auto& m = w.matrix();
  return m.rank_minus_identity() == 1 && m.trace() == m.size() - 2;
}

Root CoxeterSystem::reflection_root(const Element& w) const {
  if (!is_reflection(w)) throw InputError("reflection_root called on a non-reflection " + format(w));
  const auto& m = w.matrix();
  const int n = rank();
  for (int j = 0; j < n; ++j) {
    RootVector col = m.column(j);
    col[j] -= 1;
    std::int64_t g = 0;
    for (auto c : col) g = std::gcd(g, c < 0 ? -c : c);
    if (g == 0) continue;
    for (auto& c : col) c /= g;
    Root r = classify(col);
    if (!r.positive)
      for (auto& c : r.coords) c = -c;
    r.positive = true;
    return r;
  }
  throw InvariantError("reflection with M - I = 0");
}

Root CoxeterSystem::classify(RootVector coords) const {
  bool has_pos = false, has_neg = false;
  for (auto c : coords) {
    has_pos |= c > 0;
    has_neg |= c < 0;
  }
  if (has_pos && has_neg) throw RealizationError("root with mixed-sign coordinates");
  if (!has_pos && !has_neg) throw RealizationError("zero vector is not a root");
  return Root{std::move(coords), has_pos};
}

RootVector CoxeterSystem::act(const Element& w, std::span<const std::int64_t> lambda) const {
  require_same(w);
  if (static_cast<int>(lambda.size()) != rank()) throw InputError("linear form has wrong dimension");
  return w.matrix().apply(lambda);
}

bool CoxeterSystem::bruhat_leq(const Element& y, const Element& x) const {
  require_same(y);
  require_same(x);
  if (y.length() > x.length()) return false;
  Element cur = y;
  const Word& w = x.word();
  for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i) {
    if (cur.length() > i + 1) return false;
    if (is_right_descent(cur, w[i])) cur = multiply_right(cur, w[i]);
  }
  return cur.is_identity();
}

std::vector<Element> CoxeterSystem::bruhat_interval(const Element& x) const {
  require_same(x);
  std::set<Element> acc{identity()};
  for (int s : x.word()) {
    std::vector<Element> grown;
    for (const auto& y : acc) grown.push_back(multiply_right(y, s));
    acc.insert(grown.begin(), grown.end());
  }
  return {acc.begin(), acc.end()};
}

std::vector<Element> CoxeterSystem::elements_up_to_length(int max_length) const {
  std::set<Element> all{identity()};
  std::vector<Element> layer{identity()};
  for (int l = 1; l <= max_length && !layer.empty(); ++l) {
    std::set<Element> next;
    for (const auto& w : layer)
      for (int s = 0; s < rank(); ++s)
        if (!is_right_descent(w, s)) next.insert(multiply_right(w, s));
    layer.assign(next.begin(), next.end());
    all.insert(next.begin(), next.end());
  }
  return {all.begin(), all.end()};
}

Word CoxeterSystem::parse_word(std::string_view text) const {
  Word out;
  if (text.empty() || text == "e") return out;
  auto push = [&](long v) {
    if (v < 1 || v > rank())
      throw InputError("generator index " + std::to_string(v) + " out of range 1.." + std::to_string(rank()));
    out.push_back(static_cast<int>(v - 1));
  };
  if (text.find(',') != std::string_view::npos) {
    std::string token;
    std::istringstream in{std::string(text)};
    while (std::getline(in, token, ',')) {
      if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw InputError("malformed word '" + std::string(text) + "'");
      push(std::stol(token));
    }
    return out;
  }
  for (char c : text) {
    if (c < '0' || c > '9') throw InputError("malformed word '" + std::string(text) + "'");
    push(c - '0');
  }
  return out;
}

std::string CoxeterSystem::format_word(const Word& word) const {
  std::string out;
  const bool commas = rank() > 9;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (commas && i > 0) out += ',';
    out += std::to_string(word[i] + 1);
  }
  return out;
}

}  // namespace coxsheaf::coxeter
