#pragma once

// Coxeter systems realized over the integers by a generalized Cartan matrix.
//
// The representation space is V* with the simple roots alpha_1..alpha_n as a
// basis; the generator s_i acts by alpha_j -> alpha_j - a_ij alpha_i.  Every
// group element is an integer matrix with determinant +-1, so roots are
// primitive integer vectors and all arithmetic is exact.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coxsheaf::coxeter {

/// Coxeter matrix entry encoding m_st = infinity.
inline constexpr int kInfinity = 0;

/// Sequence of 0-based generator indices.
using Word = std::vector<int>;

/// Linear form on V, in simple-root coordinates.
using RootVector = std::vector<std::int64_t>;

/// Square integer matrix with overflow-checked arithmetic.  Column j holds the
/// image of alpha_j.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int n);
  static IntMatrix identity(int n);

  int size() const { return n_; }
  std::int64_t operator()(int i, int j) const { return data_[index(i, j)]; }
  std::int64_t& operator()(int i, int j) { return data_[index(i, j)]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  RootVector apply(std::span<const std::int64_t> v) const;
  RootVector column(int j) const;
  std::int64_t trace() const;
  /// Rank of (this - I) over the rationals.
  int rank_minus_identity() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
  int n_ = 0;
  std::vector<std::int64_t> data_;
};

/// A root alpha in simple-root coordinates together with its sign.
struct Root {
  RootVector coords;
  bool positive = true;

  friend bool operator==(const Root&, const Root&) = default;
};

class CoxeterSystem;

/// Group element in canonical (ShortLex-least reduced word) form.  Ordering is
/// ShortLex: by length, then lexicographically by word.
class Element {
 public:
  Element() = default;

  const Word& word() const { return word_; }
  int length() const { return static_cast<int>(word_.size()); }
  bool is_identity() const { return word_.empty(); }
  const IntMatrix& matrix() const { return matrix_; }
  const IntMatrix& inverse_matrix() const { return inverse_; }
  std::uint64_t system_id() const { return system_id_; }

  friend bool operator==(const Element& a, const Element& b) {
    return a.system_id_ == b.system_id_ && a.word_ == b.word_;
  }
  friend std::strong_ordering operator<=>(const Element& a, const Element& b) {
    if (auto c = a.word_.size() <=> b.word_.size(); c != 0) return c;
    return a.word_ <=> b.word_;
  }

 private:
  friend class CoxeterSystem;
  Word word_;
  IntMatrix matrix_;
  IntMatrix inverse_;
  std::uint64_t system_id_ = 0;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

/// Immutable, cheaply copyable handle on a validated Coxeter system.
class CoxeterSystem {
 public:
  /// Validates the Coxeter matrix (entries in {1,2,3,4,6,inf}) and the Cartan
  /// matrix, generating default Cartan entries when none are supplied.
  static CoxeterSystem make(const std::vector<std::vector<int>>& coxeter,
                            const std::optional<std::vector<std::vector<int>>>& cartan = std::nullopt,
                            std::vector<std::string> labels = {});

  int rank() const;
  std::uint64_t id() const;
  int coxeter_entry(int s, int t) const;
  int cartan_entry(int i, int j) const;
  const std::vector<std::vector<int>>& coxeter_matrix() const;
  const std::vector<std::vector<int>>& cartan_matrix() const;
  const std::vector<std::string>& labels() const;
  /// True when every off-diagonal Coxeter entry is infinite.
  bool is_universal() const;

  Element identity() const;
  Element generator(int s) const;
  Element normal_form(const Word& word) const;
  Element multiply(const Element& a, const Element& b) const;
  Element multiply_right(const Element& a, int s) const;
  Element multiply_left(int s, const Element& a) const;
  Element inverse(const Element& a) const;

  /// s is a right descent of w iff w(alpha_s) is negative.
  bool is_right_descent(const Element& w, int s) const;
  bool is_left_descent(const Element& w, int s) const;
  std::vector<int> right_descents(const Element& w) const;

  /// w is a reflection iff M_w - I has rank one and det M_w = -1.
  bool is_reflection(const Element& w) const;
  Root reflection_root(const Element& w) const;

  /// Sign classification; mixed signs raise RealizationError.
  Root classify(RootVector coords) const;
  /// w.lambda for lambda in V*.
  RootVector act(const Element& w, std::span<const std::int64_t> lambda) const;

  /// Subword property along the canonical reduced word of x.
  bool bruhat_leq(const Element& y, const Element& x) const;
  /// All y <= x sorted ShortLex.
  std::vector<Element> bruhat_interval(const Element& x) const;
  /// All elements of length <= max_length, ShortLex sorted.
  std::vector<Element> elements_up_to_length(int max_length) const;

  /// Parses a 1-based word: digits ("121") or comma-separated ("2,10,3").
  Word parse_word(std::string_view text) const;
  /// Inverse of parse_word; digits when rank <= 9, commas otherwise.
  std::string format_word(const Word& word) const;
  std::string format(const Element& w) const { return format_word(w.word()); }

  void require_same(const Element& e) const;

 private:
  struct Impl;
  explicit CoxeterSystem(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  Element build(Word canonical) const;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace coxsheaf::coxeter
