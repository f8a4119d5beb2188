#pragma once

// Exact rational linear algebra and subset combinatorics.

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lxkit {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch or index-set size violation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed or mathematically invalid input data.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace lxkit

namespace lxkit::foundation {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q" or "p"; the result is canonical (reduced, positive denominator).
Rational parse_rational(std::string_view text);

/// Serializes as "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

// ---------------------------------------------------------------------------
// Subset
// ---------------------------------------------------------------------------

/// A subset of [n] = {1, ..., n}, n <= 32, stored as a bitmask (bit i-1 for i).
///
/// For sets of equal size, integer comparison of the mask is colexicographic
/// comparison, and it stays colex across sizes as well (the set containing the
/// largest element of the symmetric difference is larger).
class Subset {
 public:
  static constexpr int kMaxElement = 32;

  constexpr Subset() = default;
  explicit constexpr Subset(std::uint32_t bits) : bits_(bits) {}
  Subset(std::initializer_list<int> elements);
  static Subset from_elements(const std::vector<int>& elements);
  /// The interval [k] = {1, ..., k}.
  static Subset range(int k);

  constexpr std::uint32_t bits() const { return bits_; }
  int size() const;
  bool empty() const { return bits_ == 0; }
  bool contains(int i) const;
  /// Largest element; the set must be nonempty.
  int max() const;
  int min() const;
  std::vector<int> elements() const;
  /// |[i] ∩ this|, the number of elements <= i.
  int count_upto(int i) const;

  Subset with(int i) const;
  Subset without(int i) const;
  bool is_subset_of(Subset other) const { return (bits_ & ~other.bits_) == 0; }
  /// Complement inside [n].
  Subset complement(int n) const;

  friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits_ | b.bits_); }
  friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits_ & b.bits_); }
  /// Set difference a \ b.
  friend constexpr Subset operator-(Subset a, Subset b) { return Subset(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(Subset a, Subset b) = default;
  /// Colex order.
  friend constexpr auto operator<=>(Subset a, Subset b) { return a.bits_ <=> b.bits_; }

  /// "1,2,4"; the empty set renders as "".
  std::string to_string() const;
  /// Inverse of to_string; whitespace tolerated. Throws InputError.
  static Subset parse(std::string_view text);

 private:
  std::uint32_t bits_ = 0;
};

/// All k-subsets of [n] in colexicographic order.
std::vector<Subset> colex_subsets(int n, int k);

/// Position of a k-subset in colex_subsets(n, k) (independent of n).
std::size_t colex_rank(Subset s);

/// Binomial coefficient C(n, k) (0 when k < 0 or k > n).
std::size_t binomial(int n, int k);

/// (-1)^{|[i] ∩ A| + |[i] ∩ B|}.
int plucker_sign(Subset a, Subset b, int i);

/// The exponent |[i] ∩ A| + |[i] ∩ B| of plucker_sign.
int plucker_exponent(Subset a, Subset b, int i);

// ---------------------------------------------------------------------------
// QMatrix
// ---------------------------------------------------------------------------

/// Dense row-major matrix of rationals.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  /// Builds from nested rows; all rows must have equal length.
  QMatrix(std::initializer_list<std::initializer_list<Rational>> rows);
  static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Rational> row(std::size_t r) const;
  std::vector<Rational> column(std::size_t c) const;

  QMatrix transpose() const;
  /// Columns listed in `cols` (0-based), in that order.
  QMatrix select_columns(const std::vector<std::size_t>& cols) const;
  QMatrix select_rows(const std::vector<std::size_t>& rows) const;
  bool is_zero() const;

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Exact determinant by Bareiss elimination on an integer rescaling of the rows.
/// Throws DimensionError for non-square input.
Rational det(const QMatrix& m);

/// Exact rank over Q.
std::size_t rank(const QMatrix& m);

/// Reduced row echelon form (in place) together with the pivot columns.
std::vector<std::size_t> rref(QMatrix& m);

/// Rows of the result span {v : M v = 0}; M * K^T = 0 and
/// rows(K) = cols(M) - rank(M). The basis is not canonical.
QMatrix kernel_basis(const QMatrix& m);

// ---------------------------------------------------------------------------
// PlueckerVector
// ---------------------------------------------------------------------------

/// Coordinates indexed by the k-subsets of [n], stored in colex order.
class PlueckerVector {
 public:
  PlueckerVector() = default;
  PlueckerVector(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t size() const { return values_.size(); }

  /// Throws DimensionError when the index has the wrong size or leaves [n].
  const Rational& operator[](Subset index) const;
  Rational& operator[](Subset index);
  /// Coordinate at colex position `pos`.
  const Rational& at_position(std::size_t pos) const { return values_.at(pos); }

  bool is_zero() const;
  /// Divides every coordinate by the coordinate at `index` (which must be nonzero).
  PlueckerVector normalized_at(Subset index) const;
  const std::vector<Rational>& values() const { return values_; }

  friend bool operator==(const PlueckerVector&, const PlueckerVector&) = default;

 private:
  std::size_t position(Subset index) const;

  int n_ = 0;
  int k_ = 0;
  std::vector<Rational> values_;
};

/// Scales each column by a positive rational so it becomes a primitive
/// integer vector (zero columns stay zero). Column matroids are unchanged.
std::vector<std::vector<Integer>> integer_columns(const QMatrix& m);

}  // namespace lxkit::foundation
