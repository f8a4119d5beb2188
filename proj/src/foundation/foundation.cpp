#include "lxkit/foundation.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>

namespace lxkit::foundation {

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw InputError("empty rational literal");
  auto slash = s.find('/');
  auto valid_int = [](std::string_view t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    return std::all_of(t.begin() + i, t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
  Rational out;
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw InputError("invalid rational literal: " + s);
    out = Rational(Integer(strip_plus(s)), Integer(1));
  } else {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw InputError("invalid rational literal: " + s);
    Integer d(strip_plus(den));
    if (d == 0) throw InputError("zero denominator: " + s);
    out = Rational(Integer(strip_plus(num)), d);
  }
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

// ---------------------------------------------------------------------------
// Subset

Subset::Subset(std::initializer_list<int> elements) : Subset(from_elements(std::vector<int>(elements))) {}

Subset Subset::from_elements(const std::vector<int>& elements) {
  std::uint32_t bits = 0;
  for (int e : elements) {
    if (e < 1 || e > kMaxElement) throw DimensionError("subset element out of range: " + std::to_string(e));
    std::uint32_t bit = 1u << (e - 1);
    if (bits & bit) throw InputError("duplicate subset element: " + std::to_string(e));
    bits |= bit;
  }
  return Subset(bits);
}

Subset Subset::range(int k) {
  if (k < 0 || k > kMaxElement) throw DimensionError("range out of bounds");
  return Subset(k == 32 ? 0xffffffffu : ((1u << k) - 1));
}

int Subset::size() const { return std::popcount(bits_); }

bool Subset::contains(int i) const { return i >= 1 && i <= kMaxElement && (bits_ >> (i - 1)) & 1u; }

int Subset::max() const { return 32 - std::countl_zero(bits_); }

int Subset::min() const { return std::countr_zero(bits_) + 1; }

std::vector<int> Subset::elements() const {
  std::vector<int> out;
  for (std::uint32_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

int Subset::count_upto(int i) const {
  if (i <= 0) return 0;
  if (i >= kMaxElement) return size();
  return std::popcount(bits_ & ((1u << i) - 1));
}

Subset Subset::with(int i) const { return *this | Subset::from_elements({i}); }

Subset Subset::without(int i) const { return *this - Subset::from_elements({i}); }

Subset Subset::complement(int n) const { return Subset::range(n) - *this; }

std::string Subset::to_string() const {
  std::string out;
  for (int e : elements()) {
    if (!out.empty()) out += ',';
    out += std::to_string(e);
  }
  return out;
}

Subset Subset::parse(std::string_view text) {
  std::vector<int> elems;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    if (!std::all_of(cur.begin(), cur.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
        cur.size() > 3)
      throw InputError("invalid subset element: " + cur);
    elems.push_back(std::stoi(cur));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',') {
      if (cur.empty()) throw InputError("invalid subset literal: " + std::string(text));
      flush();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  flush();
  return from_elements(elems);
}

std::vector<Subset> colex_subsets(int n, int k) {
  if (k < 0 || n < 0 || k > n || n > Subset::kMaxElement) throw DimensionError("colex_subsets: need 0 <= k <= n <= 32");
  std::vector<Subset> out;
  out.reserve(binomial(n, k));
  if (k == 0) {
    out.emplace_back();
    return out;
  }
  // Gosper's hack enumerates same-popcount masks in increasing (= colex) order.
  std::uint64_t v = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (v < limit) {
    out.emplace_back(static_cast<std::uint32_t>(v));
    std::uint64_t t = v | (v - 1);
    v = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
  }
  return out;
}

std::size_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

std::size_t colex_rank(Subset s) {
  std::size_t r = 0;
  int i = 1;
  for (int e : s.elements()) r += binomial(e - 1, i++);
  return r;
}

int plucker_exponent(Subset a, Subset b, int i) { return a.count_upto(i) + b.count_upto(i); }

int plucker_sign(Subset a, Subset b, int i) { return (plucker_exponent(a, b, i) % 2 == 0) ? 1 : -1; }

// ---------------------------------------------------------------------------
// PlueckerVector

PlueckerVector::PlueckerVector(int n, int k) : n_(n), k_(k), values_(binomial(n, k)) {
  if (k < 0 || k > n || n > Subset::kMaxElement) throw DimensionError("PlueckerVector: need 0 <= k <= n <= 32");
}

std::size_t PlueckerVector::position(Subset index) const {
  if (index.size() != k_ || !index.is_subset_of(Subset::range(n_)))
    throw DimensionError("Pluecker index {" + index.to_string() + "} is not a " + std::to_string(k_) + "-subset of [" +
                         std::to_string(n_) + "]");
  return colex_rank(index);
}

const Rational& PlueckerVector::operator[](Subset index) const { return values_[position(index)]; }

Rational& PlueckerVector::operator[](Subset index) { return values_[position(index)]; }

bool PlueckerVector::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

PlueckerVector PlueckerVector::normalized_at(Subset index) const {
  const Rational pivot = (*this)[index];
  if (sgn(pivot) == 0) throw InputError("cannot normalize at a zero coordinate");
  PlueckerVector out = *this;
  for (auto& v : out.values_) v /= pivot;
  return out;
}

// ---------------------------------------------------------------------------
// QMatrix

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  std::vector<std::vector<Rational>> tmp;
  for (const auto& r : rows) tmp.emplace_back(r);
  *this = from_rows(tmp);
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  QMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw DimensionError("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Rational> QMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

std::vector<Rational> QMatrix::column(std::size_t c) const {
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

QMatrix QMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  QMatrix out(rows_, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= cols_) throw DimensionError("column index out of range");
    for (std::size_t r = 0; r < rows_; ++r) out(r, j) = (*this)(r, cols[j]);
  }
  return out;
}

QMatrix QMatrix::select_rows(const std::vector<std::size_t>& rows) const {
  QMatrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= rows_) throw DimensionError("row index out of range");
    for (std::size_t c = 0; c < cols_; ++c) out(i, c) = (*this)(rows[i], c);
  }
  return out;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
  QMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(k, j);
    }
  return out;
}

bool operator==(const QMatrix& a, const QMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

namespace {

// Bareiss on an integer matrix; returns the determinant.
Integer bareiss_det(std::vector<Integer>& a, std::size_t n) {
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[p * n + c]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i * n + j] = std::move(v);
      }
      a[i * n + k] = 0;
    }
    prev = a[k * n + k];
  }
  Integer d = a[n * n - 1];
  return sign < 0 ? Integer(-d) : d;
}

}  // namespace

Rational det(const QMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("det: matrix is not square");
  const std::size_t n = m.rows();
  // Clear denominators row by row: det(M) = det(D M) / det(D).
  std::vector<Integer> a(n * n);
  Integer scale = 1;
  for (std::size_t r = 0; r < n; ++r) {
    Integer l = 1;
    for (std::size_t c = 0; c < n; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < n; ++c) a[r * n + c] = m(r, c).get_num() * (l / m(r, c).get_den());
    scale *= l;
  }
  Rational out(bareiss_det(a, n), scale);
  out.canonicalize();
  return out;
}

std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const QMatrix& m) {
  QMatrix tmp = m;
  return rref(tmp).size();
}

QMatrix kernel_basis(const QMatrix& m) {
  QMatrix red = m;
  auto pivots = rref(red);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  QMatrix k(free_cols.size(), m.cols());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    k(f, free_cols[f]) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) k(f, pivots[i]) = -red(i, free_cols[f]);
  }
  return k;
}

std::vector<std::vector<Integer>> integer_columns(const QMatrix& m) {
  std::vector<std::vector<Integer>> cols(m.cols(), std::vector<Integer>(m.rows()));
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Integer l = 1;
    for (std::size_t r = 0; r < m.rows(); ++r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    Integer g = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      cols[c][r] = m(r, c).get_num() * (l / m(r, c).get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), cols[c][r].get_mpz_t());
    }
    if (g > 1)
      for (auto& x : cols[c]) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
  return cols;
}

}  // namespace lxkit::foundation
