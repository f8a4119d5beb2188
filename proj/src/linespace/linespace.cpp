#include "lxkit/linespace.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <tuple>

#include "lxkit/dilworth.hpp"
#include "lxkit/polyrel.hpp"

namespace lxkit::linespace {

using foundation::colex_rank;
using foundation::colex_subsets;

namespace {

std::vector<std::size_t> zero_based(Subset s) {
  std::vector<std::size_t> out;
  for (int e : s.elements()) out.push_back(static_cast<std::size_t>(e - 1));
  return out;
}

void check_shape(int n, int d) {
  if (d < 1 || d + 1 >= n || n > Subset::kMaxElement)
    throw DimensionError("subspace needs 1 <= d and d+1 < n <= 32 (n=" + std::to_string(n) +
                         ", d=" + std::to_string(d) + ")");
}

Subset first_nonzero(const PlueckerVector& q) {
  for (auto s : colex_subsets(q.n(), q.k()))
    if (q[s] != 0) return s;
  throw InputError("Pluecker vector is identically zero");
}

// Rowspace basis in original coordinates that is the identity on the columns
// of c (row r <-> r-th element of c); entries are signed ratios q_{c\c_r∪j}/q_c.
QMatrix basis_from_plucker(const PlueckerVector& q, Subset c) {
  const auto elems = c.elements();
  QMatrix w(elems.size(), static_cast<std::size_t>(q.n()));
  for (std::size_t r = 0; r < elems.size(); ++r) {
    const int cr = elems[r];
    const Subset rest = c.without(cr);
    for (int j = 1; j <= q.n(); ++j) {
      if (c.contains(j)) {
        w(r, static_cast<std::size_t>(j - 1)) = (j == cr) ? 1 : 0;
        continue;
      }
      const int lo = std::min(cr, j), hi = std::max(cr, j);
      const int between = rest.count_upto(hi - 1) - rest.count_upto(lo);
      Rational v = q[rest.with(j)] / q[c];
      w(r, static_cast<std::size_t>(j - 1)) = between % 2 == 0 ? v : Rational(-v);
    }
  }
  return w;
}

const polyrel::LaurentRel& cached_rrel(Subset a, Subset b, int d, int n) {
  static std::mutex mutex;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, int, int>, polyrel::LaurentRel> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_tuple(a.bits(), b.bits(), d, n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, polyrel::rrel(a, b, d, n)).first;
  return it->second;
}

std::vector<int> identity_permutation(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) p[static_cast<std::size_t>(k)] = k + 1;
  return p;
}

// Reorders frame-labeled columns into original colex order.
Matroid column_matroid_in_original_order(const QMatrix& m, const std::vector<Subset>& frame_labels,
                                         const std::vector<int>& permutation, int n, int d) {
  QMatrix out(m.rows(), m.cols());
  for (std::size_t c = 0; c < frame_labels.size(); ++c) {
    const std::size_t target = colex_rank(to_original(permutation, frame_labels[c]));
    for (std::size_t r = 0; r < m.rows(); ++r) out(r, target) = m(r, c);
  }
  std::vector<std::string> labels;
  for (auto s : colex_subsets(n, d)) labels.push_back(matroidcore::label_of(s));
  return matroidcore::matroid_of_points(out, std::move(labels));
}

}  // namespace

SubspaceInput SubspaceInput::from_basis(QMatrix basis) {
  SubspaceInput x;
  x.n = static_cast<int>(basis.cols());
  x.d = static_cast<int>(basis.rows()) - 1;
  x.basis = std::move(basis);
  return x;
}

SubspaceInput SubspaceInput::from_plucker(PlueckerVector q) {
  SubspaceInput x;
  x.n = q.n();
  x.d = q.k() - 1;
  x.plucker = std::move(q);
  return x;
}

PlueckerVector plucker_of_rowspace(const QMatrix& m) {
  const int k = static_cast<int>(m.rows()), n = static_cast<int>(m.cols());
  if (k > n) throw InputError("plucker_of_rowspace: more rows than columns");
  PlueckerVector q(n, k);
  bool nonzero = false;
  for (auto s : colex_subsets(n, k)) {
    q[s] = foundation::det(m.select_columns(zero_based(s)));
    nonzero = nonzero || q[s] != 0;
  }
  if (!nonzero) throw InputError("plucker_of_rowspace: matrix is rank deficient");
  return q;
}

PlueckerVector plucker_of(const SubspaceInput& x) {
  check_shape(x.n, x.d);
  if (x.basis.has_value() == x.plucker.has_value())
    throw InputError("subspace input needs exactly one of basis and plucker");
  if (x.basis) {
    if (x.basis->rows() != static_cast<std::size_t>(x.d + 1) || x.basis->cols() != static_cast<std::size_t>(x.n))
      throw DimensionError("basis must be (d+1) x n");
    return plucker_of_rowspace(*x.basis);
  }
  const PlueckerVector& q = *x.plucker;
  if (q.n() != x.n || q.k() != x.d + 1) throw DimensionError("Pluecker vector must be indexed by (d+1)-subsets of [n]");
  const Subset c = first_nonzero(q);
  if (plucker_of_rowspace(basis_from_plucker(q, c)) != q.normalized_at(c))
    throw InputError("Pluecker vector violates the Pluecker relations");
  return q;
}

Subset to_original(const std::vector<int>& permutation, Subset frame) {
  Subset out;
  for (int e : frame.elements()) out = out.with(permutation.at(static_cast<std::size_t>(e - 1)));
  return out;
}

WMatrix reduced_W(const SubspaceInput& x) {
  const PlueckerVector q = plucker_of(x);
  const Subset c = first_nonzero(q);
  WMatrix w;
  w.n = x.n;
  w.d = x.d;
  w.basis_cols = c;
  for (int e : c.elements()) w.permutation.push_back(e);
  for (int e : c.complement(x.n).elements()) w.permutation.push_back(e);
  std::vector<std::size_t> cols;
  for (int e : w.permutation) cols.push_back(static_cast<std::size_t>(e - 1));
  w.entries = basis_from_plucker(q, c).select_columns(cols);
  return w;
}

UMatrix matrix_U(const PlueckerVector& q) {
  const int n = q.n(), d = q.k() - 1;
  check_shape(n, d);
  const Subset top = Subset::range(d + 1);
  if (q[top] != 1) throw InputError("matrix_U: requires q_[d+1] = 1");
  if (plucker_of_rowspace(basis_from_plucker(q, top)) != q)
    throw InputError("matrix_U: Pluecker vector violates the Pluecker relations");
  UMatrix u;
  u.col_labels = colex_subsets(n, d);
  u.permutation = identity_permutation(n);
  for (auto l : u.col_labels)
    if (!l.is_subset_of(top)) u.row_labels.push_back(l);
  u.entries = QMatrix(u.row_labels.size(), u.col_labels.size());
  for (std::size_t r = 0; r < u.row_labels.size(); ++r) {
    const Subset l = u.row_labels[r];
    const auto coeffs = polyrel::linear_coefficients(polyrel::evaluate(cached_rrel(l & top, l - top, d, n), q));
    for (const auto& [var, c] : coeffs) u.entries(r, colex_rank(var)) = c;
  }
  return u;
}

UMatrix matrix_U(const WMatrix& w) {
  UMatrix u = matrix_U(plucker_of_rowspace(w.entries));
  u.permutation = w.permutation;
  return u;
}

VMatrix matrix_V(const WMatrix& w) {
  VMatrix v;
  v.col_labels = colex_subsets(w.n, w.d);
  v.permutation = w.permutation;
  v.entries = QMatrix(static_cast<std::size_t>(w.d + 1), v.col_labels.size());
  for (int i = 1; i <= w.d + 1; ++i) {
    v.row_labels.push_back(i);
    std::vector<std::size_t> rows;
    for (int r = 1; r <= w.d + 1; ++r)
      if (r != i) rows.push_back(static_cast<std::size_t>(r - 1));
    const QMatrix wi = w.entries.select_rows(rows);
    for (std::size_t c = 0; c < v.col_labels.size(); ++c)
      v.entries(static_cast<std::size_t>(i - 1), c) = foundation::det(wi.select_columns(zero_based(v.col_labels[c])));
  }
  return v;
}

GaleReport gale_check(const UMatrix& u, const VMatrix& v) {
  if (u.col_labels != v.col_labels || u.permutation != v.permutation || u.entries.cols() != v.entries.cols())
    throw DimensionError("gale_check: U and V have different column labels");
  const int d = static_cast<int>(v.entries.rows()) - 1;
  const int n = static_cast<int>(u.permutation.size());
  GaleReport report;
  report.product_zero = (u.entries * v.entries.transpose()).is_zero();
  report.rank_u = u.entries.rows() == foundation::binomial(n, d) - static_cast<std::size_t>(d + 1) &&
                  foundation::rank(u.entries) == u.entries.rows();
  report.rank_v = foundation::rank(v.entries) == static_cast<std::size_t>(d + 1);
  report.coefficient_identity = true;
  const Subset top = Subset::range(d + 1);
  for (std::size_t r = 0; r < u.row_labels.size(); ++r)
    for (int i = 1; i <= d + 1; ++i) {
      const Rational& lhs = u.entries(r, colex_rank(top.without(i)));
      const Rational& rhs = v.entries(static_cast<std::size_t>(i - 1), colex_rank(u.row_labels[r]));
      if (lhs != -rhs) report.coefficient_identity = false;
    }
  return report;
}

Matroid lines_matroid_from_V(const VMatrix& v) {
  const int d = static_cast<int>(v.entries.rows()) - 1;
  return column_matroid_in_original_order(v.entries, v.col_labels, v.permutation,
                                          static_cast<int>(v.permutation.size()), d);
}

Matroid lines_matroid_from_U(const UMatrix& u) {
  const int d = u.col_labels.front().size();
  return column_matroid_in_original_order(foundation::kernel_basis(u.entries), u.col_labels, u.permutation,
                                          static_cast<int>(u.permutation.size()), d);
}

GenericityReport genericity_report(const SubspaceInput& x) {
  const Matroid lines = lines_matroid_from_V(matrix_V(reduced_W(x)));
  const Matroid& expected = dilworth::relabeled_dilworth_uniform(x.n, x.d);
  GenericityReport report;
  report.is_generic = matroidcore::matroid_equal(lines, expected);
  for (matroidcore::Mask b : expected.bases()) {
    const auto labels = expected.labels_of(b);
    if (lines.is_basis(lines.mask_of(labels))) continue;
    std::vector<Subset> cols;
    for (const auto& l : labels) cols.push_back(Subset::parse(l));
    std::sort(cols.begin(), cols.end());
    report.vanishing_minor_columns.push_back(std::move(cols));
  }
  std::sort(report.vanishing_minor_columns.begin(), report.vanishing_minor_columns.end());
  return report;
}

std::vector<Rational> gr36_minor_values(const PlueckerVector& q) {
  if (q.n() != 6 || q.k() != 3) throw DimensionError("gr36_minor_values: requires n = 6, d = 2");
  const Subset top{1, 2, 3};
  if (q[top] == 0) throw InputError("gr36_minor_values: requires q123 != 0");
  struct Term {
    int sign;
    Subset s, t;
  };
  // A lone Q456 in the table stands for Q123*Q456.
  const std::vector<std::vector<Term>> table = {
      {{-1, {1, 2, 4}, {3, 5, 6}}, {1, top, {4, 5, 6}}},
      {{-1, {1, 2, 5}, {3, 4, 6}}, {-1, top, {4, 5, 6}}},
      {{-1, {1, 3, 5}, {2, 4, 6}}, {1, top, {4, 5, 6}}},
      {{1, {1, 2, 5}, {3, 4, 6}}, {-1, {1, 3, 4}, {2, 5, 6}}},
      {{1, {1, 2, 6}, {3, 4, 5}}, {1, {1, 3, 4}, {2, 5, 6}}},
      {{1, {1, 2, 4}, {3, 5, 6}}, {-1, {1, 3, 5}, {2, 4, 6}}},
      {{1, {1, 2, 4}, {3, 5, 6}}, {1, {1, 4, 6}, {2, 3, 5}}},
      {{1, {1, 5, 6}, {2, 3, 4}}, {-1, {1, 3, 5}, {2, 4, 6}}},
      {{-1, {1, 3, 4}, {2, 5, 6}}, {1, {2, 3, 5}, {1, 4, 6}}},
      {{1, {1, 2, 6}, {3, 4, 5}}, {-1, {1, 3, 6}, {2, 4, 5}}},
      {{1, {1, 3, 4}, {2, 5, 6}}, {-1, {1, 3, 5}, {2, 4, 6}}},
      {{1, {1, 2, 4}, {3, 5, 6}}, {-1, {1, 2, 5}, {3, 4, 6}}},
      {{1, {1, 2, 5}, {3, 4, 6}}, {-1, {1, 3, 5}, {2, 4, 6}}},
      {{1, {1, 2, 4}, {3, 5, 6}}, {-1, {1, 3, 4}, {2, 5, 6}}},
  };
  const PlueckerVector p = q.normalized_at(top);
  std::vector<Rational> out;
  for (const auto& expr : table) {
    Rational v = 0;
    for (const auto& t : expr) v += t.sign * p[t.s] * p[t.t];
    out.push_back(v);
  }
  return out;
}

SubspaceInput sample_generic(int n, int d, std::uint64_t seed, int max_attempts) {
  check_shape(n, d);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    QMatrix m(static_cast<std::size_t>(d + 1), static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = entry(rng);
    if (foundation::rank(m) != static_cast<std::size_t>(d + 1)) continue;
    SubspaceInput x = SubspaceInput::from_basis(std::move(m));
    if (genericity_report(x).is_generic) return x;
  }
  throw Error("sample_generic: no generic subspace after " + std::to_string(max_attempts) + " draws");
}

}  // namespace lxkit::linespace
