#pragma once

// The matrices W, U, V attached to a (d+1)-dimensional subspace X of K^n,
// their Gale duality, and genericity of X.
//
// When q_[d+1] = 0 the construction works in a relabeled frame: the first
// colex (d+1)-subset C with q_C != 0 becomes [d+1] (C ascending, then the
// remaining coordinates ascending). Matrices are stored in frame coordinates
// and carry the permutation; matroids are always labeled in original
// coordinates.

#include <cstdint>
#include <optional>
#include <vector>

#include "lxkit/foundation.hpp"
#include "lxkit/matroidcore.hpp"

namespace lxkit::linespace {

using foundation::PlueckerVector;
using foundation::QMatrix;
using foundation::Rational;
using foundation::Subset;
using matroidcore::Matroid;

/// X given by a (d+1) x n basis or by its Pluecker vector on (d+1)-subsets.
struct SubspaceInput {
  int n = 0;
  int d = 0;
  std::optional<QMatrix> basis;
  std::optional<PlueckerVector> plucker;

  static SubspaceInput from_basis(QMatrix basis);
  static SubspaceInput from_plucker(PlueckerVector q);
};

/// All maximal minors of a k x n matrix in colex order. Throws InputError when rank < k.
PlueckerVector plucker_of_rowspace(const QMatrix& m);

/// Pluecker vector of X. Throws InputError / DimensionError for invalid input
/// (wrong shape, rank deficiency, a vector off the Grassmannian, d+1 >= n, d < 1).
PlueckerVector plucker_of(const SubspaceInput& x);

/// Maps frame coordinates to original ones: permutation[k-1] is the original
/// coordinate of frame coordinate k.
Subset to_original(const std::vector<int>& permutation, Subset frame);

struct WMatrix {
  /// (d+1) x n in frame coordinates; columns 1..d+1 form the identity.
  QMatrix entries;
  int n = 0;
  int d = 0;
  /// The original (d+1)-subset mapped to [d+1].
  Subset basis_cols;
  std::vector<int> permutation;
};

/// Labeled matrix whose columns are all d-subsets of the frame in colex order.
struct UMatrix {
  QMatrix entries;
  /// Frame d-subsets not contained in [d+1], colex order.
  std::vector<Subset> row_labels;
  std::vector<Subset> col_labels;
  std::vector<int> permutation;
};

struct VMatrix {
  QMatrix entries;
  /// Deleted row i = 1, ..., d+1.
  std::vector<int> row_labels;
  std::vector<Subset> col_labels;
  std::vector<int> permutation;
};

/// Row reduced basis of X (see the frame convention above).
WMatrix reduced_W(const SubspaceInput& x);

/// Row A∪B holds the coefficients of rrel_{A,B} evaluated at q. Requires
/// q_[d+1] = 1 and n > d+1, where q has rank d+1.
UMatrix matrix_U(const PlueckerVector& q);
/// matrix_U at the frame Pluecker vector of W, carrying W's permutation.
UMatrix matrix_U(const WMatrix& w);

/// V_{i,J} = det(W_i^J), W_i = W without row i, for i = 1..d+1.
VMatrix matrix_V(const WMatrix& w);

struct GaleReport {
  bool product_zero = false;
  bool rank_u = false;
  bool rank_v = false;
  /// u_{L,[d+1]\i} = -V_{i,L} for every row L and every i.
  bool coefficient_identity = false;

  bool holds() const { return product_zero && rank_u && rank_v && coefficient_identity; }
};

/// Throws DimensionError when the labels of U and V disagree.
GaleReport gale_check(const UMatrix& u, const VMatrix& v);

/// Column matroid of V, ground = original d-subsets in colex order.
Matroid lines_matroid_from_V(const VMatrix& v);
/// Column matroid of a kernel basis of U, same ground order.
Matroid lines_matroid_from_U(const UMatrix& u);

struct GenericityReport {
  bool is_generic = false;
  /// Bases of tilde-Dil_{n-d}(U_{n,n}) whose V-minor vanishes, in original labels.
  std::vector<std::vector<Subset>> vanishing_minor_columns;
};

/// Generic iff the column matroid of V equals tilde-Dil_{n-d}(U_{n,n}).
GenericityReport genericity_report(const SubspaceInput& x);

/// The 14 binomials of the Gr(3,6) table, homogenized with Q123 and evaluated
/// at q / q123. Throws DimensionError unless n = 6, d = 2; InputError when q123 = 0.
std::vector<Rational> gr36_minor_values(const PlueckerVector& q);

/// Random (d+1) x n integer bases (entries in [-9, 9]) from a generator seeded
/// with `seed`, redrawn until generic. Requires 1 <= d, d+1 < n. Throws Error
/// after `max_attempts` draws.
SubspaceInput sample_generic(int n, int d, std::uint64_t seed, int max_attempts = 1000);

}  // namespace lxkit::linespace
