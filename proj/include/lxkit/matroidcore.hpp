#pragma once

// Matroids given by explicit basis families over at most 64 labeled elements.

#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lxkit/foundation.hpp"

namespace lxkit::linespace {
struct WMatrix;
}

namespace lxkit::matroidcore {

using foundation::QMatrix;
using foundation::Subset;

/// Set of ground-set positions; bit k stands for ground()[k].
using Mask = std::uint64_t;

class Matroid {
 public:
  static constexpr int kMaxGround = 64;

  Matroid() = default;
  /// Throws InputError for duplicate labels, an empty basis family or bases of
  /// different sizes; DimensionError when the ground set exceeds 64 elements.
  Matroid(std::vector<std::string> ground, std::vector<Mask> bases);

  /// U_{r,n} on labels "1", ..., "n".
  static Matroid uniform(int r, int n);

  const std::vector<std::string>& ground() const { return ground_; }
  int size() const { return static_cast<int>(ground_.size()); }
  int rank() const { return rank_; }
  /// Sorted ascending.
  const std::vector<Mask>& bases() const { return bases_; }

  /// Throws InputError for unknown labels.
  int index_of(const std::string& label) const;
  Mask mask_of(const std::vector<std::string>& labels) const;
  std::vector<std::string> labels_of(Mask mask) const;
  Mask full_mask() const;

  bool is_basis(Mask s) const;
  bool is_independent(Mask s) const { return independent_.count(s) != 0; }
  int rank_of(Mask s) const;
  Mask closure(Mask s) const;
  /// Elements lying in no basis.
  Mask loops() const;

 private:
  std::vector<std::string> ground_;
  std::map<std::string, int> index_;
  std::vector<Mask> bases_;
  std::unordered_set<Mask> independent_;
  int rank_ = 0;
};

/// Column matroid: a set of labels is independent iff those columns are.
Matroid matroid_of_points(const QMatrix& columns, std::vector<std::string> labels);

/// Minimal dependent sets, each in ground order, sorted lexicographically by
/// ground position.
std::vector<Mask> circuit_masks(const Matroid& m);
std::vector<std::vector<std::string>> circuits(const Matroid& m);

struct FlatLattice {
  /// Sorted by rank, then by mask.
  std::vector<Mask> flats;
  std::vector<int> ranks;
  /// Index pairs (lower, upper) with lower ⊂ upper and rank(upper) = rank(lower) + 1.
  std::vector<std::pair<std::size_t, std::size_t>> covers;

  std::size_t count_of_rank(int r) const;
  std::vector<Mask> of_rank(int r) const;
};

/// All flats, from the closure of ∅ up to the full ground set.
FlatLattice flats(const Matroid& m);

/// Matroid of the lines ℓ_J = ∩_{k∈J} {x : <w_k, x> = 0} of the arrangement
/// whose normals are the columns of `normals` ((d+1) x n). Ground set: the
/// d-subsets J of [n] in colex order, labeled "1,2"; J is a loop when the
/// intersection is not a line.
Matroid matroid_of_lines(const QMatrix& normals, int d);
/// Same, using the columns of W with labels mapped back to original coordinates.
Matroid matroid_of_lines(const linespace::WMatrix& w);

/// True iff `label_map` (a bijection ground(a) -> ground(b)) carries the bases of
/// a onto the bases of b. Throws InputError when the map is not a bijection.
bool matroid_equal(const Matroid& a, const Matroid& b, const std::map<std::string, std::string>& label_map);
/// Same with the identity map on labels (ground sets must agree as sets).
bool matroid_equal(const Matroid& a, const Matroid& b);

/// Label of a subset of [n], e.g. "1,4".
inline std::string label_of(Subset s) { return s.to_string(); }

}  // namespace lxkit::matroidcore
