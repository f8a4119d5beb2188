#pragma once

// Max-plus tropical Pluecker vectors, tropical linear spaces via valuated
// circuits, and Bergman fans of matroids (fine subdivision) with their links.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lxkit/foundation.hpp"
#include "lxkit/matroidcore.hpp"

namespace lxkit::tropfan {

using foundation::Rational;
using foundation::Subset;
using matroidcore::Mask;
using matroidcore::Matroid;

/// Element of R ∪ {-∞}; tropical addition is max, multiplication is +.
class TropValue {
 public:
  /// Zero (the tropical multiplicative unit).
  TropValue() = default;
  TropValue(const Rational& v) : finite_(true), value_(v) {}  // NOLINT: implicit by design
  TropValue(int v) : finite_(true), value_(v) {}              // NOLINT
  static TropValue neg_inf();

  bool is_neg_inf() const { return !finite_; }
  /// Throws InputError for -∞.
  const Rational& value() const;

  friend TropValue operator+(const TropValue& a, const TropValue& b);
  friend bool operator==(const TropValue& a, const TropValue& b);
  friend bool operator<(const TropValue& a, const TropValue& b);

  /// "-inf" or "p/q".
  std::string to_string() const;
  static TropValue parse(std::string_view text);

 private:
  bool finite_ = true;
  Rational value_ = 0;
};

using TropVector = std::vector<TropValue>;

/// True iff the maximum of `terms` is -∞ or attained at least twice.
bool max_attained_twice(const TropVector& terms);

/// Tropical vector indexed by the m-subsets of [n] in colex order.
class TropPluecker {
 public:
  TropPluecker() = default;
  /// Every coordinate set to `fill`.
  TropPluecker(int n, int m, TropValue fill = TropValue::neg_inf());

  int n() const { return n_; }
  int m() const { return m_; }
  const TropValue& operator[](Subset s) const;
  TropValue& operator[](Subset s);
  const TropVector& values() const { return values_; }
  bool all_neg_inf() const;

  /// Reads coordinates from a vector over colex-ordered m-subsets.
  static TropPluecker from_values(int n, int m, TropVector values);

 private:
  std::size_t position(Subset s) const;

  int n_ = 0;
  int m_ = 0;
  TropVector values_;
};

/// Constant-coefficient Pluecker vector of a matroid: 0 on bases, -∞ elsewhere,
/// with ground position k as coordinate k+1.
TropPluecker matroid_pluecker(const Matroid& m);

/// Tropical Pluecker relations: for |A| = m-1, |B| = m+1,
/// max_{i∈B\A} p_{A∪i} + p_{B\i} is attained twice or is -∞.
bool trop_plucker_check(const TropPluecker& p);

/// c_B for each (m+1)-subset B with some finite entry, shifted so its
/// largest finite entry is 0.
std::vector<TropVector> valuated_circuits(const TropPluecker& p);

/// x ∈ L(p) iff max_i (x_i + c_i) is attained twice for every valuated circuit c.
/// Throws DimensionError when |x| != n.
bool in_trop_linear_space(const TropPluecker& p, const TropVector& x);

/// Tropical incidence relations between p (rank d) and q (rank e), d <= e:
/// max_{i∈B\A} p_{A∪i} + q_{B\i} for |A| = d-1, |B| = e+1.
bool trop_incidence_check(const TropPluecker& p, const TropPluecker& q);

struct FanChart {
  Matroid matroid;
  /// Proper nonempty flats, sorted by rank then mask; these index the rays.
  std::vector<Mask> rays;
  /// All flags F_1 ⊂ ... ⊂ F_k of proper nonempty flats, k >= 1.
  std::vector<std::vector<Mask>> chains;

  std::vector<std::vector<Mask>> maximal_chains() const;
};

/// Bergman fan in the fine subdivision; the ray of F is -Σ_{i∈F} e_i.
/// Throws InputError when the matroid has loops.
FanChart bergman_chart(const Matroid& m);

/// -Σ_j weights_j · 1_{F_j}. Throws InputError unless the chain is strictly
/// increasing with one positive weight per flat.
TropVector fan_point(const FanChart& chart, const std::vector<Mask>& chain, const std::vector<Rational>& weights);

/// Bergman membership for constant coefficients: for every circuit C,
/// max_{i∈C} x_i is attained at least twice.
bool in_bergman_fan(const Matroid& m, const TropVector& x);

struct Graph {
  std::vector<std::string> vertices;
  /// Pairs (a, b) with a < b.
  std::set<std::pair<int, int>> edges;

  std::vector<int> degrees() const;
  /// Length of a shortest cycle; 0 for a forest.
  int girth() const;
  /// -1 unless every vertex has the same degree.
  int regular_degree() const;
};

/// Vertices: rank-1 flats, then rank-2 flats; edges: containments.
/// Throws DimensionError unless rank 3, InputError for loops or parallel elements.
Graph link_graph(const Matroid& m);

/// Repeatedly replaces a degree-2 vertex and its edges by one edge between its
/// neighbors. Throws InputError if that edge already exists.
Graph smooth_degree2(const Graph& g);

}  // namespace lxkit::tropfan
