#pragma once

// Sparse polynomials in the Pluecker variables P_I (d-subsets) and Q_J
// ((d+1)-subsets), the Pluecker / incidence / recursive relations built from
// them, and exact verifiers for the identities showing that the incidence
// relations imply the Pluecker relations after saturating by Q_C.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lxkit/foundation.hpp"

namespace lxkit::polyrel {

using foundation::PlueckerVector;
using foundation::Rational;
using foundation::Subset;

enum class VarKind : std::uint8_t { P = 0, Q = 1 };

/// A variable P_I or Q_J. Ordered P before Q, then colex on the index.
struct PQVar {
  VarKind kind = VarKind::P;
  Subset index;

  friend constexpr auto operator<=>(const PQVar&, const PQVar&) = default;

  /// "P:1,2" / "Q:1,3,4".
  std::string to_string() const;
  static PQVar parse(std::string_view text);
};

inline PQVar P(Subset s) { return {VarKind::P, s}; }
inline PQVar Q(Subset s) { return {VarKind::Q, s}; }

/// Multiset of variables kept sorted. Ordered by total degree, then
/// lexicographically on the sorted variable list.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<PQVar> vars);

  const std::vector<PQVar>& vars() const { return vars_; }
  std::size_t degree() const { return vars_.size(); }
  std::size_t exponent_of(const PQVar& v) const;
  bool has_kind(VarKind kind) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend bool operator<(const Monomial& a, const Monomial& b);

 private:
  std::vector<PQVar> vars_;
};

/// Exact polynomial with rational coefficients; zero coefficients are never stored.
class SparsePoly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  SparsePoly() = default;
  static SparsePoly constant(const Rational& c);
  static SparsePoly variable(const PQVar& v, const Rational& c = 1);
  static SparsePoly monomial(const Monomial& m, const Rational& c = 1);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Coefficient of m (zero when absent).
  Rational coefficient(const Monomial& m) const;

  /// Adds c * m, dropping the term when it cancels.
  void add_term(const Monomial& m, const Rational& c);

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const Rational& c);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator-(SparsePoly a) { return a *= Rational(-1); }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(SparsePoly a, const Rational& c) { return a *= c; }
  friend SparsePoly operator*(const Rational& c, SparsePoly a) { return a *= c; }
  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

  SparsePoly pow(unsigned e) const;
  /// Human-readable form, e.g. "-P12*Q134 + P13*Q124".
  std::string to_string() const;

 private:
  TermMap terms_;
};

/// numerator / Q_pivot^denom_power, pivot = [d+1]. The power is minimal:
/// when positive, some term of the numerator is free of Q_pivot.
struct LaurentRel {
  SparsePoly numerator;
  unsigned denom_power = 0;
  Subset pivot;
};

/// R_{A,B} = Σ_{i∈B\A} (-1)^{|[i]∩A|+|[i]∩B|} X_{A∪i} X_{B\i}, with X = P or Q.
/// Requires |B| = |A| + 2.
SparsePoly plucker_relation(Subset a, Subset b, VarKind kind);

/// I_{A,B} = Σ_{i∈B\A} (-1)^{|[i]∩A|+|[i]∩B|} P_{A∪i} Q_{B\i}.
/// Requires |A| = d-1, |B| = e+1 with d <= e.
SparsePoly incidence_relation(Subset a, Subset b);

/// The recursively defined relation rrel_{A,B} for A ⊆ [d+1], B ⊆ [n]\[d+1],
/// |A| + |B| = d (A = ∅ allowed). Recursion peels off the largest b ∈ B.
LaurentRel rrel(Subset a, Subset b, int d, int n);

/// Substitutes Q_J -> q_J. The result only involves P variables.
SparsePoly evaluate(const SparsePoly& poly, const PlueckerVector& q);
/// Same, dividing by q_pivot^denom_power. Throws InputError when q_pivot = 0.
SparsePoly evaluate(const LaurentRel& rel, const PlueckerVector& q);

/// Coefficients of a polynomial that is linear and homogeneous in the P
/// variables (no Q variables). Throws InputError otherwise.
std::map<Subset, Rational> linear_coefficients(const SparsePoly& poly);

/// Outcome of an identity check: LHS - RHS and whether it vanished.
struct IdentityCheck {
  bool holds = false;
  SparsePoly residual;
};

/// Checks
///   Σ_{i∈B\(A\a)} (-1)^{φ_i} P_{B\i} I_{A\a∪i, C∪a}
///     = R_{A,B} Q_C + Σ_{j∈C\A} (-1)^{ψ_j} R_{A\a∪j, B} Q_{C\j∪a}
/// for |A| = d-1, |B| = |C| = d+1, a ∈ A\C.
IdentityCheck verify_in2pl(Subset a_set, Subset b_set, Subset c_set, int a);

/// Checks
///   R_{A,B} Q_C + Σ_{j∈C\B} (-1)^{ψ_j} R_{A,B\b∪j} Q_{C∪b\j}
///     = (-1)^β P_{B\b} I_{A,C∪b} + Σ_{i∈B\A, i≠b} (-1)^{φ_i} P_{A∪i} I_{B\i\b, C∪b}
/// for |A| = d-1, |B| = |C| = d+1, A ⊆ C, b ∈ B\C.
IdentityCheck verify_moveB(Subset a_set, Subset b_set, Subset c_set, int b);

/// Parity of ψ_j in the in2pl identity for every admissible choice of the
/// auxiliary index i (i ∈ B\(A\a), i ≠ j). The identity relies on these agreeing.
std::vector<int> in2pl_psi_parities(Subset a_set, Subset b_set, Subset c_set, int a, int j);

struct IncidenceIndex {
  Subset a;
  Subset b;
  friend constexpr auto operator<=>(const IncidenceIndex&, const IncidenceIndex&) = default;
};

struct CertificateTerm {
  SparsePoly coefficient;
  IncidenceIndex incidence;
};

/// Witness that Q_C^m R_{A,B} = Σ coefficient * I_{A',B'} in the polynomial ring.
struct SaturationCertificate {
  Subset target_a;
  Subset target_b;
  Subset pivot;
  unsigned exponent = 0;
  std::vector<CertificateTerm> combination;
};

/// Builds a certificate by the double induction: the in2pl identity while
/// A ⊄ C (smallest a ∈ A\C), then the moveB identity while B ≠ C (smallest
/// b ∈ B\C), ending at R_{A,C} = 0 for A ⊆ C.
SaturationCertificate saturation_certificate(Subset a_set, Subset b_set, Subset c_set);

/// Expands the certificate; holds iff Q_C^m R_{A,B} - Σ coefficient * I = 0.
IdentityCheck replay(const SaturationCertificate& cert);

namespace detail {
/// LHS and RHS of the in2pl identity. `corrupt` flips the sign of the first φ_i term.
std::pair<SparsePoly, SparsePoly> in2pl_sides(Subset a_set, Subset b_set, Subset c_set, int a, bool corrupt);
/// LHS and RHS of the moveB identity. `corrupt` flips the parity of β.
std::pair<SparsePoly, SparsePoly> moveB_sides(Subset a_set, Subset b_set, Subset c_set, int b, bool corrupt);
}  // namespace detail

}  // namespace lxkit::polyrel
