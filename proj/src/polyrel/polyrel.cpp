#include "lxkit/polyrel.hpp"

#include <algorithm>
#include <functional>

namespace lxkit::polyrel {

using foundation::plucker_exponent;

namespace {

std::string compact(Subset s) {
  auto elems = s.elements();
  bool small = std::all_of(elems.begin(), elems.end(), [](int e) { return e < 10; });
  if (small) {
    std::string out;
    for (int e : elems) out += std::to_string(e);
    return out;
  }
  return "{" + s.to_string() + "}";
}

Rational sign_of(int exponent) { return (exponent % 2 == 0) ? Rational(1) : Rational(-1); }

void require(bool cond, const std::string& what) {
  if (!cond) throw DimensionError(what);
}

}  // namespace

// ---------------------------------------------------------------------------
// Variables and monomials

std::string PQVar::to_string() const { return std::string(kind == VarKind::P ? "P:" : "Q:") + index.to_string(); }

PQVar PQVar::parse(std::string_view text) {
  if (text.size() < 2 || text[1] != ':' || (text[0] != 'P' && text[0] != 'Q'))
    throw InputError("invalid variable literal: " + std::string(text));
  return {text[0] == 'P' ? VarKind::P : VarKind::Q, Subset::parse(text.substr(2))};
}

Monomial::Monomial(std::vector<PQVar> vars) : vars_(std::move(vars)) { std::sort(vars_.begin(), vars_.end()); }

std::size_t Monomial::exponent_of(const PQVar& v) const {
  auto [lo, hi] = std::equal_range(vars_.begin(), vars_.end(), v);
  return static_cast<std::size_t>(hi - lo);
}

bool Monomial::has_kind(VarKind kind) const {
  return std::any_of(vars_.begin(), vars_.end(), [kind](const PQVar& v) { return v.kind == kind; });
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.vars_.reserve(a.vars_.size() + b.vars_.size());
  std::merge(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(), std::back_inserter(out.vars_));
  return out;
}

bool operator<(const Monomial& a, const Monomial& b) {
  if (a.vars_.size() != b.vars_.size()) return a.vars_.size() < b.vars_.size();
  return a.vars_ < b.vars_;
}

// ---------------------------------------------------------------------------
// SparsePoly

SparsePoly SparsePoly::constant(const Rational& c) { return monomial(Monomial{}, c); }

SparsePoly SparsePoly::variable(const PQVar& v, const Rational& c) { return monomial(Monomial({v}), c); }

SparsePoly SparsePoly::monomial(const Monomial& m, const Rational& c) {
  SparsePoly p;
  p.add_term(m, c);
  return p;
}

Rational SparsePoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void SparsePoly::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

SparsePoly& SparsePoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

SparsePoly SparsePoly::pow(unsigned e) const {
  SparsePoly out = constant(1);
  for (unsigned i = 0; i < e; ++i) out = out * *this;
  return out;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    out += sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + ");
    std::string body;
    for (const auto& v : m.vars()) {
      if (!body.empty()) body += '*';
      body += (v.kind == VarKind::P ? "P" : "Q") + compact(v.index);
    }
    if (body.empty()) {
      out += foundation::to_string(mag);
    } else {
      if (mag != 1) out += foundation::to_string(mag) + "*";
      out += body;
    }
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Relations

SparsePoly plucker_relation(Subset a, Subset b, VarKind kind) {
  require(b.size() == a.size() + 2, "plucker_relation: need |B| = |A| + 2");
  SparsePoly r;
  for (int i : (b - a).elements()) {
    r.add_term(Monomial({PQVar{kind, a.with(i)}, PQVar{kind, b.without(i)}}),
               Rational(foundation::plucker_sign(a, b, i)));
  }
  return r;
}

SparsePoly incidence_relation(Subset a, Subset b) {
  require(b.size() >= a.size() + 2, "incidence_relation: need |A| = d-1, |B| = e+1 with d <= e");
  SparsePoly r;
  for (int i : (b - a).elements())
    r.add_term(Monomial({P(a.with(i)), Q(b.without(i))}), Rational(foundation::plucker_sign(a, b, i)));
  return r;
}

namespace {

// Removes factors of Q_pivot common to all terms while the power allows it.
void reduce(LaurentRel& rel) {
  const PQVar qp = Q(rel.pivot);
  if (rel.numerator.is_zero()) {
    rel.denom_power = 0;
    return;
  }
  while (rel.denom_power > 0) {
    const auto& terms = rel.numerator.terms();
    bool divisible =
        std::all_of(terms.begin(), terms.end(), [&](const auto& t) { return t.first.exponent_of(qp) > 0; });
    if (!divisible) break;
    SparsePoly next;
    for (const auto& [m, c] : terms) {
      auto vars = m.vars();
      vars.erase(std::find(vars.begin(), vars.end(), qp));
      next.add_term(Monomial(std::move(vars)), c);
    }
    rel.numerator = std::move(next);
    --rel.denom_power;
  }
}

LaurentRel rrel_rec(Subset a, Subset b, int d) {
  const Subset top = Subset::range(d + 1);
  LaurentRel out{{}, 0, top};
  if (b.empty()) return out;  // |A| = d: rrel_{A,∅} = 0
  const int bmax = b.max();
  const Subset rest = b.without(bmax);
  // Children rrel_{A∪i, B\b}, all over a common power of Q_[d+1].
  std::vector<std::pair<SparsePoly, LaurentRel>> children;
  unsigned common = 0;
  for (int i : (top - a).elements()) {
    SparsePoly factor = SparsePoly::variable(Q(top.without(i).with(bmax)),
                                             sign_of(a.count_upto(i) + top.count_upto(i)));
    LaurentRel child = rrel_rec(a.with(i), rest, d);
    common = std::max(common, child.denom_power);
    children.emplace_back(std::move(factor), std::move(child));
  }
  const SparsePoly qtop = SparsePoly::variable(Q(top));
  out.denom_power = common + 1;
  out.numerator = -incidence_relation((a | b).without(bmax), top.with(bmax)) * qtop.pow(common + 1);
  for (const auto& [factor, child] : children) {
    if (child.numerator.is_zero()) continue;
    out.numerator += factor * child.numerator * qtop.pow(common - child.denom_power);
  }
  reduce(out);
  return out;
}

}  // namespace

LaurentRel rrel(Subset a, Subset b, int d, int n) {
  const Subset top = Subset::range(d + 1);
  require(d >= 1 && n > d, "rrel: need 1 <= d < n");
  require(a.is_subset_of(top), "rrel: A must lie in [d+1]");
  require(b.is_subset_of(Subset::range(n) - top), "rrel: B must lie in [n] \\ [d+1]");
  require(a.size() + b.size() == d, "rrel: need |A| + |B| = d");
  return rrel_rec(a, b, d);
}

SparsePoly evaluate(const SparsePoly& poly, const PlueckerVector& q) {
  SparsePoly out;
  for (const auto& [m, c] : poly.terms()) {
    Rational coeff = c;
    std::vector<PQVar> pvars;
    for (const auto& v : m.vars()) {
      if (v.kind == VarKind::Q) {
        coeff *= q[v.index];
      } else {
        pvars.push_back(v);
      }
    }
    out.add_term(Monomial(std::move(pvars)), coeff);
  }
  return out;
}

SparsePoly evaluate(const LaurentRel& rel, const PlueckerVector& q) {
  const Rational& denom = q[rel.pivot];
  if (sgn(denom) == 0) throw InputError("evaluate: q at the pivot [d+1] is zero");
  SparsePoly out = evaluate(rel.numerator, q);
  Rational scale = 1;
  for (unsigned i = 0; i < rel.denom_power; ++i) scale /= denom;
  return out * scale;
}

std::map<Subset, Rational> linear_coefficients(const SparsePoly& poly) {
  std::map<Subset, Rational> out;
  for (const auto& [m, c] : poly.terms()) {
    if (m.degree() != 1 || m.vars().front().kind != VarKind::P)
      throw InputError("linear_coefficients: polynomial is not a linear form in the P variables");
    out[m.vars().front().index] = c;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Identities

namespace {

void check_in2pl_shape(Subset a_set, Subset b_set, Subset c_set, int a) {
  const int d = a_set.size() + 1;
  require(b_set.size() == d + 1 && c_set.size() == d + 1, "in2pl: need |A| = d-1, |B| = |C| = d+1");
  require(a_set.contains(a) && !c_set.contains(a), "in2pl: need a ∈ A \\ C");
}

void check_moveB_shape(Subset a_set, Subset b_set, Subset c_set, int b) {
  const int d = a_set.size() + 1;
  require(b_set.size() == d + 1 && c_set.size() == d + 1, "moveB: need |A| = d-1, |B| = |C| = d+1");
  require(a_set.is_subset_of(c_set), "moveB: need A ⊆ C");
  require(b_set.contains(b) && !c_set.contains(b), "moveB: need b ∈ B \\ C");
}

// φ_i as stated covers i ∈ B\A. The sum also runs over i = a when a ∈ B; the
// sign that term needs is |[a]∩B| + |[a]∩C|, one more than the formula gives.
int in2pl_phi(Subset a_set, Subset b_set, Subset c_set, int a, int i) {
  if (i == a) return b_set.count_upto(a) + c_set.count_upto(a);
  const Subset a_minus = a_set.without(a);
  return plucker_exponent(a_set, b_set, i) - plucker_exponent(a_minus.with(i), c_set.with(a), a);
}

int in2pl_psi(Subset a_set, Subset b_set, Subset c_set, int a, int i, int j) {
  const Subset a_minus = a_set.without(a);
  return in2pl_phi(a_set, b_set, c_set, a, i) + plucker_exponent(a_minus.with(i), c_set.with(a), j) -
         plucker_exponent(a_minus.with(j), b_set, i);
}

int in2pl_psi_canonical(Subset a_set, Subset b_set, Subset c_set, int a, int j) {
  for (int i : (b_set - a_set).elements())
    if (i != j) return in2pl_psi(a_set, b_set, c_set, a, i, j);
  throw DimensionError("in2pl: no admissible auxiliary index");
}

int moveB_beta(Subset b_set, Subset c_set, int b) { return b_set.count_upto(b) + c_set.count_upto(b) + 1; }

int moveB_phi(Subset a_set, Subset b_set, Subset c_set, int b, int i) {
  return plucker_exponent(a_set, b_set, i) + b_set.without(i).count_upto(b) + c_set.count_upto(b);
}

int moveB_psi(Subset b_set, Subset c_set, int b, int j) {
  return b_set.count_upto(j) + b_set.count_upto(b) + c_set.count_upto(j) + c_set.count_upto(b);
}

}  // namespace

namespace detail {

std::pair<SparsePoly, SparsePoly> in2pl_sides(Subset a_set, Subset b_set, Subset c_set, int a, bool corrupt) {
  check_in2pl_shape(a_set, b_set, c_set, a);
  const Subset a_minus = a_set.without(a);
  SparsePoly lhs;
  bool first = true;
  for (int i : (b_set - a_minus).elements()) {
    Rational s = sign_of(in2pl_phi(a_set, b_set, c_set, a, i));
    if (corrupt && first) s = -s;
    first = false;
    lhs += SparsePoly::variable(P(b_set.without(i)), s) * incidence_relation(a_minus.with(i), c_set.with(a));
  }
  SparsePoly rhs = plucker_relation(a_set, b_set, VarKind::P) * SparsePoly::variable(Q(c_set));
  for (int j : (c_set - a_set).elements()) {
    Rational s = sign_of(in2pl_psi_canonical(a_set, b_set, c_set, a, j));
    rhs += plucker_relation(a_minus.with(j), b_set, VarKind::P) *
           SparsePoly::variable(Q(c_set.without(j).with(a)), s);
  }
  return {std::move(lhs), std::move(rhs)};
}

std::pair<SparsePoly, SparsePoly> moveB_sides(Subset a_set, Subset b_set, Subset c_set, int b, bool corrupt) {
  check_moveB_shape(a_set, b_set, c_set, b);
  SparsePoly lhs = plucker_relation(a_set, b_set, VarKind::P) * SparsePoly::variable(Q(c_set));
  for (int j : (c_set - b_set).elements()) {
    lhs += plucker_relation(a_set, b_set.without(b).with(j), VarKind::P) *
           SparsePoly::variable(Q(c_set.with(b).without(j)), sign_of(moveB_psi(b_set, c_set, b, j)));
  }
  const int beta = moveB_beta(b_set, c_set, b) + (corrupt ? 1 : 0);
  SparsePoly rhs =
      SparsePoly::variable(P(b_set.without(b)), sign_of(beta)) * incidence_relation(a_set, c_set.with(b));
  for (int i : (b_set - a_set).elements()) {
    if (i == b) continue;
    rhs += SparsePoly::variable(P(a_set.with(i)), sign_of(moveB_phi(a_set, b_set, c_set, b, i))) *
           incidence_relation(b_set.without(i).without(b), c_set.with(b));
  }
  return {std::move(lhs), std::move(rhs)};
}

}  // namespace detail

IdentityCheck verify_in2pl(Subset a_set, Subset b_set, Subset c_set, int a) {
  auto [lhs, rhs] = detail::in2pl_sides(a_set, b_set, c_set, a, false);
  SparsePoly residual = lhs - rhs;
  return {residual.is_zero(), std::move(residual)};
}

IdentityCheck verify_moveB(Subset a_set, Subset b_set, Subset c_set, int b) {
  auto [lhs, rhs] = detail::moveB_sides(a_set, b_set, c_set, b, false);
  SparsePoly residual = lhs - rhs;
  return {residual.is_zero(), std::move(residual)};
}

std::vector<int> in2pl_psi_parities(Subset a_set, Subset b_set, Subset c_set, int a, int j) {
  check_in2pl_shape(a_set, b_set, c_set, a);
  std::vector<int> out;
  for (int i : (b_set - a_set).elements()) {
    if (i == j) continue;
    int psi = in2pl_psi(a_set, b_set, c_set, a, i, j);
    out.push_back(((psi % 2) + 2) % 2);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Saturation certificates

namespace {

struct Partial {
  unsigned exponent = 0;
  std::map<IncidenceIndex, SparsePoly> combination;
};

class CertificateBuilder {
 public:
  explicit CertificateBuilder(Subset c) : c_(c), qc_(SparsePoly::variable(Q(c))) {}

  const Partial& build(Subset a_set, Subset b_set) {
    auto key = std::make_pair(a_set, b_set);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Partial out = a_set.is_subset_of(c_) ? (b_set == c_ ? Partial{} : move_b(a_set, b_set)) : in2pl(a_set, b_set);
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  static void add(Partial& p, IncidenceIndex idx, const SparsePoly& coeff) {
    if (coeff.is_zero()) return;
    auto& slot = p.combination[idx];
    slot += coeff;
    if (slot.is_zero()) p.combination.erase(idx);
  }

  // Q_C R_{A,B} = Σ_i s_i P_{B\i} I_{A\a∪i, C∪a} - Σ_j s_j Q_{C\j∪a} R_{A\a∪j, B}
  Partial in2pl(Subset a_set, Subset b_set) {
    const int a = (a_set - c_).min();
    const Subset a_minus = a_set.without(a);
    std::vector<std::pair<SparsePoly, Partial>> children;
    unsigned m = 0;
    for (int j : (c_ - a_set).elements()) {
      SparsePoly factor = SparsePoly::variable(Q(c_.without(j).with(a)),
                                               -sign_of(in2pl_psi_canonical(a_set, b_set, c_, a, j)));
      Partial child = build(a_minus.with(j), b_set);
      m = std::max(m, child.exponent);
      children.emplace_back(std::move(factor), std::move(child));
    }
    Partial out;
    out.exponent = m + 1;
    const SparsePoly lift = qc_.pow(m);
    for (int i : (b_set - a_minus).elements()) {
      add(out, {a_minus.with(i), c_.with(a)},
          SparsePoly::variable(P(b_set.without(i)), sign_of(in2pl_phi(a_set, b_set, c_, a, i))) * lift);
    }
    merge_children(out, children, m);
    return out;
  }

  // Q_C R_{A,B} = (-1)^β P_{B\b} I_{A,C∪b} + Σ_i (-1)^{φ_i} P_{A∪i} I_{B\i\b, C∪b}
  //              - Σ_j (-1)^{ψ_j} Q_{C∪b\j} R_{A, B\b∪j}
  Partial move_b(Subset a_set, Subset b_set) {
    const int b = (b_set - c_).min();
    std::vector<std::pair<SparsePoly, Partial>> children;
    unsigned m = 0;
    for (int j : (c_ - b_set).elements()) {
      SparsePoly factor =
          SparsePoly::variable(Q(c_.with(b).without(j)), -sign_of(moveB_psi(b_set, c_, b, j)));
      Partial child = build(a_set, b_set.without(b).with(j));
      m = std::max(m, child.exponent);
      children.emplace_back(std::move(factor), std::move(child));
    }
    Partial out;
    out.exponent = m + 1;
    const SparsePoly lift = qc_.pow(m);
    add(out, {a_set, c_.with(b)},
        SparsePoly::variable(P(b_set.without(b)), sign_of(moveB_beta(b_set, c_, b))) * lift);
    for (int i : (b_set - a_set).elements()) {
      if (i == b) continue;
      add(out, {b_set.without(i).without(b), c_.with(b)},
          SparsePoly::variable(P(a_set.with(i)), sign_of(moveB_phi(a_set, b_set, c_, b, i))) * lift);
    }
    merge_children(out, children, m);
    return out;
  }

  void merge_children(Partial& out, const std::vector<std::pair<SparsePoly, Partial>>& children, unsigned m) {
    for (const auto& [factor, child] : children) {
      const SparsePoly scale = factor * qc_.pow(m - child.exponent);
      for (const auto& [idx, coeff] : child.combination) add(out, idx, scale * coeff);
    }
  }

  Subset c_;
  SparsePoly qc_;
  std::map<std::pair<Subset, Subset>, Partial> memo_;
};

}  // namespace

SaturationCertificate saturation_certificate(Subset a_set, Subset b_set, Subset c_set) {
  const int d = a_set.size() + 1;
  require(b_set.size() == d + 1 && c_set.size() == d + 1, "saturation_certificate: need |A| = d-1, |B| = |C| = d+1");
  CertificateBuilder builder(c_set);
  const Partial& p = builder.build(a_set, b_set);
  SaturationCertificate cert{a_set, b_set, c_set, p.exponent, {}};
  for (const auto& [idx, coeff] : p.combination) cert.combination.push_back({coeff, idx});
  return cert;
}

IdentityCheck replay(const SaturationCertificate& cert) {
  const int d = cert.target_a.size() + 1;
  require(cert.target_b.size() == d + 1 && cert.pivot.size() == d + 1, "replay: malformed certificate target");
  SparsePoly residual =
      SparsePoly::variable(Q(cert.pivot)).pow(cert.exponent) * plucker_relation(cert.target_a, cert.target_b, VarKind::P);
  for (const auto& term : cert.combination) {
    require(term.incidence.a.size() == d - 1 && term.incidence.b.size() == d + 2,
            "replay: incidence index has the wrong shape");
    residual -= term.coefficient * incidence_relation(term.incidence.a, term.incidence.b);
  }
  return {residual.is_zero(), std::move(residual)};
}

}  // namespace lxkit::polyrel
