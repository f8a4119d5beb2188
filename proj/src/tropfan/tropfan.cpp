#include "lxkit/tropfan.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <queue>

namespace lxkit::tropfan {

using foundation::colex_rank;
using foundation::colex_subsets;

TropValue TropValue::neg_inf() {
  TropValue t;
  t.finite_ = false;
  return t;
}

const Rational& TropValue::value() const {
  if (!finite_) throw InputError("tropical value is -inf");
  return value_;
}

TropValue operator+(const TropValue& a, const TropValue& b) {
  if (!a.finite_ || !b.finite_) return TropValue::neg_inf();
  return TropValue(a.value_ + b.value_);
}

bool operator==(const TropValue& a, const TropValue& b) {
  return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
}

bool operator<(const TropValue& a, const TropValue& b) {
  if (!b.finite_) return false;
  if (!a.finite_) return true;
  return a.value_ < b.value_;
}

std::string TropValue::to_string() const { return finite_ ? foundation::to_string(value_) : "-inf"; }

TropValue TropValue::parse(std::string_view text) {
  if (text == "-inf") return neg_inf();
  return TropValue(foundation::parse_rational(text));
}

bool max_attained_twice(const TropVector& terms) {
  if (terms.empty()) return true;
  const TropValue best = *std::max_element(terms.begin(), terms.end());
  if (best.is_neg_inf()) return true;
  return std::count(terms.begin(), terms.end(), best) >= 2;
}

TropPluecker::TropPluecker(int n, int m, TropValue fill)
    : n_(n), m_(m), values_(foundation::binomial(n, m), std::move(fill)) {
  if (m < 0 || m > n || n > Subset::kMaxElement) throw DimensionError("tropical Pluecker vector needs 0 <= m <= n <= 32");
}

std::size_t TropPluecker::position(Subset s) const {
  if (s.size() != m_ || (!s.empty() && s.max() > n_))
    throw DimensionError("tropical Pluecker index " + s.to_string() + " is not an m-subset of [n]");
  return colex_rank(s);
}

const TropValue& TropPluecker::operator[](Subset s) const { return values_[position(s)]; }
TropValue& TropPluecker::operator[](Subset s) { return values_[position(s)]; }

bool TropPluecker::all_neg_inf() const {
  return std::all_of(values_.begin(), values_.end(), [](const TropValue& v) { return v.is_neg_inf(); });
}

TropPluecker TropPluecker::from_values(int n, int m, TropVector values) {
  TropPluecker p(n, m);
  if (values.size() != p.values_.size()) throw DimensionError("tropical Pluecker vector has the wrong length");
  p.values_ = std::move(values);
  return p;
}

TropPluecker matroid_pluecker(const Matroid& m) {
  TropPluecker p(m.size(), m.rank());
  for (Mask b : m.bases()) p[Subset(static_cast<std::uint32_t>(b))] = TropValue(0);
  return p;
}

bool trop_plucker_check(const TropPluecker& p) {
  const int n = p.n(), m = p.m();
  if (m < 1 || m >= n) return true;
  for (auto a : colex_subsets(n, m - 1))
    for (auto b : colex_subsets(n, m + 1)) {
      TropVector terms;
      for (int i : (b - a).elements()) terms.push_back(p[a.with(i)] + p[b.without(i)]);
      if (!max_attained_twice(terms)) return false;
    }
  return true;
}

std::vector<TropVector> valuated_circuits(const TropPluecker& p) {
  std::vector<TropVector> out;
  if (p.m() >= p.n()) return out;
  for (auto b : colex_subsets(p.n(), p.m() + 1)) {
    TropVector c(static_cast<std::size_t>(p.n()), TropValue::neg_inf());
    for (int i : b.elements()) c[static_cast<std::size_t>(i - 1)] = p[b.without(i)];
    const TropValue top = *std::max_element(c.begin(), c.end());
    if (top.is_neg_inf()) continue;
    for (auto& v : c)
      if (!v.is_neg_inf()) v = TropValue(v.value() - top.value());
    out.push_back(std::move(c));
  }
  return out;
}

bool in_trop_linear_space(const TropPluecker& p, const TropVector& x) {
  if (x.size() != static_cast<std::size_t>(p.n())) throw DimensionError("point has the wrong length");
  for (const auto& c : valuated_circuits(p)) {
    TropVector terms;
    for (std::size_t i = 0; i < x.size(); ++i) terms.push_back(x[i] + c[i]);
    if (!max_attained_twice(terms)) return false;
  }
  return true;
}

bool trop_incidence_check(const TropPluecker& p, const TropPluecker& q) {
  if (p.n() != q.n() || p.m() > q.m() || p.m() < 1)
    throw DimensionError("trop_incidence_check: need the same n and 1 <= rank(p) <= rank(q)");
  const int n = p.n();
  if (q.m() + 1 > n) return true;
  for (auto a : colex_subsets(n, p.m() - 1))
    for (auto b : colex_subsets(n, q.m() + 1)) {
      TropVector terms;
      for (int i : (b - a).elements()) terms.push_back(p[a.with(i)] + q[b.without(i)]);
      if (!max_attained_twice(terms)) return false;
    }
  return true;
}

namespace {

void extend_chains(const std::vector<Mask>& rays, std::vector<Mask>& chain, std::vector<std::vector<Mask>>& out) {
  out.push_back(chain);
  for (Mask f : rays)
    if (f != chain.back() && (chain.back() & ~f) == 0) {
      chain.push_back(f);
      extend_chains(rays, chain, out);
      chain.pop_back();
    }
}

}  // namespace

std::vector<std::vector<Mask>> FanChart::maximal_chains() const {
  std::vector<std::vector<Mask>> out;
  for (const auto& c : chains) {
    bool extendable = false;
    for (const auto& d : chains)
      if (d.size() == c.size() + 1 && std::includes(d.begin(), d.end(), c.begin(), c.end())) {
        extendable = true;
        break;
      }
    if (!extendable) out.push_back(c);
  }
  return out;
}

FanChart bergman_chart(const Matroid& m) {
  if (m.loops() != 0) throw InputError("bergman_chart: matroid has loops");
  FanChart chart{m, {}, {}};
  const matroidcore::FlatLattice lattice = matroidcore::flats(m);
  for (std::size_t k = 0; k < lattice.flats.size(); ++k)
    if (lattice.ranks[k] > 0 && lattice.ranks[k] < m.rank()) chart.rays.push_back(lattice.flats[k]);
  // rays are sorted by rank, so a chain extends only forward in this list
  for (Mask f : chart.rays) {
    std::vector<Mask> chain{f};
    extend_chains(chart.rays, chain, chart.chains);
  }
  return chart;
}

TropVector fan_point(const FanChart& chart, const std::vector<Mask>& chain, const std::vector<Rational>& weights) {
  if (chain.empty() || chain.size() != weights.size()) throw InputError("fan_point: one weight per flat required");
  for (std::size_t j = 0; j < chain.size(); ++j) {
    if (weights[j] <= 0) throw InputError("fan_point: weights must be positive");
    if (j > 0 && (chain[j] == chain[j - 1] || (chain[j - 1] & ~chain[j]) != 0))
      throw InputError("fan_point: flats must form a strictly increasing chain");
  }
  std::vector<Rational> x(static_cast<std::size_t>(chart.matroid.size()));
  for (std::size_t j = 0; j < chain.size(); ++j)
    for (int e = 0; e < chart.matroid.size(); ++e)
      if ((chain[j] >> e) & 1u) x[static_cast<std::size_t>(e)] -= weights[j];
  return TropVector(x.begin(), x.end());
}

bool in_bergman_fan(const Matroid& m, const TropVector& x) {
  if (x.size() != static_cast<std::size_t>(m.size())) throw DimensionError("point has the wrong length");
  for (Mask c : matroidcore::circuit_masks(m)) {
    TropVector terms;
    for (int e = 0; e < m.size(); ++e)
      if ((c >> e) & 1u) terms.push_back(x[static_cast<std::size_t>(e)]);
    if (!max_attained_twice(terms)) return false;
  }
  return true;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> out(vertices.size(), 0);
  for (auto [a, b] : edges) {
    ++out[static_cast<std::size_t>(a)];
    ++out[static_cast<std::size_t>(b)];
  }
  return out;
}

int Graph::regular_degree() const {
  const auto deg = degrees();
  if (deg.empty()) return -1;
  return std::all_of(deg.begin(), deg.end(), [&](int x) { return x == deg.front(); }) ? deg.front() : -1;
}

int Graph::girth() const {
  const std::size_t n = vertices.size();
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  int best = 0;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1), parent(n, -1);
    std::queue<int> todo;
    dist[s] = 0;
    todo.push(static_cast<int>(s));
    while (!todo.empty()) {
      const int u = todo.front();
      todo.pop();
      for (int v : adj[static_cast<std::size_t>(u)]) {
        if (dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
          parent[static_cast<std::size_t>(v)] = u;
          todo.push(v);
        } else if (parent[static_cast<std::size_t>(u)] != v) {
          const int cycle = dist[static_cast<std::size_t>(u)] + dist[static_cast<std::size_t>(v)] + 1;
          if (best == 0 || cycle < best) best = cycle;
        }
      }
    }
  }
  return best;
}

Graph link_graph(const Matroid& m) {
  if (m.rank() != 3) throw DimensionError("link_graph: rank-3 matroid required");
  if (m.loops() != 0) throw InputError("link_graph: matroid has loops");
  for (int a = 0; a < m.size(); ++a)
    for (int b = a + 1; b < m.size(); ++b)
      if (!m.is_independent((Mask{1} << a) | (Mask{1} << b))) throw InputError("link_graph: matroid is not simple");
  const matroidcore::FlatLattice lattice = matroidcore::flats(m);
  std::vector<Mask> points = lattice.of_rank(1), lines = lattice.of_rank(2);
  Graph g;
  auto name = [&](Mask f) {
    std::string out;
    for (const auto& l : m.labels_of(f)) out += (out.empty() ? "" : " ") + l;
    return out;
  };
  for (Mask p : points) g.vertices.push_back(name(p));
  for (Mask l : lines) g.vertices.push_back(name(l));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < lines.size(); ++j)
      if ((points[i] & ~lines[j]) == 0) g.edges.insert({static_cast<int>(i), static_cast<int>(points.size() + j)});
  return g;
}

Graph smooth_degree2(const Graph& g) {
  std::vector<std::set<int>> adj(g.vertices.size());
  for (auto [a, b] : g.edges) {
    adj[static_cast<std::size_t>(a)].insert(b);
    adj[static_cast<std::size_t>(b)].insert(a);
  }
  std::vector<bool> removed(g.vertices.size(), false);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < adj.size(); ++v) {
      if (removed[v] || adj[v].size() != 2) continue;
      const int a = *adj[v].begin(), b = *adj[v].rbegin();
      if (adj[static_cast<std::size_t>(a)].count(b)) throw InputError("smooth_degree2: smoothing would create a multi-edge");
      adj[static_cast<std::size_t>(a)].erase(static_cast<int>(v));
      adj[static_cast<std::size_t>(b)].erase(static_cast<int>(v));
      adj[static_cast<std::size_t>(a)].insert(b);
      adj[static_cast<std::size_t>(b)].insert(a);
      adj[v].clear();
      removed[v] = true;
      changed = true;
    }
  }
  Graph out;
  std::vector<int> index(g.vertices.size(), -1);
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    if (!removed[v]) {
      index[v] = static_cast<int>(out.vertices.size());
      out.vertices.push_back(g.vertices[v]);
    }
  for (std::size_t v = 0; v < adj.size(); ++v)
    for (int w : adj[v])
      if (static_cast<int>(v) < w) out.edges.insert({index[v], index[static_cast<std::size_t>(w)]});
  return out;
}

}  // namespace lxkit::tropfan
