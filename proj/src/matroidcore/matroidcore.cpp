#include "lxkit/matroidcore.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "lxkit/linespace.hpp"

namespace lxkit::matroidcore {

using foundation::Rational;

namespace {

Mask bit(int k) { return Mask{1} << k; }

std::vector<int> positions(Mask m) {
  std::vector<int> out;
  for (; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

// Rows of an echelon family; each row has zeros at the pivots of earlier rows.
struct Echelon {
  std::vector<std::size_t> pivots;
  std::vector<std::vector<Rational>> rows;

  // Reduces v; on success appends it and returns true, otherwise v was dependent.
  bool insert(std::vector<Rational> v) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Rational f = v[pivots[r]];
      if (f == 0) continue;
      for (std::size_t c = 0; c < v.size(); ++c) v[c] -= f * rows[r][c];
    }
    auto it = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (it == v.end()) return false;
    const Rational lead = *it;
    for (auto& x : v) x /= lead;
    pivots.push_back(static_cast<std::size_t>(it - v.begin()));
    rows.push_back(std::move(v));
    return true;
  }
};

void collect_bases(const std::vector<std::vector<Rational>>& cols, std::size_t target, std::size_t start, Mask chosen,
                   const Echelon& ech, std::vector<Mask>& out) {
  if (ech.rows.size() == target) {
    out.push_back(chosen);
    return;
  }
  const std::size_t need = target - ech.rows.size();
  for (std::size_t e = start; e + need <= cols.size(); ++e) {
    Echelon next = ech;
    if (next.insert(cols[e])) collect_bases(cols, target, e + 1, chosen | bit(static_cast<int>(e)), next, out);
  }
}

}  // namespace

Matroid::Matroid(std::vector<std::string> ground, std::vector<Mask> bases)
    : ground_(std::move(ground)), bases_(std::move(bases)) {
  if (ground_.size() > static_cast<std::size_t>(kMaxGround))
    throw DimensionError("matroid ground set exceeds " + std::to_string(kMaxGround) + " elements");
  for (std::size_t k = 0; k < ground_.size(); ++k)
    if (!index_.emplace(ground_[k], static_cast<int>(k)).second)
      throw InputError("duplicate matroid label: " + ground_[k]);
  if (bases_.empty()) throw InputError("matroid needs at least one basis");
  std::sort(bases_.begin(), bases_.end());
  bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());
  rank_ = std::popcount(bases_.front());
  const Mask full = full_mask();
  for (Mask b : bases_) {
    if (std::popcount(b) != rank_) throw InputError("matroid bases have different sizes");
    if ((b & ~full) != 0) throw InputError("matroid basis uses elements outside the ground set");
    // every subset of b
    for (Mask s = b;; s = (s - 1) & b) {
      independent_.insert(s);
      if (s == 0) break;
    }
  }
}

Matroid Matroid::uniform(int r, int n) {
  if (r < 0 || r > n || n > kMaxGround) throw DimensionError("uniform matroid needs 0 <= r <= n <= 64");
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  std::vector<Mask> bases;
  std::vector<int> pick(static_cast<std::size_t>(r));
  // r-combinations of {0, ..., n-1} in lexicographic order
  for (int i = 0; i < r; ++i) pick[static_cast<std::size_t>(i)] = i;
  for (;;) {
    Mask m = 0;
    for (int p : pick) m |= bit(p);
    bases.push_back(m);
    int i = r - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return Matroid(std::move(labels), std::move(bases));
}

int Matroid::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw InputError("unknown matroid label: " + label);
  return it->second;
}

Mask Matroid::mask_of(const std::vector<std::string>& labels) const {
  Mask m = 0;
  for (const auto& l : labels) m |= bit(index_of(l));
  return m;
}

std::vector<std::string> Matroid::labels_of(Mask mask) const {
  std::vector<std::string> out;
  for (int k : positions(mask)) out.push_back(ground_.at(static_cast<std::size_t>(k)));
  return out;
}

Mask Matroid::full_mask() const { return ground_.size() == 64 ? ~Mask{0} : bit(static_cast<int>(ground_.size())) - 1; }

bool Matroid::is_basis(Mask s) const { return std::binary_search(bases_.begin(), bases_.end(), s); }

int Matroid::rank_of(Mask s) const {
  Mask indep = 0;
  for (int k : positions(s))
    if (is_independent(indep | bit(k))) indep |= bit(k);
  return std::popcount(indep);
}

Mask Matroid::closure(Mask s) const {
  const int r = rank_of(s);
  Mask out = s;
  for (int k : positions(full_mask() & ~s))
    if (rank_of(s | bit(k)) == r) out |= bit(k);
  return out;
}

Mask Matroid::loops() const {
  Mask used = 0;
  for (Mask b : bases_) used |= b;
  return full_mask() & ~used;
}

Matroid matroid_of_points(const QMatrix& columns, std::vector<std::string> labels) {
  if (labels.size() != columns.cols()) throw DimensionError("matroid_of_points: one label per column required");
  std::vector<std::vector<Rational>> cols;
  for (std::size_t c = 0; c < columns.cols(); ++c) cols.push_back(columns.column(c));
  const std::size_t r = foundation::rank(columns);
  std::vector<Mask> bases;
  collect_bases(cols, r, 0, 0, Echelon{}, bases);
  return Matroid(std::move(labels), std::move(bases));
}

std::vector<Mask> circuit_masks(const Matroid& m) {
  std::vector<Mask> out;
  for (int k : positions(m.loops())) out.push_back(bit(k));
  // A circuit of size s >= 2 is I ∪ e with I independent, e > max(I), dependent,
  // and every one-element deletion independent.
  std::vector<Mask> level{0};
  for (int size = 1; size <= m.rank() + 1; ++size) {
    std::vector<Mask> next;
    for (Mask base : level) {
      const int start = base == 0 ? 0 : 64 - std::countl_zero(base);
      for (int e = start; e < m.size(); ++e) {
        const Mask s = base | bit(e);
        if (m.is_independent(s)) {
          next.push_back(s);
          continue;
        }
        if (base == 0) continue;  // loops handled above
        bool minimal = true;
        for (int k : positions(s))
          if (!m.is_independent(s & ~bit(k))) {
            minimal = false;
            break;
          }
        if (minimal) out.push_back(s);
      }
    }
    level = std::move(next);
  }
  auto lex = [](Mask a, Mask b) { return positions(a) < positions(b); };
  std::sort(out.begin(), out.end(), lex);
  return out;
}

std::vector<std::vector<std::string>> circuits(const Matroid& m) {
  std::vector<std::vector<std::string>> out;
  for (Mask c : circuit_masks(m)) out.push_back(m.labels_of(c));
  return out;
}

std::size_t FlatLattice::count_of_rank(int r) const {
  return static_cast<std::size_t>(std::count(ranks.begin(), ranks.end(), r));
}

std::vector<Mask> FlatLattice::of_rank(int r) const {
  std::vector<Mask> out;
  for (std::size_t k = 0; k < flats.size(); ++k)
    if (ranks[k] == r) out.push_back(flats[k]);
  return out;
}

FlatLattice flats(const Matroid& m) {
  std::set<std::pair<int, Mask>> found;
  std::set<std::pair<Mask, Mask>> cover_masks;
  std::vector<Mask> frontier{m.closure(0)};
  found.insert({0, frontier.front()});
  for (int r = 0; r < m.rank(); ++r) {
    std::set<Mask> next;
    for (Mask f : frontier)
      for (int k : positions(m.full_mask() & ~f)) {
        const Mask g = m.closure(f | bit(k));
        cover_masks.insert({f, g});
        next.insert(g);
      }
    frontier.assign(next.begin(), next.end());
    for (Mask g : frontier) found.insert({r + 1, g});
  }
  FlatLattice out;
  std::map<Mask, std::size_t> index;
  for (const auto& [r, f] : found) {
    index[f] = out.flats.size();
    out.flats.push_back(f);
    out.ranks.push_back(r);
  }
  for (const auto& [lo, hi] : cover_masks) out.covers.emplace_back(index.at(lo), index.at(hi));
  std::sort(out.covers.begin(), out.covers.end());
  return out;
}

Matroid matroid_of_lines(const QMatrix& normals, int d) {
  const int n = static_cast<int>(normals.cols());
  if (static_cast<int>(normals.rows()) != d + 1 || d < 1 || d >= n)
    throw DimensionError("matroid_of_lines: normals must be (d+1) x n with 1 <= d < n");
  const auto subsets = foundation::colex_subsets(n, d);
  QMatrix lines(static_cast<std::size_t>(d + 1), subsets.size());
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < subsets.size(); ++c) {
    std::vector<std::size_t> cols;
    for (int k : subsets[c].elements()) cols.push_back(static_cast<std::size_t>(k - 1));
    const QMatrix kernel = foundation::kernel_basis(normals.select_columns(cols).transpose());
    if (kernel.rows() == 1)
      for (std::size_t r = 0; r <= static_cast<std::size_t>(d); ++r) lines(r, c) = kernel(0, r);
    labels.push_back(label_of(subsets[c]));
  }
  return matroid_of_points(lines, std::move(labels));
}

Matroid matroid_of_lines(const linespace::WMatrix& w) {
  const QMatrix& e = w.entries;
  QMatrix normals(e.rows(), e.cols());
  for (std::size_t k = 0; k < e.cols(); ++k)
    for (std::size_t r = 0; r < e.rows(); ++r)
      normals(r, static_cast<std::size_t>(w.permutation[k] - 1)) = e(r, k);
  return matroid_of_lines(normals, w.d);
}

bool matroid_equal(const Matroid& a, const Matroid& b, const std::map<std::string, std::string>& label_map) {
  if (label_map.size() != static_cast<std::size_t>(a.size()) || a.size() != b.size())
    throw InputError("matroid_equal: label map is not a bijection between the ground sets");
  std::vector<int> image(static_cast<std::size_t>(a.size()));
  Mask hit = 0;
  for (int k = 0; k < a.size(); ++k) {
    auto it = label_map.find(a.ground()[static_cast<std::size_t>(k)]);
    if (it == label_map.end()) throw InputError("matroid_equal: label map misses " + a.ground()[static_cast<std::size_t>(k)]);
    const int target = b.index_of(it->second);
    if (hit & bit(target)) throw InputError("matroid_equal: label map is not injective");
    hit |= bit(target);
    image[static_cast<std::size_t>(k)] = target;
  }
  if (a.rank() != b.rank() || a.bases().size() != b.bases().size()) return false;
  std::vector<Mask> mapped;
  mapped.reserve(a.bases().size());
  for (Mask base : a.bases()) {
    Mask m = 0;
    for (int k : positions(base)) m |= bit(image[static_cast<std::size_t>(k)]);
    mapped.push_back(m);
  }
  std::sort(mapped.begin(), mapped.end());
  return mapped == b.bases();
}

bool matroid_equal(const Matroid& a, const Matroid& b) {
  std::vector<std::string> ga = a.ground(), gb = b.ground();
  std::sort(ga.begin(), ga.end());
  std::sort(gb.begin(), gb.end());
  if (ga != gb) return false;
  std::map<std::string, std::string> identity;
  for (const auto& l : ga) identity[l] = l;
  return matroid_equal(a, b, identity);
}

}  // namespace lxkit::matroidcore
