#include "lxkit/dilworth.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <random>

namespace lxkit::dilworth {

using foundation::Rational;
using matroidcore::Mask;

namespace {

std::string join_labels(const Matroid& m, Mask flat) {
  std::string out;
  for (const auto& l : m.labels_of(flat)) {
    if (!out.empty()) out += ",";
    out += l;
  }
  return out;
}

struct FamilySearch {
  const Matroid& base;
  const std::vector<Mask>& flats;
  int k;
  std::vector<Mask> best;
  int best_size = 0;

  // `family` holds flat indices in increasing order; every subfamily passed.
  void extend(std::vector<int>& family, Mask family_mask) {
    const int size = static_cast<int>(family.size());
    if (size > best_size) {
      best_size = size;
      best.clear();
    }
    if (size == best_size) best.push_back(family_mask);
    const int start = family.empty() ? 0 : family.back() + 1;
    for (int f = start; f < static_cast<int>(flats.size()); ++f) {
      if (admissible(family, f)) {
        family.push_back(f);
        extend(family, family_mask | (Mask{1} << f));
        family.pop_back();
      }
    }
  }

  // Subfamilies that contain f, i.e. f together with any subset T of family.
  bool admissible(const std::vector<int>& family, int f) const {
    const std::size_t m = family.size();
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << m); ++t) {
      Mask u = flats[static_cast<std::size_t>(f)];
      for (std::size_t j = 0; j < m; ++j)
        if ((t >> j) & 1u) u |= flats[static_cast<std::size_t>(family[j])];
      if (base.rank_of(u) < std::popcount(t) + k) return false;
    }
    return true;
  }
};

std::vector<Mask> flats_of_rank(const Matroid& m, int k) {
  std::vector<Mask> out = matroidcore::flats(m).of_rank(k);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Matroid dilworth(const Matroid& m, int k) {
  if (k < 1 || k > m.rank()) throw DimensionError("dilworth: need 1 <= k <= rank(M)");
  const std::vector<Mask> flats = flats_of_rank(m, k);
  if (flats.size() > static_cast<std::size_t>(Matroid::kMaxGround))
    throw DimensionError("dilworth: more than 64 rank-k flats");
  std::vector<std::string> labels;
  for (Mask f : flats) labels.push_back(join_labels(m, f));
  FamilySearch search{m, flats, k, {}, 0};
  std::vector<int> family;
  search.extend(family, 0);
  return Matroid(std::move(labels), std::move(search.best));
}

Matroid relabel_complements(const Matroid& d, int n) {
  std::vector<std::string> labels;
  for (const auto& l : d.ground()) {
    const Subset s = Subset::parse(l);
    if (!s.is_subset_of(Subset::range(n))) throw InputError("relabel_complements: label " + l + " is not a subset of [n]");
    labels.push_back(s.complement(n).to_string());
  }
  return Matroid(std::move(labels), d.bases());
}

const Matroid& relabeled_dilworth_uniform(int n, int d) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, Matroid> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find({n, d});
  if (it == cache.end())
    it = cache.emplace(std::pair{n, d}, relabel_complements(dilworth(Matroid::uniform(n, n), n - d), n)).first;
  return it->second;
}

Matroid geometric_dilworth(const QMatrix& points, int k, std::uint64_t seed, int max_attempts) {
  const std::size_t e = points.rows();
  std::vector<std::string> point_labels;
  for (std::size_t c = 1; c <= points.cols(); ++c) point_labels.push_back(std::to_string(c));
  const Matroid m = matroidcore::matroid_of_points(points, point_labels);
  if (k < 1 || k > m.rank()) throw DimensionError("geometric_dilworth: need 1 <= k <= rank");
  const std::vector<Mask> flats = flats_of_rank(m, k);

  // Spanning vectors of each flat, as the rows of a k x e matrix.
  std::vector<QMatrix> spans;
  for (Mask f : flats) {
    std::vector<std::size_t> cols;
    for (const auto& l : m.labels_of(f)) cols.push_back(static_cast<std::size_t>(m.index_of(l)));
    QMatrix rows = points.select_columns(cols).transpose();
    foundation::rref(rows);
    std::vector<std::size_t> keep(static_cast<std::size_t>(k));
    for (std::size_t r = 0; r < keep.size(); ++r) keep[r] = r;
    spans.push_back(rows.select_rows(keep));
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-1000, 1000);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    QMatrix h(static_cast<std::size_t>(k - 1), e);
    for (std::size_t r = 0; r < h.rows(); ++r)
      for (std::size_t c = 0; c < e; ++c) h(r, c) = entry(rng);
    QMatrix realized(e, flats.size());
    bool generic = true;
    for (std::size_t f = 0; f < flats.size() && generic; ++f) {
      // h_F = Σ c_r span_r with H (Σ c_r span_r) = 0
      const QMatrix coeffs = foundation::kernel_basis(h * spans[f].transpose());
      if (coeffs.rows() != 1) {
        generic = false;
        break;
      }
      for (std::size_t c = 0; c < e; ++c) {
        Rational v = 0;
        for (std::size_t r = 0; r < static_cast<std::size_t>(k); ++r) v += coeffs(0, r) * spans[f](r, c);
        realized(c, f) = v;
      }
    }
    if (!generic) continue;
    std::vector<std::string> labels;
    for (Mask f : flats) labels.push_back(join_labels(m, f));
    return matroidcore::matroid_of_points(realized, std::move(labels));
  }
  throw Error("geometric_dilworth: no generic subspace found after " + std::to_string(max_attempts) + " draws");
}

std::vector<std::vector<Subset>> tilde_dil_nminus2_circuits(int n) {
  if (n < 4) throw DimensionError("tilde_dil_nminus2_circuits: need n >= 4");
  const auto pairs = foundation::colex_subsets(n, 2);
  auto is_star = [](Subset x, Subset y, Subset z) {
    const Subset common = x & y & z;
    return common.size() == 1 && (x | y | z).size() == 4;
  };
  std::vector<std::vector<Subset>> out;
  const std::size_t m = pairs.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      for (std::size_t c = b + 1; c < m; ++c) {
        if (is_star(pairs[a], pairs[b], pairs[c])) out.push_back({pairs[a], pairs[b], pairs[c]});
        for (std::size_t d = c + 1; d < m; ++d) {
          const Subset p[4] = {pairs[a], pairs[b], pairs[c], pairs[d]};
          bool has_star = false;
          for (int skip = 0; skip < 4 && !has_star; ++skip) {
            Subset t[3];
            int j = 0;
            for (int i = 0; i < 4; ++i)
              if (i != skip) t[j++] = p[i];
            has_star = is_star(t[0], t[1], t[2]);
          }
          if (!has_star) out.push_back({p[0], p[1], p[2], p[3]});
        }
      }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lxkit::dilworth
