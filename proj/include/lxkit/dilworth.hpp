#pragma once

// Dilworth truncations: the combinatorial definition, the complement
// relabeling, and a randomized geometric realization used as an oracle.

#include <cstdint>
#include <vector>

#include "lxkit/matroidcore.hpp"

namespace lxkit::dilworth {

using matroidcore::Matroid;
using foundation::QMatrix;
using foundation::Subset;

/// Dil_k(M): ground set = rank-k flats of M (ordered by ground-position mask,
/// labeled by joining member labels with ","); a family is independent iff
/// every nonempty subfamily S has rank_M(∪S) >= |S| + k - 1.
/// Throws DimensionError unless 1 <= k <= rank(M).
Matroid dilworth(const Matroid& m, int k);

/// Replaces every label (a subset of [n], "1,3") by its complement in [n].
/// Throws InputError when a label is not a subset of [n].
Matroid relabel_complements(const Matroid& d, int n);

/// tilde-Dil_{n-d}(U_{n,n}): ground = d-subsets of [n], rank d+1. Cached.
const Matroid& relabeled_dilworth_uniform(int n, int d);

/// Realizes Dil_k of the column matroid of `points` (e x N) by intersecting
/// each rank-k flat's span with a random subspace H of codimension k-1
/// (kernel of a (k-1) x e integer matrix, entries in [-1000, 1000]). Draws
/// are retried while some intersection is not a single point; Error after
/// `max_attempts`. Labels match dilworth(matroid_of_points(points, "1".."N"), k).
Matroid geometric_dilworth(const QMatrix& points, int k, std::uint64_t seed, int max_attempts = 100);

/// Closed form of the circuits of tilde-Dil_{n-2}(U_{n,n}): the triples
/// {a a1, a a2, a a3} and the 4-sets of pairs containing no such triple.
/// Each circuit is colex sorted; the list is sorted. Throws DimensionError for n < 4.
std::vector<std::vector<Subset>> tilde_dil_nminus2_circuits(int n);

}  // namespace lxkit::dilworth
