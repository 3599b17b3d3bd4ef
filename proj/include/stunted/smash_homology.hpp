#pragma once

#include <functional>
#include <span>

#include "stunted/homology.hpp"
#include "stunted/simplicial_set.hpp"

namespace stunted {

using TupleFilter = std::function<bool(std::span<const SimplexRef>)>;

/// Reduced Betti numbers of the cells of q^{^s} selected by `keep`, without
/// materializing the smash power.
///
/// A cell is a nondegenerate s-tuple of non-basepoint simplices of q at a
/// common dimension. The selected cells must form a subcomplex or the
/// complement of one (boundary faces outside the selection are dropped), so
/// this covers both subsets and quotients of the smash power. Computed as
/// cohomology: coboundaries are generated from coface tables of q, the
/// columns are reduced by their largest entry, and columns that an earlier
/// dimension already paired are skipped.
BettiTable smash_cells_betti(const SimplicialSetPtr& q, int s, Dim max_degree, const TupleFilter& keep);

/// Betti numbers of q^{^s} modulo the pinched set of the subset a.
BettiTable pinched_quotient_betti(const PointedSubset& a, int s, Dim max_degree);

}  // namespace stunted
