#ifndef CHARMOD_HOMOLOGY_HPP
#define CHARMOD_HOMOLOGY_HPP

#include <map>

#include "charmod/geometry.hpp"

namespace charmod {

// Chain complex realized by the de Rham complex of M_K: one generator per
// cell, boundary +-1 on facets present in the complex (closed-support
// convention). Signs come from comparing the facet's induced orientation
// (outward normal first) with its chosen lattice orientation; any
// consistent choice works and d o d = 0 is asserted.
struct ChainComplex {
    // generators[k] = cell indices of dimension k
    std::map<int, std::vector<int>> generators;
    // boundary[k] maps degree k to k-1: rows = (k-1)-generators, cols = k-generators
    std::map<int, QMat> boundary;
};

struct BettiTable {
    std::map<int, int> betti;
};

ChainComplex bm_chain_complex(const CellComplex& k);
// Restricted to a subset of cells: boundary entries only between cells in
// the subset.
ChainComplex bm_chain_complex(const CellComplex& k, const std::vector<int>& subset);

BettiTable betti(const ChainComplex& c);
BettiTable bm_betti(const CellComplex& k);

// K_j: cells whose projected image has dimension exactly j (0 < s <= m).
std::vector<int> stratum_subcomplex(const CellComplex& k, int s, int j);

// count(k, i) = dim H^{BM}_{i+k} of the restricted complex on K_k.
std::map<std::pair<int, int>, int> direct_image_summand_counts(const CellComplex& k, int s);

} // namespace charmod

#endif
