#ifndef CHARMOD_BSPLINE_HPP
#define CHARMOD_BSPLINE_HPP

#include "charmod/dirimage.hpp"

namespace charmod {

// Value of the multivariate B-spline of a cell at a point: the exact fiber
// volume in the lattice normalization, together with the Gram determinant
// of the fiber lattice basis whose square root converts to the Euclidean
// value (the 1/sqrt(det pi pi^t) factor is 1 for coordinate projections).
struct SplineValue {
    Rat lattice_value;
    Rat gram_det; // covolume squared of the fiber direction lattice
    double euclidean() const;
};

SplineValue bspline_value(const Cell& sigma, int s, const QVec& x);

struct DbhCheckRow {
    std::string relation; // "ii" or "iii"
    std::string cell;
    QVec sample;
    Rat lhs, rhs;
    bool equal;
};

struct DbhReport {
    std::vector<DbhCheckRow> rows;
    bool all_equal = true;
};

// Pointwise verification of the de Boor-Hoellig relations (ii) and (iii)
// at generic rational samples; exact rational equality. alt_ki > 0 re-checks
// relation (iii) with that many alternative facet points k_i.
DbhReport check_dbh(const CellComplex& k, int s, int samples, std::uint64_t seed,
                    int alt_ki = 0);

// Generic sample points in the projected bounding box, off every projected
// hyperplane of the complex. Throws NonGenericSample when the retry budget
// is exhausted.
std::vector<QVec> generic_samples(const CellComplex& k, int s, int count, std::uint64_t seed);

// Presentation of the spline module S_K: the direct image presentation plus
// one extra kernel-direction relation for every missing cell of the
// arrangement closure of K whose relevant facets all lie in K.
DirImagePresentation spline_module_presentation(const CellComplex& k, int s);

} // namespace charmod

#endif
