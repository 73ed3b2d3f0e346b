#ifndef CHARMOD_LINALG_HPP
#define CHARMOD_LINALG_HPP

#include <optional>
#include <vector>

#include "charmod/rational.hpp"

namespace charmod {

// Dense exact linear algebra over the rationals plus the integer-lattice
// routines (HNF, kernels, saturation) the geometry layer is built on.
// Matrices are row-major vectors of rows; everything here is desk scale.

using QMat = std::vector<QVec>;
using ZMat = std::vector<ZVec>;

QVec q_add(const QVec& a, const QVec& b);
QVec q_sub(const QVec& a, const QVec& b);
QVec q_scale(const Rat& c, const QVec& a);
Rat q_dot(const QVec& a, const QVec& b);
Rat zq_dot(const ZVec& a, const QVec& b);
Int z_dot(const ZVec& a, const ZVec& b);
QVec z_to_q(const ZVec& v);

// In-place reduced row echelon form; returns pivot column indices.
std::vector<int> rref(QMat& a);

int rank(QMat a);
Rat det(QMat a);

// One solution of A x = b, if any.
std::optional<QVec> solve(const QMat& a, const QVec& b);

// Basis of the rational kernel {x : A x = 0}.
std::vector<QVec> nullspace(const QMat& a, int ncols);

// Row-style Hermite normal form. Returns H and a unimodular U with U*M = H.
// Nonzero rows of H come first; pivots are positive and entries above each
// pivot are reduced into [0, pivot).
struct HnfResult {
    ZMat h;
    ZMat u;
    int rank = 0;
};
HnfResult row_hnf(const ZMat& m);

// Basis (as rows) of the integer kernel {x in Z^n : M x = 0}. The result is
// a saturated lattice.
ZMat integer_kernel(const ZMat& m, int ncols);

// Basis of span(rows) intersected with Z^n (the saturation of the row span).
ZMat saturate_span(const ZMat& rows, int ncols);

} // namespace charmod

#endif
