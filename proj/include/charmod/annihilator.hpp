#ifndef CHARMOD_ANNIHILATOR_HPP
#define CHARMOD_ANNIHILATOR_HPP

#include "charmod/charmodule.hpp"
#include "charmod/ratfun.hpp"

namespace charmod {

// Degree bounds of the linear-algebra search for annihilators of a rational
// function: total d-degree and total x-degree of the ansatz monomials. The
// search is complete within the bounds; the resulting ideal is a verified
// sub-ideal of the full annihilator unless confirmed otherwise.
struct AnsatzBounds {
    int max_order = 3;
    int max_coeff_degree = 3;
};

// <x_i d_i : i = 1..n> in n variables.
LeftIdeal orthant_annihilator(int n);

// Conjugates the orthant ideal onto a simple cone (ray directions linearly
// independent, one per dimension); lower-dimensional cones additionally get
// their hull forms. Throws NotSimple.
LeftIdeal simple_cone_annihilator(const Cone& c);

struct AnnResult {
    LeftIdeal ideal;
    // true when the construction is provably the full annihilator
    // (closed-form routes); false for the bounded ansatz route.
    bool exact = true;
};

// Laplace transform of the sum of the top-dimensional cells of a pointed
// cone complex with apex at the origin (the complex is translated first if
// needed). Solves the Fourier-transformed type (i) relations for the mu's.
RationalFunction cone_laplace_transform(const CellComplex& cone_hat);

// All annihilating operators of f within the bounds: ansatz coefficients
// are solved from a homogeneous linear system; every generator is verified
// against f before returning.
LeftIdeal rational_annihilator(const RationalFunction& f, const AnsatzBounds& bounds);

// fourier(rational_annihilator(cone_laplace_transform(C))), translated back
// to the original apex; generators verified by is_annihilating on the cone
// complex.
AnnResult cone_annihilator(const CellComplex& cone_hat, const AnsatzBounds& bounds);

// Intersection of the vertex cone annihilators (simple cones in closed
// form, others through the Laplace route). Throws NoVertices.
AnnResult polytope_annihilator(const Cell& sigma, const AnsatzBounds& bounds);

} // namespace charmod

#endif
