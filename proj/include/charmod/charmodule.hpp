#ifndef CHARMOD_CHARMODULE_HPP
#define CHARMOD_CHARMODULE_HPP

#include <memory>
#include <mutex>

#include "charmod/geometry.hpp"
#include "charmod/groebner.hpp"

namespace charmod {

// Canonical presentation D^{m c} -> D^c ->> M_K of the characteristic
// module of a cell complex. Generators are the cells in (dim, id) order;
// relations are the standard relations, m per cell. All facet coefficients
// are lattice-normalized so they stay rational (integer, in fact).

struct SkeletonFiltration {
    // levels[i] = generator indices of cells with dim <= i, i = 0..m
    std::vector<std::vector<int>> levels;
};

class Presentation {
public:
    Presentation(std::shared_ptr<const CellComplex> k, std::vector<WeylVector> relations);

    const CellComplex& complex() const { return *complex_; }
    std::shared_ptr<const CellComplex> complex_ptr() const { return complex_; }
    int vars() const { return complex_->ambient(); }
    int generator_count() const { return (int)complex_->size(); }
    const std::string& generator(int i) const { return complex_->cell(i).id(); }
    const std::vector<WeylVector>& relations() const { return relations_; }

    SkeletonFiltration skeleton_filtration() const;

    // Relation submodule with its Groebner basis cached (default order).
    const FreeSubmodule& relation_module() const;

    // {P : P g_sigma lies in the relation submodule}, via a module Groebner
    // basis under a position-over-term order with g_sigma lowest.
    LeftIdeal annihilator_of(const std::string& cell_id) const;

    bool is_annihilating(const WeylElement& p, const std::string& cell_id) const;
    // Annihilation of a sum of generator classes (a nonconvex region that is
    // the union of several top cells).
    bool is_annihilating_sum(const WeylElement& p,
                             const std::vector<std::string>& cell_ids) const;

    // Normal form of a vector modulo the relation submodule.
    WeylVector normal_form(const WeylVector& v) const;

private:
    std::shared_ptr<const CellComplex> complex_;
    std::vector<WeylVector> relations_;
    mutable std::mutex cache_mutex_;
    mutable std::unique_ptr<FreeSubmodule> default_module_;
};

// The standard relations of K: for every cell, one type (i) relation per
// lattice basis vector of its hull direction and one type (ii) relation per
// defining equality of the hull. Requires K closed (every geometric facet
// of a cell of K is in K).
std::vector<WeylVector> standard_relations(const CellComplex& k);

Presentation presentation(std::shared_ptr<const CellComplex> k);
Presentation presentation(const CellComplex& k);

bool annihilator_by_elimination_available(const CellComplex& k);
LeftIdeal annihilator_by_elimination(const CellComplex& k, const std::string& cell_id);
bool is_annihilating(const WeylElement& p, const CellComplex& k, const std::string& cell_id);

// Constructive facet extraction of Thm (cyclicity): P with
// P g_sigma = c g_tau modulo the relations, following the proof recipe
// (edge derivatives, then multiplications by shifted hull forms).
struct FacetExtraction {
    WeylElement op;
    Rat scalar; // nonzero
};
FacetExtraction facet_extraction_operator(const Presentation& pres, const std::string& tau);

// Gluing along a shared subcomplex, identified geometrically. The ids in
// shared_f refer to cells of p1's complex.
Presentation glue(const Presentation& p1, const Presentation& p2,
                  const std::vector<std::string>& shared_f);

} // namespace charmod

#endif
