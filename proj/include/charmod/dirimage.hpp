#ifndef CHARMOD_DIRIMAGE_HPP
#define CHARMOD_DIRIMAGE_HPP

#include <cstdint>

#include "charmod/charmodule.hpp"

namespace charmod {

// One relation of the canonical presentation of pi_+^0 M_K, tagged by its
// type in Prop (standard relations for the direct image): (i) tangential
// derivatives of the image, (ii) kernel-direction facet sums, (iii) the
// Euler-type relation for positive fiber dimension, (iv) vanishing on the
// image hull. Type 5 marks the extra missing-cell relations of the spline
// module S_K.
struct DirRelation {
    int type;
    int cell; // source cell index, -1 for missing-cell relations
    WeylVector vec;
};

class DirImagePresentation {
public:
    DirImagePresentation(std::shared_ptr<const CellComplex> k, int s,
                         std::vector<int> gen_cells, std::vector<DirRelation> rels,
                         bool reduced);

    const CellComplex& complex() const { return *complex_; }
    std::shared_ptr<const CellComplex> complex_ptr() const { return complex_; }
    int s() const { return s_; }
    int generator_count() const { return (int)gen_cells_.size(); }
    const std::vector<int>& generator_cells() const { return gen_cells_; }
    const std::string& generator(int i) const;
    const std::vector<DirRelation>& relations() const { return relations_; }
    bool reduced() const { return reduced_; }

    int fiber_dim(int gen_index) const;

    // relation submodule over D_s with cached basis
    const FreeSubmodule& relation_module() const;
    LeftIdeal annihilator_of(const std::string& cell_id) const;

private:
    std::shared_ptr<const CellComplex> complex_;
    int s_;
    std::vector<int> gen_cells_;
    std::vector<DirRelation> relations_;
    bool reduced_;
    mutable std::mutex cache_mutex_;
    mutable std::unique_ptr<FreeSubmodule> module_;
};

// The typed relation list of the canonical presentation; vectors have one
// component per cell of K and coefficients in D_s.
std::vector<DirRelation> dir_image_relations(const CellComplex& k, int s);

DirImagePresentation dir_image_presentation(std::shared_ptr<const CellComplex> k, int s);
DirImagePresentation dir_image_presentation(const CellComplex& k, int s);

// Eliminates every generator with positive fiber dimension through its
// Euler-type relation; the result presents the same module on the fiber
// dimension zero generators.
DirImagePresentation reduce_generators(const DirImagePresentation& p);

struct IsoCertificate {
    enum class Verdict { Isomorphic, Unknown };
    Verdict verdict = Verdict::Unknown;
    std::vector<std::pair<std::string, std::string>> collapse_sequence;
    std::vector<QVec> witnesses; // one generic point per chamber, fibers connected
};

// Searches for a sequence of 1-elementary collapses reaching a complex with
// connected fibers over every chamber of the projected arrangement. Sound
// but one-sided: Unknown does not mean the map is not an isomorphism.
IsoCertificate spline_iso_certificate(const CellComplex& k, int s, int sample_count,
                                      std::uint64_t seed);

// Chambers of the projected constraint arrangement (one interior point per
// full-dimensional chamber intersecting the projected complex).
std::vector<QVec> projected_chamber_points(const CellComplex& k, int s, std::uint64_t seed);

bool fibers_connected_at(const CellComplex& k, int s, const QVec& x);

} // namespace charmod

#endif
