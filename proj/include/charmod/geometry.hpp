#ifndef CHARMOD_GEOMETRY_HPP
#define CHARMOD_GEOMETRY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charmod/linineq.hpp"

namespace charmod {

// <normal, x> <= offset, with primitive integer normal.
struct HalfSpace {
    ZVec normal;
    Rat offset;

    friend bool operator==(const HalfSpace& a, const HalfSpace& b) {
        return a.normal == b.normal && a.offset == b.offset;
    }
    friend bool operator<(const HalfSpace& a, const HalfSpace& b) {
        if (a.normal != b.normal) return a.normal < b.normal;
        return a.offset < b.offset;
    }
};

// Convex rational H-polyhedron with a canonical representation: the affine
// hull in reduced primitive integer form and the minimal set of facet
// inequalities, each reduced modulo the hull rows. Two cells are equal as
// sets iff their canonical forms coincide.
class Cell {
public:
    // Throws EmptyCell if the constraint set is infeasible.
    Cell(std::string id, int ambient, std::vector<HalfSpace> ineqs,
         std::vector<HalfSpace> eqs);

    const std::string& id() const { return id_; }
    void set_id(std::string id) { id_ = std::move(id); }
    int ambient() const { return ambient_; }
    int dim() const { return dim_; }
    const std::vector<HalfSpace>& ineqs() const { return ineqs_; }
    const std::vector<HalfSpace>& eqs() const { return eqs_; }

    // Rows form a basis of the saturated direction lattice of the hull.
    const ZMat& direction_lattice() const { return lattice_; }
    const QVec& interior_point() const { return point_; }

    bool contains_point(const QVec& x) const;
    bool contains_cell(const Cell& other) const;
    bool same_set(const Cell& other) const;

    bool is_bounded() const;
    // Pointed recession cone directions (primitive), empty when bounded.
    std::vector<ZVec> recession_rays() const;
    ZMat lineality() const;

    // All vertices (0-faces). May be empty for cells without vertices.
    const std::vector<QVec>& vertices() const;

    // Faces of this cell of each dimension (including the cell itself),
    // obtained by activating subsets of inequalities.
    std::vector<Cell> faces() const;
    std::vector<Cell> facet_cells() const;

    std::vector<LinCon> constraints(bool strict_ineqs = false) const;

    // Canonical identity of the underlying set.
    const std::string& signature() const { return signature_; }

private:
    std::string id_;
    int ambient_;
    int dim_ = -1;
    std::vector<HalfSpace> ineqs_;
    std::vector<HalfSpace> eqs_;
    ZMat lattice_;
    QVec point_;
    std::string signature_;
    mutable std::optional<std::vector<QVec>> vertices_;
};

bool is_face_of(const Cell& face, const Cell& cell);

struct FacetData {
    int facet_index;
    ZVec normal; // primitive, outward within the hull of the parent cell
    Rat offset;  // <normal, x> = offset on the facet's hull
    Int norm_gcd; // gcd of <b, normal> over a lattice basis b of the parent
};

class CellComplex {
public:
    int ambient() const { return ambient_; }
    size_t size() const { return cells_.size(); }
    const std::vector<Cell>& cells() const { return cells_; }
    const Cell& cell(int i) const { return cells_[i]; }
    const Cell& cell(const std::string& id) const { return cells_[index_of(id)]; }
    int index_of(const std::string& id) const; // throws NotInComplex
    bool has_cell(const std::string& id) const;

    // Facets of cell i that are present in the complex.
    const std::vector<FacetData>& facets_of(int i) const { return facets_[i]; }

    // Every geometric facet of every cell is a cell of the complex.
    bool is_closed() const;

    std::vector<int> cells_of_dim(int d) const;
    int top_dim() const;

    friend CellComplex build_complex(std::vector<Cell> cells, bool generate_faces);

private:
    int ambient_ = 0;
    std::vector<Cell> cells_;
    std::map<std::string, int> index_;
    std::vector<std::vector<FacetData>> facets_;
};

// Validates the pairwise face condition and assembles facet incidence.
// With generate_faces, all faces of the input cells are added first.
CellComplex build_complex(std::vector<Cell> cells, bool generate_faces);

// Convenience: the complex of one cell and all of its faces.
CellComplex hat_complex(const Cell& c);

std::vector<std::pair<int, HalfSpace>> outward_normals(const CellComplex& k,
                                                       const std::string& cell_id);

struct Cone {
    QVec apex;
    Cell cell;
};

// The cone of sigma at its vertex p: all constraints of sigma active at p.
Cone vertex_cone(const CellComplex& k, const std::string& sigma, const std::string& p);
Cone vertex_cone_at(const Cell& sigma, const QVec& apex);

int fiber_dimension(const CellComplex& k, const std::string& sigma, int s);
int fiber_dimension(const Cell& sigma, int s);
int image_dimension(const Cell& sigma, int s);

// Free pairs (sigma, tau): tau is a facet of sigma and of no other cell.
// With s >= 0, only 1-free pairs: v(sigma) = 1 and v(tau) = 0.
std::vector<std::pair<std::string, std::string>> free_pairs(const CellComplex& k, int s = -1);

CellComplex collapse(const CellComplex& k, const std::string& sigma, const std::string& tau);

// pi^{-1}(x) ∩ sigma in the last m-s coordinates; nullopt when empty.
std::optional<Cell> fiber_polytope(const Cell& sigma, int s, const QVec& x);

struct VolumeResult {
    Rat value;
    bool lower_dimensional = false;
};

// Exact Lebesgue volume of a bounded full-dimensional polytope, by base
// vertex triangulation. Throws Unbounded.
VolumeResult volume(const Cell& p);
// Independent check: recursive facet-pyramid formula with lattice-normalized
// facet measures.
VolumeResult volume_pyramid(const Cell& p);

// Lattice-normalized dim(p)-volume (measure in which a fundamental cell of
// the direction lattice has measure 1). p need not be full-dimensional.
Rat lattice_volume(const Cell& p);

} // namespace charmod

#endif
