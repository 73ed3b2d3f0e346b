#ifndef CHARMOD_GROEBNER_HPP
#define CHARMOD_GROEBNER_HPP

#include <optional>
#include <vector>

#include "charmod/weyl.hpp"

namespace charmod {

// Buchberger for left ideals and submodules of free modules over the Weyl
// algebra. Leading monomials multiply commutatively (the associated graded
// ring is commutative), S-pairs and reduction use the noncommutative
// product. An ideal is the rank-1 case.

using WeylVector = std::vector<WeylElement>;

struct ModMono {
    int comp;
    Expo e;
    friend bool operator==(const ModMono& a, const ModMono& b) {
        return a.comp == b.comp && a.e == b.e;
    }
};

// Position-over-term: components compare by rank (larger rank = larger
// monomial), ties by the term order. comp_rank empty means rank 0
// everywhere, i.e. a pure term-over-position-free comparison by term order
// with component index as the final tiebreak.
struct ModuleOrder {
    TermOrder term;
    std::vector<int> comp_rank;

    int cmp(const ModMono& a, const ModMono& b) const;
};

bool weylvec_zero(const WeylVector& v);
WeylVector weylvec_sub(WeylVector a, const WeylVector& b);
WeylVector weylvec_scaled(const WeylVector& a, const Rat& c);
// P * v componentwise (left action).
WeylVector weylvec_mul(const WeylElement& p, const WeylVector& v);

class LeftIdeal {
public:
    LeftIdeal() : m_(0) {}
    LeftIdeal(int m, std::vector<WeylElement> gens, TermOrder order = TermOrder::grevlex());

    int vars() const { return m_; }
    const std::vector<WeylElement>& generators() const { return gens_; }
    const TermOrder& order() const { return order_; }

    bool gb_computed() const { return gb_.has_value(); }
    const std::vector<WeylElement>& groebner_basis() const;

    bool contains(const WeylElement& p) const;
    // true iff both ideals contain each other's generators
    bool equals(const LeftIdeal& other) const;

private:
    int m_;
    std::vector<WeylElement> gens_;
    TermOrder order_;
    mutable std::optional<std::vector<WeylElement>> gb_; // write-once cache
};

class FreeSubmodule {
public:
    FreeSubmodule() : m_(0), rank_(0) {}
    FreeSubmodule(int m, int rank, std::vector<WeylVector> gens, ModuleOrder order);

    int vars() const { return m_; }
    int rank() const { return rank_; }
    const std::vector<WeylVector>& generators() const { return gens_; }
    const ModuleOrder& order() const { return order_; }

    bool gb_computed() const { return gb_.has_value(); }
    const std::vector<WeylVector>& groebner_basis() const;

    bool contains(const WeylVector& v) const;

private:
    int m_;
    int rank_;
    std::vector<WeylVector> gens_;
    ModuleOrder order_;
    mutable std::optional<std::vector<WeylVector>> gb_;
};

// Normal form modulo a Groebner basis under the given order.
WeylElement reduce(const WeylElement& p, const std::vector<WeylElement>& gb,
                   const TermOrder& order);
WeylVector reduce(const WeylVector& v, const std::vector<WeylVector>& gb,
                  const ModuleOrder& order);

// Intersection by the central-parameter trick: eliminate t from
// t*I + (1-t)*J in D[t].
LeftIdeal ideal_intersection(const LeftIdeal& i, const LeftIdeal& j);

} // namespace charmod

#endif
