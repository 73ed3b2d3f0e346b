#include "charmod/charmodule.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "charmod/errors.hpp"

namespace charmod {

namespace {

// lattice-normalized pairing <v, N>/g for integer v
Rat facet_coeff(const ZVec& v, const FacetData& f) {
    return Rat(z_dot(v, f.normal), f.norm_gcd);
}

} // namespace

std::vector<WeylVector> standard_relations(const CellComplex& k) {
    if (!k.is_closed())
        throw FacetNotInComplex("standard relations need every facet present in the complex");
    int m = k.ambient();
    int c = (int)k.size();
    std::vector<WeylVector> rels;
    for (int si = 0; si < c; ++si) {
        const Cell& sigma = k.cell(si);
        // type (i): one per lattice basis vector of the hull direction
        for (const auto& v : sigma.direction_lattice()) {
            WeylVector r((size_t)c, WeylElement(m));
            r[si] = WeylElement::directional(m, z_to_q(v));
            for (const auto& f : k.facets_of(si)) {
                Rat coeff = facet_coeff(v, f);
                if (!coeff.is_zero()) r[f.facet_index] += WeylElement::constant(m, coeff);
            }
            rels.push_back(std::move(r));
        }
        // type (ii): the defining equalities of the hull
        for (const auto& h : sigma.eqs()) {
            WeylVector r((size_t)c, WeylElement(m));
            r[si] = WeylElement::affine(m, z_to_q(h.normal), -h.offset);
            rels.push_back(std::move(r));
        }
    }
    assert((int)rels.size() == m * c);
    return rels;
}

Presentation::Presentation(std::shared_ptr<const CellComplex> k,
                           std::vector<WeylVector> relations)
    : complex_(std::move(k)), relations_(std::move(relations)) {
    for (const auto& r : relations_) assert(!weylvec_zero(r));
}

Presentation presentation(std::shared_ptr<const CellComplex> k) {
    auto rels = standard_relations(*k);
    return Presentation(std::move(k), std::move(rels));
}

Presentation presentation(const CellComplex& k) {
    return presentation(std::make_shared<const CellComplex>(k));
}

SkeletonFiltration Presentation::skeleton_filtration() const {
    SkeletonFiltration f;
    int m = vars();
    f.levels.assign(m + 1, {});
    for (int i = 0; i < generator_count(); ++i) {
        int d = complex_->cell(i).dim();
        for (int lvl = d; lvl <= m; ++lvl) f.levels[lvl].push_back(i);
    }
    return f;
}

const FreeSubmodule& Presentation::relation_module() const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (!default_module_) {
        ModuleOrder ord;
        ord.term = TermOrder::grevlex();
        ord.comp_rank.assign(generator_count(), 0);
        for (int i = 0; i < generator_count(); ++i) ord.comp_rank[i] = i;
        default_module_ = std::make_unique<FreeSubmodule>(vars(), generator_count(),
                                                          relations_, ord);
    }
    return *default_module_;
}

LeftIdeal Presentation::annihilator_of(const std::string& cell_id) const {
    int target = complex_->index_of(cell_id);
    ModuleOrder ord;
    ord.term = TermOrder::grevlex();
    ord.comp_rank.assign(generator_count(), 1);
    ord.comp_rank[target] = 0;
    FreeSubmodule mod(vars(), generator_count(), relations_, ord);
    std::vector<WeylElement> gens;
    for (const auto& g : mod.groebner_basis()) {
        bool only_target = true;
        for (int i = 0; i < generator_count(); ++i)
            if (i != target && !g[i].is_zero()) only_target = false;
        if (only_target && !g[target].is_zero()) gens.push_back(g[target]);
    }
    return LeftIdeal(vars(), std::move(gens));
}

WeylVector Presentation::normal_form(const WeylVector& v) const {
    const FreeSubmodule& mod = relation_module();
    return reduce(v, mod.groebner_basis(), mod.order());
}

bool Presentation::is_annihilating(const WeylElement& p, const std::string& cell_id) const {
    return is_annihilating_sum(p, {cell_id});
}

bool Presentation::is_annihilating_sum(const WeylElement& p,
                                       const std::vector<std::string>& cell_ids) const {
    WeylVector v((size_t)generator_count(), WeylElement(vars()));
    for (const auto& id : cell_ids) v[complex_->index_of(id)] += p;
    return weylvec_zero(normal_form(v));
}

LeftIdeal annihilator_by_elimination(const CellComplex& k, const std::string& cell_id) {
    return presentation(k).annihilator_of(cell_id);
}

bool is_annihilating(const WeylElement& p, const CellComplex& k, const std::string& cell_id) {
    return presentation(k).is_annihilating(p, cell_id);
}

namespace {

bool hull_contained(const Cell& a, const Cell& b) {
    // H_a subset of H_b: every hull equality of b holds on H_a
    for (const auto& h : b.eqs()) {
        if (zq_dot(h.normal, a.interior_point()) != h.offset) return false;
        for (const auto& dir : a.direction_lattice())
            if (z_dot(h.normal, dir) != 0) return false;
    }
    return true;
}

} // namespace

FacetExtraction facet_extraction_operator(const Presentation& pres, const std::string& tau_id) {
    const CellComplex& k = pres.complex();
    int m = k.ambient();

    // the complex must be sigma-hat: a unique top cell containing all others
    int top = -1;
    for (int i = 0; i < (int)k.size(); ++i)
        if (k.cell(i).dim() == k.top_dim()) {
            if (top >= 0)
                throw ConstructionFailed("facet extraction needs a single top cell");
            top = i;
        }
    const Cell& sigma = k.cell(top);
    for (const auto& c : k.cells())
        if (!sigma.contains_cell(c))
            throw ConstructionFailed("facet extraction needs the complex of a single polytope");

    // hull condition of Thm (cyclicity): H_alpha in H_beta forces a face
    for (const auto& a : k.cells())
        for (const auto& b : k.cells()) {
            if (a.dim() > b.dim()) continue;
            if (hull_contained(a, b) && !b.contains_cell(a))
                throw HullConditionViolated("hulls of " + a.id() + " and " + b.id() +
                                            " are nested but the cells are not");
        }

    int tau = k.index_of(tau_id);
    bool tau_is_facet = false;
    for (const auto& f : k.facets_of(top))
        if (f.facet_index == tau) tau_is_facet = true;
    if (!tau_is_facet) throw NotInComplex(tau_id + " is not a facet of the top cell");

    // the linear form cutting out H_tau inside H_sigma (lattice-normalized)
    QVec ell_n(m, Rat(0));
    Rat ell_d;
    for (const auto& f : k.facets_of(top)) {
        if (f.facet_index != tau) continue;
        for (int i = 0; i < m; ++i) ell_n[i] = Rat(f.normal[i], f.norm_gcd);
        ell_d = f.offset / Rat(f.norm_gcd);
    }
    WeylElement ell = WeylElement::affine(m, ell_n, -ell_d);

    // product of edge-direction derivatives over edges not in H_tau
    const Cell& tau_cell = k.cell(tau);
    WeylElement p0 = WeylElement::constant(m, Rat(1));
    int edge_count = 0;
    for (const auto& c : k.cells()) {
        if (c.dim() != 1) continue;
        if (hull_contained(c, tau_cell)) continue;
        p0 = multiply(WeylElement::directional(m, z_to_q(c.direction_lattice()[0])), p0);
        ++edge_count;
    }
    if (edge_count == 0 && k.cell(top).dim() > 0)
        throw ConstructionFailed("no edges outside the facet hull");

    WeylVector w((size_t)k.size(), WeylElement(m));
    w[top] = p0;
    w = pres.normal_form(w);
    WeylElement p_total = p0;

    int cap = std::max(4, 4 * edge_count);
    for (int step = 0; step <= cap; ++step) {
        // done when only a constant multiple of g_tau remains
        bool only_tau = true;
        for (int i = 0; i < (int)k.size(); ++i)
            if (i != tau && !w[i].is_zero()) only_tau = false;
        if (only_tau && w[tau].is_constant() && !w[tau].is_zero())
            return FacetExtraction{p_total, w[tau].constant_value()};
        if (weylvec_zero(w))
            throw ConstructionFailed("extraction collapsed to zero for " + tau_id);

        // choose the next multiplier: kill point masses off H_tau first,
        // then faces of tau, then reduce the degree on g_tau itself
        WeylElement factor;
        bool found = false;
        for (int i = 0; i < (int)k.size() && !found; ++i) {
            if (i == tau || w[i].is_zero()) continue;
            const Cell& c = k.cell(i);
            bool ell_const = true;
            for (const auto& dir : c.direction_lattice())
                if (!zq_dot(primitive_integer(ell_n), z_to_q(dir)).is_zero()) ell_const = false;
            if (ell_const) {
                Rat val = q_dot(ell_n, c.interior_point()) - ell_d;
                factor = val.is_zero() ? ell : (ell - WeylElement::constant(m, val));
                found = true;
            } else {
                factor = ell;
                found = true;
            }
        }
        if (!found) {
            // support is {tau} with a non-constant coefficient
            factor = ell;
        }
        p_total = multiply(factor, p_total);
        WeylVector fw((size_t)k.size(), WeylElement(m));
        for (int i = 0; i < (int)k.size(); ++i)
            if (!w[i].is_zero()) fw[i] = multiply(factor, w[i]);
        w = pres.normal_form(fw);
    }
    throw ConstructionFailed("facet extraction for " + tau_id +
                             " did not terminate within the degree cap");
}

Presentation glue(const Presentation& p1, const Presentation& p2,
                  const std::vector<std::string>& shared_f) {
    const CellComplex& k1 = p1.complex();
    const CellComplex& k2 = p2.complex();
    if (k1.ambient() != k2.ambient())
        throw DimensionMismatch("gluing complexes of different ambient dimension");

    // match F geometrically in both complexes
    std::set<int> f1, f2;
    for (const auto& id : shared_f) {
        int i1 = k1.index_of(id);
        int i2 = -1;
        for (int j = 0; j < (int)k2.size(); ++j)
            if (k2.cell(j).same_set(k1.cell(i1))) i2 = j;
        if (i2 < 0) throw NotASubcomplex("cell " + id + " of F is not a cell of both");
        f1.insert(i1);
        f2.insert(i2);
    }
    // F must be all of the geometric overlap
    for (int i = 0; i < (int)k1.size(); ++i)
        for (int j = 0; j < (int)k2.size(); ++j)
            if (k1.cell(i).same_set(k2.cell(j)) && !f1.count(i))
                throw NotASubcomplex("complexes share cell " + k1.cell(i).id() +
                                     " outside F");
    // closedness of F in both
    auto closed_in = [](const CellComplex& k, const std::set<int>& f) {
        for (int i : f)
            for (const auto& fd : k.facets_of(i))
                if (!f.count(fd.facet_index)) return false;
        return true;
    };
    if (!closed_in(k1, f1) || !closed_in(k2, f2))
        throw NotASubcomplex("F is not a closed subcomplex");

    // union complex; cells of k2 outside F keep their id unless it clashes
    std::vector<Cell> cells;
    for (const auto& c : k1.cells()) cells.push_back(c);
    std::set<std::string> used;
    for (const auto& c : k1.cells()) used.insert(c.id());
    std::vector<std::string> new_id(k2.size());
    for (int j = 0; j < (int)k2.size(); ++j) {
        if (f2.count(j)) {
            for (int i = 0; i < (int)k1.size(); ++i)
                if (k1.cell(i).same_set(k2.cell(j))) new_id[j] = k1.cell(i).id();
            continue;
        }
        Cell c = k2.cell(j);
        std::string id = c.id();
        while (used.count(id)) id += "~2";
        used.insert(id);
        c.set_id(id);
        new_id[j] = id;
        cells.push_back(std::move(c));
    }
    auto merged = std::make_shared<const CellComplex>(build_complex(std::move(cells), false));

    // map the relation vectors of both presentations into the union
    int m = k1.ambient();
    auto remap = [&](const Presentation& p, const std::vector<std::string>* names) {
        std::vector<WeylVector> out;
        for (const auto& r : p.relations()) {
            WeylVector v(merged->size(), WeylElement(m));
            for (int i = 0; i < (int)r.size(); ++i) {
                if (r[i].is_zero()) continue;
                const std::string& id =
                    names ? (*names)[i] : p.complex().cell(i).id();
                v[merged->index_of(id)] += r[i];
            }
            out.push_back(std::move(v));
        }
        return out;
    };
    std::vector<WeylVector> rels = remap(p1, nullptr);
    for (auto& r : remap(p2, &new_id)) {
        if (std::find(rels.begin(), rels.end(), r) == rels.end()) rels.push_back(std::move(r));
    }
    return Presentation(merged, std::move(rels));
}

bool annihilator_by_elimination_available(const CellComplex& k) { return k.is_closed(); }

} // namespace charmod
