#include "charmod/dirimage.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <random>
#include <set>

#include "charmod/errors.hpp"

namespace charmod {

namespace {

Rat facet_pair(const ZVec& v, const FacetData& f) { return Rat(z_dot(v, f.normal), f.norm_gcd); }

// lattice basis of ker(pi) ∩ direction(sigma)
ZMat kernel_directions(const Cell& sigma, int s) {
    const ZMat& lat = sigma.direction_lattice();
    int d = (int)lat.size();
    // c in Z^d with sum_j c_j lat[j][i] = 0 for i < s
    ZMat m((size_t)s, ZVec(d, 0));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < d; ++j) m[i][j] = lat[j][i];
    ZMat coeffs = integer_kernel(m, d);
    ZMat out;
    for (const auto& c : coeffs) {
        ZVec v(sigma.ambient(), 0);
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < sigma.ambient(); ++i) v[i] += c[j] * lat[j][i];
        out.push_back(std::move(v));
    }
    return out;
}

// preimages in the direction lattice of a basis of the projected lattice
ZMat image_preimages(const Cell& sigma, int s) {
    const ZMat& lat = sigma.direction_lattice();
    ZMat proj;
    for (const auto& r : lat) proj.push_back(ZVec(r.begin(), r.begin() + s));
    HnfResult h = row_hnf(proj);
    ZMat out;
    for (int i = 0; i < h.rank; ++i) {
        ZVec w(sigma.ambient(), 0);
        for (size_t j = 0; j < lat.size(); ++j)
            for (int c = 0; c < sigma.ambient(); ++c) w[c] += h.u[i][j] * lat[j][c];
        out.push_back(std::move(w));
    }
    return out;
}

// affine forms over the first s variables generating I(H_{pi(sigma)})
std::vector<std::pair<ZVec, Rat>> image_hull_forms(const Cell& sigma, int s) {
    ZMat proj;
    for (const auto& r : sigma.direction_lattice())
        proj.push_back(ZVec(r.begin(), r.begin() + s));
    ZMat orth = integer_kernel(proj, s);
    std::vector<std::pair<ZVec, Rat>> out;
    for (const auto& e : orth) {
        Rat off;
        for (int i = 0; i < s; ++i) off += Rat(e[i]) * sigma.interior_point()[i];
        out.push_back({e, off});
    }
    return out;
}

// The type (iii) coefficient of facet f: an affine form in the first s
// variables agreeing with sum_k lambda(u_k) h_k on the facet hull. The
// top-dimensional shape (d_i - sum_{j<=s} N_j x_j)/g is used whenever it is
// valid on the hull; otherwise the general reduction is solved for.
struct AffineForm {
    QVec lin; // length s
    Rat cst;
    bool is_zero() const {
        if (!cst.is_zero()) return false;
        return std::all_of(lin.begin(), lin.end(), [](const Rat& c) { return c.is_zero(); });
    }
};

AffineForm type3_coefficient(const CellComplex& k, const Cell& sigma, const FacetData& f,
                             int s, const ZMat& kdirs, const QMat& duals) {
    int m = sigma.ambient();
    const Cell& tau = k.cell(f.facet_index);
    // F(x) = sum_k lambda(u_k) <a_k, x>
    QVec fcoef(m, Rat(0));
    for (size_t kk = 0; kk < kdirs.size(); ++kk) {
        Rat lam = facet_pair(kdirs[kk], f);
        if (lam.is_zero()) continue;
        for (int i = 0; i < m; ++i) fcoef[i] += lam * duals[kk][i];
    }
    auto valid_on_hull = [&](const QVec& lin_m, const Rat& cst) {
        // (F - G) vanishes on H_tau: value at a point and all directions
        QVec diff = fcoef;
        for (int i = 0; i < (int)lin_m.size(); ++i) diff[i] -= lin_m[i];
        if (q_dot(diff, tau.interior_point()) != cst) return false;
        for (const auto& dir : tau.direction_lattice())
            if (!q_dot(diff, z_to_q(dir)).is_zero()) return false;
        return true;
    };
    // paper shape: G = (d - sum_{j<=s} N_j x_j)/g
    {
        AffineForm g;
        g.lin.assign(s, Rat(0));
        for (int j = 0; j < s; ++j) g.lin[j] = -Rat(f.normal[j], f.norm_gcd);
        g.cst = f.offset / Rat(f.norm_gcd);
        QVec lin_m(m, Rat(0));
        for (int j = 0; j < s; ++j) lin_m[j] = g.lin[j];
        if (valid_on_hull(lin_m, g.cst)) return g;
    }
    // general reduction: solve F - G = combination of hull rows of tau
    const auto& eqs = tau.eqs();
    int unknowns = s + 1 + (int)eqs.size();
    QMat a((size_t)m + 1, QVec(unknowns, Rat(0)));
    QVec rhs((size_t)m + 1, Rat(0));
    // coefficient match on each x_i and the constant term:
    // F_i = G_i + sum_r t_r E_r[i], 0 = G_cst_part... (G constant enters const row)
    for (int i = 0; i < m; ++i) {
        if (i < s) a[i][i] = Rat(1);
        for (size_t r = 0; r < eqs.size(); ++r) a[i][s + 1 + r] = Rat(eqs[r].normal[i]);
        rhs[i] = fcoef[i];
    }
    a[m][s] = Rat(1);
    for (size_t r = 0; r < eqs.size(); ++r) a[m][s + 1 + r] = -eqs[r].offset;
    rhs[m] = Rat(0);
    auto sol = solve(a, rhs);
    if (!sol) throw ConstructionFailed("type (iii) coefficient reduction failed");
    AffineForm g;
    g.lin.assign(s, Rat(0));
    for (int j = 0; j < s; ++j) g.lin[j] = (*sol)[j];
    g.cst = (*sol)[s];
    return g;
}

WeylElement affine_to_weyl(int s, const AffineForm& f) {
    return WeylElement::affine(s, f.lin, f.cst);
}

} // namespace

std::vector<DirRelation> dir_image_relations(const CellComplex& k, int s) {
    int m = k.ambient();
    if (s <= 0 || s >= m) throw BadProjection("need 0 < s < ambient dimension");
    if (!k.is_closed())
        throw FacetNotInComplex("direct image relations need a closed complex");
    int c = (int)k.size();
    std::vector<DirRelation> rels;
    for (int si = 0; si < c; ++si) {
        const Cell& sigma = k.cell(si);
        ZMat kdirs = kernel_directions(sigma, s);
        ZMat wdirs = image_preimages(sigma, s);
        int v = (int)kdirs.size();
        assert(v == fiber_dimension(sigma, s));

        // type (i): one per basis vector of the projected direction space
        for (const auto& w : wdirs) {
            WeylVector r((size_t)c, WeylElement(s));
            QVec wy(s);
            for (int i = 0; i < s; ++i) wy[i] = Rat(w[i]);
            r[si] = WeylElement::directional(s, wy);
            for (const auto& f : k.facets_of(si)) {
                Rat lam = facet_pair(w, f);
                if (!lam.is_zero()) r[f.facet_index] += WeylElement::constant(s, lam);
            }
            rels.push_back({1, si, std::move(r)});
        }
        // type (ii): one per kernel direction
        for (const auto& u : kdirs) {
            WeylVector r((size_t)c, WeylElement(s));
            for (const auto& f : k.facets_of(si)) {
                Rat lam = facet_pair(u, f);
                if (!lam.is_zero()) r[f.facet_index] += WeylElement::constant(s, lam);
            }
            if (!weylvec_zero(r)) rels.push_back({2, si, std::move(r)});
        }
        // type (iii): the Euler-type relation when v > 0
        if (v > 0) {
            // dual affine forms h_k with <a_k, u_j> = delta_{kj}
            QMat usys;
            for (const auto& u : kdirs) usys.push_back(z_to_q(u));
            QMat duals;
            for (int kk = 0; kk < v; ++kk) {
                QVec e(v, Rat(0));
                e[kk] = Rat(1);
                auto a = solve(usys, e);
                assert(a.has_value());
                duals.push_back(*a);
            }
            WeylVector r((size_t)c, WeylElement(s));
            r[si] = WeylElement::constant(s, Rat(v));
            for (const auto& f : k.facets_of(si)) {
                AffineForm g = type3_coefficient(k, sigma, f, s, kdirs, duals);
                if (!g.is_zero()) r[f.facet_index] -= affine_to_weyl(s, g);
            }
            rels.push_back({3, si, std::move(r)});
        }
        // type (iv): vanishing on the hull of the projected image
        for (const auto& [e, off] : image_hull_forms(sigma, s)) {
            WeylVector r((size_t)c, WeylElement(s));
            r[si] = WeylElement::affine(s, z_to_q(e), -off);
            rels.push_back({4, si, std::move(r)});
        }
    }

    // count invariant: (s+1) c + sum_sigma (v(sigma) - [v = 0])
    long expected = (long)(s + 1) * c;
    for (int si = 0; si < c; ++si) {
        int v = fiber_dimension(k.cell(si), s);
        expected += v - (v == 0 ? 1 : 0);
    }
    if ((long)rels.size() != expected)
        throw ConstructionFailed("direct image relation count violates the formula");
    return rels;
}

DirImagePresentation::DirImagePresentation(std::shared_ptr<const CellComplex> k, int s,
                                           std::vector<int> gen_cells,
                                           std::vector<DirRelation> rels, bool reduced)
    : complex_(std::move(k)), s_(s), gen_cells_(std::move(gen_cells)),
      relations_(std::move(rels)), reduced_(reduced) {}

const std::string& DirImagePresentation::generator(int i) const {
    return complex_->cell(gen_cells_[i]).id();
}

int DirImagePresentation::fiber_dim(int gen_index) const {
    return fiber_dimension(complex_->cell(gen_cells_[gen_index]), s_);
}

const FreeSubmodule& DirImagePresentation::relation_module() const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (!module_) {
        ModuleOrder ord;
        ord.term = TermOrder::grevlex();
        ord.comp_rank.resize(gen_cells_.size());
        for (size_t i = 0; i < gen_cells_.size(); ++i) ord.comp_rank[i] = (int)i;
        std::vector<WeylVector> vecs;
        for (const auto& r : relations_) vecs.push_back(r.vec);
        module_ = std::make_unique<FreeSubmodule>(s_, (int)gen_cells_.size(), std::move(vecs),
                                                  ord);
    }
    return *module_;
}

LeftIdeal DirImagePresentation::annihilator_of(const std::string& cell_id) const {
    int ci = complex_->index_of(cell_id);
    int target = -1;
    for (size_t i = 0; i < gen_cells_.size(); ++i)
        if (gen_cells_[i] == ci) target = (int)i;
    if (target < 0) throw NotInComplex(cell_id + " is not a generator of this presentation");
    ModuleOrder ord;
    ord.term = TermOrder::grevlex();
    ord.comp_rank.assign(gen_cells_.size(), 1);
    ord.comp_rank[target] = 0;
    std::vector<WeylVector> vecs;
    for (const auto& r : relations_) vecs.push_back(r.vec);
    FreeSubmodule mod(s_, (int)gen_cells_.size(), std::move(vecs), ord);
    std::vector<WeylElement> gens;
    for (const auto& g : mod.groebner_basis()) {
        bool only = true;
        for (size_t i = 0; i < gen_cells_.size(); ++i)
            if ((int)i != target && !g[i].is_zero()) only = false;
        if (only && !g[target].is_zero()) gens.push_back(g[target]);
    }
    return LeftIdeal(s_, std::move(gens));
}

DirImagePresentation dir_image_presentation(std::shared_ptr<const CellComplex> k, int s) {
    auto rels = dir_image_relations(*k, s);
    std::vector<int> gens(k->size());
    for (size_t i = 0; i < k->size(); ++i) gens[i] = (int)i;
    return DirImagePresentation(std::move(k), s, std::move(gens), std::move(rels), false);
}

DirImagePresentation dir_image_presentation(const CellComplex& k, int s) {
    return dir_image_presentation(std::make_shared<const CellComplex>(k), s);
}

DirImagePresentation reduce_generators(const DirImagePresentation& p) {
    const CellComplex& k = p.complex();
    int s = p.s();
    int c = p.generator_count();

    // substitution forms from the general reduction: g_sigma ->
    // (1/v) sum_i G_i g_{sigma_i}, only facets with smaller fiber dimension
    std::vector<DirRelation> rels = p.relations();
    std::vector<bool> alive(c, true);
    std::vector<int> order; // generator indices by decreasing dim
    for (int i = 0; i < c; ++i) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return k.cell(p.generator_cells()[a]).dim() > k.cell(p.generator_cells()[b]).dim();
    });

    for (int gi : order) {
        int ci = p.generator_cells()[gi];
        const Cell& sigma = k.cell(ci);
        int v = fiber_dimension(sigma, s);
        if (v == 0) continue;
        // general-reduction substitution row (facets with smaller v only)
        ZMat kdirs = kernel_directions(sigma, s);
        QMat usys;
        for (const auto& u : kdirs) usys.push_back(z_to_q(u));
        QMat duals;
        for (int kk = 0; kk < (int)kdirs.size(); ++kk) {
            QVec e((int)kdirs.size(), Rat(0));
            e[kk] = Rat(1);
            auto a = solve(usys, e);
            duals.push_back(*a);
        }
        // coefficient on each facet as a WeylElement over D_s
        std::vector<std::pair<int, WeylElement>> subst;
        for (const auto& f : k.facets_of(ci)) {
            // solve the general reduction for this facet
            QVec fcoef(k.ambient(), Rat(0));
            for (size_t kk = 0; kk < kdirs.size(); ++kk) {
                Rat lam = facet_pair(kdirs[kk], f);
                if (lam.is_zero()) continue;
                for (int i = 0; i < k.ambient(); ++i) fcoef[i] += lam * duals[kk][i];
            }
            const Cell& tau = k.cell(f.facet_index);
            const auto& eqs = tau.eqs();
            int unknowns = s + 1 + (int)eqs.size();
            QMat a((size_t)k.ambient() + 1, QVec(unknowns, Rat(0)));
            QVec rhs((size_t)k.ambient() + 1, Rat(0));
            for (int i = 0; i < k.ambient(); ++i) {
                if (i < s) a[i][i] = Rat(1);
                for (size_t r = 0; r < eqs.size(); ++r) a[i][s + 1 + r] = Rat(eqs[r].normal[i]);
                rhs[i] = fcoef[i];
            }
            a[k.ambient()][s] = Rat(1);
            for (size_t r = 0; r < eqs.size(); ++r) a[k.ambient()][s + 1 + r] = -eqs[r].offset;
            auto sol = solve(a, rhs);
            assert(sol.has_value());
            QVec lin(s);
            for (int j = 0; j < s; ++j) lin[j] = (*sol)[j];
            WeylElement g = WeylElement::affine(s, lin, (*sol)[s]);
            if (g.is_zero()) continue;
            if (fiber_dimension(tau, s) >= v)
                throw ConstructionFailed(
                    "substitution coefficient on a facet without smaller fiber dimension");
            subst.push_back({f.facet_index, g.scaled(Rat(1, v))});
        }
        // replace g_sigma everywhere; drop sigma's own type (iii) relation
        std::vector<DirRelation> next;
        for (auto& r : rels) {
            if (r.type == 3 && r.cell == ci) continue;
            if (!r.vec[gi].is_zero()) {
                WeylElement coeff = r.vec[gi];
                r.vec[gi] = WeylElement(s);
                for (const auto& [fc, g] : subst) {
                    int fgen = -1;
                    for (int j = 0; j < c; ++j)
                        if (p.generator_cells()[j] == fc) fgen = j;
                    assert(fgen >= 0);
                    r.vec[fgen] += multiply(coeff, g);
                }
            }
            if (!weylvec_zero(r.vec)) next.push_back(std::move(r));
        }
        rels = std::move(next);
        alive[gi] = false;
    }

    // compress to surviving generators
    std::vector<int> keep, newpos(c, -1);
    for (int i = 0; i < c; ++i)
        if (alive[i]) {
            newpos[i] = (int)keep.size();
            keep.push_back(p.generator_cells()[i]);
        }
    std::vector<DirRelation> out;
    std::set<std::string> seen;
    for (const auto& r : rels) {
        WeylVector v(keep.size(), WeylElement(s));
        for (int i = 0; i < c; ++i) {
            if (r.vec[i].is_zero()) continue;
            assert(newpos[i] >= 0);
            v[newpos[i]] = r.vec[i];
        }
        std::string key;
        for (const auto& e : v) key += e.str() + "|";
        if (seen.insert(key).second) out.push_back({r.type, r.cell, std::move(v)});
    }
    return DirImagePresentation(p.complex_ptr(), s, std::move(keep), std::move(out), true);
}

std::vector<QVec> projected_chamber_points(const CellComplex& k, int s, std::uint64_t seed) {
    // hyperplanes: affine hulls of projected cells of image dimension s-1
    std::vector<std::pair<ZVec, Rat>> planes;
    std::set<std::string> seen;
    for (const auto& c : k.cells()) {
        if (image_dimension(c, s) != s - 1) continue;
        ZMat proj;
        for (const auto& r : c.direction_lattice())
            proj.push_back(ZVec(r.begin(), r.begin() + s));
        ZMat orth = integer_kernel(proj, s);
        // image hull has codimension 1: pick the generating normal
        assert(!orth.empty());
        ZVec n = orth[0];
        Rat off;
        for (int i = 0; i < s; ++i) off += Rat(n[i]) * c.interior_point()[i];
        // canonical sign for dedup
        bool flip = false;
        for (const auto& x : n) {
            if (x != 0) {
                flip = x < 0;
                break;
            }
        }
        if (flip) {
            for (auto& x : n) x = -x;
            off = -off;
        }
        std::string key;
        for (const auto& x : n) key += x.get_str() + ",";
        key += off.str();
        if (seen.insert(key).second) planes.push_back({std::move(n), off});
    }

    // a starting point off every hyperplane
    std::mt19937_64 rng(seed);
    auto rand_rat = [&]() {
        long num = (long)(rng() % 20001) - 10000;
        long den = (long)(rng() % 9999) + 1;
        return Rat(Int(num), Int(den));
    };
    QVec start(s);
    for (int tries = 0; tries < 1000; ++tries) {
        for (int i = 0; i < s; ++i) start[i] = rand_rat();
        bool on = false;
        for (const auto& [n, off] : planes)
            if (zq_dot(n, start) == off) on = true;
        if (!on) break;
        if (tries == 999) throw NonGenericSample("could not find a generic starting point");
    }

    auto sign_vector = [&](const QVec& x) {
        std::vector<int> sv;
        for (const auto& [n, off] : planes) sv.push_back((zq_dot(n, x) - off).sign());
        return sv;
    };
    auto chamber_point = [&](const std::vector<int>& sv) -> std::optional<QVec> {
        std::vector<LinCon> cons;
        for (size_t i = 0; i < planes.size(); ++i) {
            LinCon c;
            c.a = z_to_q(planes[i].first);
            c.b = planes[i].second;
            c.rel = LinCon::LT;
            if (sv[i] > 0) {
                for (auto& x : c.a) x = -x;
                c.b = -c.b;
            }
            cons.push_back(std::move(c));
        }
        return find_point(cons, s);
    };

    // BFS over chambers: adjacent chambers differ in exactly one sign
    std::set<std::vector<int>> visited;
    std::vector<QVec> points;
    std::vector<std::vector<int>> queue;
    queue.push_back(sign_vector(start));
    visited.insert(queue[0]);
    points.push_back(start);
    while (!queue.empty()) {
        auto sv = queue.back();
        queue.pop_back();
        for (size_t i = 0; i < planes.size(); ++i) {
            auto flipped = sv;
            flipped[i] = -flipped[i];
            if (visited.count(flipped)) continue;
            auto pt = chamber_point(flipped);
            if (!pt) continue;
            visited.insert(flipped);
            points.push_back(*pt);
            queue.push_back(std::move(flipped));
        }
    }
    return points;
}

bool fibers_connected_at(const CellComplex& k, int s, const QVec& x) {
    // nodes: cells with nonempty fiber; edges: jointly feasible constraints
    std::vector<int> nodes;
    for (int i = 0; i < (int)k.size(); ++i)
        if (fiber_polytope(k.cell(i), s, x).has_value()) nodes.push_back(i);
    if (nodes.size() <= 1) return true;
    int mz = k.ambient() - s;
    auto joint_feasible = [&](int a, int b) {
        std::vector<LinCon> cons;
        for (int id : {a, b}) {
            const Cell& cell = k.cell(id);
            auto add = [&](const HalfSpace& h, LinCon::Rel rel) {
                LinCon c;
                c.a.assign(mz, Rat(0));
                for (int i = 0; i < mz; ++i) c.a[i] = Rat(h.normal[s + i]);
                c.b = h.offset;
                for (int i = 0; i < s; ++i) c.b -= Rat(h.normal[i]) * x[i];
                c.rel = rel;
                cons.push_back(std::move(c));
            };
            for (const auto& h : cell.ineqs()) add(h, LinCon::LE);
            for (const auto& h : cell.eqs()) add(h, LinCon::EQ);
        }
        return feasible(cons, mz);
    };
    // union-find over the nodes
    std::vector<int> parent(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) parent[i] = (int)i;
    std::function<int(int)> find = [&](int a) {
        return parent[a] == a ? a : parent[a] = find(parent[a]);
    };
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = i + 1; j < nodes.size(); ++j)
            if (find((int)i) != find((int)j) && joint_feasible(nodes[i], nodes[j]))
                parent[find((int)i)] = find((int)j);
    int roots = 0;
    for (size_t i = 0; i < nodes.size(); ++i)
        if (find((int)i) == (int)i) ++roots;
    return roots == 1;
}

namespace {

bool all_fibers_connected(const CellComplex& k, int s, const std::vector<QVec>& pts) {
    for (const auto& x : pts)
        if (!fibers_connected_at(k, s, x)) return false;
    return true;
}

bool collapse_search(const CellComplex& k, int s, std::uint64_t seed,
                     std::set<std::string>* visited,
                     std::vector<std::pair<std::string, std::string>>* seq,
                     std::vector<QVec>* witnesses, int extra_samples) {
    auto pts = projected_chamber_points(k, s, seed);
    if (all_fibers_connected(k, s, pts)) {
        *witnesses = pts;
        return true;
    }
    std::string key;
    for (const auto& c : k.cells()) key += c.signature() + "#";
    if (!visited->insert(key).second) return false;
    for (const auto& [sigma, tau] : free_pairs(k, s)) {
        CellComplex next = collapse(k, sigma, tau);
        seq->push_back({sigma, tau});
        if (collapse_search(next, s, seed, visited, seq, witnesses, extra_samples))
            return true;
        seq->pop_back();
    }
    return false;
}

} // namespace

IsoCertificate spline_iso_certificate(const CellComplex& k, int s, int sample_count,
                                      std::uint64_t seed) {
    IsoCertificate cert;
    std::set<std::string> visited;
    std::vector<std::pair<std::string, std::string>> seq;
    std::vector<QVec> witnesses;
    if (collapse_search(k, s, seed, &visited, &seq, &witnesses, sample_count)) {
        cert.verdict = IsoCertificate::Verdict::Isomorphic;
        cert.collapse_sequence = seq;
        cert.witnesses = witnesses;
    } else {
        cert.verdict = IsoCertificate::Verdict::Unknown;
    }
    return cert;
}

} // namespace charmod
