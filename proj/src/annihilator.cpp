#include "charmod/annihilator.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>

#include "charmod/errors.hpp"

namespace charmod {

LeftIdeal orthant_annihilator(int n) {
    if (n < 1) throw BadProjection("orthant dimension must be positive");
    std::vector<WeylElement> gens;
    for (int i = 0; i < n; ++i) {
        Expo e(2 * n, 0);
        e[i] = 1;
        e[n + i] = 1;
        gens.push_back(WeylElement::monomial(n, e, Rat(1)));
    }
    return LeftIdeal(n, std::move(gens));
}

namespace {

// rays of a pointed cone cell, primitive and pointing away from the apex
std::vector<ZVec> cone_rays(const Cell& cell, const QVec& apex) {
    std::vector<ZVec> rays;
    for (const auto& f : cell.faces()) {
        if (f.dim() != 1) continue;
        ZVec dir = f.direction_lattice()[0];
        QVec probe = apex;
        for (int i = 0; i < cell.ambient(); ++i) probe[i] += Rat(dir[i]);
        if (!cell.contains_point(probe))
            for (auto& x : dir) x = -x;
        rays.push_back(dir);
    }
    std::sort(rays.begin(), rays.end());
    return rays;
}

CellComplex translated_complex(const CellComplex& k, const QVec& shift) {
    std::vector<Cell> cells;
    for (const auto& c : k.cells()) {
        std::vector<HalfSpace> in, eq;
        for (const auto& h : c.ineqs())
            in.push_back({h.normal, h.offset + zq_dot(h.normal, shift)});
        for (const auto& h : c.eqs())
            eq.push_back({h.normal, h.offset + zq_dot(h.normal, shift)});
        cells.push_back(Cell(c.id(), c.ambient(), in, eq));
    }
    return build_complex(std::move(cells), false);
}

LeftIdeal translate_ideal(const LeftIdeal& i, const QVec& shift) {
    int m = i.vars();
    QMat a(m, QVec(m, Rat(0)));
    for (int j = 0; j < m; ++j) a[j][j] = Rat(1);
    std::vector<WeylElement> gens;
    for (const auto& g : i.generators()) gens.push_back(linear_substitution(g, a, shift));
    return LeftIdeal(m, std::move(gens), i.order());
}

Rat facet_pair(const ZVec& v, const FacetData& f) { return Rat(z_dot(v, f.normal), f.norm_gcd); }

} // namespace

LeftIdeal simple_cone_annihilator(const Cone& c) {
    int m = c.cell.ambient();
    int d = c.cell.dim();
    auto rays = cone_rays(c.cell, c.apex);
    if ((int)rays.size() != d)
        throw NotSimple("cone has " + std::to_string(rays.size()) + " rays in dimension " +
                        std::to_string(d));
    // columns: the rays, then an orthogonal complement basis of the hull
    QMat a(m, QVec(m, Rat(0)));
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < m; ++i) a[i][j] = Rat(rays[j][i]);
    ZMat orth = integer_kernel(c.cell.direction_lattice(), m);
    assert((int)orth.size() == m - d);
    for (int j = d; j < m; ++j)
        for (int i = 0; i < m; ++i) a[i][j] = Rat(orth[j - d][i]);

    std::vector<WeylElement> gens;
    for (int i = 0; i < d; ++i) {
        Expo e(2 * m, 0);
        e[i] = 1;
        e[m + i] = 1;
        gens.push_back(linear_substitution(WeylElement::monomial(m, e, Rat(1)), a, c.apex));
    }
    for (const auto& h : c.cell.eqs())
        gens.push_back(WeylElement::affine(m, z_to_q(h.normal), -h.offset));
    return LeftIdeal(m, std::move(gens));
}

RationalFunction cone_laplace_transform(const CellComplex& cone_hat) {
    int m = cone_hat.ambient();
    auto vertices = cone_hat.cells_of_dim(0);
    if (vertices.size() != 1)
        throw Inconsistent("cone complex must have exactly one vertex (pointed cone)");
    QVec apex = cone_hat.cell(vertices[0]).interior_point();
    bool at_origin = std::all_of(apex.begin(), apex.end(),
                                 [](const Rat& x) { return x.is_zero(); });
    CellComplex local;
    const CellComplex* k = &cone_hat;
    if (!at_origin) {
        QVec shift(m);
        for (int i = 0; i < m; ++i) shift[i] = -apex[i];
        local = translated_complex(cone_hat, shift);
        k = &local;
    }

    // unknowns mu_cell; equations <v,x> mu_tau + sum_i lambda_i(v) mu_{tau_i} = 0
    // from the Fourier transforms of the type (i) relations, mu_vertex = 1
    int c = (int)k->size();
    std::vector<std::vector<RationalFunction>> rows;
    std::vector<RationalFunction> rhs;
    RationalFunction zero = RationalFunction::constant(m, Rat(0));
    for (int ti = 0; ti < c; ++ti) {
        const Cell& tau = k->cell(ti);
        if (tau.dim() == 0) {
            std::vector<RationalFunction> row(c, zero);
            row[ti] = RationalFunction::constant(m, Rat(1));
            rows.push_back(std::move(row));
            rhs.push_back(RationalFunction::constant(m, Rat(1)));
            continue;
        }
        for (const auto& v : tau.direction_lattice()) {
            std::vector<RationalFunction> row(c, zero);
            row[ti] = RationalFunction(Poly::affine(m, z_to_q(v), Rat(0)));
            for (const auto& f : k->facets_of(ti)) {
                Rat lam = facet_pair(v, f);
                if (!lam.is_zero())
                    row[f.facet_index] = row[f.facet_index] +
                                         RationalFunction::constant(m, lam);
            }
            rows.push_back(std::move(row));
            rhs.push_back(zero);
        }
    }
    std::vector<RationalFunction> mu;
    try {
        mu = solve_linear_ratfun(rows, rhs);
    } catch (const Underdetermined&) {
        throw Inconsistent("cone relations do not determine the Laplace transform");
    }
    RationalFunction total = zero;
    int top = k->top_dim();
    for (int i = 0; i < c; ++i)
        if (k->cell(i).dim() == top) total = total + mu[i];
    return total;
}

LeftIdeal rational_annihilator(const RationalFunction& f, const AnsatzBounds& bounds) {
    int m = f.vars();
    int r = bounds.max_order, dx = bounds.max_coeff_degree;

    // oriented list of d-exponents |b| <= r and x-exponents |a| <= dx
    std::vector<Expo> dexps, xexps;
    {
        std::function<void(Expo&, int, int, std::vector<Expo>&)> gen =
            [&](Expo& cur, int pos, int left, std::vector<Expo>& out) {
                if (pos == m) {
                    out.push_back(cur);
                    return;
                }
                for (int e = 0; e <= left; ++e) {
                    cur[pos] = (unsigned)e;
                    gen(cur, pos + 1, left - e, out);
                    cur[pos] = 0;
                }
            };
        Expo cur(m, 0);
        gen(cur, 0, r, dexps);
        gen(cur, 0, dx, xexps);
    }

    // N_b with d^b f = N_b / D^{|b|+1}
    const Poly& d0 = f.den();
    std::map<Expo, Poly> nb;
    nb[Expo(m, 0)] = f.num();
    std::vector<Poly> dpart(m);
    for (int i = 0; i < m; ++i) dpart[i] = d0.derivative(i);
    std::function<const Poly&(const Expo&)> get_nb = [&](const Expo& b) -> const Poly& {
        auto it = nb.find(b);
        if (it != nb.end()) return it->second;
        // reduce the last nonzero position
        Expo prev = b;
        int i = 0;
        for (int j = 0; j < m; ++j)
            if (b[j] > 0) i = j;
        prev[i] -= 1;
        const Poly& np = get_nb(prev);
        unsigned k = expo_deg(prev);
        Poly next = np.derivative(i) * d0 - np.scaled(Rat((long)(k + 1))) * dpart[i];
        return nb.emplace(b, std::move(next)).first->second;
    };

    // M_b = N_b * D^{r - |b|}
    std::vector<Poly> dpow(r + 1);
    dpow[0] = Poly::constant(m, Rat(1));
    for (int i = 1; i <= r; ++i) dpow[i] = dpow[i - 1] * d0;
    std::map<Expo, Poly> mb;
    for (const auto& b : dexps) mb[b] = get_nb(b) * dpow[r - (int)expo_deg(b)];

    // columns ordered by grevlex descending on the joint (a, b) exponent
    struct Col {
        Expo joint; // 2m
        Expo a, b;
    };
    std::vector<Col> cols;
    for (const auto& a : xexps)
        for (const auto& b : dexps) {
            Expo joint(2 * m, 0);
            for (int i = 0; i < m; ++i) {
                joint[i] = a[i];
                joint[m + i] = b[i];
            }
            cols.push_back({std::move(joint), a, b});
        }
    TermOrder ord = TermOrder::grevlex();
    std::sort(cols.begin(), cols.end(),
              [&](const Col& l, const Col& r2) { return ord.cmp(l.joint, r2.joint) > 0; });

    // sparse rows indexed by the monomials of x^a M_b
    std::map<Expo, std::map<int, Rat>> row_map;
    for (int ci = 0; ci < (int)cols.size(); ++ci) {
        const Poly& base = mb[cols[ci].b];
        for (const auto& [e, coeff] : base.terms()) {
            Expo shifted(m);
            for (int i = 0; i < m; ++i) shifted[i] = e[i] + cols[ci].a[i];
            row_map[shifted][ci] = coeff;
        }
    }

    // row echelon over Q on sparse rows; nullspace of the column space
    std::vector<std::map<int, Rat>> rows;
    for (auto& [e, row] : row_map) rows.push_back(std::move(row));
    std::vector<int> pivot_of_col((int)cols.size(), -1);
    std::vector<std::map<int, Rat>> echelon;
    for (auto& row : rows) {
        std::map<int, Rat> cur = std::move(row);
        while (!cur.empty()) {
            int lead = cur.begin()->first;
            int p = pivot_of_col[lead];
            if (p < 0) break;
            Rat fct = cur.begin()->second;
            for (const auto& [col, val] : echelon[p]) {
                auto it = cur.find(col);
                if (it == cur.end()) {
                    cur.emplace(col, -fct * val);
                } else {
                    it->second -= fct * val;
                    if (it->second.is_zero()) cur.erase(it);
                }
            }
        }
        if (cur.empty()) continue;
        int lead = cur.begin()->first;
        Rat inv = Rat(1) / cur.begin()->second;
        for (auto& [col, val] : cur) val *= inv;
        pivot_of_col[lead] = (int)echelon.size();
        echelon.push_back(std::move(cur));
    }
    // back-substitute to reduced row echelon form: order rows by pivot
    // column and clear each pivot from the earlier rows
    std::sort(echelon.begin(), echelon.end(),
              [](const std::map<int, Rat>& a, const std::map<int, Rat>& b) {
                  return a.begin()->first < b.begin()->first;
              });
    std::fill(pivot_of_col.begin(), pivot_of_col.end(), -1);
    for (int i = 0; i < (int)echelon.size(); ++i) pivot_of_col[echelon[i].begin()->first] = i;
    for (int i = (int)echelon.size() - 1; i >= 0; --i) {
        int lead = echelon[i].begin()->first;
        for (int j = 0; j < i; ++j) {
            auto it = echelon[j].find(lead);
            if (it == echelon[j].end()) continue;
            Rat fct = it->second;
            for (const auto& [col, val] : echelon[i]) {
                auto jt = echelon[j].find(col);
                if (jt == echelon[j].end()) {
                    echelon[j].emplace(col, -fct * val);
                } else {
                    jt->second -= fct * val;
                    if (jt->second.is_zero()) echelon[j].erase(jt);
                }
            }
        }
    }

    // free columns give the nullspace basis
    std::vector<WeylElement> gens;
    for (int cfree = 0; cfree < (int)cols.size(); ++cfree) {
        if (pivot_of_col[cfree] >= 0) continue;
        WeylElement g(m);
        g.add_term(cols[cfree].joint, Rat(1));
        for (int cp = 0; cp < (int)cols.size(); ++cp) {
            int p = pivot_of_col[cp];
            if (p < 0) continue;
            auto it = echelon[p].find(cfree);
            if (it != echelon[p].end()) g.add_term(cols[cp].joint, -it->second);
        }
        if (!g.is_zero()) gens.push_back(std::move(g));
    }

    // verification: sum c_ab x^a M_b must vanish identically
    for (const auto& g : gens) {
        Poly acc(m);
        for (const auto& [e, coeff] : g.terms()) {
            Expo a(m), b(m);
            for (int i = 0; i < m; ++i) {
                a[i] = e[i];
                b[i] = e[m + i];
            }
            acc += (Poly::monomial(m, a, coeff) * mb[b]);
        }
        if (!acc.is_zero())
            throw ConstructionFailed("ansatz solution fails to annihilate");
    }
    return LeftIdeal(m, std::move(gens));
}

AnnResult cone_annihilator(const CellComplex& cone_hat, const AnsatzBounds& bounds) {
    int m = cone_hat.ambient();
    auto vertices = cone_hat.cells_of_dim(0);
    if (vertices.size() != 1)
        throw Inconsistent("cone complex must have exactly one vertex (pointed cone)");
    QVec apex = cone_hat.cell(vertices[0]).interior_point();

    RationalFunction lap = cone_laplace_transform(cone_hat);
    LeftIdeal lap_ann = rational_annihilator(lap, bounds);
    std::vector<WeylElement> gens;
    for (const auto& g : lap_ann.generators()) gens.push_back(fourier(g));
    LeftIdeal at_origin(m, std::move(gens));
    LeftIdeal result = translate_ideal(at_origin, apex);

    // verify every generator against the presentation of the cone complex
    Presentation pres = presentation(cone_hat);
    std::vector<std::string> tops;
    for (const auto& c : cone_hat.cells())
        if (c.dim() == cone_hat.top_dim()) tops.push_back(c.id());
    for (const auto& g : result.generators())
        if (!pres.is_annihilating_sum(g, tops))
            throw ConstructionFailed("cone annihilator generator fails verification");
    return AnnResult{std::move(result), false};
}

AnnResult polytope_annihilator(const Cell& sigma, const AnsatzBounds& bounds) {
    const auto& verts = sigma.vertices();
    if (verts.empty()) throw NoVertices("cell " + sigma.id() + " has no vertices");

    AnnResult out;
    bool first = true;
    bool exact = true;
    for (const auto& v : verts) {
        Cone cp = vertex_cone_at(sigma, v);
        LeftIdeal ann;
        try {
            ann = simple_cone_annihilator(cp);
        } catch (const NotSimple&) {
            auto res = cone_annihilator(hat_complex(cp.cell), bounds);
            ann = res.ideal;
            exact = false;
        }
        if (first) {
            out.ideal = ann;
            first = false;
        } else {
            out.ideal = ideal_intersection(out.ideal, ann);
        }
    }
    out.exact = exact;

    // cross-check every generator on the hat complex of sigma
    Presentation pres = presentation(hat_complex(sigma));
    std::string top_id;
    for (const auto& c : pres.complex().cells())
        if (c.dim() == sigma.dim()) top_id = c.id();
    for (const auto& g : out.ideal.generators())
        if (!pres.is_annihilating(g, top_id))
            throw ConstructionFailed("polytope annihilator generator fails verification");
    return out;
}

} // namespace charmod
