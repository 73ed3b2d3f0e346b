#include "charmod/bspline.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "charmod/errors.hpp"

namespace charmod {

namespace {

Rat facet_pair(const ZVec& v, const FacetData& f) { return Rat(z_dot(v, f.normal), f.norm_gcd); }

// lattice of fiber directions of sigma, expressed in the last m-s coords
ZMat fiber_lattice(const Cell& sigma, int s) {
    const ZMat& lat = sigma.direction_lattice();
    int d = (int)lat.size();
    ZMat m((size_t)s, ZVec(d, 0));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < d; ++j) m[i][j] = lat[j][i];
    ZMat coeffs = integer_kernel(m, d);
    ZMat out;
    for (const auto& c : coeffs) {
        ZVec v(sigma.ambient() - s, 0);
        for (int j = 0; j < d; ++j)
            for (int i = s; i < sigma.ambient(); ++i) v[i - s] += c[j] * lat[j][i];
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

double SplineValue::euclidean() const {
    return lattice_value.to_double() * std::sqrt(gram_det.to_double());
}

SplineValue bspline_value(const Cell& sigma, int s, const QVec& x) {
    SplineValue out;
    ZMat flat = fiber_lattice(sigma, s);
    int v = (int)flat.size();
    // Gram determinant of the fiber lattice basis
    QMat gram((size_t)v, QVec(v, Rat(0)));
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < v; ++j) gram[i][j] = Rat(z_dot(flat[i], flat[j]));
    out.gram_det = v == 0 ? Rat(1) : det(gram);

    auto fiber = fiber_polytope(sigma, s, x);
    if (!fiber) {
        out.lattice_value = Rat(0);
        return out;
    }
    if (!fiber->is_bounded())
        throw UnboundedFiber("fiber of " + sigma.id() + " is unbounded");
    if (fiber->dim() < v) {
        out.lattice_value = Rat(0); // degenerate fiber has measure zero
        return out;
    }
    out.lattice_value = lattice_volume(*fiber);
    return out;
}

std::vector<QVec> generic_samples(const CellComplex& k, int s, int count, std::uint64_t seed) {
    // avoid every hyperplane spanned by a projected cell of image dim < s
    std::vector<std::pair<ZVec, Rat>> planes;
    for (const auto& c : k.cells()) {
        if (image_dimension(c, s) != s - 1) continue;
        ZMat proj;
        for (const auto& r : c.direction_lattice())
            proj.push_back(ZVec(r.begin(), r.begin() + s));
        ZMat orth = integer_kernel(proj, s);
        ZVec n = orth[0];
        Rat off;
        for (int i = 0; i < s; ++i) off += Rat(n[i]) * c.interior_point()[i];
        planes.push_back({std::move(n), off});
    }
    // bounding box of all projected vertices
    Rat lo(-1), hi(1);
    for (const auto& c : k.cells())
        for (const auto& vtx : c.vertices())
            for (int i = 0; i < s; ++i) {
                lo = std::min(lo, vtx[i] - Rat(1));
                hi = std::max(hi, vtx[i] + Rat(1));
            }
    std::mt19937_64 rng(seed);
    auto rand_in = [&]() {
        Int den = Int((unsigned long)(rng() % 9999) + 1);
        // numerator range scaled to the box
        Rat t(Int((unsigned long)(rng() % 100000)), Int(100000));
        return lo + (hi - lo) * t + Rat(Int(1), den * 100000);
    };
    std::vector<QVec> out;
    int budget = 100 * count + 100;
    while ((int)out.size() < count && budget-- > 0) {
        QVec x(s);
        for (int i = 0; i < s; ++i) x[i] = rand_in();
        bool bad = false;
        for (const auto& [n, off] : planes)
            if (zq_dot(n, x) == off) bad = true;
        if (!bad) out.push_back(std::move(x));
    }
    if ((int)out.size() < count)
        throw NonGenericSample("could not draw enough generic samples");
    return out;
}

DbhReport check_dbh(const CellComplex& k, int s, int samples, std::uint64_t seed, int alt_ki) {
    if (s <= 0 || s >= k.ambient()) throw BadProjection("need 0 < s < ambient dimension");
    if (!k.is_closed()) throw FacetNotInComplex("de Boor-Hoellig checks need a closed complex");
    DbhReport report;
    auto pts = generic_samples(k, s, samples, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);

    auto spline_at = [&](int ci, const QVec& x) {
        return bspline_value(k.cell(ci), s, x).lattice_value;
    };

    for (const auto& x : pts) {
        QVec xfull(k.ambient(), Rat(0));
        for (int i = 0; i < s; ++i) xfull[i] = x[i];
        for (int si = 0; si < (int)k.size(); ++si) {
            const Cell& sigma = k.cell(si);
            if (image_dimension(sigma, s) != s) continue;
            int v = fiber_dimension(sigma, s);

            // cached facet values; cells with lower-dimensional image must
            // vanish at a generic sample
            std::map<int, Rat> tvals;
            for (const auto& f : k.facets_of(si)) {
                Rat t = spline_at(f.facet_index, x);
                if (image_dimension(k.cell(f.facet_index), s) < s && !t.is_zero())
                    throw NonGenericSample("sample hits a lower-dimensional image");
                tvals[f.facet_index] = t;
            }

            // relation (ii): one per kernel direction of sigma
            ZMat kdirs;
            {
                const ZMat& lat = sigma.direction_lattice();
                int d = (int)lat.size();
                ZMat m((size_t)s, ZVec(d, 0));
                for (int i = 0; i < s; ++i)
                    for (int j = 0; j < d; ++j) m[i][j] = lat[j][i];
                for (const auto& c : integer_kernel(m, d)) {
                    ZVec u(k.ambient(), 0);
                    for (int j = 0; j < d; ++j)
                        for (int i = 0; i < k.ambient(); ++i) u[i] += c[j] * lat[j][i];
                    kdirs.push_back(std::move(u));
                }
            }
            for (const auto& u : kdirs) {
                Rat lhs(0);
                for (const auto& f : k.facets_of(si))
                    lhs += facet_pair(u, f) * tvals[f.facet_index];
                DbhCheckRow row{"ii", sigma.id(), x, lhs, Rat(0), lhs.is_zero()};
                report.all_equal = report.all_equal && row.equal;
                report.rows.push_back(std::move(row));
            }

            // relation (iii): v T_sigma = sum <k_i - x | N_i>/g T_i
            auto rhs_with = [&](const std::function<QVec(const Cell&)>& pick_ki) {
                Rat rhs(0);
                for (const auto& f : k.facets_of(si)) {
                    const Rat& t = tvals[f.facet_index];
                    if (t.is_zero()) continue;
                    QVec ki = pick_ki(k.cell(f.facet_index));
                    Rat coef = (zq_dot(f.normal, ki) - zq_dot(f.normal, xfull)) /
                               Rat(f.norm_gcd);
                    rhs += coef * t;
                }
                return rhs;
            };
            Rat lhs = Rat(v) * spline_at(si, x);
            Rat rhs = rhs_with([](const Cell& c) {
                const auto& verts = c.vertices();
                if (verts.empty()) return c.interior_point();
                QVec b(c.ambient(), Rat(0));
                for (const auto& vtx : verts) b = q_add(b, vtx);
                return q_scale(Rat(1, (long)verts.size()), b);
            });
            DbhCheckRow row{"iii", sigma.id(), x, lhs, rhs, lhs == rhs};
            report.all_equal = report.all_equal && row.equal;
            report.rows.push_back(std::move(row));

            // independence of the choice of k_i
            for (int alt = 0; alt < alt_ki; ++alt) {
                Rat rhs2 = rhs_with([&](const Cell& c) {
                    const auto& verts = c.vertices();
                    if (verts.empty()) return c.interior_point();
                    // random convex combination of the vertices
                    QVec b(c.ambient(), Rat(0));
                    Rat total(0);
                    for (const auto& vtx : verts) {
                        Rat w(Int((unsigned long)(rng() % 1000) + 1));
                        total += w;
                        b = q_add(b, q_scale(w, vtx));
                    }
                    return q_scale(Rat(1) / total, b);
                });
                DbhCheckRow arow{"iii", sigma.id(), x, lhs, rhs2, lhs == rhs2};
                report.all_equal = report.all_equal && arow.equal;
                report.rows.push_back(std::move(arow));
            }
        }
    }
    return report;
}

DirImagePresentation spline_module_presentation(const CellComplex& k, int s) {
    DirImagePresentation base = dir_image_presentation(k, s);
    int m = k.ambient();

    // hyperplane arrangement generated by every constraint of every cell
    std::vector<std::pair<ZVec, Rat>> planes;
    {
        std::set<std::string> seen;
        auto add = [&](ZVec n, Rat off) {
            bool flip = false;
            for (const auto& x : n)
                if (x != 0) {
                    flip = x < 0;
                    break;
                }
            if (flip) {
                for (auto& x : n) x = -x;
                off = -off;
            }
            std::string key;
            for (const auto& x : n) key += x.get_str() + ",";
            key += off.str();
            if (seen.insert(key).second) planes.push_back({std::move(n), off});
        };
        for (const auto& c : k.cells()) {
            for (const auto& h : c.ineqs()) add(h.normal, h.offset);
            for (const auto& h : c.eqs()) add(h.normal, h.offset);
        }
    }

    // enumerate arrangement faces by sign vector, pruning infeasible prefixes
    std::vector<Cell> candidates;
    std::set<std::string> cand_seen;
    for (const auto& c : k.cells()) cand_seen.insert(c.signature());
    std::vector<int> signs(planes.size(), 0);
    std::function<void(size_t, std::vector<LinCon>&)> enumerate = [&](size_t i,
                                                                      std::vector<LinCon>& cons) {
        if (!feasible(cons, m)) return;
        if (i == planes.size()) {
            std::vector<HalfSpace> in, eq;
            for (size_t j = 0; j < planes.size(); ++j) {
                if (signs[j] == 0) {
                    eq.push_back({planes[j].first, planes[j].second});
                } else if (signs[j] < 0) {
                    in.push_back({planes[j].first, planes[j].second});
                } else {
                    ZVec neg = planes[j].first;
                    for (auto& x : neg) x = -x;
                    in.push_back({std::move(neg), -planes[j].second});
                }
            }
            try {
                Cell cand("arr", m, in, eq);
                if (cand.dim() < 1) return;
                if (!cand_seen.insert(cand.signature()).second) return;
                candidates.push_back(std::move(cand));
            } catch (const EmptyCell&) {
            }
            return;
        }
        for (int sg = -1; sg <= 1; ++sg) {
            LinCon c;
            c.a = z_to_q(planes[i].first);
            c.b = planes[i].second;
            if (sg == 0) {
                c.rel = LinCon::EQ;
            } else if (sg < 0) {
                c.rel = LinCon::LT;
            } else {
                for (auto& x : c.a) x = -x;
                c.b = -c.b;
                c.rel = LinCon::LT;
            }
            signs[i] = sg;
            cons.push_back(c);
            enumerate(i + 1, cons);
            cons.pop_back();
        }
        signs[i] = 0;
    };
    std::vector<LinCon> cons;
    enumerate(0, cons);

    // a candidate contributes a kernel-direction relation when every facet
    // carrying a nonzero coefficient is a cell of K and its fibers are
    // bounded (the distributions must exist)
    std::vector<DirRelation> extra;
    auto existing_key = [&](const WeylVector& v) {
        std::string key;
        for (const auto& e : v) key += e.str() + "|";
        return key;
    };
    std::set<std::string> rel_seen;
    for (const auto& r : base.relations()) rel_seen.insert(existing_key(r.vec));

    for (const auto& cand : candidates) {
        // bounded fibers: recession directions inside ker(pi) must vanish
        bool bounded_fibers = true;
        for (int i = s; i < m && bounded_fibers; ++i) {
            for (int sign = -1; sign <= 1 && bounded_fibers; sign += 2) {
                std::vector<LinCon> rc;
                for (const auto& h : cand.ineqs()) {
                    LinCon cn;
                    cn.a = z_to_q(h.normal);
                    cn.b = Rat(0);
                    cn.rel = LinCon::LE;
                    rc.push_back(std::move(cn));
                }
                for (const auto& h : cand.eqs()) {
                    LinCon cn;
                    cn.a = z_to_q(h.normal);
                    cn.b = Rat(0);
                    cn.rel = LinCon::EQ;
                    rc.push_back(std::move(cn));
                }
                for (int j = 0; j < s; ++j) {
                    LinCon cn;
                    cn.a.assign(m, Rat(0));
                    cn.a[j] = Rat(1);
                    cn.b = Rat(0);
                    cn.rel = LinCon::EQ;
                    rc.push_back(std::move(cn));
                }
                LinCon unit;
                unit.a.assign(m, Rat(0));
                unit.a[i] = Rat(1);
                unit.b = Rat(sign);
                unit.rel = LinCon::EQ;
                rc.push_back(std::move(unit));
                if (feasible(rc, m)) bounded_fibers = false;
            }
        }
        if (!bounded_fibers) continue;

        // kernel directions of the candidate
        ZMat kdirs;
        {
            const ZMat& lat = cand.direction_lattice();
            int d = (int)lat.size();
            ZMat mm((size_t)s, ZVec(d, 0));
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < d; ++j) mm[i][j] = lat[j][i];
            for (const auto& cc : integer_kernel(mm, d)) {
                ZVec u(m, 0);
                for (int j = 0; j < d; ++j)
                    for (int i = 0; i < m; ++i) u[i] += cc[j] * lat[j][i];
                kdirs.push_back(std::move(u));
            }
        }
        if (kdirs.empty()) continue;

        // geometric facets of the candidate with their outward data
        struct CandFacet {
            Cell cell;
            ZVec normal;
            Int g;
        };
        std::vector<CandFacet> cfacets;
        ZMat orth = integer_kernel(cand.direction_lattice(), m);
        for (auto& f : cand.facet_cells()) {
            ZMat rows = f.direction_lattice();
            for (const auto& r : orth) rows.push_back(r);
            ZMat nk = integer_kernel(rows, m);
            ZVec n = nk[0];
            if (zq_dot(n, cand.interior_point()) > zq_dot(n, f.interior_point()))
                for (auto& x : n) x = -x;
            Int g = 0;
            for (const auto& b : cand.direction_lattice()) g = gcd(g, z_dot(b, n));
            if (g < 0) g = -g;
            cfacets.push_back({std::move(f), std::move(n), std::move(g)});
        }

        for (const auto& u : kdirs) {
            WeylVector vec(k.size(), WeylElement(s));
            bool ok = true;
            for (const auto& cf : cfacets) {
                Rat lam = Rat(z_dot(u, cf.normal), cf.g);
                if (lam.is_zero()) continue;
                int idx = -1;
                for (int i = 0; i < (int)k.size(); ++i)
                    if (k.cell(i).same_set(cf.cell)) idx = i;
                if (idx < 0) {
                    ok = false;
                    break;
                }
                vec[idx] += WeylElement::constant(s, lam);
            }
            if (!ok || weylvec_zero(vec)) continue;
            if (rel_seen.insert(existing_key(vec)).second)
                extra.push_back({5, -1, std::move(vec)});
        }
    }

    std::vector<DirRelation> rels = base.relations();
    for (auto& e : extra) rels.push_back(std::move(e));
    return DirImagePresentation(base.complex_ptr(), s, base.generator_cells(), std::move(rels),
                                false);
}

} // namespace charmod
