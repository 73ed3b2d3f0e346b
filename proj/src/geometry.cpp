#include "charmod/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>
#include <sstream>

#include "charmod/errors.hpp"

namespace charmod {

namespace {

LinCon to_con(const HalfSpace& h, LinCon::Rel rel) {
    LinCon c;
    c.a = z_to_q(h.normal);
    c.b = h.offset;
    c.rel = rel;
    return c;
}

HalfSpace normalize_halfspace(const QVec& normal, const Rat& offset) {
    ZVec z = primitive_integer(normal);
    Rat scale;
    for (size_t i = 0; i < normal.size(); ++i) {
        if (!normal[i].is_zero()) {
            scale = Rat(z[i]) / normal[i];
            break;
        }
    }
    return HalfSpace{std::move(z), offset * scale};
}

// Reduce the row (n | d) modulo the hull rows (E | e), which are kept in
// rational rref form, then scale primitive. Canonicalizes inequality
// normals of lower-dimensional cells.
HalfSpace reduce_mod_hull(QVec n, Rat d, const QMat& hull_rref, const std::vector<int>& pivots) {
    for (size_t r = 0; r < pivots.size(); ++r) {
        int p = pivots[r];
        if (n[p].is_zero()) continue;
        Rat f = n[p];
        for (size_t j = 0; j < n.size(); ++j) n[j] -= f * hull_rref[r][j];
        d -= f * hull_rref[r][n.size()];
    }
    return normalize_halfspace(n, d);
}

} // namespace

Cell::Cell(std::string id, int ambient, std::vector<HalfSpace> ineqs,
           std::vector<HalfSpace> eqs)
    : id_(std::move(id)), ambient_(ambient) {
    // 1. feasibility
    std::vector<LinCon> cons;
    for (const auto& h : ineqs) cons.push_back(to_con(h, LinCon::LE));
    for (const auto& h : eqs) cons.push_back(to_con(h, LinCon::EQ));
    if (!feasible(cons, ambient_)) throw EmptyCell("cell " + id_ + " is empty");

    // 2. implicit equalities
    std::vector<HalfSpace> open;
    for (size_t i = 0; i < ineqs.size(); ++i) {
        std::vector<LinCon> test = cons;
        for (size_t j = 0; j < ineqs.size(); ++j)
            if (j == i) test[j].rel = LinCon::LT;
        if (feasible(test, ambient_)) {
            open.push_back(ineqs[i]);
        } else {
            eqs.push_back(ineqs[i]);
        }
    }

    // 3. canonical hull: rational rref of the equality rows
    QMat hull;
    for (const auto& h : eqs) {
        QVec row = z_to_q(h.normal);
        row.push_back(h.offset);
        hull.push_back(std::move(row));
    }
    std::vector<int> pivots;
    if (!hull.empty()) {
        pivots = rref(hull);
        while (!hull.empty()) { // drop zero rows
            bool zero = true;
            for (const auto& x : hull.back())
                if (!x.is_zero()) zero = false;
            if (!zero) break;
            hull.pop_back();
        }
    }
    // a pivot in the offset column would mean 0 = 1, impossible after the
    // feasibility check
    eqs_.clear();
    for (const auto& row : hull) {
        QVec n(row.begin(), row.end() - 1);
        eqs_.push_back(normalize_halfspace(n, row.back()));
    }

    // 4. canonical inequalities: reduce modulo hull, dedupe, drop redundant
    std::vector<HalfSpace> reduced;
    for (const auto& h : open) {
        HalfSpace r = reduce_mod_hull(z_to_q(h.normal), h.offset, hull, pivots);
        bool zero = true;
        for (const auto& x : r.normal)
            if (x != 0) zero = false;
        if (zero) continue; // trivially valid
        reduced.push_back(std::move(r));
    }
    std::sort(reduced.begin(), reduced.end());
    reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
    // drop dominated copies of the same normal (keep tightest offset)
    {
        std::vector<HalfSpace> tight;
        for (size_t i = 0; i < reduced.size(); ++i) {
            if (!tight.empty() && tight.back().normal == reduced[i].normal) continue;
            tight.push_back(reduced[i]);
        }
        reduced = std::move(tight);
    }
    // greedy redundancy elimination (irredundant inequalities are facet
    // defining, hence canonical after the hull reduction above)
    std::vector<bool> dropped(reduced.size(), false);
    for (size_t i = 0; i < reduced.size(); ++i) {
        std::vector<LinCon> test;
        for (const auto& h : eqs_) test.push_back(to_con(h, LinCon::EQ));
        for (size_t j = 0; j < reduced.size(); ++j) {
            if (dropped[j] || j == i) continue;
            test.push_back(to_con(reduced[j], LinCon::LE));
        }
        // violate i
        LinCon v;
        v.a = z_to_q(reduced[i].normal);
        for (auto& x : v.a) x = -x;
        v.b = -reduced[i].offset;
        v.rel = LinCon::LT;
        test.push_back(v);
        if (!feasible(test, ambient_)) dropped[i] = true;
    }
    for (size_t i = 0; i < reduced.size(); ++i)
        if (!dropped[i]) ineqs_.push_back(reduced[i]);

    // 5. dimension and direction lattice
    ZMat eq_rows;
    for (const auto& h : eqs_) eq_rows.push_back(h.normal);
    lattice_ = integer_kernel(eq_rows, ambient_);
    dim_ = (int)lattice_.size();

    // 6. relative interior point
    auto p = find_point(constraints(true), ambient_);
    assert(p.has_value());
    point_ = *p;

    // 7. canonical signature
    std::ostringstream os;
    os << ambient_ << ";";
    for (const auto& h : eqs_) {
        for (const auto& x : h.normal) os << x.get_str() << ",";
        os << "=" << h.offset.str() << ";";
    }
    os << "|";
    for (const auto& h : ineqs_) {
        for (const auto& x : h.normal) os << x.get_str() << ",";
        os << "<" << h.offset.str() << ";";
    }
    signature_ = os.str();
}

std::vector<LinCon> Cell::constraints(bool strict_ineqs) const {
    std::vector<LinCon> cons;
    for (const auto& h : eqs_) cons.push_back(to_con(h, LinCon::EQ));
    for (const auto& h : ineqs_)
        cons.push_back(to_con(h, strict_ineqs ? LinCon::LT : LinCon::LE));
    return cons;
}

bool Cell::contains_point(const QVec& x) const {
    for (const auto& h : eqs_)
        if (zq_dot(h.normal, x) != h.offset) return false;
    for (const auto& h : ineqs_)
        if (zq_dot(h.normal, x) > h.offset) return false;
    return true;
}

bool Cell::contains_cell(const Cell& other) const {
    // every constraint of this must be valid on other
    for (const auto& h : eqs_) {
        for (int sign = 0; sign < 2; ++sign) {
            std::vector<LinCon> test = other.constraints();
            LinCon v;
            v.a = z_to_q(h.normal);
            v.b = h.offset;
            v.rel = LinCon::LT;
            if (sign) {
                for (auto& x : v.a) x = -x;
                v.b = -v.b;
            }
            test.push_back(v);
            if (feasible(test, ambient_)) return false;
        }
    }
    for (const auto& h : ineqs_) {
        std::vector<LinCon> test = other.constraints();
        LinCon v;
        v.a = z_to_q(h.normal);
        for (auto& x : v.a) x = -x;
        v.b = -h.offset;
        v.rel = LinCon::LT;
        test.push_back(v);
        if (feasible(test, ambient_)) return false;
    }
    return true;
}

bool Cell::same_set(const Cell& other) const { return signature_ == other.signature_; }

bool Cell::is_bounded() const {
    // recession cone {d : eq d = 0, ineq d <= 0} must be {0}
    for (int i = 0; i < ambient_; ++i) {
        for (int sign = -1; sign <= 1; sign += 2) {
            std::vector<LinCon> cons;
            for (const auto& h : eqs_) {
                LinCon c = to_con(h, LinCon::EQ);
                c.b = Rat(0);
                cons.push_back(c);
            }
            for (const auto& h : ineqs_) {
                LinCon c = to_con(h, LinCon::LE);
                c.b = Rat(0);
                cons.push_back(c);
            }
            LinCon unit;
            unit.a.assign(ambient_, Rat(0));
            unit.a[i] = Rat(1);
            unit.b = Rat(sign);
            unit.rel = LinCon::EQ;
            cons.push_back(unit);
            if (feasible(cons, ambient_)) return false;
        }
    }
    return true;
}

std::vector<ZVec> Cell::recession_rays() const {
    // recession cone in H-form
    std::vector<HalfSpace> rineq, req;
    for (const auto& h : ineqs_) rineq.push_back({h.normal, Rat(0)});
    for (const auto& h : eqs_) req.push_back({h.normal, Rat(0)});
    Cell rc("rc", ambient_, rineq, req);
    std::vector<ZVec> rays;
    std::set<ZVec> seen;
    // extreme rays = 1-faces of the recession cone
    for (const auto& f : rc.faces()) {
        if (f.dim() != 1) continue;
        ZVec dir = f.direction_lattice()[0];
        // orient away from the origin
        QVec probe(ambient_, Rat(0));
        Rat t;
        // the 1-face is {t * dir : t in some interval}; pick its interior point
        const QVec& p = f.interior_point();
        bool neg = false;
        for (int i = 0; i < ambient_; ++i) {
            if (p[i].is_zero()) continue;
            neg = (p[i].sign() < 0) != (dir[i] < 0);
            break;
        }
        if (neg)
            for (auto& x : dir) x = -x;
        if (seen.insert(dir).second) rays.push_back(dir);
    }
    return rays;
}

ZMat Cell::lineality() const {
    ZMat rows;
    for (const auto& h : eqs_) rows.push_back(h.normal);
    for (const auto& h : ineqs_) rows.push_back(h.normal);
    return integer_kernel(rows, ambient_);
}

const std::vector<QVec>& Cell::vertices() const {
    if (vertices_) return *vertices_;
    std::vector<QVec> verts;
    std::set<std::string> seen;
    int need = dim_;
    size_t k = ineqs_.size();
    // choose `need` inequalities to activate
    std::vector<int> idx(need);
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == need) {
            QMat a;
            QVec b;
            for (const auto& h : eqs_) {
                a.push_back(z_to_q(h.normal));
                b.push_back(h.offset);
            }
            for (int i = 0; i < need; ++i) {
                a.push_back(z_to_q(ineqs_[idx[i]].normal));
                b.push_back(ineqs_[idx[i]].offset);
            }
            if (rank(a) != ambient_) return;
            auto x = solve(a, b);
            if (!x || !contains_point(*x)) return;
            std::string key;
            for (const auto& c : *x) key += c.str() + ",";
            if (seen.insert(key).second) verts.push_back(*x);
            return;
        }
        for (int i = start; i < (int)k; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    if (need <= (int)k || need == 0) rec(0, 0);
    std::sort(verts.begin(), verts.end(), [](const QVec& a, const QVec& b) {
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    });
    vertices_ = std::move(verts);
    return *vertices_;
}

std::vector<Cell> Cell::faces() const {
    std::vector<Cell> out;
    std::set<std::string> seen;
    size_t k = ineqs_.size();
    if (k > 20) throw ConstructionFailed("too many inequalities for face enumeration");
    for (size_t mask = 0; mask < (size_t(1) << k); ++mask) {
        std::vector<HalfSpace> fineq, feq = eqs_;
        for (size_t i = 0; i < k; ++i) {
            if (mask & (size_t(1) << i))
                feq.push_back(ineqs_[i]);
            else
                fineq.push_back(ineqs_[i]);
        }
        try {
            Cell f(id_ + "/" + std::to_string(mask), ambient_, fineq, feq);
            if (seen.insert(f.signature()).second) out.push_back(std::move(f));
        } catch (const EmptyCell&) {
            // empty faces are implicit
        }
    }
    return out;
}

std::vector<Cell> Cell::facet_cells() const {
    std::vector<Cell> out;
    for (auto& f : faces())
        if (f.dim() == dim_ - 1) out.push_back(std::move(f));
    return out;
}

bool is_face_of(const Cell& face, const Cell& cell) {
    if (!cell.contains_cell(face)) return false;
    // activate exactly the constraints of `cell` tight on `face`
    std::vector<HalfSpace> act_eqs = cell.eqs(), rest;
    for (const auto& h : cell.ineqs()) {
        std::vector<LinCon> test = face.constraints();
        LinCon v;
        v.a = z_to_q(h.normal);
        v.b = h.offset;
        v.rel = LinCon::LT;
        test.push_back(v);
        if (!feasible(test, face.ambient())) {
            act_eqs.push_back(h); // tight on all of face
        } else {
            rest.push_back(h);
        }
    }
    try {
        Cell f("t", cell.ambient(), rest, act_eqs);
        return f.same_set(face);
    } catch (const EmptyCell&) {
        return false;
    }
}

int CellComplex::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw NotInComplex("no cell with id " + id);
    return it->second;
}

bool CellComplex::has_cell(const std::string& id) const { return index_.count(id) > 0; }

bool CellComplex::is_closed() const {
    for (const auto& c : cells_) {
        if (c.dim() == 0) continue;
        for (const auto& f : c.facet_cells()) {
            bool found = false;
            for (const auto& other : cells_)
                if (other.dim() == c.dim() - 1 && other.same_set(f)) found = true;
            if (!found) return false;
        }
    }
    return true;
}

std::vector<int> CellComplex::cells_of_dim(int d) const {
    std::vector<int> out;
    for (int i = 0; i < (int)cells_.size(); ++i)
        if (cells_[i].dim() == d) out.push_back(i);
    return out;
}

int CellComplex::top_dim() const {
    int d = -1;
    for (const auto& c : cells_) d = std::max(d, c.dim());
    return d;
}

CellComplex build_complex(std::vector<Cell> cells, bool generate_faces) {
    CellComplex k;
    if (cells.empty()) return k;
    k.ambient_ = cells[0].ambient();
    for (const auto& c : cells)
        if (c.ambient() != k.ambient_)
            throw DimensionMismatch("cells with different ambient dimensions");

    std::vector<Cell> all;
    std::set<std::string> seen;
    for (auto& c : cells) {
        if (!seen.insert(c.signature()).second)
            throw NonFaceIntersection("duplicate cell " + c.id());
        all.push_back(std::move(c));
    }
    if (generate_faces) {
        std::vector<Cell> generated;
        for (const auto& c : all) {
            for (auto& f : c.faces()) {
                if (seen.count(f.signature())) continue;
                bool dup = false;
                for (const auto& g : generated)
                    if (g.same_set(f)) dup = true;
                if (!dup) generated.push_back(std::move(f));
            }
        }
        // deterministic ids by (dim, signature)
        std::sort(generated.begin(), generated.end(), [](const Cell& a, const Cell& b) {
            if (a.dim() != b.dim()) return a.dim() < b.dim();
            return a.signature() < b.signature();
        });
        std::map<int, int> counter;
        for (auto& f : generated) {
            int n = counter[f.dim()]++;
            std::string id = std::to_string(f.dim()) + "f" + (n < 10 ? "0" : "") +
                             std::to_string(n);
            while (seen.count(id) ||
                   std::any_of(all.begin(), all.end(),
                               [&](const Cell& c) { return c.id() == id; }))
                id += "x";
            f.set_id(id);
            seen.insert(f.signature());
            all.push_back(std::move(f));
        }
    }

    std::sort(all.begin(), all.end(), [](const Cell& a, const Cell& b) {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        return a.id() < b.id();
    });
    for (int i = 0; i < (int)all.size(); ++i) {
        if (k.index_.count(all[i].id()))
            throw NonFaceIntersection("duplicate cell id " + all[i].id());
        k.index_[all[i].id()] = i;
    }
    k.cells_ = std::move(all);

    // pairwise face condition
    for (size_t i = 0; i < k.cells_.size(); ++i) {
        for (size_t j = i + 1; j < k.cells_.size(); ++j) {
            const Cell& a = k.cells_[i];
            const Cell& b = k.cells_[j];
            std::vector<HalfSpace> in = a.ineqs(), eq = a.eqs();
            in.insert(in.end(), b.ineqs().begin(), b.ineqs().end());
            eq.insert(eq.end(), b.eqs().begin(), b.eqs().end());
            std::optional<Cell> meet;
            try {
                meet.emplace("m", k.ambient_, in, eq);
            } catch (const EmptyCell&) {
                continue;
            }
            if (!is_face_of(*meet, a) || !is_face_of(*meet, b))
                throw NonFaceIntersection("cells " + a.id() + " and " + b.id() +
                                          " meet in a non-face");
            bool listed = false;
            for (const auto& c : k.cells_)
                if (c.same_set(*meet)) listed = true;
            if (!listed)
                throw NonFaceIntersection("intersection of " + a.id() + " and " + b.id() +
                                          " is not a cell of the complex");
        }
    }

    // facet incidence with outward primitive normals
    k.facets_.assign(k.cells_.size(), {});
    for (size_t si = 0; si < k.cells_.size(); ++si) {
        const Cell& sigma = k.cells_[si];
        if (sigma.dim() == 0) continue;
        ZMat orth_sigma;
        {
            ZMat rows = sigma.direction_lattice();
            orth_sigma = integer_kernel(rows, k.ambient_);
        }
        for (size_t ti = 0; ti < k.cells_.size(); ++ti) {
            if (ti == si) continue;
            const Cell& tau = k.cells_[ti];
            if (tau.dim() != sigma.dim() - 1) continue;
            if (!sigma.contains_cell(tau)) continue;
            if (!is_face_of(tau, sigma)) continue;
            // primitive normal in span(sigma) orthogonal to tau
            ZMat rows = tau.direction_lattice();
            for (const auto& r : orth_sigma) rows.push_back(r);
            ZMat nk = integer_kernel(rows, k.ambient_);
            assert(nk.size() == 1);
            ZVec n = nk[0];
            Rat d = zq_dot(n, tau.interior_point());
            if (zq_dot(n, sigma.interior_point()) > d) {
                for (auto& x : n) x = -x;
                d = -d;
            }
            Int g = 0;
            for (const auto& b : sigma.direction_lattice()) g = gcd(g, z_dot(b, n));
            if (g < 0) g = -g;
            assert(g != 0);
            k.facets_[si].push_back(FacetData{(int)ti, std::move(n), d, g});
        }
    }
    return k;
}

CellComplex hat_complex(const Cell& c) { return build_complex({c}, true); }

std::vector<std::pair<int, HalfSpace>> outward_normals(const CellComplex& k,
                                                       const std::string& cell_id) {
    int i = k.index_of(cell_id);
    if (k.cell(i).dim() == 0)
        throw ZeroDimensionalCell("outward normals of the 0-dimensional cell " + cell_id);
    std::vector<std::pair<int, HalfSpace>> out;
    for (const auto& f : k.facets_of(i))
        out.push_back({f.facet_index, HalfSpace{f.normal, f.offset}});
    return out;
}

Cone vertex_cone_at(const Cell& sigma, const QVec& apex) {
    if (!sigma.contains_point(apex)) throw NotAVertex("apex not in cell");
    std::vector<HalfSpace> act;
    for (const auto& h : sigma.ineqs())
        if (zq_dot(h.normal, apex) == h.offset) act.push_back(h);
    Cell c(sigma.id() + "@cone", sigma.ambient(), act, sigma.eqs());
    return Cone{apex, std::move(c)};
}

Cone vertex_cone(const CellComplex& k, const std::string& sigma, const std::string& p) {
    const Cell& s = k.cell(sigma);
    const Cell& v = k.cell(p);
    if (v.dim() != 0) throw NotAVertex(p + " is not a vertex");
    const QVec apex = v.interior_point();
    if (!s.contains_point(apex)) throw NotAVertex(p + " is not a vertex of " + sigma);
    return vertex_cone_at(s, apex);
}

int image_dimension(const Cell& sigma, int s) {
    QMat proj;
    for (const auto& row : sigma.direction_lattice()) {
        QVec p(s);
        for (int i = 0; i < s; ++i) p[i] = Rat(row[i]);
        proj.push_back(std::move(p));
    }
    return rank(proj);
}

int fiber_dimension(const Cell& sigma, int s) { return sigma.dim() - image_dimension(sigma, s); }

int fiber_dimension(const CellComplex& k, const std::string& sigma, int s) {
    if (s <= 0 || s > k.ambient()) throw BadProjection("projection dimension out of range");
    return fiber_dimension(k.cell(k.index_of(sigma)), s);
}

std::vector<std::pair<std::string, std::string>> free_pairs(const CellComplex& k, int s) {
    // count, for every cell tau, the cells having tau as a facet
    std::vector<int> count(k.size(), 0);
    for (size_t i = 0; i < k.size(); ++i)
        for (const auto& f : k.facets_of((int)i)) count[f.facet_index]++;
    std::vector<std::pair<std::string, std::string>> out;
    for (size_t i = 0; i < k.size(); ++i) {
        for (const auto& f : k.facets_of((int)i)) {
            if (count[f.facet_index] != 1) continue;
            if (s >= 0) {
                if (fiber_dimension(k.cell((int)i), s) != 1) continue;
                if (fiber_dimension(k.cell(f.facet_index), s) != 0) continue;
            }
            out.push_back({k.cell((int)i).id(), k.cell(f.facet_index).id()});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

CellComplex collapse(const CellComplex& k, const std::string& sigma, const std::string& tau) {
    auto pairs = free_pairs(k, -1);
    if (std::find(pairs.begin(), pairs.end(), std::make_pair(sigma, tau)) == pairs.end())
        throw NotFreePair("(" + sigma + ", " + tau + ") is not a free pair");
    std::vector<Cell> rest;
    for (const auto& c : k.cells())
        if (c.id() != sigma && c.id() != tau) rest.push_back(c);
    return build_complex(std::move(rest), false);
}

std::optional<Cell> fiber_polytope(const Cell& sigma, int s, const QVec& x) {
    if (s <= 0 || s >= sigma.ambient()) throw BadProjection("projection dimension out of range");
    if ((int)x.size() != s) throw BadProjection("sample point has wrong dimension");
    int mz = sigma.ambient() - s;
    auto substitute = [&](const HalfSpace& h) {
        QVec n(mz);
        for (int i = 0; i < mz; ++i) n[i] = Rat(h.normal[s + i]);
        Rat b = h.offset;
        for (int i = 0; i < s; ++i) b -= Rat(h.normal[i]) * x[i];
        return std::make_pair(n, b);
    };
    std::vector<HalfSpace> in, eq;
    for (const auto& h : sigma.ineqs()) {
        auto [n, b] = substitute(h);
        bool zero = std::all_of(n.begin(), n.end(), [](const Rat& c) { return c.is_zero(); });
        if (zero) {
            if (b.sign() < 0) return std::nullopt;
            continue;
        }
        in.push_back(normalize_halfspace(n, b));
    }
    for (const auto& h : sigma.eqs()) {
        auto [n, b] = substitute(h);
        bool zero = std::all_of(n.begin(), n.end(), [](const Rat& c) { return c.is_zero(); });
        if (zero) {
            if (!b.is_zero()) return std::nullopt;
            continue;
        }
        eq.push_back(normalize_halfspace(n, b));
    }
    try {
        return Cell(sigma.id() + "@fiber", mz, in, eq);
    } catch (const EmptyCell&) {
        return std::nullopt;
    }
}

namespace {

// Sum over facet pyramids of |<N, v0> - d| / g * latvol(facet).
Rat lattice_volume_rec(const Cell& p) {
    if (p.dim() == 0) return Rat(1);
    const auto& verts = p.vertices();
    if (verts.empty()) throw Unbounded("volume of a cell without vertices");
    QVec v0 = verts[0];

    ZMat orth = integer_kernel(p.direction_lattice(), p.ambient());
    Rat total(0);
    for (const auto& f : p.facet_cells()) {
        ZMat rows = f.direction_lattice();
        for (const auto& r : orth) rows.push_back(r);
        ZMat nk = integer_kernel(rows, p.ambient());
        assert(nk.size() == 1);
        const ZVec& n = nk[0];
        Int g = 0;
        for (const auto& b : p.direction_lattice()) g = gcd(g, z_dot(b, n));
        Rat height = (zq_dot(n, v0) - zq_dot(n, f.interior_point())).abs() / Rat(g < 0 ? -g : g);
        if (height.is_zero()) continue;
        total += height * lattice_volume_rec(f);
    }
    return total / Rat(p.dim());
}

// triangulation of a bounded cell into dim-simplices, as vertex tuples
void triangulate(const Cell& p, std::vector<std::vector<QVec>>& out) {
    if (p.dim() == 0) {
        out.push_back({p.vertices()[0]});
        return;
    }
    const auto& verts = p.vertices();
    if (verts.empty()) throw Unbounded("triangulating a cell without vertices");
    QVec v0 = verts[0]; // lexicographic minimum (vertices are sorted)
    for (const auto& f : p.facet_cells()) {
        if (f.contains_point(v0)) continue;
        std::vector<std::vector<QVec>> sub;
        triangulate(f, sub);
        for (auto& s : sub) {
            s.push_back(v0);
            out.push_back(std::move(s));
        }
    }
}

} // namespace

VolumeResult volume(const Cell& p) {
    if (!p.is_bounded()) throw Unbounded("volume of an unbounded cell");
    if (p.dim() < p.ambient()) return {Rat(0), true};
    std::vector<std::vector<QVec>> simplices;
    triangulate(p, simplices);
    Rat total(0);
    Int fact;
    mpz_fac_ui(fact.get_mpz_t(), (unsigned long)p.dim());
    for (const auto& s : simplices) {
        QMat m;
        for (size_t i = 0; i + 1 < s.size(); ++i) m.push_back(q_sub(s[i], s.back()));
        total += det(m).abs();
    }
    return {total / Rat(fact), false};
}

VolumeResult volume_pyramid(const Cell& p) {
    if (!p.is_bounded()) throw Unbounded("volume of an unbounded cell");
    if (p.dim() < p.ambient()) return {Rat(0), true};
    return {lattice_volume_rec(p), false};
}

Rat lattice_volume(const Cell& p) {
    if (!p.is_bounded()) throw Unbounded("lattice volume of an unbounded cell");
    return lattice_volume_rec(p);
}

} // namespace charmod
