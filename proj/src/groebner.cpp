#include "charmod/groebner.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "charmod/errors.hpp"

namespace charmod {

int ModuleOrder::cmp(const ModMono& a, const ModMono& b) const {
    if (!comp_rank.empty()) {
        int ra = comp_rank[a.comp], rb = comp_rank[b.comp];
        if (ra != rb) return ra < rb ? -1 : 1;
    }
    int c = term.cmp(a.e, b.e);
    if (c != 0) return c;
    if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1; // lower index larger
    return 0;
}

bool weylvec_zero(const WeylVector& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

WeylVector weylvec_sub(WeylVector a, const WeylVector& b) {
    assert(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

WeylVector weylvec_scaled(const WeylVector& a, const Rat& c) {
    WeylVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i].scaled(c);
    return r;
}

WeylVector weylvec_mul(const WeylElement& p, const WeylVector& v) {
    WeylVector r(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        r[i] = v[i].is_zero() ? v[i] : multiply(p, v[i]);
    return r;
}

namespace {

struct Entry {
    WeylVector vec;
    ModMono lm;
    // stored monic: leading coefficient 1
};

ModMono leading_monomial(const WeylVector& v, const ModuleOrder& ord) {
    ModMono best;
    best.comp = -1;
    for (int c = 0; c < (int)v.size(); ++c) {
        for (const auto& [e, k] : v[c].terms()) {
            ModMono m{c, e};
            if (best.comp < 0 || ord.cmp(m, best) > 0) best = m;
        }
    }
    return best;
}

Rat coeff_of(const WeylVector& v, const ModMono& m) {
    auto it = v[m.comp].terms().find(m.e);
    return it == v[m.comp].terms().end() ? Rat(0) : it->second;
}

bool divides(const Expo& a, const Expo& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Entry make_entry(WeylVector v, const ModuleOrder& ord) {
    Entry e;
    e.lm = leading_monomial(v, ord);
    Rat lc = coeff_of(v, e.lm);
    e.vec = weylvec_scaled(v, Rat(1) / lc);
    return e;
}

// Working form of a vector during reduction: all terms in one ordered map.
struct Work {
    struct Cmp {
        const ModuleOrder* ord;
        bool operator()(const ModMono& a, const ModMono& b) const {
            return ord->cmp(a, b) > 0; // descending
        }
    };
    std::map<ModMono, Rat, Cmp> terms;

    explicit Work(const ModuleOrder& ord) : terms(Cmp{&ord}) {}

    void load(const WeylVector& v) {
        for (int c = 0; c < (int)v.size(); ++c)
            for (const auto& [e, k] : v[c].terms()) terms.emplace(ModMono{c, e}, k);
    }

    void add(int comp, const WeylElement& p, const Rat& scale) {
        for (const auto& [e, k] : p.terms()) {
            ModMono m{comp, e};
            auto it = terms.find(m);
            if (it == terms.end()) {
                Rat v = k * scale;
                if (!v.is_zero()) terms.emplace(std::move(m), std::move(v));
            } else {
                it->second += k * scale;
                if (it->second.is_zero()) terms.erase(it);
            }
        }
    }
};

WeylVector full_reduce(const WeylVector& v, const std::vector<Entry>& basis,
                       const ModuleOrder& ord, int m) {
    Work work(ord);
    work.load(v);
    WeylVector out((size_t)v.size(), WeylElement(m));
    while (!work.terms.empty()) {
        auto it = work.terms.begin();
        ModMono mono = it->first;
        Rat c = it->second;
        const Entry* red = nullptr;
        for (const auto& g : basis) {
            if (g.lm.comp == mono.comp && divides(g.lm.e, mono.e)) {
                red = &g;
                break;
            }
        }
        if (!red) {
            out[mono.comp].add_term(mono.e, c);
            work.terms.erase(it);
            continue;
        }
        Expo u(mono.e.size());
        for (size_t i = 0; i < u.size(); ++i) u[i] = mono.e[i] - red->lm.e[i];
        WeylElement umon = WeylElement::monomial(m, u, Rat(1));
        for (int comp = 0; comp < (int)out.size(); ++comp) {
            if (red->vec[comp].is_zero()) continue;
            work.add(comp, multiply(umon, red->vec[comp]), -c);
        }
        // the leading term cancels exactly; numerical drift impossible
        assert(work.terms.find(mono) == work.terms.end());
    }
    return out;
}

std::vector<WeylVector> buchberger(const std::vector<WeylVector>& gens, int m, int rank,
                                   const ModuleOrder& ord) {
    std::vector<Entry> basis;
    for (const auto& g : gens) {
        if (weylvec_zero(g)) continue;
        basis.push_back(make_entry(g, ord));
    }

    struct Pair {
        unsigned deg;
        int i, j;
    };
    auto pair_less = [](const Pair& a, const Pair& b) {
        if (a.deg != b.deg) return a.deg < b.deg;
        if (a.j != b.j) return a.j < b.j;
        return a.i < b.i;
    };
    std::vector<Pair> pairs;
    auto push_pairs = [&](int j) {
        for (int i = 0; i < j; ++i) {
            if (basis[i].lm.comp != basis[j].lm.comp) continue;
            Expo lcm(basis[i].lm.e.size());
            for (size_t k = 0; k < lcm.size(); ++k)
                lcm[k] = std::max(basis[i].lm.e[k], basis[j].lm.e[k]);
            pairs.push_back({expo_deg(lcm), i, j});
        }
        std::sort(pairs.begin(), pairs.end(), pair_less);
    };
    for (int j = 0; j < (int)basis.size(); ++j) push_pairs(j);

    while (!pairs.empty()) {
        Pair pr = pairs.front();
        pairs.erase(pairs.begin());
        const Entry& f = basis[pr.i];
        const Entry& g = basis[pr.j];
        Expo lcm(f.lm.e.size());
        for (size_t k = 0; k < lcm.size(); ++k) lcm[k] = std::max(f.lm.e[k], g.lm.e[k]);
        Expo uf(lcm.size()), ug(lcm.size());
        for (size_t k = 0; k < lcm.size(); ++k) {
            uf[k] = lcm[k] - f.lm.e[k];
            ug[k] = lcm[k] - g.lm.e[k];
        }
        WeylVector s = weylvec_sub(weylvec_mul(WeylElement::monomial(m, uf, Rat(1)), f.vec),
                                   weylvec_mul(WeylElement::monomial(m, ug, Rat(1)), g.vec));
        WeylVector r = full_reduce(s, basis, ord, m);
        if (!weylvec_zero(r)) {
            basis.push_back(make_entry(std::move(r), ord));
            push_pairs((int)basis.size() - 1);
        }
    }

    // reduced basis: minimal leading monomials, tails fully reduced, monic
    std::vector<int> keep;
    for (int i = 0; i < (int)basis.size(); ++i) {
        bool redundant = false;
        for (int j = 0; j < (int)basis.size(); ++j) {
            if (i == j) continue;
            if (basis[j].lm.comp != basis[i].lm.comp) continue;
            if (!divides(basis[j].lm.e, basis[i].lm.e)) continue;
            if (basis[j].lm.e == basis[i].lm.e && j > i) continue;
            redundant = true;
            break;
        }
        if (!redundant) keep.push_back(i);
    }
    std::vector<Entry> minimal;
    for (int i : keep) minimal.push_back(basis[i]);

    std::vector<WeylVector> result;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Entry> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        WeylVector r = full_reduce(minimal[i].vec, others, ord, m);
        if (!weylvec_zero(r)) result.push_back(make_entry(std::move(r), ord).vec);
    }
    std::sort(result.begin(), result.end(), [&](const WeylVector& a, const WeylVector& b) {
        return ord.cmp(leading_monomial(a, ord), leading_monomial(b, ord)) < 0;
    });
    return result;
}

ModuleOrder ideal_order(const TermOrder& t) {
    ModuleOrder o;
    o.term = t;
    o.comp_rank = {0};
    return o;
}

std::vector<WeylVector> wrap(const std::vector<WeylElement>& gens) {
    std::vector<WeylVector> v;
    for (const auto& g : gens) v.push_back(WeylVector{g});
    return v;
}

std::vector<WeylElement> unwrap(const std::vector<WeylVector>& gens) {
    std::vector<WeylElement> v;
    for (const auto& g : gens) v.push_back(g[0]);
    return v;
}

} // namespace

LeftIdeal::LeftIdeal(int m, std::vector<WeylElement> gens, TermOrder order)
    : m_(m), gens_(std::move(gens)), order_(order) {}

const std::vector<WeylElement>& LeftIdeal::groebner_basis() const {
    if (!gb_) gb_ = unwrap(buchberger(wrap(gens_), m_, 1, ideal_order(order_)));
    return *gb_;
}

bool LeftIdeal::contains(const WeylElement& p) const {
    return reduce(p, groebner_basis(), order_).is_zero();
}

bool LeftIdeal::equals(const LeftIdeal& other) const {
    for (const auto& g : other.generators())
        if (!contains(g)) return false;
    for (const auto& g : generators())
        if (!other.contains(g)) return false;
    return true;
}

FreeSubmodule::FreeSubmodule(int m, int rank, std::vector<WeylVector> gens, ModuleOrder order)
    : m_(m), rank_(rank), gens_(std::move(gens)), order_(std::move(order)) {
    for (const auto& g : gens_) assert((int)g.size() == rank_);
}

const std::vector<WeylVector>& FreeSubmodule::groebner_basis() const {
    if (!gb_) gb_ = buchberger(gens_, m_, rank_, order_);
    return *gb_;
}

bool FreeSubmodule::contains(const WeylVector& v) const {
    return weylvec_zero(reduce(v, groebner_basis(), order_));
}

WeylElement reduce(const WeylElement& p, const std::vector<WeylElement>& gb,
                   const TermOrder& order) {
    WeylVector r = reduce(WeylVector{p}, wrap(gb), ideal_order(order));
    return r[0];
}

WeylVector reduce(const WeylVector& v, const std::vector<WeylVector>& gb,
                  const ModuleOrder& order) {
    int m = 0;
    for (const auto& c : v)
        if (c.vars()) m = c.vars();
    for (const auto& g : gb)
        for (const auto& c : g)
            if (c.vars()) m = c.vars();
    std::vector<Entry> basis;
    for (const auto& g : gb)
        if (!weylvec_zero(g)) basis.push_back(make_entry(g, order));
    return full_reduce(v, basis, order, m);
}

LeftIdeal ideal_intersection(const LeftIdeal& i, const LeftIdeal& j) {
    if (i.vars() != j.vars()) throw DimensionMismatch("intersecting ideals over different m");
    int m = i.vars();
    int mt = m + 1; // the central parameter is x_{m+1}; d_{m+1} never occurs
    WeylElement t = WeylElement::variable(mt, m);
    WeylElement one_minus_t = WeylElement::constant(mt, Rat(1)) - t;
    std::vector<WeylElement> gens;
    for (const auto& g : i.generators()) gens.push_back(multiply(t, g.embedded(mt)));
    for (const auto& g : j.generators()) gens.push_back(multiply(one_minus_t, g.embedded(mt)));
    TermOrder elim = TermOrder::block_elim({m, 2 * mt - 1});
    LeftIdeal big(mt, std::move(gens), elim);
    std::vector<WeylElement> out;
    for (const auto& g : big.groebner_basis()) {
        bool t_free = true;
        for (const auto& [e, c] : g.terms())
            if (e[m] != 0 || e[2 * mt - 1] != 0) t_free = false;
        if (t_free) out.push_back(g.restricted(m));
    }
    return LeftIdeal(m, std::move(out), i.order());
}

} // namespace charmod
