#include "charmod/linineq.hpp"

#include <algorithm>
#include <map>

namespace charmod {

namespace {

struct Ineq {
    QVec a;
    Rat b;
    bool strict;
};

// Scale to primitive integer normal for cheap structural dedup.
void normalize(Ineq& c) {
    ZVec z = primitive_integer(c.a);
    Rat scale;
    for (size_t i = 0; i < c.a.size(); ++i) {
        if (!c.a[i].is_zero()) {
            scale = Rat(z[i]) / c.a[i];
            break;
        }
    }
    if (scale.is_zero()) return; // zero normal, leave as is
    c.a = z_to_q(z);
    c.b *= scale;
}

bool all_zero(const QVec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

// State after substituting out equalities: x[var] = <expr, remaining> + cst.
struct Subst {
    int var;
    QVec expr;
    Rat cst;
};

// Eliminates equality constraints by pivoting; returns false if inconsistent.
bool apply_equalities(std::vector<LinCon> cons, int nvars, std::vector<Ineq>& ineqs,
                      std::vector<Subst>& substs, std::vector<int>& live_vars) {
    live_vars.clear();
    for (int i = 0; i < nvars; ++i) live_vars.push_back(i);

    std::vector<LinCon> eqs;
    for (auto& c : cons)
        if (c.rel == LinCon::EQ) eqs.push_back(c);

    for (size_t e = 0; e < eqs.size(); ++e) {
        auto& q = eqs[e];
        int pivot = -1;
        for (int v : live_vars)
            if (!q.a[v].is_zero()) {
                pivot = v;
                break;
            }
        if (pivot < 0) {
            bool zero_row = true;
            for (int i = 0; i < nvars; ++i)
                if (!q.a[i].is_zero()) zero_row = false;
            if (zero_row) {
                if (!q.b.is_zero()) return false;
                continue;
            }
            // all support already substituted: should not happen because we
            // substitute into pending equalities below
            if (!q.b.is_zero()) return false;
            continue;
        }
        // x[pivot] = (b - sum_{v != pivot} a_v x_v) / a_pivot
        Subst s;
        s.var = pivot;
        s.expr.assign(nvars, Rat(0));
        Rat inv = Rat(1) / q.a[pivot];
        for (int v = 0; v < nvars; ++v)
            if (v != pivot) s.expr[v] = -q.a[v] * inv;
        s.cst = q.b * inv;
        // substitute into remaining equalities
        for (size_t e2 = e + 1; e2 < eqs.size(); ++e2) {
            auto& r = eqs[e2];
            if (r.a[pivot].is_zero()) continue;
            Rat f = r.a[pivot];
            r.a[pivot] = Rat(0);
            for (int v = 0; v < nvars; ++v) r.a[v] += f * s.expr[v];
            r.b -= f * s.cst;
        }
        substs.push_back(s);
        live_vars.erase(std::find(live_vars.begin(), live_vars.end(), pivot));
    }

    // substitute into inequalities
    for (auto& c : cons) {
        if (c.rel == LinCon::EQ) continue;
        QVec a = c.a;
        Rat b = c.b;
        for (const auto& s : substs) {
            if (a[s.var].is_zero()) continue;
            Rat f = a[s.var];
            a[s.var] = Rat(0);
            for (int v = 0; v < (int)a.size(); ++v) a[v] += f * s.expr[v];
            b -= f * s.cst;
        }
        ineqs.push_back({std::move(a), b, c.rel == LinCon::LT});
    }
    return true;
}

struct Level {
    int var;
    std::vector<Ineq> cons; // constraints mentioning var (and only later-eliminated ones)
};

// Fourier-Motzkin elimination. Returns levels for back-substitution or
// nullopt if infeasible.
std::optional<std::vector<Level>> eliminate(std::vector<Ineq> sys, std::vector<int> vars) {
    std::vector<Level> levels;
    while (!vars.empty()) {
        int var = vars.back();
        vars.pop_back();
        std::vector<Ineq> pos, neg, rest;
        for (auto& c : sys) {
            int s = c.a[var].sign();
            if (s > 0)
                pos.push_back(std::move(c));
            else if (s < 0)
                neg.push_back(std::move(c));
            else
                rest.push_back(std::move(c));
        }
        Level lvl;
        lvl.var = var;
        for (const auto& c : pos) lvl.cons.push_back(c);
        for (const auto& c : neg) lvl.cons.push_back(c);
        std::vector<Ineq> next = std::move(rest);
        std::map<std::pair<std::vector<std::string>, bool>, Rat> seen;
        for (const auto& p : pos) {
            for (const auto& n : neg) {
                Ineq c;
                // p: a_v x_v <= bp - restp ; n gives lower bound; combine
                Rat fp = p.a[var], fn = -n.a[var];
                c.a.assign(p.a.size(), Rat(0));
                for (size_t v = 0; v < p.a.size(); ++v) c.a[v] = fn * p.a[v] + fp * n.a[v];
                c.b = fn * p.b + fp * n.b;
                c.strict = p.strict || n.strict;
                c.a[var] = Rat(0);
                if (all_zero(c.a)) {
                    if (c.b.sign() < 0 || (c.strict && c.b.is_zero())) return std::nullopt;
                    continue;
                }
                normalize(c);
                // keep only the tightest bound per normal direction
                std::vector<std::string> key;
                key.reserve(c.a.size());
                for (const auto& x : c.a) key.push_back(x.str());
                auto it = seen.find({key, c.strict});
                if (it != seen.end()) {
                    if (c.b < it->second) it->second = c.b;
                } else {
                    seen[{key, c.strict}] = c.b;
                }
            }
        }
        for (auto& [key, b] : seen) {
            Ineq c;
            c.a.resize(key.first.size());
            for (size_t i = 0; i < key.first.size(); ++i) c.a[i] = Rat::parse(key.first[i]);
            c.b = b;
            c.strict = key.second;
            next.push_back(std::move(c));
        }
        sys = std::move(next);
        levels.push_back(std::move(lvl));
    }
    // only constant constraints remain
    for (const auto& c : sys) {
        if (!all_zero(c.a)) continue; // unreachable
        if (c.b.sign() < 0 || (c.strict && c.b.is_zero())) return std::nullopt;
    }
    return levels;
}

} // namespace

bool feasible(const std::vector<LinCon>& cons, int nvars) {
    return find_point(cons, nvars).has_value();
}

std::optional<QVec> find_point(const std::vector<LinCon>& cons, int nvars) {
    std::vector<Ineq> ineqs;
    std::vector<Subst> substs;
    std::vector<int> live;
    if (!apply_equalities(cons, nvars, ineqs, substs, live)) return std::nullopt;

    auto levels = eliminate(ineqs, live);
    if (!levels) return std::nullopt;

    QVec x(nvars, Rat(0));
    // back-substitute in reverse elimination order
    for (auto it = levels->rbegin(); it != levels->rend(); ++it) {
        bool has_lo = false, has_hi = false, lo_strict = false, hi_strict = false;
        Rat lo, hi;
        for (const auto& c : it->cons) {
            Rat rest = c.b;
            for (size_t v = 0; v < c.a.size(); ++v)
                if ((int)v != it->var) rest -= c.a[v] * x[v];
            Rat bound = rest / c.a[it->var];
            if (c.a[it->var].sign() > 0) {
                if (!has_hi || bound < hi || (bound == hi && c.strict)) {
                    hi = bound;
                    hi_strict = c.strict;
                }
                has_hi = true;
            } else {
                if (!has_lo || bound > lo || (bound == lo && c.strict)) {
                    lo = bound;
                    lo_strict = c.strict;
                }
                has_lo = true;
            }
        }
        Rat val;
        if (has_lo && has_hi) {
            if (lo > hi) return std::nullopt;
            if (lo == hi) {
                if (lo_strict || hi_strict) return std::nullopt;
                val = lo;
            } else {
                val = (lo + hi) / Rat(2);
            }
        } else if (has_lo) {
            val = lo + Rat(1);
        } else if (has_hi) {
            val = hi - Rat(1);
        } else {
            val = Rat(0);
        }
        x[it->var] = val;
    }
    // resolve substituted variables in reverse order
    for (auto it = substs.rbegin(); it != substs.rend(); ++it) {
        Rat v = it->cst;
        for (size_t j = 0; j < it->expr.size(); ++j)
            if (!it->expr[j].is_zero()) v += it->expr[j] * x[j];
        x[it->var] = v;
    }
    return x;
}

} // namespace charmod
