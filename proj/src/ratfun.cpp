#include "charmod/ratfun.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "charmod/errors.hpp"

namespace charmod {

Poly Poly::constant(int m, const Rat& c) {
    Poly p(m);
    p.add_term(Expo(m, 0), c);
    return p;
}

Poly Poly::variable(int m, int i) {
    assert(i >= 0 && i < m);
    Expo e(m, 0);
    e[i] = 1;
    return monomial(m, e, Rat(1));
}

Poly Poly::monomial(int m, const Expo& e, const Rat& c) {
    Poly p(m);
    p.add_term(e, c);
    return p;
}

Poly Poly::affine(int m, const QVec& a, const Rat& c) {
    Poly p(m);
    for (int i = 0; i < m; ++i) {
        if (a[i].is_zero()) continue;
        Expo e(m, 0);
        e[i] = 1;
        p.add_term(e, a[i]);
    }
    p.add_term(Expo(m, 0), c);
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && expo_deg(terms_.begin()->first) == 0);
}

Rat Poly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    assert(is_constant());
    return terms_.begin()->second;
}

unsigned Poly::degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, expo_deg(e));
    return d;
}

unsigned Poly::degree_in(int v) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
    return d;
}

void Poly::add_term(const Expo& e, const Rat& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r(m_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    assert(m_ == o.m_ || is_zero() || o.is_zero());
    if (m_ == 0) m_ = o.m_;
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    assert(m_ == o.m_ || is_zero() || o.is_zero());
    if (m_ == 0) m_ = o.m_;
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r(std::max(a.m_, b.m_));
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Expo e(ea.size());
            for (size_t i = 0; i < ea.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Poly Poly::scaled(const Rat& c) const {
    Poly r(m_);
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, c * k);
    return r;
}

Poly Poly::derivative(int v) const {
    Poly r(m_);
    for (const auto& [e, c] : terms_) {
        if (e[v] == 0) continue;
        Expo f = e;
        f[v] -= 1;
        r.add_term(f, c * Rat((long)e[v]));
    }
    return r;
}

Rat Poly::eval(const QVec& x) const {
    Rat r;
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < m_; ++i)
            for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
        r += t;
    }
    return r;
}

std::pair<Expo, Rat> Poly::leading() const {
    assert(!terms_.empty());
    TermOrder ord = TermOrder::grevlex();
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        if (ord.cmp(it->first, best->first) > 0) best = it;
    return *best;
}

Rat Poly::make_primitive() {
    if (terms_.empty()) return Rat(1);
    Int den = 1, num = 0;
    for (const auto& [e, c] : terms_) {
        den = lcm(den, c.den());
        num = gcd(num, c.num());
    }
    Rat scale(den, num);
    if (leading().second.sign() * scale.sign() < 0) scale = -scale;
    for (auto& [e, c] : terms_) c *= scale;
    return scale;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    TermOrder ord = TermOrder::grevlex();
    std::vector<const std::pair<const Expo, Rat>*> ts;
    for (const auto& t : terms_) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(),
              [&](auto* l, auto* r) { return ord.cmp(l->first, r->first) > 0; });
    std::ostringstream os;
    bool first = true;
    for (const auto* t : ts) {
        const Rat& c = t->second;
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        std::string mono;
        for (int i = 0; i < m_; ++i) {
            if (t->first[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(i + 1);
            if (t->first[i] > 1) mono += "^" + std::to_string(t->first[i]);
        }
        Rat ac = c.abs();
        if (mono.empty()) {
            os << ac.str();
        } else if (ac == Rat(1)) {
            os << mono;
        } else {
            os << ac.str() << "*" << mono;
        }
    }
    return os.str();
}

std::optional<Poly> divide_exact(const Poly& f, const Poly& g) {
    if (g.is_zero()) return std::nullopt;
    Poly rem = f;
    Poly quot(f.vars() ? f.vars() : g.vars());
    auto [lg, cg] = g.leading();
    while (!rem.is_zero()) {
        auto [lr, cr] = rem.leading();
        Expo q(lr.size());
        for (size_t i = 0; i < lr.size(); ++i) {
            if (lr[i] < lg[i]) return std::nullopt;
            q[i] = lr[i] - lg[i];
        }
        Poly qm = Poly::monomial(rem.vars(), q, cr / cg);
        quot += qm;
        rem -= qm * g;
    }
    return quot;
}

namespace {

// View of a polynomial as univariate in variable v with Poly coefficients.
std::map<unsigned, Poly> univariatize(const Poly& f, int v) {
    std::map<unsigned, Poly> out;
    for (const auto& [e, c] : f.terms()) {
        Expo rest = e;
        unsigned k = rest[v];
        rest[v] = 0;
        auto it = out.find(k);
        if (it == out.end()) it = out.emplace(k, Poly(f.vars())).first;
        it->second.add_term(rest, c);
    }
    return out;
}

Poly deuniva(const std::map<unsigned, Poly>& u, int m, int v) {
    Poly out(m);
    for (const auto& [k, coeff] : u) {
        for (const auto& [e, c] : coeff.terms()) {
            Expo f = e;
            f[v] += k;
            out.add_term(f, c);
        }
    }
    return out;
}

Poly content_in(const Poly& f, int v);

// gcd of univariate-in-v primitive parts via pseudo-remainders.
Poly gcd_primitive_prs(Poly f, Poly g, int v) {
    while (true) {
        if (g.is_zero()) return f;
        unsigned df = f.degree_in(v), dg = g.degree_in(v);
        if (df < dg) {
            std::swap(f, g);
            continue;
        }
        if (dg == 0) {
            // g is v-free and primitive in v-coefficients: gcd of contents
            return poly_gcd(content_in(f, v), g);
        }
        // pseudo-remainder of f by g in variable v
        auto uf = univariatize(f, v);
        auto ug = univariatize(g, v);
        Poly lead_g = ug.rbegin()->second;
        Poly rem = f;
        // multiply rem so the division by g's leading coefficient is exact
        for (unsigned step = 0; step <= df - dg + 1; ++step) {
            auto ur = univariatize(rem, v);
            if (ur.empty() || ur.rbegin()->first < dg) break;
            unsigned dr = ur.rbegin()->first;
            Poly lead_r = ur.rbegin()->second;
            // rem <- lead_g * rem - lead_r * x_v^{dr-dg} * g
            Expo shift(f.vars(), 0);
            shift[v] = dr - dg;
            rem = lead_g * rem - lead_r * Poly::monomial(f.vars(), shift, Rat(1)) * g;
        }
        f = std::move(g);
        g = rem;
        if (!g.is_zero()) {
            Poly c = content_in(g, v);
            g = *divide_exact(g, c);
            g.make_primitive();
        }
    }
}

Poly content_in(const Poly& f, int v) {
    auto u = univariatize(f, v);
    Poly c(f.vars());
    for (const auto& [k, coeff] : u) c = poly_gcd(c, coeff);
    return c;
}

} // namespace

Poly poly_gcd(const Poly& f, const Poly& g) {
    if (f.is_zero()) {
        Poly r = g;
        r.make_primitive();
        return r;
    }
    if (g.is_zero()) {
        Poly r = f;
        r.make_primitive();
        return r;
    }
    int m = f.vars();
    // pick the main variable: the last one appearing in either
    int v = -1;
    for (int i = m - 1; i >= 0; --i) {
        if (f.degree_in(i) > 0 || g.degree_in(i) > 0) {
            v = i;
            break;
        }
    }
    if (v < 0) return Poly::constant(m, Rat(1)); // both constants
    Poly cf = content_in(f, v), cg = content_in(g, v);
    Poly pf = *divide_exact(f, cf), pg = *divide_exact(g, cg);
    pf.make_primitive();
    pg.make_primitive();
    Poly pp = gcd_primitive_prs(pf, pg, v);
    if (!pp.is_zero()) {
        Poly c = content_in(pp, v);
        pp = *divide_exact(pp, c);
    }
    Poly result = poly_gcd(cf, cg) * pp;
    result.make_primitive();
    return result;
}

RationalFunction::RationalFunction(const Poly& p)
    : num_(p), den_(Poly::constant(p.vars(), Rat(1))) {}

RationalFunction::RationalFunction(const Poly& num, const Poly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw Inconsistent("rational function with zero denominator");
    reduce();
}

RationalFunction RationalFunction::constant(int m, const Rat& c) {
    return RationalFunction(Poly::constant(m, c));
}

void RationalFunction::reduce() {
    if (num_.is_zero()) {
        den_ = Poly::constant(den_.vars(), Rat(1));
        return;
    }
    Poly g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = *divide_exact(num_, g);
        den_ = *divide_exact(den_, g);
    }
    Rat scale = den_.make_primitive();
    num_ = num_.scaled(scale);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw Inconsistent("division by zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::derivative(int v) const {
    // (n/d)' = (n'd - nd')/d^2
    Poly n = num_.derivative(v) * den_ - num_ * den_.derivative(v);
    return RationalFunction(n, den_ * den_);
}

std::string RationalFunction::str() const {
    if (den_.is_constant() && den_.constant_value() == Rat(1)) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RationalFunction apply_to_rational(const WeylElement& p, const RationalFunction& f) {
    if (!p.is_zero() && p.vars() != f.vars() && !f.is_zero())
        throw DimensionMismatch("operator and rational function variable counts differ");
    int m = f.vars();
    RationalFunction out = RationalFunction::constant(m, Rat(0));
    for (const auto& [e, c] : p.terms()) {
        RationalFunction t = f;
        // normal order: differentiate first, then multiply
        for (int i = 0; i < m; ++i)
            for (unsigned k = 0; k < e[m + i]; ++k) t = t.derivative(i);
        Expo xe(m, 0);
        for (int i = 0; i < m; ++i) xe[i] = e[i];
        t = RationalFunction(Poly::monomial(m, xe, c)) * t;
        out = out + t;
    }
    return out;
}

std::vector<RationalFunction> solve_linear_ratfun(
    const std::vector<std::vector<RationalFunction>>& a,
    const std::vector<RationalFunction>& rhs) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    int m = 0;
    for (const auto& row : a)
        for (const auto& e : row)
            if (e.vars()) m = e.vars();
    std::vector<std::vector<RationalFunction>> aug(rows);
    for (size_t i = 0; i < rows; ++i) {
        aug[i] = a[i];
        aug[i].push_back(rhs[i]);
    }
    std::vector<int> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && aug[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(aug[p], aug[r]);
        RationalFunction inv =
            RationalFunction::constant(m, Rat(1)) / aug[r][c];
        for (size_t j = c; j <= cols; ++j) aug[r][j] = aug[r][j] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || aug[i][c].is_zero()) continue;
            RationalFunction f = aug[i][c];
            for (size_t j = c; j <= cols; ++j) aug[i][j] = aug[i][j] - f * aug[r][j];
        }
        pivots.push_back((int)c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (!aug[i][cols].is_zero()) throw Inconsistent("inconsistent linear system over Q(x)");
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    for (size_t c = 0; c < cols; ++c)
        if (!is_pivot[c])
            throw Underdetermined("linear system over Q(x) has free unknowns");
    std::vector<RationalFunction> x(cols);
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
    return x;
}

RationalFunction eliminate_linear(const std::vector<std::vector<RationalFunction>>& a,
                                  const std::vector<RationalFunction>& rhs, int keep) {
    auto x = solve_linear_ratfun(a, rhs);
    if (keep < 0 || keep >= (int)x.size())
        throw Underdetermined("kept unknown out of range");
    return x[keep];
}

} // namespace charmod
