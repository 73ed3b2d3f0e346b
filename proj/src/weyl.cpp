#include "charmod/weyl.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

#include "charmod/errors.hpp"

namespace charmod {

unsigned expo_deg(const Expo& e) {
    unsigned d = 0;
    for (unsigned x : e) d += x;
    return d;
}

TermOrder TermOrder::block_elim(std::vector<int> block_vars) {
    TermOrder o;
    o.kind = Kind::BlockElim;
    o.block = std::move(block_vars);
    std::sort(o.block.begin(), o.block.end());
    return o;
}

namespace {

// grevlex on the positions listed in idx (all positions if idx empty).
int cmp_grevlex_on(const Expo& a, const Expo& b, const std::vector<int>* idx) {
    unsigned da = 0, db = 0;
    if (idx) {
        for (int i : *idx) da += a[i], db += b[i];
    } else {
        da = expo_deg(a);
        db = expo_deg(b);
    }
    if (da != db) return da < db ? -1 : 1;
    if (idx) {
        for (auto it = idx->rbegin(); it != idx->rend(); ++it) {
            if (a[*it] != b[*it]) return a[*it] > b[*it] ? -1 : 1;
        }
    } else {
        for (size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
        }
    }
    return 0;
}

} // namespace

int TermOrder::cmp(const Expo& a, const Expo& b) const {
    assert(a.size() == b.size());
    if (kind == Kind::Grevlex) return cmp_grevlex_on(a, b, nullptr);
    int c = cmp_grevlex_on(a, b, &block);
    if (c != 0) return c;
    std::vector<int> rest;
    rest.reserve(a.size() - block.size());
    size_t bi = 0;
    for (int i = 0; i < (int)a.size(); ++i) {
        if (bi < block.size() && block[bi] == i) {
            ++bi;
            continue;
        }
        rest.push_back(i);
    }
    return cmp_grevlex_on(a, b, &rest);
}

WeylElement WeylElement::constant(int m, const Rat& c) {
    WeylElement e(m);
    e.add_term(Expo(2 * m, 0), c);
    return e;
}

WeylElement WeylElement::variable(int m, int i) {
    assert(i >= 0 && i < m);
    Expo e(2 * m, 0);
    e[i] = 1;
    return monomial(m, e, Rat(1));
}

WeylElement WeylElement::partial(int m, int i) {
    assert(i >= 0 && i < m);
    Expo e(2 * m, 0);
    e[m + i] = 1;
    return monomial(m, e, Rat(1));
}

WeylElement WeylElement::monomial(int m, const Expo& e, const Rat& c) {
    assert((int)e.size() == 2 * m);
    WeylElement p(m);
    p.add_term(e, c);
    return p;
}

WeylElement WeylElement::directional(int m, const QVec& v) {
    WeylElement p(m);
    for (int i = 0; i < m; ++i) {
        if (v[i].is_zero()) continue;
        Expo e(2 * m, 0);
        e[m + i] = 1;
        p.add_term(e, v[i]);
    }
    return p;
}

WeylElement WeylElement::affine(int m, const QVec& a, const Rat& c) {
    WeylElement p(m);
    for (int i = 0; i < m; ++i) {
        if (a[i].is_zero()) continue;
        Expo e(2 * m, 0);
        e[i] = 1;
        p.add_term(e, a[i]);
    }
    if (!c.is_zero()) p.add_term(Expo(2 * m, 0), c);
    return p;
}

void WeylElement::add_term(const Expo& e, const Rat& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

WeylElement WeylElement::operator-() const {
    WeylElement r(m_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
    assert(m_ == o.m_ || is_zero() || o.is_zero());
    if (m_ == 0) m_ = o.m_;
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) {
    assert(m_ == o.m_ || is_zero() || o.is_zero());
    if (m_ == 0) m_ = o.m_;
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

WeylElement WeylElement::scaled(const Rat& c) const {
    WeylElement r(m_);
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, c * k);
    return r;
}

bool WeylElement::is_polynomial() const {
    for (const auto& [e, c] : terms_)
        for (int i = m_; i < 2 * m_; ++i)
            if (e[i] != 0) return false;
    return true;
}

bool WeylElement::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && expo_deg(terms_.begin()->first) == 0;
}

Rat WeylElement::constant_value() const {
    if (terms_.empty()) return Rat(0);
    assert(is_constant());
    return terms_.begin()->second;
}

unsigned WeylElement::total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, expo_deg(e));
    return d;
}

unsigned WeylElement::x_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        unsigned s = 0;
        for (int i = 0; i < m_; ++i) s += e[i];
        d = std::max(d, s);
    }
    return d;
}

unsigned WeylElement::d_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        unsigned s = 0;
        for (int i = m_; i < 2 * m_; ++i) s += e[i];
        d = std::max(d, s);
    }
    return d;
}

WeylElement WeylElement::embedded(int new_m) const {
    assert(new_m >= m_);
    WeylElement r(new_m);
    for (const auto& [e, c] : terms_) {
        Expo f(2 * new_m, 0);
        for (int i = 0; i < m_; ++i) {
            f[i] = e[i];
            f[new_m + i] = e[m_ + i];
        }
        r.terms_.emplace(std::move(f), c);
    }
    return r;
}

WeylElement WeylElement::restricted(int new_m) const {
    assert(new_m <= m_);
    WeylElement r(new_m);
    for (const auto& [e, c] : terms_) {
        Expo f(2 * new_m, 0);
        for (int i = 0; i < m_; ++i) {
            unsigned xe = e[i], de = e[m_ + i];
            if (i >= new_m) {
                assert(xe == 0 && de == 0);
                continue;
            }
            f[i] = xe;
            f[new_m + i] = de;
        }
        r.terms_.emplace(std::move(f), c);
    }
    return r;
}

namespace {

Int binom(unsigned n, unsigned k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Int factorial(unsigned n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// Normal order of d^b x^c as sum_k prod_i C(b_i,k_i) C(c_i,k_i) k_i!
// x^{c-k} d^{b-k}, accumulated into out with an extra x^a d^d shift.
void leibniz_accumulate(WeylElement& out, int m, const Rat& coeff, const Expo& a,
                        const Expo& b, const Expo& c, const Expo& d) {
    std::vector<unsigned> kmax(m);
    for (int i = 0; i < m; ++i) kmax[i] = std::min(b[m + i], c[i]);
    std::vector<unsigned> k(m, 0);
    while (true) {
        Int f = 1;
        for (int i = 0; i < m; ++i) {
            if (k[i] == 0) continue;
            f *= binom(b[m + i], k[i]) * binom(c[i], k[i]) * factorial(k[i]);
        }
        Expo e(2 * m, 0);
        for (int i = 0; i < m; ++i) {
            e[i] = a[i] + c[i] - k[i];
            e[m + i] = b[m + i] - k[i] + d[m + i];
        }
        out.add_term(e, coeff * Rat(f));
        // odometer over k
        int pos = 0;
        while (pos < m) {
            if (k[pos] < kmax[pos]) {
                ++k[pos];
                break;
            }
            k[pos] = 0;
            ++pos;
        }
        if (pos == m) break;
    }
}

} // namespace

WeylElement multiply(const WeylElement& p, const WeylElement& q) {
    if (p.is_zero() || q.is_zero()) return WeylElement(std::max(p.vars(), q.vars()));
    if (p.vars() != q.vars())
        throw DimensionMismatch("weyl product of elements over different variable counts");
    int m = p.vars();
    WeylElement out(m);
    for (const auto& [ep, cp] : p.terms())
        for (const auto& [eq, cq] : q.terms())
            leibniz_accumulate(out, m, cp * cq, ep, ep, eq, eq);
    return out;
}

WeylElement fourier(const WeylElement& p) {
    int m = p.vars();
    WeylElement out(m);
    for (const auto& [e, c] : p.terms()) {
        // x^a d^b -> d^a (-x)^b, then normal order d^a x^b.
        unsigned bdeg = 0;
        Expo xb(2 * m, 0), da(2 * m, 0);
        for (int i = 0; i < m; ++i) {
            xb[i] = e[m + i];
            bdeg += e[m + i];
            da[m + i] = e[i];
        }
        Rat coeff = (bdeg % 2 == 0) ? c : -c;
        Expo zero(2 * m, 0);
        leibniz_accumulate(out, m, coeff, zero, da, xb, zero);
    }
    return out;
}

WeylElement linear_substitution(const WeylElement& p, const QMat& a, const QVec& b) {
    int m = p.vars();
    if ((int)a.size() != m) throw DimensionMismatch("substitution matrix size");
    // invert A
    QMat inv(m, QVec(m, Rat(0)));
    {
        QMat aug = a;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) aug[i].push_back(i == j ? Rat(1) : Rat(0));
        }
        auto piv = rref(aug);
        if ((int)piv.size() != m || piv.back() >= m)
            throw SingularMatrix("substitution matrix is singular");
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) inv[i][j] = aug[i][m + j];
    }
    // images of generators
    std::vector<WeylElement> xi(m), di(m);
    for (int i = 0; i < m; ++i) {
        xi[i] = WeylElement::affine(m, a[i], b[i]);
        QVec col(m);
        for (int j = 0; j < m; ++j) col[j] = inv[j][i]; // (A^->T)_{ij} = inv[j][i]
        di[i] = WeylElement::directional(m, col);
    }
    WeylElement out(m);
    for (const auto& [e, c] : p.terms()) {
        WeylElement term = WeylElement::constant(m, c);
        for (int i = 0; i < m; ++i)
            for (unsigned k = 0; k < e[i]; ++k) term = multiply(term, xi[i]);
        for (int i = 0; i < m; ++i)
            for (unsigned k = 0; k < e[m + i]; ++k) term = multiply(term, di[i]);
        out += term;
    }
    return out;
}

namespace {

std::string render_terms(const WeylElement& el, const Rat& scale) {
    int m = el.vars();
    TermOrder ord = TermOrder::grevlex();
    std::vector<const std::pair<const Expo, Rat>*> ts;
    for (const auto& t : el.terms()) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(),
              [&](auto* l, auto* r) { return ord.cmp(l->first, r->first) > 0; });

    std::ostringstream os;
    bool first = true;
    for (const auto* t : ts) {
        Rat c = t->second * scale;
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        std::string mono;
        for (int i = 0; i < m; ++i) {
            if (t->first[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(i + 1);
            if (t->first[i] > 1) mono += "^" + std::to_string(t->first[i]);
        }
        for (int i = 0; i < m; ++i) {
            if (t->first[m + i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "d" + std::to_string(i + 1);
            if (t->first[m + i] > 1) mono += "^" + std::to_string(t->first[m + i]);
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

} // namespace

std::string WeylElement::str() const {
    if (terms_.empty()) return "0";
    return render_terms(*this, Rat(1));
}

std::string WeylElement::canonical_str() const {
    if (terms_.empty()) return "0";
    Int den = 1, num = 0;
    for (const auto& [e, c] : terms_) {
        den = lcm(den, c.den());
        num = gcd(num, c.num());
    }
    Rat scale = Rat(den, num == 0 ? Int(1) : num);
    TermOrder ord = TermOrder::grevlex();
    const std::pair<const Expo, Rat>* lead = nullptr;
    for (const auto& t : terms_)
        if (!lead || ord.cmp(t.first, lead->first) > 0) lead = &t;
    if (lead->second.sign() * scale.sign() < 0) scale = -scale;
    return render_terms(*this, scale);
}

namespace {

class WeylParser {
public:
    WeylParser(const std::string& s, int m) : s_(s), m_(m) {}

    WeylElement parse() {
        WeylElement e = expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("trailing input in operator at position " +
                                                std::to_string(pos_));
        return e;
    }

private:
    const std::string& s_;
    int m_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    WeylElement expr() {
        bool neg = false;
        skip_ws();
        if (eat('+')) {
        } else if (eat('-')) {
            neg = true;
        }
        WeylElement acc = term();
        if (neg) acc = -acc;
        while (true) {
            if (eat('+')) {
                acc += term();
            } else if (eat('-')) {
                acc -= term();
            } else {
                break;
            }
        }
        return acc;
    }

    WeylElement term() {
        WeylElement acc = factor();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = multiply(acc, factor());
            } else if (c == '(' || c == 'x' || c == 'd' || std::isdigit((unsigned char)c)) {
                // implicit product, e.g. "2x1" or "x1(x1-1)"
                acc = multiply(acc, factor());
            } else {
                break;
            }
        }
        return acc;
    }

    WeylElement factor() {
        WeylElement base = atom();
        if (eat('^')) {
            unsigned e = parse_uint();
            WeylElement r = WeylElement::constant(m_, Rat(1));
            for (unsigned i = 0; i < e; ++i) r = multiply(r, base);
            return r;
        }
        return base;
    }

    WeylElement atom() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of operator text");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            WeylElement e = expr();
            if (!eat(')')) throw ParseError("missing ')' in operator text");
            return e;
        }
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (c == 'x' || c == 'd') {
            ++pos_;
            unsigned idx = parse_uint();
            if (idx < 1 || (int)idx > m_)
                throw ParseError(std::string(1, c) + std::to_string(idx) +
                                 " out of range for " + std::to_string(m_) + " variables");
            return c == 'x' ? WeylElement::variable(m_, (int)idx - 1)
                            : WeylElement::partial(m_, (int)idx - 1);
        }
        if (std::isdigit((unsigned char)c)) {
            std::string num = parse_digits();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                std::string den = parse_digits();
                return WeylElement::constant(m_, Rat(Int(num), Int(den)));
            }
            return WeylElement::constant(m_, Rat(Int(num)));
        }
        throw ParseError(std::string("unexpected character '") + c + "' in operator text");
    }

    std::string parse_digits() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
        if (pos_ == start) throw ParseError("expected number in operator text");
        return s_.substr(start, pos_ - start);
    }

    unsigned parse_uint() { return (unsigned)std::stoul(parse_digits()); }
};

} // namespace

WeylElement parse_weyl(const std::string& text, int m) {
    return WeylParser(text, m).parse();
}

} // namespace charmod
