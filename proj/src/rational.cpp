#include "charmod/rational.hpp"

namespace charmod {

Rat Rat::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in \"" + s + "\"");
        return Rat(num, den);
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational \"" + s + "\"");
    }
}

std::string Rat::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int vec_gcd(const ZVec& v) {
    Int g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

ZVec primitive_integer(const QVec& v) {
    Int den = 1;
    for (const auto& x : v) den = lcm(den, x.den());
    ZVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = Int(v[i].num() * (den / v[i].den()));
    Int g = vec_gcd(w);
    if (g != 0)
        for (auto& x : w) x /= g;
    return w;
}

std::string int_str(const Int& n) { return n.get_str(); }

} // namespace charmod
