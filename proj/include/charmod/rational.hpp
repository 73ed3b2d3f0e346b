#ifndef CHARMOD_RATIONAL_HPP
#define CHARMOD_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "charmod/errors.hpp"

namespace charmod {

using Int = mpz_class;

// Arbitrary-precision rational, always kept canonical (reduced, positive
// denominator). mpq_class does not canonicalize on construction, so all
// construction goes through here.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(int n) : v_(n) {}
    Rat(long n) : v_((long)n) {}
    Rat(const Int& n) : v_(n) {}
    Rat(const Int& num, const Int& den) : v_(num, den) {
        if (den == 0) throw ParseError("rational with zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Accepts "p", "-p" or "p/q".
    static Rat parse(const std::string& s);

    const mpq_class& raw() const { return v_; }
    Int num() const { return v_.get_num(); }
    Int den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }
    double to_double() const { return v_.get_d(); }

    Rat operator-() const { return Rat(mpq_class(-v_), no_canon{}); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw Inconsistent("division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    Rat abs() const { return v_ < 0 ? -*this : *this; }

    std::string str() const;

private:
    struct no_canon {};
    Rat(mpq_class q, no_canon) : v_(std::move(q)) {}
    mpq_class v_;
};

using QVec = std::vector<Rat>;
using ZVec = std::vector<Int>;

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int vec_gcd(const ZVec& v);

// Scales a rational vector to a primitive integer vector (gcd of entries 1),
// preserving direction. Zero vector maps to zero.
ZVec primitive_integer(const QVec& v);

std::string int_str(const Int& n);

} // namespace charmod

#endif
