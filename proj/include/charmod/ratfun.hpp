#ifndef CHARMOD_RATFUN_HPP
#define CHARMOD_RATFUN_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charmod/weyl.hpp"

namespace charmod {

// Commutative polynomial over Q in m variables.
class Poly {
public:
    Poly() : m_(0) {}
    explicit Poly(int m) : m_(m) {}

    static Poly constant(int m, const Rat& c);
    static Poly variable(int m, int i);
    static Poly monomial(int m, const Expo& e, const Rat& c);
    static Poly affine(int m, const QVec& a, const Rat& c); // <a,x> + c

    int vars() const { return m_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const;
    const std::map<Expo, Rat>& terms() const { return terms_; }
    unsigned degree() const; // total degree, 0 for the zero polynomial
    unsigned degree_in(int v) const;

    void add_term(const Expo& e, const Rat& c);

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) {
        return a.m_ == b.m_ && a.terms_ == b.terms_;
    }

    Poly scaled(const Rat& c) const;
    Poly derivative(int v) const;
    Rat eval(const QVec& x) const;

    // Leading term under grevlex.
    std::pair<Expo, Rat> leading() const;

    // Scale to integer coefficients with content 1 and positive leading
    // coefficient; returns the applied factor.
    Rat make_primitive();

    std::string str() const;

private:
    int m_;
    std::map<Expo, Rat> terms_;
};

// Exact division: returns f/g when g divides f, nullopt otherwise.
std::optional<Poly> divide_exact(const Poly& f, const Poly& g);

// Multivariate gcd (primitive PRS). Result is primitive with positive
// leading coefficient; gcd(0, g) = normalized g.
Poly poly_gcd(const Poly& f, const Poly& g);

// Fraction num/den over Q(x_1..x_m), kept reduced: gcd(num, den) = 1 and
// den primitive integer with positive leading coefficient.
class RationalFunction {
public:
    RationalFunction() : num_(0), den_(Poly::constant(0, Rat(1))) {}
    explicit RationalFunction(const Poly& p);
    RationalFunction(const Poly& num, const Poly& den);

    static RationalFunction constant(int m, const Rat& c);

    int vars() const { return num_.vars(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    RationalFunction derivative(int v) const;

    std::string str() const;

private:
    void reduce();
    Poly num_, den_;
};

// x_i acts by multiplication, d_i by d/dx_i.
RationalFunction apply_to_rational(const WeylElement& p, const RationalFunction& f);

// Solves A mu = rhs over Q(x) and returns the unique value of mu[keep].
RationalFunction eliminate_linear(const std::vector<std::vector<RationalFunction>>& a,
                                  const std::vector<RationalFunction>& rhs, int keep);

// Full solution vector (used when several unknowns are wanted at once).
std::vector<RationalFunction> solve_linear_ratfun(
    const std::vector<std::vector<RationalFunction>>& a,
    const std::vector<RationalFunction>& rhs);

} // namespace charmod

#endif
