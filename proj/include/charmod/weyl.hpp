#ifndef CHARMOD_WEYL_HPP
#define CHARMOD_WEYL_HPP

#include <map>
#include <string>
#include <vector>

#include "charmod/linalg.hpp"

namespace charmod {

// Exponent vector of a normal-ordered Weyl monomial x^a d^b: the first m
// entries are the x-exponents, the last m the d-exponents.
using Expo = std::vector<unsigned>;

unsigned expo_deg(const Expo& e);

// Admissible monomial orders on N^{2m}. Block elimination compares the
// block variables (graded reverse lex) first, so an element whose leading
// monomial avoids the block lies entirely in the subalgebra without it.
struct TermOrder {
    enum class Kind { Grevlex, BlockElim };
    Kind kind = Kind::Grevlex;
    std::vector<int> block; // variable indices in 0..2m-1, BlockElim only

    static TermOrder grevlex() { return TermOrder{}; }
    static TermOrder block_elim(std::vector<int> block_vars);

    // -1, 0, +1 for a < b, a == b, a > b.
    int cmp(const Expo& a, const Expo& b) const;
};

// Element of the Weyl algebra in m variable pairs, kept in normal order
// (all x's left of all d's). The term map is canonical: equal operators
// have equal maps regardless of how they were built.
class WeylElement {
public:
    WeylElement() : m_(0) {}
    explicit WeylElement(int m) : m_(m) {}

    static WeylElement constant(int m, const Rat& c);
    static WeylElement variable(int m, int i);  // x_{i+1}
    static WeylElement partial(int m, int i);   // d_{i+1}
    static WeylElement monomial(int m, const Expo& e, const Rat& c);
    // sum_i v_i d_i
    static WeylElement directional(int m, const QVec& v);
    // <a, x> + c
    static WeylElement affine(int m, const QVec& a, const Rat& c);

    int vars() const { return m_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Expo, Rat>& terms() const { return terms_; }

    void add_term(const Expo& e, const Rat& c);

    WeylElement operator-() const;
    WeylElement& operator+=(const WeylElement& o);
    WeylElement& operator-=(const WeylElement& o);
    friend WeylElement operator+(WeylElement a, const WeylElement& b) { a += b; return a; }
    friend WeylElement operator-(WeylElement a, const WeylElement& b) { a -= b; return a; }
    friend bool operator==(const WeylElement& a, const WeylElement& b) {
        return a.m_ == b.m_ && a.terms_ == b.terms_;
    }

    WeylElement scaled(const Rat& c) const;

    // Is this a polynomial in the x variables only / a single constant?
    bool is_polynomial() const;
    bool is_constant() const;
    Rat constant_value() const; // 0 for the zero element

    unsigned total_degree() const;
    unsigned x_degree() const;
    unsigned d_degree() const;

    // Re-embed into an algebra with more variable pairs (pair i -> pair i).
    WeylElement embedded(int new_m) const;
    // Drop trailing pairs; all exponents there must be zero.
    WeylElement restricted(int new_m) const;

    // Exact printed form, terms in descending grevlex order.
    std::string str() const;
    // Printed form normalized to integer coefficients with content 1 and
    // positive leading coefficient (the golden-file convention; identifies
    // an operator up to a positive scalar).
    std::string canonical_str() const;

private:
    int m_;
    std::map<Expo, Rat> terms_;
};

// Normal-ordered noncommutative product.
WeylElement multiply(const WeylElement& p, const WeylElement& q);

// The algebra automorphism x_i -> d_i, d_i -> -x_i.
WeylElement fourier(const WeylElement& p);

// The automorphism x -> A x + b, d -> A^{-T} d. A must be invertible.
WeylElement linear_substitution(const WeylElement& p, const QMat& a, const QVec& b);

// Operator text syntax: x1, d2, ^, *, +, -, parentheses, integer or p/q
// coefficients. Input need not be normal-ordered.
WeylElement parse_weyl(const std::string& text, int m);

} // namespace charmod

#endif
