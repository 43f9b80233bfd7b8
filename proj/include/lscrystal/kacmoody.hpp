#pragma once

#include <vector>

#include "lscrystal/numeric.hpp"

namespace lscrystal {

/// The pair (a, b) of a rank-2 generalized Cartan matrix
///   [  2  -a ]
///   [ -b   2 ]
/// restricted to the hyperbolic range a, b >= 2, ab > 4.
struct CartanData {
    int a;
    int b;

    CartanData(int a_, int b_) : a(a_), b(b_) {
        if (a < 2 || b < 2 || a * b <= 4)
            throw Error(Errc::bad_cartan, "need a >= 2, b >= 2 and ab > 4");
    }

    friend bool operator==(const CartanData&, const CartanData&) = default;
};

/// Integral weight c1*L1 + c2*L2 in the fundamental-weight basis.
struct Weight {
    Integer c1;
    Integer c2;

    friend bool operator==(const Weight&, const Weight&) = default;

    Weight operator+(const Weight& o) const { return {c1 + o.c1, c2 + o.c2}; }
    Weight operator-(const Weight& o) const { return {c1 - o.c1, c2 - o.c2}; }
    Weight operator-() const { return {-c1, -c2}; }
    friend Weight operator*(const Integer& s, const Weight& w) { return {s * w.c1, s * w.c2}; }

    bool is_zero() const { return c1 == 0 && c2 == 0; }
    bool dominant() const { return c1 >= 0 && c2 >= 0; }
    bool antidominant() const { return c1 <= 0 && c2 <= 0; }
};

/// Point of R (x) P; weights of path interior points.
struct RationalWeight {
    Rational c1;
    Rational c2;

    RationalWeight() = default;
    RationalWeight(Rational a, Rational b) : c1(std::move(a)), c2(std::move(b)) {}
    explicit RationalWeight(const Weight& w) : c1(w.c1), c2(w.c2) {}

    friend bool operator==(const RationalWeight&, const RationalWeight&) = default;

    RationalWeight operator+(const RationalWeight& o) const { return {c1 + o.c1, c2 + o.c2}; }
    friend RationalWeight operator*(const Rational& s, const RationalWeight& w) {
        return {s * w.c1, s * w.c2};
    }

    bool integral() const { return is_integral(c1) && is_integral(c2); }
};

struct WeightHash {
    std::size_t operator()(const Weight& w) const {
        std::size_t seed = hash_integer(w.c1);
        boost::hash_combine(seed, hash_integer(w.c2));
        return seed;
    }
};

/// <w, alpha_i^vee>; the fundamental weights are dual to the simple coroots,
/// so this is a coordinate read-off.
inline const Integer& pairing(const Weight& w, int i) { return i == 1 ? w.c1 : w.c2; }
inline const Rational& pairing(const RationalWeight& w, int i) { return i == 1 ? w.c1 : w.c2; }

/// alpha_1 = 2 L1 - b L2, alpha_2 = -a L1 + 2 L2.
Weight simple_root(const CartanData& cartan, int i);

/// Simple reflection r_i w = w - <w, alpha_i^vee> alpha_i.
Weight reflect(const CartanData& cartan, int i, const Weight& w);

/// Reduced word of x_m, left to right in composition order
/// (the rightmost letter acts first).  x_0 is the empty word.
std::vector<int> xm_word(long m);

/// Applies x_m to lambda by folding simple reflections over xm_word.
/// This is the word-level oracle against which the closed orbit formula
/// (PSequence::xm_lambda) is tested.
Weight act_xm_by_word(const CartanData& cartan, long m, const Weight& lambda);

/// Simple-root label i with r_i x_m lambda = x_{m-1} lambda: 2 for even m, 1 for odd.
inline int down_label(long m) { return (m % 2 == 0) ? 2 : 1; }
/// Label i with r_i x_m lambda = x_{m+1} lambda.
inline int up_label(long m) { return (m % 2 == 0) ? 1 : 2; }

}  // namespace lscrystal
