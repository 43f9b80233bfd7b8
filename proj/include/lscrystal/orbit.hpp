#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "lscrystal/kacmoody.hpp"

namespace lscrystal {

/// Two-sided integer sequence v_m with the three-term relation
///   v_{m+1} + v_{m-1} = c(m+1) * v_m   reading forward,
/// where c(j) = coef_even for even j and coef_odd for odd j.
/// Values are memoized; reads are safe from any thread.
class TwoSidedRecurrence {
  public:
    TwoSidedRecurrence(int coef_even, int coef_odd, Integer v0, Integer v1);

    Integer at(long m) const;

  private:
    int coef(long j) const { return (j % 2 == 0) ? coef_even_ : coef_odd_; }

    int coef_even_;
    int coef_odd_;
    mutable std::vector<Integer> fwd_;  // v_0, v_1, ...
    mutable std::vector<Integer> bwd_;  // v_{-1}, v_{-2}, ...
    mutable std::mutex mu_;
};

/// The sequence p_m attached to lambda = k L1 - l L2: p_0 = l, p_1 = k,
/// with p_{m+2} = b p_{m+1} - p_m for even m and a p_{m+1} - p_m for odd m
/// (and the matching backward recursion for m < 0).  Pairings of orbit
/// elements with simple coroots are all of the form +-p_m.
class PSequence {
  public:
    PSequence(const CartanData& cartan, const Weight& lambda);

    const CartanData& cartan() const { return cartan_; }
    const Weight& lambda() const { return lambda_; }

    Integer p(long m) const { return seq_.at(m); }

    /// Closed formula for x_m lambda:
    ///   p_{m+1} L1 - p_m L2   (m even),
    ///   -p_m L1 + p_{m+1} L2  (m odd).
    Weight xm_lambda(long m) const;

    /// <x_m lambda, alpha_i^vee>, read off the p-sequence.
    Integer coroot_pairing(long m, int i) const;

  private:
    CartanData cartan_;
    Weight lambda_;
    TwoSidedRecurrence seq_;
};

enum class OrbitKind { meets_dominant, meets_antidominant, star };

enum class FormTag { i, ii, i_prime, ii_prime, iii_prime, iv_prime };

std::string to_string(OrbitKind kind);
std::string to_string(FormTag tag);

/// Result of scanning the orbit of lambda.
///
/// For star orbits (those missing both P+ and -P+), `canonical` is the unique
/// orbit representative k'L1 - l'L2 with l' <= k' < (a-1)l' (form i) or
/// k' < l' <= (b-1)k' (form ii), `canonical_m` its orbit index relative to
/// lambda, and `witness_m` a valley index n of |p| (|p_{n-1}| >= |p_n| <=
/// |p_{n+1}|).  `negated` records that the given representative's own
/// p-sequence is all-negative (true exactly for odd Weyl translates of the
/// positive-form part); the canonical weight always lies in W(lambda).
struct OrbitClassification {
    OrbitKind kind;
    long witness_m = 0;
    std::optional<Weight> canonical;
    std::optional<FormTag> form_tag;
    bool negated = false;
    long canonical_m = 0;

    bool positive_star() const { return kind == OrbitKind::star && !negated; }
};

/// Classifies W.lambda per the p-sequence sign dichotomy: a sign change or
/// zero yields a dominant/antidominant representative; otherwise the valley
/// of |p| certifies a star orbit.  Rejects lambda = 0.
OrbitClassification classify(const CartanData& cartan, const Weight& lambda);

struct HasseCover {
    long lower_m;
    int label;  // simple-root index
};

/// Cover x_m lambda <- x_{m-1} lambda of the (chain) Hasse diagram of a star
/// orbit; the edge label is alpha_2 for even m and alpha_1 for odd m.
HasseCover hasse_cover(const PSequence& seq, long m);

/// Chain distance dist(x_m lambda, x_n lambda) = m - n on star orbits.
long dist(const PSequence& seq, long m, long n);

/// True iff sigma * |p_j| is an integer for every j with n < j <= m, i.e.
/// a sigma-chain joins x_m lambda to x_n lambda along the cover chain.
bool sigma_chain_exists(const PSequence& seq, long m, long n, const Rational& sigma);

}  // namespace lscrystal
