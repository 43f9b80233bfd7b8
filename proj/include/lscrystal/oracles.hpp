#pragma once

#include <map>
#include <optional>

#include "lscrystal/lspath.hpp"

namespace lscrystal {

// Brute-force reference implementations used only to cross-check the library:
// nothing here is called from the main computation paths.

/// A positive real root beta = w(alpha_base), kept both as a weight-basis
/// vector and as the generating word (outermost reflection first).
struct RealRoot {
    Weight vec;             // coordinates in the fundamental-weight basis
    Integer u, v;           // coordinates in the root basis: beta = u a1 + v a2
    int base;               // 1 or 2
    std::vector<int> word;  // beta = r_{word[0]} ... r_{word.back()} (alpha_base)
};

/// All positive real roots reachable with words of length <= max_word_len.
std::vector<RealRoot> positive_real_roots(const CartanData& cartan, int max_word_len);

/// <mu, beta^vee>, computed by folding mu through the root's word.
Integer coroot_pairing(const CartanData& cartan, const RealRoot& beta, const Weight& mu);

/// The order of Definition-style chains on a truncated orbit window, built
/// from first principles: a step mu -> nu is admissible when nu = r_beta(mu)
/// for a positive real root with <mu, beta^vee> < 0.  Distances are longest
/// chains in the induced DAG; covers are distance-1 steps.
class OrbitOrderOracle {
  public:
    OrbitOrderOracle(const CartanData& cartan, const Weight& lambda, long window_lo,
                     long window_hi, int max_root_word = 0);

    long lo() const { return lo_; }
    long hi() const { return hi_; }

    bool step_allowed(long m, long n) const;
    /// Longest chain length from x_m to x_n; nullopt when incomparable.
    std::optional<long> dist(long m, long n) const;
    bool is_cover(long m, long n) const;
    /// Exhaustive search for a sigma-chain from x_m to x_n over cover steps.
    bool sigma_chain(long m, long n, const Rational& sigma) const;

  private:
    std::size_t idx(long m) const { return static_cast<std::size_t>(m - lo_); }
    bool search_chain(long at, long target, const Rational& sigma) const;

    long lo_, hi_;
    std::vector<Weight> elems_;
    // step matrix; steps[i][j] holds <mu_i, beta^vee> for the unique root
    // moving i to j, when such a root exists
    std::vector<std::vector<std::optional<Integer>>> steps_;
    std::vector<std::vector<std::optional<long>>> dist_;
};

/// Tensor-product rule on two-factor concatenations, the standard
/// epsilon/phi bookkeeping; an independent route to the concatenation
/// operators computed from the joint H-profile.
std::optional<ConcatPath> tensor_rule_e(const ConcatPath& cp, int i);
std::optional<ConcatPath> tensor_rule_f(const ConcatPath& cp, int i);

}  // namespace lscrystal
