#pragma once

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lscrystal/orbit.hpp"

namespace lscrystal {

/// Shared per-shape state: the p-sequence of the shape weight, its orbit
/// classification, and a reverse lookup from orbit elements to their index.
/// Contexts are interned per (cartan, lambda) and safe to share across
/// threads; every mutation is a cache fill behind a mutex.
class OrbitContext {
  public:
    /// Fetches (or builds) the context for a shape weight.  The orbit must
    /// satisfy condition (*) with positive p-sequence; dominant-reachable
    /// orbits and all-negative orbits are rejected.
    static std::shared_ptr<const OrbitContext> get(const CartanData& cartan, const Weight& lambda);

    const CartanData& cartan() const { return cartan_; }
    const Weight& shape() const { return lambda_; }
    const PSequence& pseq() const { return pseq_; }
    const OrbitClassification& classification() const { return cls_; }

    Weight weight_of(long m) const { return pseq_.xm_lambda(m); }
    Integer slope(long m, int i) const { return pseq_.coroot_pairing(m, i); }

    /// Orbit index of w, searching outward from [lo_hint, hi_hint].  The map
    /// m -> x_m lambda is injective on star orbits, so a miss after a bounded
    /// extension is a bug.
    long index_of(const Weight& w, long lo_hint, long hi_hint) const;

  private:
    OrbitContext(const CartanData& cartan, const Weight& lambda, OrbitClassification cls);

    void materialize(long lo, long hi) const;  // callers hold mu_

    CartanData cartan_;
    Weight lambda_;
    PSequence pseq_;
    OrbitClassification cls_;

    mutable std::unordered_map<Weight, long, WeightHash> index_;
    mutable long lo_ = 1, hi_ = 0;  // materialized window, empty when lo_ > hi_
    mutable std::mutex mu_;
};

/// Corner profile of H_i^pi(t) = <pi(t), alpha_i^vee>.
struct HProfile {
    int i;
    std::vector<Rational> corners;  // h_0 = 0, ..., h_u
    Integer min_value;              // global minimum; always a nonpositive integer

    const Rational& end_value() const { return corners.back(); }
};

/// A Lakshmibai-Seshadri path of shape lambda, stored canonically as strictly
/// decreasing orbit indices m_1 > ... > m_u together with rational cut points
/// 0 = sigma_0 < ... < sigma_u = 1.  Immutable; operators return new paths.
class LSPath {
  public:
    /// Checks and canonicalizes a raw (dirs, sigmas) pair: equal consecutive
    /// directions are merged, then strict decrease, sigma monotonicity and
    /// the sigma-chain divisibility at every junction are enforced.
    static LSPath validate(const CartanData& cartan, const Weight& lambda, std::vector<long> dirs,
                           std::vector<Rational> sigmas);

    /// The straight path pi_lambda = (lambda; 0, 1).
    static LSPath straight(const CartanData& cartan, const Weight& lambda);

    const CartanData& cartan() const { return ctx_->cartan(); }
    const Weight& shape() const { return ctx_->shape(); }
    const std::vector<long>& dirs() const { return dirs_; }
    const std::vector<Rational>& sigmas() const { return sigmas_; }
    std::size_t length() const { return dirs_.size(); }  // u
    const std::shared_ptr<const OrbitContext>& context() const { return ctx_; }

    long iota() const { return dirs_.front(); }
    long kappa() const { return dirs_.back(); }
    Weight direction_weight(std::size_t v) const;  // x_{dirs[v]} lambda, v zero-based

    RationalWeight evaluate(const Rational& t) const;
    /// pi(1); integral for every valid path.
    Weight weight() const;

    HProfile h_profile(int i) const;
    Integer epsilon(int i) const;
    Integer phi(int i) const;

    /// Littelmann root operators.  Null (= nullopt) when the minimum of
    /// H_i is 0 (for e) or attained at t = 1 (for f).
    std::optional<LSPath> e(int i) const;
    std::optional<LSPath> f(int i) const;
    LSPath e_max(int i) const;
    LSPath f_max(int i) const;

    bool operator==(const LSPath& o) const {
        return cartan() == o.cartan() && shape() == o.shape() && dirs_ == o.dirs_ &&
               sigmas_ == o.sigmas_;
    }

    struct Hash {
        std::size_t operator()(const LSPath& p) const;
    };

  private:
    friend class ConcatPath;
    friend LSPath path_from_factors(const std::vector<LSPath>& factors);

    LSPath(std::shared_ptr<const OrbitContext> ctx, std::vector<long> dirs,
           std::vector<Rational> sigmas);

    std::shared_ptr<const OrbitContext> ctx_;
    std::vector<long> dirs_;
    std::vector<Rational> sigmas_;
};

/// Concatenation pi_1 * ... * pi_M of LS paths of a common shape mu, i.e. an
/// element of B(mu)^{*M}.  Root operators act on the joint piecewise-linear
/// function and modify exactly one factor.
class ConcatPath {
  public:
    static ConcatPath of(std::vector<LSPath> factors);

    const std::vector<LSPath>& factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }
    const CartanData& cartan() const { return factors_.front().cartan(); }
    const Weight& factor_shape() const { return factors_.front().shape(); }

    Weight weight() const;
    RationalWeight evaluate(const Rational& t) const;
    HProfile h_profile(int i) const;
    Integer epsilon(int i) const;
    Integer phi(int i) const;
    std::optional<ConcatPath> e(int i) const;
    std::optional<ConcatPath> f(int i) const;

    bool operator==(const ConcatPath&) const = default;

  private:
    explicit ConcatPath(std::vector<LSPath> factors) : factors_(std::move(factors)) {}

    std::vector<LSPath> factors_;
};

/// Splits a path of shape M*mu into M factors of shape mu along the cut
/// points (k-1)/M; re-concatenation reproduces the path pointwise and
/// consecutive factors satisfy kappa(pi_k) >= iota(pi_{k+1}).
std::vector<LSPath> split(const LSPath& path, long factor_count);

/// Inverse of split on its image: joins factors of a common shape mu into a
/// path of shape (#factors * mu).  Fails (NotDecreasing / ChainViolation)
/// when the concatenation is not an LS path of that shape.
LSPath path_from_factors(const std::vector<LSPath>& factors);

}  // namespace lscrystal
