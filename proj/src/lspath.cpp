#include "lscrystal/lspath.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace lscrystal {

namespace {

struct ContextKey {
    int a, b;
    Integer c1, c2;
    bool operator==(const ContextKey&) const = default;
};

struct ContextKeyHash {
    std::size_t operator()(const ContextKey& k) const {
        std::size_t seed = std::hash<int>{}(k.a);
        boost::hash_combine(seed, std::hash<int>{}(k.b));
        boost::hash_combine(seed, hash_integer(k.c1));
        boost::hash_combine(seed, hash_integer(k.c2));
        return seed;
    }
};

std::unordered_map<ContextKey, std::weak_ptr<const OrbitContext>, ContextKeyHash> g_contexts;
std::mutex g_contexts_mu;

}  // namespace

OrbitContext::OrbitContext(const CartanData& cartan, const Weight& lambda, OrbitClassification cls)
    : cartan_(cartan), lambda_(lambda), pseq_(cartan, lambda), cls_(std::move(cls)) {}

std::shared_ptr<const OrbitContext> OrbitContext::get(const CartanData& cartan,
                                                      const Weight& lambda) {
    ContextKey key{cartan.a, cartan.b, lambda.c1, lambda.c2};
    {
        std::lock_guard<std::mutex> lock(g_contexts_mu);
        auto it = g_contexts.find(key);
        if (it != g_contexts.end()) {
            if (auto live = it->second.lock()) return live;
        }
    }

    OrbitClassification cls = classify(cartan, lambda);
    if (cls.kind != OrbitKind::star)
        throw Error(Errc::not_star_orbit,
                    "LS paths need a shape whose orbit misses both dominant cones");
    if (cls.negated)
        throw Error(Errc::negative_orbit,
                    "shape has an all-negative p-sequence; re-express the path relative to a "
                    "positive representative of the orbit, e.g. its canonical form");

    std::shared_ptr<const OrbitContext> ctx(new OrbitContext(cartan, lambda, std::move(cls)));
    std::lock_guard<std::mutex> lock(g_contexts_mu);
    g_contexts[key] = ctx;
    return ctx;
}

void OrbitContext::materialize(long lo, long hi) const {
    if (lo_ > hi_) {
        lo_ = lo;
        hi_ = lo - 1;
    }
    for (long m = lo_ - 1; m >= lo; --m) index_.emplace(pseq_.xm_lambda(m), m);
    lo_ = std::min(lo_, lo);
    for (long m = hi_ + 1; m <= hi; ++m) index_.emplace(pseq_.xm_lambda(m), m);
    hi_ = std::max(hi_, hi);
}

long OrbitContext::index_of(const Weight& w, long lo_hint, long hi_hint) const {
    std::lock_guard<std::mutex> lock(mu_);
    materialize(std::min(lo_hint, hi_hint), std::max(lo_hint, hi_hint));
    for (int attempt = 0; attempt < 4; ++attempt) {
        auto it = index_.find(w);
        if (it != index_.end()) return it->second;
        materialize(lo_ - 8, hi_ + 8);
    }
    throw std::logic_error("weight is not an orbit element near the requested window");
}

// ---------------------------------------------------------------------------
// Piecewise-linear engine shared by LSPath and ConcatPath.
//
// A path is a list of (direction weight, duration) segments with durations
// summing to 1.  The root operators only need the corner profile of
// H_i(t) = <pi(t), alpha_i^vee> and a reflection of the segment directions
// on a window [t0, t1]; orbit indices are reattached afterwards.
// ---------------------------------------------------------------------------

namespace {

struct Seg {
    Weight dir;
    Rational len;
};

std::vector<Seg> merge_segments(const std::vector<Seg>& in) {
    std::vector<Seg> out;
    for (const auto& s : in) {
        if (s.len == 0) continue;
        if (!out.empty() && out.back().dir == s.dir)
            out.back().len += s.len;
        else
            out.push_back(s);
    }
    return out;
}

struct Profile {
    std::vector<Rational> time;  // time[0] = 0, ..., time[u] = 1
    std::vector<Rational> h;     // h[0] = 0
    Rational min;
};

Profile corner_profile(const std::vector<Seg>& segs, int i) {
    Profile pr;
    pr.time.resize(segs.size() + 1);
    pr.h.resize(segs.size() + 1);
    pr.time[0] = 0;
    pr.h[0] = 0;
    for (std::size_t j = 0; j < segs.size(); ++j) {
        pr.time[j + 1] = pr.time[j] + segs[j].len;
        pr.h[j + 1] = pr.h[j] + segs[j].len * Rational(pairing(segs[j].dir, i));
    }
    pr.min = *std::min_element(pr.h.begin(), pr.h.end());
    return pr;
}

// Rebuilds the segment list with directions reflected by r_i on [t0, t1].
// The profile must be strictly monotone there: decreasing for e (raising),
// increasing for f.
std::vector<Seg> reflect_window(const CartanData& cartan, const std::vector<Seg>& segs,
                                const Profile& pr, int i, const Rational& t0, const Rational& t1,
                                bool lowering) {
    std::vector<Seg> out;
    out.reserve(segs.size() + 2);
    for (std::size_t j = 0; j < segs.size(); ++j) {
        const Rational& a = pr.time[j];
        const Rational& b = pr.time[j + 1];
        const Rational keep_lo_end = std::min(b, t0);
        if (keep_lo_end > a) out.push_back({segs[j].dir, keep_lo_end - a});

        const Rational mid_lo = std::max(a, t0);
        const Rational mid_hi = std::min(b, t1);
        if (mid_hi > mid_lo) {
            const Integer slope = pairing(segs[j].dir, i);
            if (lowering ? slope <= 0 : slope >= 0)
                throw std::logic_error("H_i is not strictly monotone on the operator window");
            out.push_back({reflect(cartan, i, segs[j].dir), mid_hi - mid_lo});
        }

        const Rational tail_lo = std::max(a, t1);
        if (b > tail_lo) out.push_back({segs[j].dir, b - tail_lo});
    }
    return merge_segments(out);
}

Integer integral_min(const Profile& pr) {
    if (!is_integral(pr.min))
        throw Error(Errc::internal_non_integral, "H_i minimum is not an integer: invalid path");
    return boost::multiprecision::numerator(pr.min);
}

std::optional<std::vector<Seg>> root_operator(const CartanData& cartan,
                                              const std::vector<Seg>& segs, int i, bool lowering) {
    if (i != 1 && i != 2) throw Error(Errc::bad_config, "operator index must be 1 or 2");
    const Profile pr = corner_profile(segs, i);
    const Integer m = integral_min(pr);
    const Rational target(m + 1);
    const std::size_t u = segs.size();

    if (!lowering) {
        if (m == 0) return std::nullopt;
        // t1: first corner attaining the minimum (minima occur only at corners).
        std::size_t v1 = 0;
        while (pr.h[v1] != pr.min) ++v1;
        const Rational t1 = pr.time[v1];
        // t0: last time before t1 with H = m + 1; may be inside a segment.
        for (std::size_t j = v1; j >= 1; --j) {
            if (pr.h[j - 1] >= target) {
                Rational t0 = (pr.h[j - 1] == target)
                                  ? pr.time[j - 1]
                                  : pr.time[j - 1] + segs[j - 1].len * (target - pr.h[j - 1]) /
                                                         (pr.h[j] - pr.h[j - 1]);
                return reflect_window(cartan, segs, pr, i, t0, t1, false);
            }
        }
        throw std::logic_error("no t0 for the raising operator; H(0) should exceed the minimum");
    }

    if (!is_integral(pr.h[u] - pr.min))
        throw Error(Errc::internal_non_integral, "phi is not an integer: invalid path");
    if (pr.h[u] == pr.min) return std::nullopt;
    // t0: last corner attaining the minimum.
    std::size_t v0 = u;
    while (pr.h[v0] != pr.min) --v0;
    const Rational t0 = pr.time[v0];
    // t1: first time after t0 with H = m + 1.
    for (std::size_t j = v0 + 1; j <= u; ++j) {
        if (pr.h[j] >= target) {
            Rational t1 = pr.time[j - 1] +
                          segs[j - 1].len * (target - pr.h[j - 1]) / (pr.h[j] - pr.h[j - 1]);
            return reflect_window(cartan, segs, pr, i, t0, t1, true);
        }
    }
    throw std::logic_error("no t1 for the lowering operator; H(1) should exceed the minimum");
}

}  // namespace

// ---------------------------------------------------------------------------
// LSPath
// ---------------------------------------------------------------------------

LSPath::LSPath(std::shared_ptr<const OrbitContext> ctx, std::vector<long> dirs,
               std::vector<Rational> sigmas)
    : ctx_(std::move(ctx)), dirs_(std::move(dirs)), sigmas_(std::move(sigmas)) {}

LSPath LSPath::validate(const CartanData& cartan, const Weight& lambda, std::vector<long> dirs,
                        std::vector<Rational> sigmas) {
    auto ctx = OrbitContext::get(cartan, lambda);

    if (dirs.empty()) throw Error(Errc::bad_sigmas, "a path needs at least one direction");
    if (sigmas.size() != dirs.size() + 1)
        throw Error(Errc::bad_sigmas, "need exactly one more sigma than directions");
    if (sigmas.front() != 0 || sigmas.back() != 1)
        throw Error(Errc::bad_sigmas, "sigmas must start at 0 and end at 1");
    for (std::size_t v = 1; v < sigmas.size(); ++v)
        if (!(sigmas[v - 1] < sigmas[v]))
            throw Error(Errc::bad_sigmas, "sigmas must be strictly increasing");

    // Canonicalize: merge runs of equal consecutive directions.
    std::vector<long> cdirs;
    std::vector<Rational> csigmas;
    csigmas.push_back(sigmas.front());
    for (std::size_t v = 0; v < dirs.size(); ++v) {
        if (!cdirs.empty() && cdirs.back() == dirs[v]) {
            csigmas.back() = sigmas[v + 1];
        } else {
            cdirs.push_back(dirs[v]);
            csigmas.push_back(sigmas[v + 1]);
        }
    }

    for (std::size_t v = 1; v < cdirs.size(); ++v)
        if (!(cdirs[v - 1] > cdirs[v]))
            throw Error(Errc::not_decreasing, "orbit indices must be strictly decreasing");

    const PSequence& pseq = ctx->pseq();
    for (std::size_t v = 1; v < cdirs.size(); ++v) {
        for (long j = cdirs[v] + 1; j <= cdirs[v - 1]; ++j) {
            if (!is_integral(csigmas[v] * Rational(pseq.p(j))))
                throw Error(Errc::chain_violation,
                            "no sigma-chain at junction " + std::to_string(v) + ": sigma*p_" +
                                std::to_string(j) + " is not an integer",
                            static_cast<long>(v));
        }
    }

    return LSPath(std::move(ctx), std::move(cdirs), std::move(csigmas));
}

LSPath LSPath::straight(const CartanData& cartan, const Weight& lambda) {
    return validate(cartan, lambda, {0}, {Rational(0), Rational(1)});
}

Weight LSPath::direction_weight(std::size_t v) const { return ctx_->weight_of(dirs_.at(v)); }

RationalWeight LSPath::evaluate(const Rational& t) const {
    if (t < 0 || t > 1) throw Error(Errc::out_of_range, "evaluation point outside [0, 1]");
    RationalWeight acc;
    for (std::size_t v = 0; v < dirs_.size(); ++v) {
        if (t <= sigmas_[v]) break;
        const Rational hi = std::min(t, sigmas_[v + 1]);
        acc = acc + (hi - sigmas_[v]) * RationalWeight(ctx_->weight_of(dirs_[v]));
    }
    return acc;
}

Weight LSPath::weight() const {
    const RationalWeight w = evaluate(Rational(1));
    if (!w.integral())
        throw Error(Errc::internal_non_integral, "wt(pi) is not integral: invalid path");
    return {boost::multiprecision::numerator(w.c1), boost::multiprecision::numerator(w.c2)};
}

namespace {

std::vector<Seg> lspath_segments(const OrbitContext& ctx, const std::vector<long>& dirs,
                                 const std::vector<Rational>& sigmas) {
    std::vector<Seg> segs;
    segs.reserve(dirs.size());
    for (std::size_t v = 0; v < dirs.size(); ++v)
        segs.push_back({ctx.weight_of(dirs[v]), sigmas[v + 1] - sigmas[v]});
    return segs;
}

}  // namespace

HProfile LSPath::h_profile(int i) const {
    const Profile pr = corner_profile(lspath_segments(*ctx_, dirs_, sigmas_), i);
    HProfile out;
    out.i = i;
    out.corners = pr.h;
    out.min_value = integral_min(pr);
    return out;
}

Integer LSPath::epsilon(int i) const { return -h_profile(i).min_value; }

Integer LSPath::phi(int i) const {
    const HProfile hp = h_profile(i);
    const Rational diff = hp.end_value() - Rational(hp.min_value);
    if (!is_integral(diff))
        throw Error(Errc::internal_non_integral, "phi is not an integer: invalid path");
    return boost::multiprecision::numerator(diff);
}

namespace {

LSPath path_from_segments(const std::shared_ptr<const OrbitContext>& ctx,
                          const std::vector<Seg>& segs, long lo_hint, long hi_hint) {
    std::vector<long> dirs;
    std::vector<Rational> sigmas;
    dirs.reserve(segs.size());
    sigmas.reserve(segs.size() + 1);
    sigmas.push_back(Rational(0));
    for (const auto& s : segs) {
        dirs.push_back(ctx->index_of(s.dir, lo_hint, hi_hint));
        sigmas.push_back(sigmas.back() + s.len);
    }
    if (sigmas.back() != 1) throw std::logic_error("segment durations do not sum to 1");
    try {
        return LSPath::validate(ctx->cartan(), ctx->shape(), std::move(dirs), std::move(sigmas));
    } catch (const Error& err) {
        throw std::logic_error(std::string("root operator produced an invalid path: ") +
                               err.what());
    }
}

}  // namespace

std::optional<LSPath> LSPath::e(int i) const {
    auto segs = root_operator(cartan(), lspath_segments(*ctx_, dirs_, sigmas_), i, false);
    if (!segs) return std::nullopt;
    // New indices stay within one reflection of the old range.
    return path_from_segments(ctx_, *segs, kappa() - 2, iota() + 2);
}

std::optional<LSPath> LSPath::f(int i) const {
    auto segs = root_operator(cartan(), lspath_segments(*ctx_, dirs_, sigmas_), i, true);
    if (!segs) return std::nullopt;
    return path_from_segments(ctx_, *segs, kappa() - 2, iota() + 2);
}

LSPath LSPath::e_max(int i) const {
    LSPath cur = *this;
    while (auto next = cur.e(i)) cur = std::move(*next);
    return cur;
}

LSPath LSPath::f_max(int i) const {
    LSPath cur = *this;
    while (auto next = cur.f(i)) cur = std::move(*next);
    return cur;
}

std::size_t LSPath::Hash::operator()(const LSPath& p) const {
    std::size_t seed = std::hash<int>{}(p.cartan().a);
    boost::hash_combine(seed, std::hash<int>{}(p.cartan().b));
    boost::hash_combine(seed, hash_integer(p.shape().c1));
    boost::hash_combine(seed, hash_integer(p.shape().c2));
    for (long m : p.dirs()) boost::hash_combine(seed, std::hash<long>{}(m));
    for (const auto& s : p.sigmas()) boost::hash_combine(seed, hash_rational(s));
    return seed;
}

// ---------------------------------------------------------------------------
// ConcatPath
// ---------------------------------------------------------------------------

ConcatPath ConcatPath::of(std::vector<LSPath> factors) {
    if (factors.empty()) throw Error(Errc::shape_mismatch, "a concatenation needs a factor");
    for (const auto& f : factors)
        if (!(f.cartan() == factors.front().cartan() && f.shape() == factors.front().shape()))
            throw Error(Errc::shape_mismatch, "all factors must share one shape");
    return ConcatPath(std::move(factors));
}

Weight ConcatPath::weight() const {
    Weight acc{Integer(0), Integer(0)};
    for (const auto& f : factors_) acc = acc + f.weight();
    return acc;
}

RationalWeight ConcatPath::evaluate(const Rational& t) const {
    if (t < 0 || t > 1) throw Error(Errc::out_of_range, "evaluation point outside [0, 1]");
    const long M = static_cast<long>(factors_.size());
    // factor index k with (k-1)/M <= t <= k/M
    Rational scaled = t * M;
    long k = 1;
    while (k < M && scaled > k) ++k;
    RationalWeight acc;
    for (long j = 0; j < k - 1; ++j) acc = acc + RationalWeight(factors_[j].weight());
    return acc + factors_[k - 1].evaluate(scaled - (k - 1));
}

namespace {

std::vector<Seg> concat_segments(const std::vector<LSPath>& factors) {
    const Integer M(factors.size());
    const Rational invM(Integer(1), M);
    std::vector<Seg> segs;
    for (const auto& f : factors) {
        const auto& dirs = f.dirs();
        const auto& sigmas = f.sigmas();
        for (std::size_t v = 0; v < dirs.size(); ++v)
            segs.push_back({M * f.context()->weight_of(dirs[v]), (sigmas[v + 1] - sigmas[v]) * invM});
    }
    return merge_segments(segs);
}

Weight exact_divide(const Weight& w, const Integer& d) {
    if (w.c1 % d != 0 || w.c2 % d != 0)
        throw std::logic_error("concatenation direction is not a multiple of the factor shape");
    return {w.c1 / d, w.c2 / d};
}

std::optional<ConcatPath> concat_apply(const ConcatPath& cp, int i, bool lowering) {
    const auto& factors = cp.factors();
    auto segs = root_operator(cp.cartan(), concat_segments(factors), i, lowering);
    if (!segs) return std::nullopt;

    const Integer M(factors.size());
    long lo = factors.front().dirs().back(), hi = factors.front().dirs().front();
    for (const auto& f : factors) {
        lo = std::min(lo, f.kappa());
        hi = std::max(hi, f.iota());
    }

    // Cut the joint function back at the factor boundaries k/M and rescale.
    std::vector<LSPath> out;
    out.reserve(factors.size());
    std::size_t j = 0;
    Rational pos = 0;  // time already consumed of segs[j]
    Rational used = 0;
    for (Integer k = 1; k <= M; ++k) {
        const Rational boundary(k, M);
        std::vector<Seg> piece;
        while (used < boundary) {
            if (j >= segs->size())
                throw std::logic_error("operator result is shorter than the concatenation");
            const Rational avail = (*segs)[j].len - pos;
            const Rational take = std::min(avail, boundary - used);
            piece.push_back({exact_divide((*segs)[j].dir, M), take * M});
            used += take;
            pos += take;
            if (pos == (*segs)[j].len) {
                ++j;
                pos = 0;
            }
        }
        out.push_back(
            path_from_segments(factors.front().context(), merge_segments(piece), lo - 2, hi + 2));
    }
    return ConcatPath::of(std::move(out));
}

}  // namespace

HProfile ConcatPath::h_profile(int i) const {
    const Profile pr = corner_profile(concat_segments(factors_), i);
    HProfile out;
    out.i = i;
    out.corners = pr.h;
    out.min_value = integral_min(pr);
    return out;
}

Integer ConcatPath::epsilon(int i) const { return -h_profile(i).min_value; }

Integer ConcatPath::phi(int i) const {
    const HProfile hp = h_profile(i);
    const Rational diff = hp.end_value() - Rational(hp.min_value);
    if (!is_integral(diff))
        throw Error(Errc::internal_non_integral, "phi is not an integer: invalid concatenation");
    return boost::multiprecision::numerator(diff);
}

std::optional<ConcatPath> ConcatPath::e(int i) const { return concat_apply(*this, i, false); }

std::optional<ConcatPath> ConcatPath::f(int i) const { return concat_apply(*this, i, true); }

// ---------------------------------------------------------------------------
// split / join
// ---------------------------------------------------------------------------

std::vector<LSPath> split(const LSPath& path, long factor_count) {
    if (factor_count < 1) throw Error(Errc::not_divisible, "factor count must be at least 1");
    const Integer M(factor_count);
    const Weight& lambda = path.shape();
    if (lambda.c1 % M != 0 || lambda.c2 % M != 0)
        throw Error(Errc::not_divisible, "shape is not divisible by the factor count");
    const Weight mu{lambda.c1 / M, lambda.c2 / M};

    const auto& dirs = path.dirs();
    const auto& sigmas = path.sigmas();

    std::vector<LSPath> out;
    out.reserve(static_cast<std::size_t>(factor_count));
    for (long k = 1; k <= factor_count; ++k) {
        const Rational lo(Integer(k - 1), M);
        const Rational hi(Integer(k), M);
        std::size_t s = 1;
        while (!(sigmas[s] > lo)) ++s;  // sigma_{s-1} <= lo < sigma_s
        std::size_t sp = s;
        while (!(sigmas[sp] >= hi)) ++sp;  // sigma_{sp-1} < hi <= sigma_sp

        std::vector<long> fdirs(dirs.begin() + static_cast<long>(s) - 1,
                                dirs.begin() + static_cast<long>(sp));
        std::vector<Rational> fsigmas;
        fsigmas.push_back(Rational(0));
        for (std::size_t v = s; v < sp; ++v)
            fsigmas.push_back(sigmas[v] * M - Rational(Integer(k - 1)));
        fsigmas.push_back(Rational(1));
        out.push_back(LSPath::validate(path.cartan(), mu, std::move(fdirs), std::move(fsigmas)));
    }
    return out;
}

LSPath path_from_factors(const std::vector<LSPath>& factors) {
    if (factors.empty()) throw Error(Errc::shape_mismatch, "need at least one factor");
    for (const auto& f : factors)
        if (!(f.cartan() == factors.front().cartan() && f.shape() == factors.front().shape()))
            throw Error(Errc::shape_mismatch, "all factors must share one shape");

    const Integer M(factors.size());
    const Weight& mu = factors.front().shape();
    const Weight lambda = M * mu;

    std::vector<long> dirs;
    std::vector<Rational> sigmas;
    sigmas.push_back(Rational(0));
    for (std::size_t k = 0; k < factors.size(); ++k) {
        const auto& f = factors[k];
        dirs.insert(dirs.end(), f.dirs().begin(), f.dirs().end());
        for (std::size_t v = 1; v < f.sigmas().size(); ++v)
            sigmas.push_back((Rational(Integer(k)) + f.sigmas()[v]) / Rational(M));
    }
    return LSPath::validate(factors.front().cartan(), lambda, std::move(dirs), std::move(sigmas));
}

}  // namespace lscrystal
