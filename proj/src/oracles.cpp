#include "lscrystal/oracles.hpp"

#include <algorithm>
#include <set>

namespace lscrystal {

std::vector<RealRoot> positive_real_roots(const CartanData& cartan, int max_word_len) {
    std::vector<RealRoot> out;
    std::set<std::pair<Integer, Integer>> seen;
    std::vector<RealRoot> frontier;
    for (int base : {1, 2}) {
        RealRoot r{simple_root(cartan, base), Integer(base == 1 ? 1 : 0),
                   Integer(base == 2 ? 1 : 0), base, {}};
        seen.insert({r.u, r.v});
        out.push_back(r);
        frontier.push_back(std::move(r));
    }
    for (int len = 1; len <= max_word_len; ++len) {
        std::vector<RealRoot> next;
        for (const auto& r : frontier) {
            for (int i : {1, 2}) {
                // Root-basis action: r1 (u, v) = (a v - u, v), r2 (u, v) = (u, b u - v).
                RealRoot nr;
                nr.base = r.base;
                nr.word = r.word;
                nr.word.insert(nr.word.begin(), i);
                nr.vec = reflect(cartan, i, r.vec);
                if (i == 1) {
                    nr.u = Integer(cartan.a) * r.v - r.u;
                    nr.v = r.v;
                } else {
                    nr.u = r.u;
                    nr.v = Integer(cartan.b) * r.u - r.v;
                }
                if (nr.u < 0 || nr.v < 0) continue;  // not positive
                if (!seen.insert({nr.u, nr.v}).second) continue;
                out.push_back(nr);
                next.push_back(std::move(nr));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

Integer coroot_pairing(const CartanData& cartan, const RealRoot& beta, const Weight& mu) {
    // <mu, w alpha_base^vee> = <w^{-1} mu, alpha_base^vee>; the inverse word
    // applies the outermost reflection to mu first.
    Weight folded = mu;
    for (int i : beta.word) folded = reflect(cartan, i, folded);
    return pairing(folded, beta.base);
}

OrbitOrderOracle::OrbitOrderOracle(const CartanData& cartan, const Weight& lambda, long window_lo,
                                   long window_hi, int max_root_word)
    : lo_(window_lo), hi_(window_hi) {
    if (lo_ > hi_) throw Error(Errc::bad_config, "empty oracle window");
    const int word_len =
        max_root_word > 0 ? max_root_word : static_cast<int>(2 * (hi_ - lo_) + 4);
    const auto roots = positive_real_roots(cartan, word_len);

    const std::size_t n = static_cast<std::size_t>(hi_ - lo_ + 1);
    elems_.reserve(n);
    PSequence seq(cartan, lambda);
    for (long m = lo_; m <= hi_; ++m) elems_.push_back(seq.xm_lambda(m));

    steps_.assign(n, std::vector<std::optional<Integer>>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& beta : roots) {
            const Integer c = coroot_pairing(cartan, beta, elems_[i]);
            if (c >= 0) continue;
            const Weight target = elems_[i] - c * beta.vec;
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j || !(elems_[j] == target)) continue;
                if (steps_[i][j] && *steps_[i][j] != c)
                    throw std::logic_error("two roots realize one orbit step");
                steps_[i][j] = c;
            }
        }
    }

    // Longest chains; the step relation must be acyclic on any finite window.
    dist_.assign(n, std::vector<std::optional<long>>(n));
    std::vector<std::vector<long>> succ(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (steps_[i][j]) succ[i].push_back(static_cast<long>(j));

    for (std::size_t source = 0; source < n; ++source) {
        // Bellman-Ford style longest path; window sizes are tiny.
        std::vector<std::optional<long>> best(n);
        best[source] = 0;
        for (std::size_t rounds = 0; rounds < n + 1; ++rounds) {
            bool changed = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (!best[i]) continue;
                for (long j : succ[i]) {
                    const long candidate = *best[i] + 1;
                    if (candidate > static_cast<long>(n))
                        throw std::logic_error("cycle in the orbit order oracle");
                    if (!best[j] || *best[j] < candidate) {
                        best[j] = candidate;
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }
        dist_[source] = std::move(best);
    }
}

bool OrbitOrderOracle::step_allowed(long m, long n) const {
    return steps_[idx(m)][idx(n)].has_value();
}

std::optional<long> OrbitOrderOracle::dist(long m, long n) const {
    if (m == n) return 0;
    return dist_[idx(m)][idx(n)];
}

bool OrbitOrderOracle::is_cover(long m, long n) const {
    auto d = dist(m, n);
    return d && *d == 1;
}

bool OrbitOrderOracle::search_chain(long at, long target, const Rational& sigma) const {
    if (at == target) return true;
    for (long next = lo_; next <= hi_; ++next) {
        if (next == at || !is_cover(at, next)) continue;
        const Integer& c = *steps_[idx(at)][idx(next)];
        if (!is_integral(sigma * Rational(c))) continue;
        if (search_chain(next, target, sigma)) return true;
    }
    return false;
}

bool OrbitOrderOracle::sigma_chain(long m, long n, const Rational& sigma) const {
    if (!(sigma > 0 && sigma < 1)) throw Error(Errc::out_of_range, "sigma must be in (0, 1)");
    return search_chain(m, n, sigma);
}

std::optional<ConcatPath> tensor_rule_e(const ConcatPath& cp, int i) {
    if (cp.size() != 2) throw Error(Errc::bad_config, "tensor rule oracle handles two factors");
    const LSPath& b1 = cp.factors()[0];
    const LSPath& b2 = cp.factors()[1];
    if (b1.phi(i) >= b2.epsilon(i)) {
        auto moved = b1.e(i);
        if (!moved) return std::nullopt;
        return ConcatPath::of({*moved, b2});
    }
    auto moved = b2.e(i);
    if (!moved) return std::nullopt;
    return ConcatPath::of({b1, *moved});
}

std::optional<ConcatPath> tensor_rule_f(const ConcatPath& cp, int i) {
    if (cp.size() != 2) throw Error(Errc::bad_config, "tensor rule oracle handles two factors");
    const LSPath& b1 = cp.factors()[0];
    const LSPath& b2 = cp.factors()[1];
    if (b1.phi(i) > b2.epsilon(i)) {
        auto moved = b1.f(i);
        if (!moved) return std::nullopt;
        return ConcatPath::of({*moved, b2});
    }
    auto moved = b2.f(i);
    if (!moved) return std::nullopt;
    return ConcatPath::of({b1, *moved});
}

}  // namespace lscrystal
