#include "lscrystal/analysis.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace lscrystal {

std::string to_string(Connectedness c) {
    switch (c) {
        case Connectedness::connected: return "Connected";
        case Connectedness::infinitely_many_components: return "InfinitelyManyComponents";
        case Connectedness::not_star: return "NotStar";
    }
    return "?";
}

Connectedness decide_connectedness(const CartanData& cartan, const Weight& lambda) {
    if (lambda.is_zero()) return Connectedness::not_star;
    const OrbitClassification cls = classify(cartan, lambda);
    if (cls.kind != OrbitKind::star) return Connectedness::not_star;

    PSequence seq(cartan, lambda);
    const auto absp = [&](long j) { return boost::multiprecision::abs(seq.p(j)); };
    const long guard = 64;

    // |p| decreases into the valley and grows strictly afterwards, so a unit
    // value shows up near the witness or not at all.
    for (long j = cls.witness_m;; ++j) {
        if (absp(j) == 1) return Connectedness::connected;
        if (absp(j) >= 2 && absp(j + 1) > absp(j)) break;
        if (j > cls.witness_m + guard) throw std::logic_error("unit scan failed to terminate");
    }
    for (long j = cls.witness_m;; --j) {
        if (absp(j) == 1) return Connectedness::connected;
        if (absp(j) >= 2 && absp(j - 1) > absp(j)) break;
        if (j < cls.witness_m - guard) throw std::logic_error("unit scan failed to terminate");
    }
    return Connectedness::infinitely_many_components;
}

// ---------------------------------------------------------------------------
// QSequence and the C(m, n) machinery
// ---------------------------------------------------------------------------

namespace {

struct QSeed {
    Weight canonical;
    long shift;  // canonical = x_shift(lambda)
    bool mirrored;
    Integer kc, lc;  // canonical = kc L1 - lc L2
    Integer c;
};

QSeed derive_q_seed(const CartanData& cartan, const Weight& lambda) {
    const OrbitClassification cls = classify(cartan, lambda);
    if (cls.kind != OrbitKind::star)
        throw Error(Errc::form_violation, "q-sequence needs a star orbit");
    QSeed s;
    s.canonical = *cls.canonical;
    s.shift = cls.canonical_m;
    s.kc = s.canonical.c1;
    s.lc = -s.canonical.c2;
    if (boost::multiprecision::gcd(s.kc, s.lc) != 1)
        throw Error(Errc::form_violation, "q-sequence needs coprime canonical coordinates");
    if (s.kc == 1 || s.lc == 1)
        throw Error(Errc::form_violation,
                    "orbit holds a unit coordinate: the crystal is connected, no q-sequence");
    s.mirrored = s.kc < s.lc;
    s.c = s.mirrored ? s.lc / s.kc : s.kc / s.lc;
    return s;
}

}  // namespace

QSequence::QSequence(const CartanData& cartan, const Weight& lambda)
    : cartan_(cartan),
      canonical_{Integer(0), Integer(0)},
      shift_(0),
      mirrored_(false),
      c_(0) {
    QSeed s = derive_q_seed(cartan, lambda);
    canonical_ = s.canonical;
    shift_ = s.shift;
    mirrored_ = s.mirrored;
    c_ = s.c;
    pseq_ = std::make_shared<PSequence>(cartan_, canonical_);
    // The mirror swaps the roles of a and b in the recursion.
    q_ = std::make_shared<TwoSidedRecurrence>(mirrored_ ? cartan_.a : cartan_.b,
                                              mirrored_ ? cartan_.b : cartan_.a, Integer(1), c_);
}

Integer QSequence::ratio_numerator(long j) const {
    if (!mirrored_) return q_->at(j);
    return pseq_->p(j) - q_->at(1 - j);
}

Rational QSequence::junction_ratio(long j) const {
    return Rational(ratio_numerator(j), pseq_->p(j));
}

LSPath pi_n(const QSequence& qs, long n) {
    if (n < 1) throw Error(Errc::out_of_range, "pi_n needs n >= 1");
    std::vector<long> dirs;
    std::vector<Rational> sigmas;
    sigmas.push_back(Rational(0));
    for (long m = n; m >= -n; --m) dirs.push_back(m);
    for (long v = 1; v <= 2 * n; ++v) sigmas.push_back(qs.junction_ratio(n + 1 - v));
    sigmas.push_back(Rational(1));
    return LSPath::validate(qs.cartan(), qs.canonical(), std::move(dirs), std::move(sigmas));
}

namespace {

// Shared body of cmn_check / cmn_classes: tests the sigma pattern around a
// fixed 1-based position v whose direction is x_m in canonical indexing.
bool cmn_pattern_at(const LSPath& path, const QSequence& qs, long shift, std::size_t v, long n) {
    const long m = path.dirs()[v - 1] - shift;
    const std::size_t u = path.length();
    if (!(static_cast<long>(v) > n && static_cast<long>(v) < static_cast<long>(u) - n + 1))
        return false;
    for (long s = -n; s <= n - 1; ++s) {
        const Rational& sigma = path.sigmas()[static_cast<std::size_t>(static_cast<long>(v) + s)];
        if (sigma != qs.junction_ratio(m - s)) return false;
    }
    return true;
}

}  // namespace

bool cmn_check(const LSPath& path, long m, long n) {
    if (n < 1) throw Error(Errc::out_of_range, "C(m, n) needs n >= 1");
    const QSequence qs(path.cartan(), path.shape());
    const long shift = qs.canonical_shift();
    const auto& dirs = path.dirs();
    for (std::size_t v = 1; v <= dirs.size(); ++v) {
        if (dirs[v - 1] - shift == m) return cmn_pattern_at(path, qs, shift, v, n);
    }
    return false;
}

std::set<long> cmn_classes(const LSPath& path, long n) {
    if (n < 1) throw Error(Errc::out_of_range, "C(m, n) needs n >= 1");
    const QSequence qs(path.cartan(), path.shape());
    const long shift = qs.canonical_shift();
    std::set<long> out;
    for (std::size_t v = 1; v <= path.length(); ++v)
        if (cmn_pattern_at(path, qs, shift, v, n)) out.insert(path.dirs()[v - 1] - shift);
    return out;
}

// ---------------------------------------------------------------------------
// B_r stratification (shape 2*lambda', lambda' coprime)
// ---------------------------------------------------------------------------

namespace {

void require_d2_shape(const LSPath& path) {
    const Integer k = path.shape().c1;
    const Integer l = -path.shape().c2;
    if (boost::multiprecision::gcd(k, l) != 2)
        throw Error(Errc::not_d2_shape, "shape must be twice a coprime star weight");
}

}  // namespace

long z_gap_class(const LSPath& path) {
    require_d2_shape(path);
    long big_gap = 0;
    int big_count = 0;
    const auto& dirs = path.dirs();
    for (std::size_t v = 1; v < dirs.size(); ++v) {
        const long gap = dirs[v - 1] - dirs[v];
        if (gap >= 2) {
            ++big_count;
            big_gap = gap;
        }
    }
    if (big_count > 1)
        throw Error(Errc::multiple_gaps, "two index gaps >= 2 in one path: invariant breach");
    return big_count == 0 ? 0 : big_gap / 2;
}

// ---------------------------------------------------------------------------
// Constructive connectivity
// ---------------------------------------------------------------------------

std::vector<ReachStep> reach_pi_lambda(const LSPath& path) {
    if (decide_connectedness(path.cartan(), path.shape()) != Connectedness::connected)
        throw Error(Errc::not_applicable_form,
                    "reach_pi_lambda needs a shape whose crystal graph is connected");

    std::vector<ReachStep> steps;
    LSPath cur = path;
    const long cap =
        200 + 10 * (std::abs(path.iota()) + std::abs(path.kappa()) + static_cast<long>(path.length()));
    while (!(cur.length() == 1 && cur.iota() == 0)) {
        if (static_cast<long>(steps.size()) > cap)
            throw Error(Errc::non_termination, "reach_pi_lambda exceeded its step cap: bug");
        const long head = cur.iota();
        const long tail = cur.kappa();
        if (head > 0) {
            const int i = down_label(head);
            const Integer count = cur.epsilon(i);
            cur = cur.e_max(i);
            if (count < 1 || cur.iota() != head - 1)
                throw std::logic_error("e_max did not strip the leading direction");
            steps.push_back({true, i, count});
        } else if (tail < 0) {
            const int i = up_label(tail);
            const Integer count = cur.phi(i);
            cur = cur.f_max(i);
            if (count < 1 || cur.kappa() != tail + 1)
                throw std::logic_error("f_max did not strip the trailing direction");
            steps.push_back({false, i, count});
        } else {
            throw std::logic_error("non-straight path with head <= 0 <= tail");
        }
    }
    return steps;
}

LSPath phi_projection(const LSPath& path, long d) {
    if (d < 2) throw Error(Errc::not_divisible, "phi projection needs d >= 2");
    std::vector<LSPath> factors = split(path, d);
    return path_from_factors({factors[0], factors[1]});
}

// ---------------------------------------------------------------------------
// Exploration
// ---------------------------------------------------------------------------

namespace {

// Runs fn(chunk_lo, chunk_hi) over [0, n) on `workers` threads; chunk results
// land in preallocated slots, keeping every downstream merge deterministic.
template <typename Fn>
void run_chunked(std::size_t n, int workers, Fn&& fn) {
    const int usable = std::max(1, workers);
    if (usable == 1 || n < 2) {
        fn(0, std::size_t{0}, n);
        return;
    }
    const std::size_t chunks = std::min<std::size_t>(static_cast<std::size_t>(usable), n);
    const std::size_t per = (n + chunks - 1) / chunks;
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t lo = c * per;
        const std::size_t hi = std::min(n, lo + per);
        pool.emplace_back([&fn, c, lo, hi] { fn(c, lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

ComponentReport explore(const LSPath& seed, const ExploreLimits& limits,
                        const std::vector<NodeChecker>& node_checkers,
                        const std::vector<EdgeChecker>& edge_checkers) {
    ComponentReport rep{seed, {}, {}, false, 0, {}, {}};
    rep.visited.push_back(seed);
    std::unordered_map<LSPath, std::size_t, LSPath::Hash> index;
    index.emplace(seed, 0);
    std::set<ComponentReport::Edge> edge_dedup;
    bool limit_hit = false;

    struct Expansion {
        std::optional<LSPath> child[4];  // e1, e2, f1, f2
    };

    std::size_t round_begin = 0;
    std::size_t round_end = 1;
    for (long d = 0; d < limits.max_depth && round_begin < round_end && !limit_hit; ++d) {
        const std::size_t count = round_end - round_begin;
        std::vector<Expansion> expansions(count);
        run_chunked(count, limits.workers, [&](std::size_t, std::size_t lo, std::size_t hi) {
            for (std::size_t idx = lo; idx < hi; ++idx) {
                const LSPath& parent = rep.visited[round_begin + idx];
                expansions[idx].child[0] = parent.e(1);
                expansions[idx].child[1] = parent.e(2);
                expansions[idx].child[2] = parent.f(1);
                expansions[idx].child[3] = parent.f(2);
            }
        });

        bool new_nodes = false;
        for (std::size_t idx = 0; idx < count && !limit_hit; ++idx) {
            const std::size_t parent_id = round_begin + idx;
            for (int op = 0; op < 4; ++op) {
                auto& child = expansions[idx].child[op];
                if (!child) continue;
                auto it = index.find(*child);
                std::size_t child_id;
                if (it != index.end()) {
                    child_id = it->second;
                } else if (rep.visited.size() >= limits.max_nodes) {
                    limit_hit = true;
                    break;
                } else {
                    child_id = rep.visited.size();
                    rep.visited.push_back(std::move(*child));
                    index.emplace(rep.visited.back(), child_id);
                    new_nodes = true;
                }
                const int i = (op % 2 == 0) ? 1 : 2;
                // e_i(parent) = child means f_i(child) = parent.
                const ComponentReport::Edge edge = (op < 2)
                                                       ? ComponentReport::Edge{child_id, parent_id, i}
                                                       : ComponentReport::Edge{parent_id, child_id, i};
                if (edge_dedup.insert(edge).second) rep.edges.push_back(edge);
            }
        }
        rep.stats["nodes_expanded"] += count;
        if (new_nodes) rep.depth_reached = d + 1;
        round_begin = round_end;
        round_end = rep.visited.size();
    }
    rep.frontier_exhausted = !limit_hit && round_begin == round_end;

    // Invariant checking pass, deterministic in (checker, node/edge) order.
    for (const auto& checker : node_checkers) {
        std::vector<std::vector<std::string>> results(rep.visited.size());
        run_chunked(rep.visited.size(), limits.workers,
                    [&](std::size_t, std::size_t lo, std::size_t hi) {
                        for (std::size_t id = lo; id < hi; ++id)
                            results[id] = checker.check(rep.visited[id]);
                    });
        std::size_t bad = 0;
        for (std::size_t id = 0; id < results.size(); ++id)
            for (auto& msg : results[id]) {
                rep.violations.push_back({checker.name, std::move(msg), id});
                ++bad;
            }
        rep.stats[checker.name + ":checked"] += rep.visited.size();
        rep.stats[checker.name + ":violations"] += bad;
    }
    for (const auto& checker : edge_checkers) {
        std::vector<std::vector<std::string>> results(rep.edges.size());
        run_chunked(rep.edges.size(), limits.workers,
                    [&](std::size_t, std::size_t lo, std::size_t hi) {
                        for (std::size_t id = lo; id < hi; ++id) {
                            const auto& e = rep.edges[id];
                            results[id] =
                                checker.check(rep.visited[e.from], e.i, rep.visited[e.to]);
                        }
                    });
        std::size_t bad = 0;
        for (std::size_t id = 0; id < results.size(); ++id)
            for (auto& msg : results[id]) {
                rep.violations.push_back({checker.name, std::move(msg), rep.edges[id].from});
                ++bad;
            }
        rep.stats[checker.name + ":checked"] += rep.edges.size();
        rep.stats[checker.name + ":violations"] += bad;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Stock checkers
// ---------------------------------------------------------------------------

namespace {

std::string path_brief(const LSPath& p) {
    std::string out = "dirs[";
    for (std::size_t v = 0; v < p.dirs().size(); ++v) {
        if (v) out += ",";
        out += std::to_string(p.dirs()[v]);
    }
    out += "] sigmas[";
    for (std::size_t v = 0; v < p.sigmas().size(); ++v) {
        if (v) out += ",";
        out += to_string(p.sigmas()[v]);
    }
    return out + "]";
}

}  // namespace

NodeChecker crystal_axioms_checker() {
    return {"crystal_axioms", [](const LSPath& p) {
                std::vector<std::string> msgs;
                const Weight wt = p.weight();
                for (int i : {1, 2}) {
                    const Weight alpha = simple_root(p.cartan(), i);
                    const Integer eps = p.epsilon(i);
                    const Integer ph = p.phi(i);
                    if (ph - eps != pairing(wt, i))
                        msgs.push_back("phi - epsilon != <wt, alpha^vee> at i=" +
                                       std::to_string(i) + " for " + path_brief(p));

                    // Re-derive epsilon/phi by exhausting the operators.
                    Integer cnt = 0;
                    for (LSPath cur = p;;) {
                        auto nx = cur.e(i);
                        if (!nx) break;
                        cur = std::move(*nx);
                        if (++cnt > eps + 2) break;
                    }
                    if (cnt != eps)
                        msgs.push_back("epsilon mismatch (profile " + to_string(eps) +
                                       ", counted " + to_string(cnt) + ") at i=" +
                                       std::to_string(i) + " for " + path_brief(p));
                    cnt = 0;
                    for (LSPath cur = p;;) {
                        auto nx = cur.f(i);
                        if (!nx) break;
                        cur = std::move(*nx);
                        if (++cnt > ph + 2) break;
                    }
                    if (cnt != ph)
                        msgs.push_back("phi mismatch (profile " + to_string(ph) + ", counted " +
                                       to_string(cnt) + ") at i=" + std::to_string(i) + " for " +
                                       path_brief(p));

                    if (auto ep = p.e(i)) {
                        if (ep->weight() != wt + alpha)
                            msgs.push_back("wt(e pi) != wt(pi) + alpha at i=" + std::to_string(i) +
                                           " for " + path_brief(p));
                        if (ep->epsilon(i) != eps - 1 || ep->phi(i) != ph + 1)
                            msgs.push_back("epsilon/phi bookkeeping broken by e at i=" +
                                           std::to_string(i) + " for " + path_brief(p));
                        auto back = ep->f(i);
                        if (!back || !(*back == p))
                            msgs.push_back("f(e pi) != pi at i=" + std::to_string(i) + " for " +
                                           path_brief(p));
                    }
                    if (auto fp = p.f(i)) {
                        if (fp->weight() != wt - alpha)
                            msgs.push_back("wt(f pi) != wt(pi) - alpha at i=" + std::to_string(i) +
                                           " for " + path_brief(p));
                        if (fp->epsilon(i) != eps + 1 || fp->phi(i) != ph - 1)
                            msgs.push_back("epsilon/phi bookkeeping broken by f at i=" +
                                           std::to_string(i) + " for " + path_brief(p));
                        auto back = fp->e(i);
                        if (!back || !(*back == p))
                            msgs.push_back("e(f pi) != pi at i=" + std::to_string(i) + " for " +
                                           path_brief(p));
                    }
                }
                // Defensive re-validation must reproduce the path unchanged.
                try {
                    const LSPath again =
                        LSPath::validate(p.cartan(), p.shape(), p.dirs(), p.sigmas());
                    if (!(again == p)) msgs.push_back("re-validation changed " + path_brief(p));
                } catch (const Error& err) {
                    msgs.push_back(std::string("re-validation failed: ") + err.what() + " for " +
                                   path_brief(p));
                }
                return msgs;
            }};
}

NodeChecker dirs_dichotomy_checker() {
    return {"dirs_dichotomy", [](const LSPath& p) {
                std::vector<std::string> msgs;
                if (!(p.kappa() >= 0 || p.iota() <= -1))
                    msgs.push_back("directions cross the 0 / -1 junction in " + path_brief(p));
                return msgs;
            }};
}

NodeChecker min_length_checker(std::size_t min_u) {
    return {"min_length", [min_u](const LSPath& p) {
                std::vector<std::string> msgs;
                if (p.length() < min_u)
                    msgs.push_back("path length " + std::to_string(p.length()) + " below " +
                                   std::to_string(min_u) + ": " + path_brief(p));
                return msgs;
            }};
}

NodeChecker half_point_integral_checker() {
    return {"half_point_integral", [](const LSPath& p) {
                std::vector<std::string> msgs;
                if (!p.evaluate(Rational(1, 2)).integral())
                    msgs.push_back("pi(1/2) is not integral for " + path_brief(p));
                return msgs;
            }};
}

NodeChecker cmn_membership_checker(long n) {
    return {"cmn_membership", [n](const LSPath& p) {
                std::vector<std::string> msgs;
                if (cmn_classes(p, n).empty())
                    msgs.push_back("no C(m, " + std::to_string(n) + ") holds for " + path_brief(p));
                return msgs;
            }};
}

NodeChecker br_gap_location_checker() {
    return {"br_gap_location", [](const LSPath& p) {
                std::vector<std::string> msgs;
                const auto& dirs = p.dirs();
                int big = 0;
                for (std::size_t v = 1; v < dirs.size(); ++v) {
                    if (dirs[v - 1] - dirs[v] >= 2) {
                        ++big;
                        if (p.sigmas()[v] != Rational(1, 2))
                            msgs.push_back("gap >= 2 away from sigma = 1/2 in " + path_brief(p));
                    }
                }
                if (big > 1) msgs.push_back("more than one gap >= 2 in " + path_brief(p));
                return msgs;
            }};
}

EdgeChecker cmn_closure_checker(long n) {
    return {"cmn_closure", [n](const LSPath& from, int i, const LSPath& to) {
                std::vector<std::string> msgs;
                const std::set<long> mf = cmn_classes(from, n);
                const std::set<long> mt = cmn_classes(to, n);
                // f_i(from) = to: C(m, n) propagates to C(m, n) or C(m+1, n).
                for (long m : mf)
                    if (!mt.count(m) && !mt.count(m + 1))
                        msgs.push_back("f" + std::to_string(i) + " lost C(" + std::to_string(m) +
                                       "," + std::to_string(n) + "): " + path_brief(to));
                // e_i(to) = from: C(m, n) propagates to C(m, n) or C(m-1, n).
                for (long m : mt)
                    if (!mf.count(m) && !mf.count(m - 1))
                        msgs.push_back("e" + std::to_string(i) + " lost C(" + std::to_string(m) +
                                       "," + std::to_string(n) + "): " + path_brief(from));
                return msgs;
            }};
}

EdgeChecker br_closure_checker() {
    return {"br_closure", [](const LSPath& from, int i, const LSPath& to) {
                std::vector<std::string> msgs;
                try {
                    if (z_gap_class(from) != z_gap_class(to))
                        msgs.push_back("f" + std::to_string(i) + " changed the gap class: " +
                                       path_brief(from) + " -> " + path_brief(to));
                } catch (const Error& err) {
                    msgs.push_back(std::string("gap class undefined: ") + err.what());
                }
                return msgs;
            }};
}

}  // namespace lscrystal
