#include "lscrystal/verify.hpp"

#include <numeric>
#include <sstream>

#include "lscrystal/json_io.hpp"
#include "lscrystal/oracles.hpp"

namespace lscrystal {

namespace {

void fail(SuiteResult& r, std::string msg) { r.failures.push_back(std::move(msg)); }

void info(SuiteResult& r, std::string msg) { r.lines.push_back(std::move(msg)); }

std::string weight_str(const Weight& w) { return w.c1.str() + "*L1 + " + w.c2.str() + "*L2"; }

void report_explore(SuiteResult& r, const ComponentReport& rep, const std::string& label) {
    std::ostringstream os;
    os << label << ": visited " << rep.visited_count() << ", edges " << rep.edge_count()
       << ", depth " << rep.depth_reached << (rep.frontier_exhausted ? ", exhausted" : "");
    info(r, os.str());
    for (const auto& v : rep.violations)
        fail(r, label + ": [" + v.checker + "] " + v.message +
                    " path=" + path_to_json(rep.visited[v.node]).dump());
}

}  // namespace

SuiteResult verify_orbit(const CartanData& cartan, const Weight& lambda,
                         const VerifyOptions& opt) {
    SuiteResult r{"orbit", {}, {}};
    PSequence seq(cartan, lambda);

    // Closed orbit formula against the word-folding oracle.
    for (long m = -opt.m_window; m <= opt.m_window; ++m) {
        if (!(seq.xm_lambda(m) == act_xm_by_word(cartan, m, lambda))) {
            fail(r, "xm_lambda(" + std::to_string(m) + ") != word oracle");
        }
    }
    info(r, "closed formula = word oracle on [-" + std::to_string(opt.m_window) + ", " +
                std::to_string(opt.m_window) + "]");

    // Sign dichotomy on the p-window versus the classifier's verdict.
    bool all_pos = true, all_neg = true;
    for (long m = -opt.p_window; m <= opt.p_window; ++m) {
        if (seq.p(m) <= 0) all_pos = false;
        if (seq.p(m) >= 0) all_neg = false;
    }
    const OrbitClassification cls = classify(cartan, lambda);
    if ((cls.kind == OrbitKind::star) != (all_pos || all_neg))
        fail(r, "classification disagrees with the p-sign window");

    if (cls.kind == OrbitKind::star) {
        const Integer kc = cls.canonical->c1;
        const Integer lc = -cls.canonical->c2;
        const bool form_i = lc <= kc && kc < (cartan.a - 1) * lc;
        const bool form_ii = kc < lc && lc <= (cartan.b - 1) * kc;
        if (!form_i && !form_ii)
            fail(r, "canonical " + weight_str(*cls.canonical) + " satisfies neither form");
        info(r, "canonical " + weight_str(*cls.canonical) + " (form " + to_string(*cls.form_tag) +
                    (cls.negated ? ", negative-sequence representative)" : ")"));

        // Valley shape: |p| strictly decreasing into the minimum interval,
        // strictly increasing after it.
        const auto absp = [&seq](long m) { return boost::multiprecision::abs(seq.p(m)); };
        long left = cls.witness_m, right = cls.witness_m;
        while (absp(left - 1) == absp(cls.witness_m)) --left;
        while (absp(right + 1) == absp(cls.witness_m)) ++right;
        for (long m = left - 6; m < left; ++m)
            if (!(absp(m) > absp(m + 1))) fail(r, "|p| not strictly decreasing before valley");
        for (long m = right; m < right + 6; ++m)
            if (!(absp(m) < absp(m + 1))) fail(r, "|p| not strictly increasing after valley");

        // Orbit invariance of the classification; the `negated` flag is a
        // property of the representative, not the orbit, so it may differ.
        for (long m = -6; m <= 6; ++m) {
            const OrbitClassification shifted = classify(cartan, seq.xm_lambda(m));
            if (shifted.kind != cls.kind || !(shifted.canonical == cls.canonical) ||
                !(shifted.form_tag == cls.form_tag))
                fail(r, "classification not orbit-invariant at m = " + std::to_string(m));
        }

        // Coprimality propagates along the sequence.
        if (boost::multiprecision::gcd(seq.p(0), seq.p(1)) == 1) {
            for (long m = -10; m <= 10; ++m)
                if (boost::multiprecision::gcd(seq.p(m), seq.p(m + 1)) != 1)
                    fail(r, "gcd(p_m, p_{m+1}) != 1 at m = " + std::to_string(m));
            info(r, "adjacent p-values stay coprime on [-10, 10]");
        }

        // Cover labels realize the chain by simple reflections.
        for (long m = -6; m <= 6; ++m) {
            const HasseCover cover = hasse_cover(seq, m);
            if (cover.lower_m != m - 1 ||
                !(reflect(cartan, cover.label, seq.xm_lambda(m)) == seq.xm_lambda(m - 1)))
                fail(r, "cover label wrong at m = " + std::to_string(m));
        }

        // Distances and sigma-chains against the brute-force order oracle.
        const long w = opt.chain_window;
        OrbitOrderOracle oracle(cartan, lambda, -w - 6, w + 6);
        const bool positive = seq.p(0) > 0;
        for (long m = -w; m <= w; ++m) {
            for (long n = -w; n <= m; ++n) {
                const long expect = m - n;
                const auto got = positive ? oracle.dist(m, n) : oracle.dist(n, m);
                if (!got || *got != expect)
                    fail(r, "oracle dist mismatch at (" + std::to_string(m) + ", " +
                                std::to_string(n) + ")");
                if (dist(seq, m, n) != expect) fail(r, "chain dist mismatch");
            }
        }
        std::size_t chain_checks = 0;
        for (long m = -w; m <= w; ++m) {
            for (long n = -w; n < m; ++n) {
                for (long den = 2; den <= opt.chain_denominator_max; ++den) {
                    for (long num = 1; num < den; ++num) {
                        if (std::gcd(num, den) != 1) continue;
                        const Rational sigma(num, den);
                        const bool fast = sigma_chain_exists(seq, m, n, sigma);
                        const bool slow = positive ? oracle.sigma_chain(m, n, sigma)
                                                   : oracle.sigma_chain(n, m, sigma);
                        ++chain_checks;
                        if (fast != slow)
                            fail(r, "sigma-chain mismatch at (" + std::to_string(m) + ", " +
                                        std::to_string(n) + ", " + to_string(sigma) + ")");
                    }
                }
            }
        }
        info(r, "sigma-chain oracle agreement on " + std::to_string(chain_checks) + " triples");
    }
    return r;
}

SuiteResult verify_crystal(const CartanData& cartan, const Weight& lambda,
                           const VerifyOptions& opt) {
    SuiteResult r{"crystal", {}, {}};
    const LSPath seed = LSPath::straight(cartan, lambda);
    ExploreLimits limits{opt.depth, 200000, opt.workers};
    const ComponentReport rep = explore(seed, limits, {crystal_axioms_checker()}, {});
    report_explore(r, rep, "pi_lambda ball");
    return r;
}

SuiteResult verify_cmn(const CartanData& cartan, const Weight& lambda, const VerifyOptions& opt) {
    SuiteResult r{"cmn", {}, {}};
    QSequence qs(cartan, lambda);
    info(r, std::string("canonical ") + weight_str(qs.canonical()) +
                (qs.mirrored() ? " (mirrored)" : "") + ", c = " + qs.c().str());

    // Determinant identity and the ratio ladder.
    const Integer constant =
        qs.ratio_numerator(0) * qs.pseq().p(1) - qs.ratio_numerator(1) * qs.pseq().p(0);
    for (long m = -10; m <= 10; ++m) {
        const Integer num = qs.ratio_numerator(m);
        if (!(num > 0 && num < qs.pseq().p(m)))
            fail(r, "ratio numerator out of (0, p_m) at m = " + std::to_string(m));
        const Integer det =
            qs.ratio_numerator(m) * qs.pseq().p(m + 1) - qs.ratio_numerator(m + 1) * qs.pseq().p(m);
        if (det != constant) fail(r, "determinant identity broken at m = " + std::to_string(m));
        if (!(qs.junction_ratio(m + 1) < qs.junction_ratio(m)))
            fail(r, "junction ratios not strictly decreasing at m = " + std::to_string(m));
    }
    info(r, "determinant q_m p_{m+1} - q_{m+1} p_m = " + constant.str() + " on [-10, 10]");

    // Corner bracketing along the prescribed cut pattern of the seed: over
    // the window of 2n cuts, corners at the center's parity repeat its value
    // and the others stay strictly within one unit above.  The mirrored
    // orientation swaps the color and shifts the center one cut down.
    {
        const LSPath seed = pi_n(qs, opt.n);
        const int j = qs.mirrored() ? 1 : 2;
        const HProfile hp = seed.h_profile(j);
        const long center = qs.mirrored() ? opt.n : opt.n + 1;
        const Rational& center_value = hp.corners[static_cast<std::size_t>(center)];
        if (!is_integral(center_value)) fail(r, "center corner of the C-pattern is not integral");
        for (long cut = 1; cut <= 2 * opt.n; ++cut) {
            const Rational& corner = hp.corners[static_cast<std::size_t>(cut)];
            const bool ok = ((cut - center) % 2 == 0)
                                ? corner == center_value
                                : (center_value < corner && corner < center_value + 1);
            if (!ok) fail(r, "H corner bracketing fails at cut " + std::to_string(cut));
        }
    }

    // Seeds validate, have length 2n+1 and satisfy C(0, n).
    std::vector<ComponentReport> reports;
    for (long n = 1; n <= std::max<long>(3, opt.n); ++n) {
        const LSPath seed = pi_n(qs, n);
        if (seed.length() != static_cast<std::size_t>(2 * n + 1))
            fail(r, "pi_n(" + std::to_string(n) + ") has wrong length");
        if (!cmn_check(seed, 0, n)) fail(r, "pi_n(" + std::to_string(n) + ") fails C(0, n)");
        seed.weight();  // integrality asserted internally
    }
    for (long n = 1; n <= 3; ++n) {
        const LSPath seed = pi_n(qs, n);
        ExploreLimits limits{opt.depth, 200000, opt.workers};
        ComponentReport rep =
            explore(seed, limits,
                    {cmn_membership_checker(n),
                     min_length_checker(static_cast<std::size_t>(2 * n + 1))},
                    {cmn_closure_checker(n)});
        report_explore(r, rep, "pi_n(" + std::to_string(n) + ") ball");
        reports.push_back(std::move(rep));
    }

    // Pairwise disjoint components.
    for (std::size_t x = 0; x < reports.size(); ++x) {
        std::unordered_map<LSPath, bool, LSPath::Hash> in_x;
        for (const auto& p : reports[x].visited) in_x.emplace(p, true);
        for (std::size_t y = x + 1; y < reports.size(); ++y) {
            for (const auto& p : reports[y].visited)
                if (in_x.count(p))
                    fail(r, "components " + std::to_string(x + 1) + " and " +
                                std::to_string(y + 1) + " intersect");
        }
    }
    info(r, "visited sets of pi_n(1..3) are pairwise disjoint");
    return r;
}

SuiteResult verify_br(const CartanData& cartan, const Weight& lambda, const VerifyOptions& opt) {
    SuiteResult r{"br", {}, {}};
    for (long gap_class = 0; gap_class <= 2; ++gap_class) {
        LSPath seed = gap_class == 0
                          ? LSPath::straight(cartan, lambda)
                          : LSPath::validate(cartan, lambda, {gap_class, -gap_class},
                                             {Rational(0), Rational(1, 2), Rational(1)});
        if (z_gap_class(seed) != gap_class)
            fail(r, "seed gap class != " + std::to_string(gap_class));
        ExploreLimits limits{opt.depth, 200000, opt.workers};
        const ComponentReport rep =
            explore(seed, limits, {br_gap_location_checker(), half_point_integral_checker()},
                    {br_closure_checker()});
        report_explore(r, rep, "B_" + std::to_string(gap_class) + " ball");
    }
    return r;
}

SuiteResult verify_connect(const CartanData& cartan, const Weight& lambda,
                           const VerifyOptions& opt) {
    SuiteResult r{"connect", {}, {}};
    if (decide_connectedness(cartan, lambda) != Connectedness::connected) {
        fail(r, "decision procedure says the crystal graph is not connected");
        return r;
    }
    const LSPath seed = LSPath::straight(cartan, lambda);
    ExploreLimits limits{opt.depth, 200000, opt.workers};
    std::vector<NodeChecker> checkers = {crystal_axioms_checker()};
    // No path crosses the 0 / -1 junction when p_0 = 1, so the directions
    // split into the nonnegative and the negative branch.
    if (boost::multiprecision::abs(PSequence(cartan, lambda).p(0)) == 1)
        checkers.push_back(dirs_dichotomy_checker());
    const ComponentReport rep = explore(seed, limits, checkers, {});
    report_explore(r, rep, "pi_lambda ball");

    std::size_t reached = 0;
    for (const auto& node : rep.visited) {
        std::vector<ReachStep> steps;
        try {
            steps = reach_pi_lambda(node);
        } catch (const Error& err) {
            fail(r, std::string("reach_pi_lambda failed: ") + err.what());
            continue;
        }
        // Replay the recorded strips and confirm they land on pi_lambda.
        LSPath cur = node;
        for (const auto& step : steps) cur = step.raising ? cur.e_max(step.i) : cur.f_max(step.i);
        if (cur == seed)
            ++reached;
        else
            fail(r, "recorded strip sequence does not reach pi_lambda");
    }
    info(r, std::to_string(reached) + "/" + std::to_string(rep.visited_count()) +
                " nodes return to pi_lambda");
    return r;
}

}  // namespace lscrystal
