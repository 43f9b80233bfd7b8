#include "doctest.h"
#include "lscrystal/analysis.hpp"
#include "lscrystal/oracles.hpp"
#include "lscrystal/verify.hpp"

#include <random>

using namespace lscrystal;

namespace {
Weight w(long c1, long c2) { return Weight{Integer(c1), Integer(c2)}; }
Rational frac(long num, long den) { return Rational(num, den); }
}  // namespace

TEST_CASE("connectedness decision") {
    CHECK(decide_connectedness(CartanData(2, 3), w(1, -1)) == Connectedness::connected);
    CHECK(decide_connectedness(CartanData(3, 3), w(1, -1)) == Connectedness::connected);
    CHECK(decide_connectedness(CartanData(2, 4), w(1, -2)) == Connectedness::connected);
    CHECK(decide_connectedness(CartanData(4, 3), w(3, -2)) ==
          Connectedness::infinitely_many_components);
    CHECK(decide_connectedness(CartanData(3, 3), w(2, -2)) ==
          Connectedness::infinitely_many_components);
    CHECK(decide_connectedness(CartanData(5, 2), w(3, -2)) ==
          Connectedness::infinitely_many_components);
    CHECK(decide_connectedness(CartanData(3, 3), w(1, 1)) == Connectedness::not_star);
    CHECK(decide_connectedness(CartanData(3, 3), w(0, 0)) == Connectedness::not_star);
}

TEST_CASE("connectedness is constant along the orbit") {
    for (const auto& [a, b, k, l] : {std::tuple{4, 3, 3L, -2L}, {2, 3, 1L, -1L}}) {
        const CartanData cartan(a, b);
        PSequence seq(cartan, w(k, l));
        const auto base = decide_connectedness(cartan, w(k, l));
        for (long m = -6; m <= 6; ++m)
            CHECK(decide_connectedness(cartan, seq.xm_lambda(m)) == base);
    }
}

TEST_CASE("q sequence at (4,3,3,-2)") {
    const QSequence qs(CartanData(4, 3), w(3, -2));
    CHECK_FALSE(qs.mirrored());
    CHECK(qs.canonical() == w(3, -2));
    CHECK(qs.c() == 1);
    CHECK(qs.q(0) == 1);
    CHECK(qs.q(1) == 1);
    CHECK(qs.q(2) == 2);   // b q_1 - q_0 = 3 - 1
    CHECK(qs.q(-1) == 3);  // a q_0 - q_1 = 4 - 1
    // Determinant identity and the bound 0 < q < p.
    CHECK(qs.q(1) * qs.pseq().p(2) - qs.q(2) * qs.pseq().p(1) == 1);  // k - l c = 1
    CHECK(qs.q(-1) < qs.pseq().p(-1));
    CHECK(qs.pseq().p(-1) == 5);
}

TEST_CASE("q sequence form violations") {
    CHECK_THROWS_AS(QSequence(CartanData(3, 3), w(2, -2)), Error);  // not coprime
    CHECK_THROWS_AS(QSequence(CartanData(2, 3), w(1, -1)), Error);  // unit coordinate
    CHECK_THROWS_AS(QSequence(CartanData(3, 3), w(1, 1)), Error);   // not star
}

TEST_CASE("q sequence invariants on a window") {
    for (const auto& [a, b, k, l] : {std::tuple{4, 3, 3L, -2L}, {3, 4, 2L, -3L}}) {
        const QSequence qs(CartanData(a, b), w(k, l));
        const Integer constant =
            qs.ratio_numerator(0) * qs.pseq().p(1) - qs.ratio_numerator(1) * qs.pseq().p(0);
        for (long m = -10; m <= 10; ++m) {
            CHECK(qs.ratio_numerator(m) > 0);
            CHECK(qs.ratio_numerator(m) < qs.pseq().p(m));
            CHECK(qs.ratio_numerator(m) * qs.pseq().p(m + 1) -
                      qs.ratio_numerator(m + 1) * qs.pseq().p(m) ==
                  constant);
            CHECK(qs.junction_ratio(m + 1) < qs.junction_ratio(m));
        }
    }
}

TEST_CASE("the mirrored construction matches the direct one under the flip") {
    // (3,4,2,-3) is form (ii); its mirror is the direct (4,3,3,-2) machinery.
    const QSequence direct(CartanData(4, 3), w(3, -2));
    const QSequence mirrored(CartanData(3, 4), w(2, -3));
    CHECK(mirrored.mirrored());
    for (long j = -6; j <= 6; ++j) {
        CHECK(mirrored.pseq().p(j) == direct.pseq().p(1 - j));
        CHECK(mirrored.junction_ratio(j) == 1 - direct.junction_ratio(1 - j));
    }
}

TEST_CASE("pi_n seeds") {
    const QSequence qs(CartanData(4, 3), w(3, -2));
    const LSPath p1 = pi_n(qs, 1);
    CHECK(p1.dirs() == std::vector<long>{1, 0, -1});
    CHECK(p1.sigmas() ==
          std::vector<Rational>{frac(0, 1), frac(1, 3), frac(1, 2), frac(1, 1)});
    for (long n = 1; n <= 4; ++n) {
        const LSPath pn = pi_n(qs, n);
        CHECK(pn.length() == static_cast<std::size_t>(2 * n + 1));
        CHECK_NOTHROW(pn.weight());
        CHECK(cmn_check(pn, 0, n));
        CHECK_FALSE(cmn_check(pn, 1, n));
    }
    CHECK_THROWS_AS(pi_n(qs, 0), Error);
}

TEST_CASE("pi_n evaluation, frozen values") {
    // pi^(1) at (4,3,3,-2): 1/3*(-3,7) + 1/6*(3,-2) = (-1/2, 2) at t = 1/2
    // and (-3, 3) at t = 1.  The half point need not be integral here; that
    // integrality statement belongs to the non-coprime d = 2 shapes.
    const QSequence qs(CartanData(4, 3), w(3, -2));
    const LSPath p1 = pi_n(qs, 1);
    CHECK(p1.evaluate(frac(1, 2)) == RationalWeight(frac(-1, 2), frac(2, 1)));
    CHECK(p1.weight() == w(-3, 3));
}

TEST_CASE("mirrored form: seeds validate and closure holds") {
    // (3,4,2,-3) has canonical form (ii); the q-machinery runs mirrored.
    const CartanData cartan(3, 4);
    const QSequence qs(cartan, w(2, -3));
    REQUIRE(qs.mirrored());
    for (long n : {1L, 2L}) {
        const LSPath seed = pi_n(qs, n);
        CHECK(seed.length() == static_cast<std::size_t>(2 * n + 1));
        CHECK(cmn_check(seed, 0, n));
        const ComponentReport rep =
            explore(seed, {3, 100000, 1},
                    {cmn_membership_checker(n), crystal_axioms_checker(),
                     min_length_checker(static_cast<std::size_t>(2 * n + 1))},
                    {cmn_closure_checker(n)});
        CHECK(rep.clean());
    }
}

TEST_CASE("mirrored seed junctions pass the brute-force sigma-chain search") {
    const CartanData cartan(3, 4);
    const Weight lambda = w(2, -3);
    const QSequence qs(cartan, lambda);
    REQUIRE(qs.mirrored());
    const LSPath seed = pi_n(qs, 2);
    OrbitOrderOracle oracle(cartan, lambda, -8, 8);
    for (std::size_t v = 1; v < seed.length(); ++v)
        CHECK(oracle.sigma_chain(seed.dirs()[v - 1], seed.dirs()[v], seed.sigmas()[v]));
    // And a junction value that the ratio family does not admit fails both.
    CHECK_FALSE(oracle.sigma_chain(1, 0, Rational(1, 7)));
    PSequence seq(cartan, lambda);
    CHECK_FALSE(sigma_chain_exists(seq, 1, 0, Rational(1, 7)));
}

TEST_CASE("C-patterns normalize non-canonical shape representatives") {
    // (25,-7) = x_2(3L1 - 2L2) at (4,3): the canonical weight sits at index
    // -2 of this representative, so the seed's indices all shift down by 2.
    const CartanData cartan(4, 3);
    const Weight shifted = w(25, -7);
    REQUIRE(classify(cartan, shifted).canonical_m == -2);
    const LSPath seed = LSPath::validate(
        cartan, shifted, {-1, -2, -3},
        {frac(0, 1), frac(1, 3), frac(1, 2), frac(1, 1)});
    CHECK(cmn_check(seed, 0, 1));
    CHECK_FALSE(cmn_check(seed, 2, 1));
    CHECK(cmn_classes(seed, 1) == std::set<long>{0});
}

TEST_CASE("reach works on form (ii') shapes, stripping through the tail") {
    // (2,3,1,-2) is the canonical ii' weight with k = 1: paths live on one
    // side of the blocked junctions and strip back through f_max.
    const CartanData cartan(2, 3);
    const LSPath pi = LSPath::straight(cartan, w(1, -2));
    const ComponentReport rep = explore(pi, {5, 100000, 1}, {}, {});
    CHECK(rep.visited_count() > 10);
    for (const auto& node : rep.visited) {
        LSPath cur = node;
        for (const auto& step : reach_pi_lambda(node))
            cur = step.raising ? cur.e_max(step.i) : cur.f_max(step.i);
        CHECK(cur == pi);
    }
}

TEST_CASE("cmn pattern fails on short or plain paths") {
    const CartanData cartan(4, 3);
    const LSPath straight = LSPath::straight(cartan, w(3, -2));
    CHECK_FALSE(cmn_check(straight, 0, 1));
    CHECK(cmn_classes(straight, 1).empty());
}

TEST_CASE("operator images keep a C-class, shifted by at most one") {
    const QSequence qs(CartanData(4, 3), w(3, -2));
    for (long n : {1L, 2L}) {
        const LSPath seed = pi_n(qs, n);
        for (int i : {1, 2}) {
            if (auto up = seed.e(i)) {
                const auto classes = cmn_classes(*up, n);
                CHECK((classes.count(0) || classes.count(-1)));
            }
            if (auto down = seed.f(i)) {
                const auto classes = cmn_classes(*down, n);
                CHECK((classes.count(0) || classes.count(1)));
            }
        }
    }
}

TEST_CASE("gap classes") {
    const CartanData cartan(3, 3);
    const Weight lambda = w(2, -2);
    CHECK(z_gap_class(LSPath::straight(cartan, lambda)) == 0);
    const LSPath gap2 = LSPath::validate(cartan, lambda, {1, -1},
                                         {frac(0, 1), frac(1, 2), frac(1, 1)});
    CHECK(z_gap_class(gap2) == 1);
    const LSPath gap3 = LSPath::validate(cartan, lambda, {2, -1},
                                         {frac(0, 1), frac(1, 2), frac(1, 1)});
    CHECK(z_gap_class(gap3) == 1);
    const LSPath gap4 = LSPath::validate(cartan, lambda, {2, -2},
                                         {frac(0, 1), frac(1, 2), frac(1, 1)});
    CHECK(z_gap_class(gap4) == 2);
    CHECK_THROWS_AS(z_gap_class(LSPath::straight(CartanData(4, 3), w(3, -2))), Error);
}

TEST_CASE("phi projection") {
    const CartanData cartan(3, 3);
    SUBCASE("d = 2 is the identity") {
        const LSPath pi = LSPath::straight(cartan, w(2, -2));
        CHECK(phi_projection(pi, 2) == pi);
    }
    SUBCASE("straight paths project to straight paths") {
        const LSPath pi = LSPath::straight(cartan, w(4, -4));
        CHECK(phi_projection(pi, 4) == LSPath::straight(cartan, w(2, -2)));
    }
    SUBCASE("rejects non-multiples") {
        CHECK_THROWS_AS(phi_projection(LSPath::straight(cartan, w(2, -2)), 3), Error);
    }
    SUBCASE("random d = 3 paths project into B(2 lambda')") {
        std::mt19937_64 rng(1311);
        std::uniform_int_distribution<int> pick(0, 3);
        const LSPath seed = LSPath::straight(cartan, w(3, -3));
        for (int trial = 0; trial < 10; ++trial) {
            LSPath node = seed;
            for (int step = 0; step < 4; ++step) {
                const int op = pick(rng);
                const int i = (op % 2) + 1;
                auto next = (op < 2) ? node.e(i) : node.f(i);
                if (next) node = std::move(*next);
            }
            const LSPath image = phi_projection(node, 3);
            CHECK(image.shape() == w(2, -2));
            // The image is the first two thirds rescaled.
            for (long num = 0; num <= 8; ++num) {
                const Rational t(num, 8);
                const RationalWeight direct = node.evaluate(t * Rational(2, 3));
                CHECK(image.evaluate(t) == direct);
            }
        }
    }
}

TEST_CASE("reach_pi_lambda") {
    const CartanData cartan(3, 3);
    const Weight lambda = w(1, -1);
    const LSPath pi = LSPath::straight(cartan, lambda);
    SUBCASE("already there") { CHECK(reach_pi_lambda(pi).empty()); }
    SUBCASE("one step up needs one f-strip back") {
        const auto up = pi.e(2);
        REQUIRE(up.has_value());
        const auto steps = reach_pi_lambda(*up);
        REQUIRE(steps.size() == 1);
        CHECK_FALSE(steps[0].raising);
        CHECK(steps[0].i == 2);
        CHECK(up->f_max(2) == pi);
    }
    SUBCASE("rejected on disconnected shapes") {
        CHECK_THROWS_AS(reach_pi_lambda(LSPath::straight(CartanData(4, 3), w(3, -2))), Error);
    }
}

TEST_CASE("explore basics") {
    const CartanData cartan(3, 3);
    const LSPath pi = LSPath::straight(cartan, w(1, -1));
    SUBCASE("depth zero visits only the seed") {
        const ComponentReport rep = explore(pi, {0, 1000, 1});
        CHECK(rep.visited_count() == 1);
        CHECK(rep.depth_reached == 0);
        CHECK_FALSE(rep.frontier_exhausted);
    }
    SUBCASE("depth one finds the two neighbors") {
        const ComponentReport rep = explore(pi, {1, 1000, 1});
        CHECK(rep.visited_count() == 3);  // e2 and f1 fire, e1 and f2 do not
        CHECK(rep.edge_count() == 2);
    }
    SUBCASE("node limit reports limit, not exhaustion") {
        const ComponentReport rep = explore(pi, {6, 4, 1});
        CHECK(rep.visited_count() <= 4);
        CHECK_FALSE(rep.frontier_exhausted);
    }
}

TEST_CASE("explore reports are worker-count independent") {
    const CartanData cartan(4, 3);
    const QSequence qs(cartan, w(3, -2));
    const LSPath seed = pi_n(qs, 1);
    const ComponentReport serial =
        explore(seed, {3, 100000, 1}, {crystal_axioms_checker()}, {cmn_closure_checker(1)});
    const ComponentReport parallel =
        explore(seed, {3, 100000, 4}, {crystal_axioms_checker()}, {cmn_closure_checker(1)});
    CHECK(serial.visited == parallel.visited);
    CHECK(serial.edges == parallel.edges);
    CHECK(serial.stats == parallel.stats);
    CHECK(serial.violations.size() == parallel.violations.size());
    CHECK(serial.violations.empty());
}

TEST_CASE("explored C-components are disjoint and closure holds") {
    const CartanData cartan(4, 3);
    const QSequence qs(cartan, w(3, -2));
    std::vector<ComponentReport> reports;
    for (long n : {1L, 2L}) {
        reports.push_back(explore(pi_n(qs, n), {3, 100000, 1},
                                  {cmn_membership_checker(n),
                                   min_length_checker(static_cast<std::size_t>(2 * n + 1))},
                                  {cmn_closure_checker(n)}));
        CHECK(reports.back().clean());
    }
    std::unordered_map<LSPath, bool, LSPath::Hash> seen;
    for (const auto& p : reports[0].visited) seen.emplace(p, true);
    for (const auto& p : reports[1].visited) CHECK_FALSE(seen.count(p));
}

TEST_CASE("B_r strata are closed under the operators") {
    const CartanData cartan(3, 3);
    const Weight lambda = w(2, -2);
    for (long r : {0L, 1L, 2L}) {
        const LSPath seed =
            r == 0 ? LSPath::straight(cartan, lambda)
                   : LSPath::validate(cartan, lambda, {r, -r},
                                      {frac(0, 1), frac(1, 2), frac(1, 1)});
        REQUIRE(z_gap_class(seed) == r);
        const ComponentReport rep =
            explore(seed, {3, 100000, 1},
                    {br_gap_location_checker(), half_point_integral_checker()},
                    {br_closure_checker()});
        CHECK(rep.clean());
        for (const auto& node : rep.visited) CHECK(z_gap_class(node) == r);
    }
}

TEST_CASE("verification suites pass at reference configurations") {
    VerifyOptions opt;
    opt.depth = 3;
    opt.chain_denominator_max = 10;
    const auto expect_pass = [](const SuiteResult& result) {
        for (const auto& f : result.failures) {
            CAPTURE(f);
            CHECK(false);
        }
        CHECK(result.pass());
    };
    expect_pass(verify_orbit(CartanData(4, 3), w(3, -2), opt));
    expect_pass(verify_orbit(CartanData(2, 3), w(1, -1), opt));
    expect_pass(verify_orbit(CartanData(4, 3), w(-3, 2), opt));   // negative sequence
    expect_pass(verify_orbit(CartanData(3, 3), w(2, 1), opt));    // dominant-reachable
    expect_pass(verify_crystal(CartanData(3, 3), w(1, -1), opt));
    expect_pass(verify_cmn(CartanData(4, 3), w(3, -2), opt));
    expect_pass(verify_cmn(CartanData(3, 4), w(2, -3), opt));     // mirrored orientation
    expect_pass(verify_br(CartanData(3, 3), w(2, -2), opt));
    expect_pass(verify_connect(CartanData(3, 3), w(1, -1), opt));
    expect_pass(verify_connect(CartanData(2, 3), w(1, -2), opt)); // form (ii') shape
}

TEST_CASE("gap-class stability at a second Cartan datum") {
    // 2*(3L1 - 2L2) at (4,3): the d = 2 machinery away from the symmetric case.
    const CartanData cartan(4, 3);
    const Weight lambda = w(6, -4);
    for (long r : {0L, 1L, 2L}) {
        const LSPath seed =
            r == 0 ? LSPath::straight(cartan, lambda)
                   : LSPath::validate(cartan, lambda, {r, -r},
                                      {frac(0, 1), frac(1, 2), frac(1, 1)});
        REQUIRE(z_gap_class(seed) == r);
        const ComponentReport rep =
            explore(seed, {4, 100000, 1},
                    {br_gap_location_checker(), half_point_integral_checker()},
                    {br_closure_checker()});
        CHECK(rep.clean());
        for (const auto& node : rep.visited) CHECK(z_gap_class(node) == r);
    }
}

TEST_CASE("connected case: everything returns to pi_lambda") {
    const CartanData cartan(3, 3);
    const LSPath pi = LSPath::straight(cartan, w(1, -1));
    const ComponentReport rep = explore(pi, {4, 100000, 1}, {dirs_dichotomy_checker()}, {});
    CHECK(rep.clean());
    for (const auto& node : rep.visited) {
        LSPath cur = node;
        for (const auto& step : reach_pi_lambda(node))
            cur = step.raising ? cur.e_max(step.i) : cur.f_max(step.i);
        CHECK(cur == pi);
    }
}

TEST_CASE("connected case at (2,4): strips return from both branches") {
    const CartanData cartan(2, 4);
    const LSPath pi = LSPath::straight(cartan, w(1, -2));
    const ComponentReport rep = explore(pi, {5, 100000, 1}, {crystal_axioms_checker()}, {});
    CHECK(rep.clean());
    CHECK(rep.visited_count() > 10);
    for (const auto& node : rep.visited) {
        LSPath cur = node;
        for (const auto& step : reach_pi_lambda(node))
            cur = step.raising ? cur.e_max(step.i) : cur.f_max(step.i);
        CHECK(cur == pi);
    }
}
