#include "doctest.h"
#include "lscrystal/oracles.hpp"
#include "lscrystal/orbit.hpp"

#include <numeric>
#include <random>
#include <thread>

using namespace lscrystal;

namespace {
Weight w(long c1, long c2) { return Weight{Integer(c1), Integer(c2)}; }
}  // namespace

TEST_CASE("p recursion examples") {
    PSequence s23(CartanData(2, 3), w(1, -1));  // k = 1, l = 1
    CHECK(s23.p(0) == 1);
    CHECK(s23.p(1) == 1);
    CHECK(s23.p(2) == 2);
    CHECK(s23.p(3) == 3);
    CHECK(s23.p(-1) == 1);

    PSequence s43(CartanData(4, 3), w(3, -2));
    CHECK(s43.p(2) == 7);
    CHECK(s43.p(3) == 25);
    CHECK(s43.p(-1) == 5);
}

TEST_CASE("closed orbit formula equals the word oracle") {
    for (const auto& [a, b] : {std::pair{2, 3}, {3, 2}, {4, 3}, {3, 3}, {5, 2}}) {
        const CartanData cartan(a, b);
        for (long k = -3; k <= 3; ++k) {
            for (long l = -3; l <= 3; ++l) {
                if (k == 0 && l == 0) continue;
                const Weight lambda = w(k, l);
                PSequence seq(cartan, lambda);
                for (long m = -10; m <= 10; ++m)
                    CHECK(seq.xm_lambda(m) == act_xm_by_word(cartan, m, lambda));
            }
        }
    }
}

TEST_CASE("xm_lambda examples") {
    PSequence s23(CartanData(2, 3), w(1, -1));
    CHECK(s23.xm_lambda(0) == w(1, -1));
    CHECK(s23.xm_lambda(1) == w(-1, 2));
    PSequence s43(CartanData(4, 3), w(3, -2));
    CHECK(s43.xm_lambda(2) == w(25, -7));
}

TEST_CASE("classification examples") {
    SUBCASE("star with canonical form ii' at (2,3)") {
        const auto cls = classify(CartanData(2, 3), w(1, -1));
        CHECK(cls.kind == OrbitKind::star);
        CHECK_FALSE(cls.negated);
        CHECK(*cls.canonical == w(1, -2));
        CHECK(*cls.form_tag == FormTag::ii_prime);
        CHECK(cls.canonical_m == -2);
    }
    SUBCASE("dominant weight is its own witness") {
        const auto cls = classify(CartanData(3, 3), w(1, 1));
        CHECK(cls.kind == OrbitKind::meets_dominant);
        CHECK(cls.witness_m == 0);
    }
    SUBCASE("form (i) at (4,3)") {
        const auto cls = classify(CartanData(4, 3), w(3, -2));
        CHECK(cls.kind == OrbitKind::star);
        CHECK(*cls.canonical == w(3, -2));
        CHECK(*cls.form_tag == FormTag::i);
        CHECK(cls.canonical_m == 0);
    }
    SUBCASE("zero weight is rejected") {
        CHECK_THROWS_AS(classify(CartanData(2, 3), w(0, 0)), Error);
    }
    SUBCASE("zero coordinate always meets a dominant cone") {
        const auto cls = classify(CartanData(3, 3), w(0, -2));
        CHECK(cls.kind != OrbitKind::star);
    }
    SUBCASE("negative-sequence representative of its own star orbit") {
        // -(3L1 - 2L2) generates the mirror orbit, whose canonical form is
        // 5L1 - 2L2 = x_{-1}(-lambda); the canonical stays inside W(lambda).
        const auto cls = classify(CartanData(4, 3), w(-3, 2));
        CHECK(cls.kind == OrbitKind::star);
        CHECK(cls.negated);
        CHECK(*cls.canonical == w(5, -2));
        CHECK(*cls.form_tag == FormTag::i);
        CHECK(cls.canonical_m == -1);
        PSequence seq(CartanData(4, 3), w(-3, 2));
        CHECK(seq.xm_lambda(cls.canonical_m) == *cls.canonical);
    }
    SUBCASE("odd translates classify to the same canonical") {
        const CartanData cartan(4, 3);
        PSequence seq(cartan, w(3, -2));
        const auto odd = classify(cartan, seq.xm_lambda(1));
        CHECK(odd.kind == OrbitKind::star);
        CHECK(odd.negated);  // odd translates carry negative p-sequences
        CHECK(*odd.canonical == w(3, -2));
        PSequence nus(cartan, seq.xm_lambda(1));
        CHECK(nus.xm_lambda(odd.canonical_m) == *odd.canonical);
    }
    SUBCASE("antidominant") {
        const auto cls = classify(CartanData(3, 3), w(-2, -1));
        CHECK(cls.kind == OrbitKind::meets_antidominant);
    }
}

TEST_CASE("classification is invariant along the orbit") {
    const CartanData cartan(4, 3);
    PSequence seq(cartan, w(3, -2));
    const auto base = classify(cartan, w(3, -2));
    for (long m = -5; m <= 5; ++m) {
        const auto cls = classify(cartan, seq.xm_lambda(m));
        CHECK(cls.kind == base.kind);
        CHECK(*cls.canonical == *base.canonical);
        CHECK(*cls.form_tag == *base.form_tag);
    }
}

TEST_CASE("star orbit window stays single-signed") {
    PSequence seq(CartanData(2, 3), w(1, -1));
    for (long m = -25; m <= 25; ++m) CHECK(seq.p(m) > 0);
}

TEST_CASE("valley shape for a strict form (i) input") {
    // p decreases strictly into the valley and increases strictly after it.
    PSequence seq(CartanData(4, 3), w(3, -2));
    for (long m = -6; m < 0; ++m) CHECK(seq.p(m) > seq.p(m + 1));
    for (long m = 0; m < 6; ++m) CHECK(seq.p(m) < seq.p(m + 1));
}

TEST_CASE("hasse covers") {
    PSequence seq(CartanData(2, 3), w(1, -1));
    const auto c0 = hasse_cover(seq, 0);
    CHECK(c0.lower_m == -1);
    CHECK(c0.label == 2);
    const auto c1 = hasse_cover(seq, 1);
    CHECK(c1.lower_m == 0);
    CHECK(c1.label == 1);
    const auto c2 = hasse_cover(seq, 2);
    CHECK(c2.lower_m == 1);
    CHECK(c2.label == 2);

    PSequence dom(CartanData(2, 3), w(1, 1));
    CHECK_THROWS_AS(hasse_cover(dom, 0), Error);
}

TEST_CASE("dist is the index difference, matching the brute-force order") {
    const CartanData cartan(4, 3);
    const Weight lambda = w(3, -2);
    PSequence seq(cartan, lambda);
    CHECK(dist(seq, 5, 5) == 0);
    CHECK(dist(seq, 5, 4) == 1);
    CHECK(dist(seq, 5, 2) == 3);
    CHECK_THROWS_AS(dist(seq, 1, 2), Error);

    OrbitOrderOracle oracle(cartan, lambda, -8, 8);
    for (long m = -3; m <= 3; ++m) {
        for (long n = -3; n <= m; ++n) {
            auto d = oracle.dist(m, n);
            REQUIRE(d.has_value());
            CHECK(*d == m - n);
        }
    }
    // Moves against the order are impossible.
    CHECK_FALSE(oracle.dist(0, 2).has_value());
}

TEST_CASE("the unique cover root is simple") {
    const CartanData cartan(3, 3);
    OrbitOrderOracle oracle(cartan, w(2, -2), -6, 6);
    for (long m = -3; m <= 3; ++m) {
        CHECK(oracle.is_cover(m, m - 1));
        CHECK_FALSE(oracle.is_cover(m, m - 2));
    }
}

TEST_CASE("sigma chain examples") {
    SUBCASE("coprime shapes admit no multi-step chains") {
        PSequence seq(CartanData(4, 3), w(3, -2));
        for (long den = 2; den <= 12; ++den)
            for (long num = 1; num < den; ++num)
                CHECK_FALSE(sigma_chain_exists(seq, 1, -1, Rational(num, den)));
    }
    SUBCASE("non-coprime shape passes at sigma = 1/2") {
        PSequence seq(CartanData(3, 3), w(2, -2));
        CHECK(sigma_chain_exists(seq, 1, -1, Rational(1, 2)));
        CHECK_FALSE(sigma_chain_exists(seq, 1, -1, Rational(1, 3)));
    }
    SUBCASE("single steps need one divisibility") {
        PSequence seq(CartanData(4, 3), w(3, -2));
        CHECK(sigma_chain_exists(seq, 1, 0, Rational(1, 3)));   // p_1 = 3
        CHECK(sigma_chain_exists(seq, 1, 0, Rational(2, 3)));
        CHECK_FALSE(sigma_chain_exists(seq, 1, 0, Rational(1, 2)));
    }
}

TEST_CASE("sigma chains agree with the brute-force enumerator") {
    for (const auto& [a, b, k, l] : {std::tuple{4, 3, 3L, -2L}, {3, 3, 2L, -2L}}) {
        const CartanData cartan(a, b);
        const Weight lambda = w(k, l);
        PSequence seq(cartan, lambda);
        OrbitOrderOracle oracle(cartan, lambda, -8, 8);
        for (long m = -2; m <= 2; ++m) {
            for (long n = -2; n < m; ++n) {
                for (long den = 2; den <= 8; ++den) {
                    for (long num = 1; num < den; ++num) {
                        if (std::gcd(num, den) != 1) continue;
                        const Rational sigma(num, den);
                        CHECK(sigma_chain_exists(seq, m, n, sigma) ==
                              oracle.sigma_chain(m, n, sigma));
                    }
                }
            }
        }
    }
}

TEST_CASE("classification properties on random large weights") {
    std::mt19937_64 rng(271828);
    std::uniform_int_distribution<int> entry(2, 7);
    std::uniform_int_distribution<long> coord(-1000000, 1000000);
    int stars = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int a = entry(rng), b = entry(rng);
        if (a * b <= 4) continue;
        const CartanData cartan(a, b);
        const Weight lambda = w(coord(rng), coord(rng));
        if (lambda.is_zero()) continue;
        const auto cls = classify(cartan, lambda);
        PSequence seq(cartan, lambda);
        if (cls.kind == OrbitKind::star) {
            ++stars;
            // The canonical weight is an actual orbit element of the stated
            // index and satisfies the defining inequalities exactly.
            CHECK(seq.xm_lambda(cls.canonical_m) == *cls.canonical);
            const Integer kc = cls.canonical->c1;
            const Integer lc = -cls.canonical->c2;
            CHECK(kc > 0);
            CHECK(lc > 0);
            const bool form_i = lc <= kc && kc < (a - 1) * lc;
            const bool form_ii = kc < lc && lc <= (b - 1) * kc;
            CHECK((form_i || form_ii));
            // Witness is a weak valley of |p|.
            const auto absp = [&](long j) { return boost::multiprecision::abs(seq.p(j)); };
            CHECK(absp(cls.witness_m - 1) >= absp(cls.witness_m));
            CHECK(absp(cls.witness_m) <= absp(cls.witness_m + 1));
            for (long j = -8; j <= 8; ++j) CHECK(seq.p(j) != 0);
        } else {
            // Witness pair brackets zero.
            const Integer pm = seq.p(cls.witness_m);
            const Integer pm1 = seq.p(cls.witness_m + 1);
            CHECK(((pm <= 0 && pm1 >= 0) || (pm >= 0 && pm1 <= 0)));
        }
        for (long m = -8; m <= 8; ++m)
            CHECK(seq.xm_lambda(m) == act_xm_by_word(cartan, m, lambda));
    }
    CHECK(stars > 20);  // the sample genuinely exercises the star branch
}

TEST_CASE("concurrent memoized reads agree") {
    PSequence seq(CartanData(3, 3), w(2, -2));
    std::vector<Integer> expected;
    for (long m = -40; m <= 40; ++m) expected.push_back(seq.p(m));

    PSequence fresh(CartanData(3, 3), w(2, -2));
    std::vector<std::vector<Integer>> got(4);
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&fresh, &got, t] {
            for (long m = -40; m <= 40; ++m) got[t].push_back(fresh.p(m));
        });
    for (auto& t : pool) t.join();
    for (int t = 0; t < 4; ++t) CHECK(got[t] == expected);
}

TEST_CASE("bit-length guard trips on runaway growth") {
    set_max_integer_bits(64);
    PSequence seq(CartanData(9, 9), w(5, -4));
    CHECK_THROWS_AS(seq.p(200), Error);
    set_max_integer_bits(0);
}
