#include "doctest.h"
#include "lscrystal/dot_export.hpp"
#include "lscrystal/json_io.hpp"

#include <random>

using namespace lscrystal;

namespace {
Weight w(long c1, long c2) { return Weight{Integer(c1), Integer(c2)}; }
}  // namespace

TEST_CASE("path JSON schema") {
    const LSPath pi = LSPath::validate(CartanData(4, 3), w(3, -2), {1, 0, -1},
                                       {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)});
    const Json j = path_to_json(pi);
    CHECK(j.dump() ==
          R"({"cartan":[4,3],"lambda":[3,-2],"dirs":[1,0,-1],)"
          R"("sigmas":[[0,1],[1,3],[1,2],[1,1]]})");
}

TEST_CASE("path JSON roundtrip on random operator products") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> pick(0, 3);
    LSPath cur = LSPath::straight(CartanData(3, 3), w(2, -2));
    for (int step = 0; step < 40; ++step) {
        const int op = pick(rng);
        const int i = (op % 2) + 1;
        auto next = (op < 2) ? cur.e(i) : cur.f(i);
        if (next) cur = std::move(*next);
        const LSPath back = path_from_json(path_to_json(cur));
        CHECK(back == cur);
        CHECK(path_to_json(back).dump() == path_to_json(cur).dump());
    }
}

TEST_CASE("big integers survive the JSON boundary") {
    const Integer big("123456789012345678901234567890");
    CHECK(integer_from_json(integer_to_json(big)) == big);
    CHECK(integer_to_json(big).is_string());
    CHECK(integer_to_json(Integer(-42)).is_number_integer());
}

TEST_CASE("fraction parsing") {
    CHECK(parse_fraction("1/3") == Rational(1, 3));
    CHECK(parse_fraction("7") == Rational(7));
    CHECK(parse_fraction("-2/6") == Rational(-1, 3));
    CHECK_THROWS_AS(parse_fraction("1/0"), Error);
    CHECK_THROWS_AS(parse_fraction("x"), Error);
}

TEST_CASE("classification JSON") {
    const Json j = classification_to_json(classify(CartanData(2, 3), w(1, -1)));
    CHECK(j["kind"] == "Star");
    CHECK(j["canonical"][0] == 1);
    CHECK(j["canonical"][1] == -2);
    CHECK(j["form_tag"] == "ii'");
    const Json dom = classification_to_json(classify(CartanData(3, 3), w(2, 1)));
    CHECK(dom["kind"] == "MeetsDominant");
    CHECK(dom["canonical"].is_null());
}

TEST_CASE("crystal DOT export") {
    const LSPath pi = LSPath::straight(CartanData(3, 3), w(1, -1));
    const ComponentReport rep = explore(pi, {2, 1000, 1});
    const std::string dot = crystal_dot(rep);
    CHECK(dot.rfind("digraph crystal {", 0) == 0);
    CHECK(dot.find("label=\"f1\"") != std::string::npos);
    CHECK(dot.find("label=\"f2\"") != std::string::npos);
    CHECK(dot.find("(0 | )") != std::string::npos);  // the straight seed
    // One line per node and edge.
    std::size_t arrows = 0;
    for (std::size_t at = dot.find("->"); at != std::string::npos; at = dot.find("->", at + 1))
        ++arrows;
    CHECK(arrows == rep.edge_count());
}

TEST_CASE("hasse DOT export") {
    PSequence seq(CartanData(2, 3), w(1, -1));
    const std::string dot = hasse_dot(seq, -1, 1);
    CHECK(dot.rfind("digraph hasse {", 0) == 0);
    CHECK(dot.find("label=\"a1\"") != std::string::npos);
    CHECK(dot.find("label=\"a2\"") != std::string::npos);
    // Weights along the segment: x_{-1} = -L1+L2, x_0 = L1-L2, x_1 = -L1+2L2.
    CHECK(dot.find("x_-1 l = -1*L1 + 1*L2") != std::string::npos);
    CHECK(dot.find("x_0 l = 1*L1 + -1*L2") != std::string::npos);
    CHECK(dot.find("x_1 l = -1*L1 + 2*L2") != std::string::npos);
}

TEST_CASE("report JSON is structurally complete") {
    const LSPath pi = LSPath::straight(CartanData(3, 3), w(1, -1));
    const ComponentReport rep = explore(pi, {2, 1000, 1}, {crystal_axioms_checker()}, {});
    const Json j = report_to_json(rep);
    CHECK(j["visited_count"].get<std::size_t>() == rep.visited_count());
    CHECK(j["edge_count"].get<std::size_t>() == rep.edge_count());
    CHECK(j["violations"].is_array());
    CHECK(j["violations"].empty());
    CHECK(j["stats"].contains("crystal_axioms:checked"));
}
