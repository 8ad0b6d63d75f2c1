#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "belyi/perm.hpp"
#include "oracles.hpp"

using namespace belyi;

namespace {

Permutation cyc(std::size_t d, const char* text) { return Permutation::from_cycles(d, text); }

}  // namespace

TEST_CASE("compose examples") {
  CHECK(compose(cyc(2, "(1 2)"), Permutation(2)) == cyc(2, "(1 2)"));
  CHECK(compose(cyc(3, "(1 2 3)"), cyc(3, "(1 2 3)")) == cyc(3, "(1 3 2)"));
  CHECK(compose(cyc(3, "(1 2)"), cyc(3, "(2 3)")) == cyc(3, "(1 2 3)"));
}

TEST_CASE("cycle type examples") {
  CHECK(cycle_type(Permutation(4)).parts == std::vector<int>{1, 1, 1, 1});
  CHECK(cycle_type(cyc(7, "(1 2 3 4 5 6 7)")).parts == std::vector<int>{7});
  CHECK(cycle_type(cyc(5, "(1 2 3)(4 5)")).parts == std::vector<int>{3, 2});
  CHECK(cycle_type(cyc(5, "(1 2 3)(4 5)")).to_string() == "[3,2]");
}

TEST_CASE("conjugate examples") {
  auto p = cyc(5, "(1 3 5)(2 4)");
  CHECK(conjugate(p, Permutation(5)) == p);
  CHECK(conjugate(cyc(3, "(1 2)"), cyc(3, "(1 3)")) == cyc(3, "(2 3)"));
}

TEST_CASE("transitivity examples") {
  std::vector<Permutation> a{cyc(7, "(1 2 3 4 5 6 7)")};
  CHECK(is_transitive(a, 7));
  std::vector<Permutation> b{cyc(4, "(1 2)"), cyc(4, "(3 4)")};
  CHECK_FALSE(is_transitive(b, 4));
  std::vector<Permutation> c{cyc(3, "(1 2)"), cyc(3, "(1 2 3)")};
  CHECK(is_transitive(c, 3));
}

TEST_CASE("group order examples") {
  std::vector<Permutation> a{cyc(7, "(1 2 3 4 5 6 7)")};
  CHECK(group_order(a) == 7);
  std::vector<Permutation> b{cyc(5, "(1 2)"), cyc(5, "(1 2 3 4 5)")};
  CHECK(group_order(b) == 120);
  std::vector<Permutation> c{cyc(3, "(1 2)"), cyc(3, "(1 2 3)")};
  CHECK(group_order(c) == 6);
  // GL3(F2) acting on the 7 nonzero vectors; witness from the (7,7,7) census.
  std::vector<Permutation> gl{cyc(7, "(1 2 3 4 5 6 7)"), cyc(7, "(1 2 5 7 3 6 4)")};
  CHECK(group_order(gl) == 168);
  std::vector<Permutation> a7{cyc(7, "(1 2 3 4 5 6 7)"), cyc(7, "(1 2 3)")};
  CHECK(group_order(a7) == 2520);
  std::vector<Permutation> id{Permutation(6)};
  CHECK(group_order(id) == 1);
}

TEST_CASE("centralizer examples") {
  std::vector<Permutation> a{cyc(7, "(1 2 3 4 5 6 7)")};
  CHECK(centralizer_order(a) == 7);
  for (int n = 3; n <= 7; ++n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 2);
    img.back() = 1;
    std::vector<Permutation> g{Permutation::from_cycles(n, "(1 2)"), Permutation::from_images(img)};
    CHECK(centralizer_order(g) == 1);
  }
  std::vector<Permutation> gl{cyc(7, "(1 2 3 4 5 6 7)"), cyc(7, "(1 2 5 7 3 6 4)")};
  CHECK(centralizer_order(gl) == 1);
  std::vector<Permutation> gl2{cyc(7, "(1 2 3 4 5 6 7)"), cyc(7, "(1 2 6 4 7 3 5)")};
  CHECK(centralizer_order(gl2) == 1);
  std::vector<Permutation> id{Permutation(4)};
  CHECK(centralizer_order(id) == 24);
}

TEST_CASE("guards signal instead of running") {
  std::vector<Permutation> big{Permutation(17)};
  CHECK_THROWS_AS(group_order(big), ResourceLimit);
  std::vector<Permutation> big2{Permutation(13)};
  CHECK_THROWS_AS(centralizer_order(big2), ResourceLimit);
  std::vector<Permutation> ok{Permutation(16)};
  CHECK(group_order(ok) == 1);
}

TEST_CASE("parsing and printing") {
  auto p = cyc(6, "(1 2 3)(4 5)");
  CHECK(p.to_cycle_string() == "(1 2 3)(4 5)");
  CHECK(p.images() == std::vector<int>{2, 3, 1, 5, 4, 6});
  CHECK(Permutation(3).to_cycle_string() == "()");
  CHECK(cyc(3, "()") == Permutation(3));
  CHECK(Permutation::from_cycles(6, p.to_cycle_string()) == p);
  CHECK(p.inverse() == cyc(6, "(1 3 2)(4 5)"));
  CHECK(is_even(cyc(5, "(1 2 3)")));
  CHECK_FALSE(is_even(cyc(5, "(1 2 3)(4 5)")));

  CHECK_THROWS_AS(cyc(3, "(1 2"), ParseError);
  CHECK_THROWS_AS(cyc(3, "(1 (2))"), ParseError);
  CHECK_THROWS_AS(cyc(3, "(1 4)"), std::invalid_argument);
  CHECK_THROWS_AS(cyc(3, "(1 2)(2 3)"), std::invalid_argument);
  std::vector<int> bad{1, 1, 2};
  CHECK_THROWS_AS(Permutation::from_images(bad), std::invalid_argument);
  CHECK_THROWS_AS(compose(Permutation(2), Permutation(3)), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycle_type("3,0"), ParseError);
  CHECK(parse_cycle_type("[1,3,2]").parts == std::vector<int>{3, 2, 1});
}

TEST_CASE("composition is associative") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int d = 1 + trial % 9;
    auto p = oracle::random_permutation(d, rng);
    auto q = oracle::random_permutation(d, rng);
    auto r = oracle::random_permutation(d, rng);
    CHECK(compose(compose(p, q), r) == compose(p, compose(q, r)));
    CHECK(compose(p, q).images() == oracle::naive_compose(p.images(), q.images()));
  }
}

TEST_CASE("cycle type is a conjugation invariant") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    int d = 1 + trial % 12;
    auto p = oracle::random_permutation(d, rng);
    auto g = oracle::random_permutation(d, rng);
    CHECK(cycle_type(conjugate(p, g)) == cycle_type(p));
    CHECK(cycle_type(p).parts == oracle::naive_cycle_type(p.images()));
  }
}

TEST_CASE("cyclic group order is the lcm of the cycle lengths") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    int d = 1 + trial % 16;
    auto p = oracle::random_permutation(d, rng);
    long long l = 1;
    for (int part : cycle_type(p).parts) l = std::lcm(l, static_cast<long long>(part));
    std::vector<Permutation> g{p};
    CHECK(group_order(g) == l);
  }
}

TEST_CASE("orbit-stabilizer on random pairs") {
  std::mt19937 rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    int d = 1 + trial % 6;
    auto a = oracle::random_permutation(d, rng);
    auto b = oracle::random_permutation(d, rng);
    std::set<std::pair<Permutation, Permutation>> orbit;
    for (const auto& g : oracle::all_permutations(d)) orbit.emplace(conjugate(a, g), conjugate(b, g));
    std::vector<Permutation> gens{a, b};
    CHECK(BigInt(orbit.size()) * centralizer_order(gens) == factorial(d));
    CHECK(centralizer_order(gens) == oracle::naive_centralizer(a, b));
  }
}

TEST_CASE("group order agrees with element enumeration") {
  std::mt19937 rng(15);
  for (int trial = 0; trial < 60; ++trial) {
    int d = 1 + trial % 6;
    std::vector<Permutation> gens{oracle::random_permutation(d, rng), oracle::random_permutation(d, rng)};
    CHECK(BigInt(group_elements(gens, 1000).size()) == group_order(gens));
  }
}
