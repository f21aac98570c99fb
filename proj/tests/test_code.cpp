#include <catch2/catch_amalgamated.hpp>

#include "mpcodes/builtin.hpp"
#include "mpcodes/code.hpp"
#include "oracles.hpp"

using namespace mpcodes;

TEST_CASE("span matches the closure oracle", "[code]") {
  RingPtr z6 = Ring::make(RingSpec::zmod(6));
  std::vector<std::vector<unsigned>> gens = {{2, 1}, {0, 3}};
  Code c = Code::span(z6, 2, gens);
  auto oracle = testoracle::span_words(*z6, 2, gens);
  REQUIRE(c.size() == oracle.size());
  for (const auto& w : oracle) CHECK(c.contains_word(w));
  CHECK(c.is_linear());
}

TEST_CASE("builtin block codes have the advertised parameters", "[code]") {
  auto p1 = builtin::c1().params();
  CHECK(p1.n == 4);
  CHECK(p1.size == 2);
  CHECK(p1.d_hamming == 4);
  auto p2 = builtin::c2().params();
  CHECK(p2.size == 4);
  CHECK(p2.d_hamming == 2);
  auto p3 = builtin::c3().params();
  CHECK(p3.size == 4);
  CHECK(p3.d_hamming == 2);
  CHECK(builtin::c_prime().params().d_hamming == 4);
  CHECK(builtin::c_prime().size() == 16);
}

TEST_CASE("dual of a self-dual code is itself", "[code]") {
  Code c3 = builtin::c3();
  Code d = dual(c3);
  CHECK(d.same_words(c3));
  CHECK(is_self_dual(c3));
  CHECK(is_self_orthogonal(c3));
  // C1 is self-orthogonal but too small to be self-dual.
  CHECK(is_self_orthogonal(builtin::c1()));
  CHECK_FALSE(is_self_dual(builtin::c1()));
  CHECK_FALSE(is_self_orthogonal(builtin::c2()));
}

TEST_CASE("dual matches the ambient filter oracle", "[code]") {
  for (auto spec : {RingSpec::zmod(3), RingSpec::zmod(4)}) {
    RingPtr r = Ring::make(spec);
    Code c = Code::span(r, 3, {{1, 2, 0}, {0, 1, 1}});
    Code d = dual(c);
    auto oracle = testoracle::dual_words(c);
    REQUIRE(d.size() == oracle.size());
    for (const auto& w : oracle) CHECK(d.contains_word(w));
    // |C| * |dual| = |R|^n and double dual returns to C.
    std::uint64_t ambient = 1;
    for (int i = 0; i < 3; ++i) ambient *= r->order();
    CHECK(c.size() * d.size() == ambient);
    CHECK(dual(d).same_words(c));
  }
}

TEST_CASE("prefix and suffix row codes of the ternary design", "[code]") {
  RingPtr f2 = Ring::make(RingSpec::zmod(2));
  RingMatrix t = builtin::t3();
  unsigned up[] = {2, 2, 1};
  unsigned low[] = {1, 1, 3};
  for (unsigned k = 1; k <= 3; ++k) {
    CHECK(row_code(t, k, RowDir::Prefix).min_hamming() == up[k - 1]);
    CHECK(row_code(t, k, RowDir::Suffix).min_hamming() == low[k - 1]);
  }
  // Index 0 selects no rows for the prefix family.
  CHECK(row_code(t, 0, RowDir::Prefix).size() == 1);
  CHECK(row_code(t, 1, RowDir::Suffix).size() == 8);
  (void)f2;
}

TEST_CASE("zero and full codes use the distance sentinel", "[code]") {
  RingPtr f2 = Ring::make(RingSpec::zmod(2));
  Code z = Code::zero(f2, 4);
  CHECK(z.size() == 1);
  // No nonzero word exists, so the minimum distance reports n + 1.
  CHECK(z.min_hamming() == 5);
  CHECK(z.mds());
  Code f = Code::full(f2, 3);
  CHECK(f.size() == 8);
  CHECK(f.min_hamming() == 1);
  CHECK(f.mds());
}

TEST_CASE("module codes over Z6 need not be free", "[code]") {
  RingPtr z6 = Ring::make(RingSpec::zmod(6));
  // 3 words, and no rank-k free module has 3 elements over Z6.
  Code c = Code::span(z6, 2, {{2, 0}});
  auto fr = c.free_rank();
  CHECK_FALSE(fr.first);
  CHECK(c.size() == 3);
  // (2,3) has trivial annihilator, so its span is free of rank 1.
  Code free_code = Code::span(z6, 2, {{2, 3}});
  auto fr2 = free_code.free_rank();
  CHECK(fr2.first);
  CHECK(fr2.second == 1);
  CHECK(free_code.size() == 6);
}

TEST_CASE("sum and intersection of the self-dual pair", "[code]") {
  Code c3 = builtin::c3(), c3p = builtin::c3_prime();
  Code sum = code_sum(c3, c3p);
  Code both = code_intersection(c3, c3p);
  CHECK(sum.params().size == 8);
  CHECK(sum.params().d_hamming == 2);
  CHECK(both.same_words(builtin::c1()));
  CHECK(both.is_subset_of(c3));
  CHECK(both.is_subset_of(c3p));
  CHECK(c3.is_subset_of(sum));
  // Disjoint pair: C2 meets C1 only in zero.
  CHECK(code_intersection(builtin::c2(), builtin::c1()).size() == 1);
  Code s21 = code_sum(builtin::c2(), builtin::c1());
  CHECK(s21.params().size == 8);
  CHECK(s21.params().d_hamming == 1);
}

TEST_CASE("distance under a non-Hamming weight", "[code]") {
  RingPtr z4 = Ring::make(RingSpec::zmod(4));
  WeightTable lee(z4, {0, 1, 2, 1});
  Code c = Code::span(z4, 2, {{2, 0}, {0, 2}});
  CHECK(c.min_hamming() == 1);
  CHECK(c.min_distance(lee) == 2);
  auto oracle = testoracle::min_distance_pairs(c, lee);
  CHECK(c.min_distance(lee) == oracle);
}

TEST_CASE("mds recognition", "[code]") {
  RingPtr f3 = Ring::make(RingSpec::zmod(3));
  CHECK(Code::span(f3, 2, {{1, 1}}).mds());        // [2,1,2]
  CHECK(Code::span(f3, 2, {{1, 0}, {0, 1}}).mds()); // [2,2,1]
  CHECK_FALSE(Code::span(f3, 2, {{1, 0}}).mds());   // [2,1,1]
  CHECK(is_mds(Code::span(f3, 2, {{1, 2}})));
}

TEST_CASE("nonlinear word sets are recognized", "[code]") {
  RingPtr f2 = Ring::make(RingSpec::zmod(2));
  Code c = Code::from_codewords(f2, 2, {{0, 0}, {1, 0}, {0, 1}});
  CHECK_FALSE(c.is_linear());
  CHECK(c.size() == 3);
  CHECK(c.min_hamming() == 1);
  Code lin = Code::from_codewords(f2, 2, {{0, 0}, {1, 1}});
  CHECK(lin.is_linear());
  CHECK(lin.same_words(Code::span(f2, 2, {{1, 1}})));
}

TEST_CASE("inner products", "[code]") {
  RingPtr z4 = Ring::make(RingSpec::zmod(4));
  CHECK(inner_product(*z4, std::vector<unsigned>{1, 2, 3},
                      std::vector<unsigned>{2, 1, 2}) == 2);
  CHECK(inner_product(*z4, std::vector<unsigned>{2, 2},
                      std::vector<unsigned>{1, 1}) == 0);
}

TEST_CASE("word sets index into flat storage", "[code]") {
  WordSet ws = WordSet::normalized(2, {0, 0, 1, 1, 0, 1});
  REQUIRE(ws.size() == 3);
  CHECK(ws[0][0] == 0);
  CHECK(ws[1][0] == 0);  // sorted: (0,0), (0,1), (1,1)
  CHECK(ws[1][1] == 1);
  CHECK(ws[2][0] == 1);
}

TEST_CASE("code construction errors", "[code]") {
  RingPtr f2 = Ring::make(RingSpec::zmod(2));
  RingPtr f3 = Ring::make(RingSpec::zmod(3));
  CHECK_THROWS_AS(Code::span(f2, 2, {{1, 0, 1}}), LengthMismatch);
  CHECK_THROWS_AS(Code::span(f2, 2, {{2, 0}}), DomainError);
  CHECK_THROWS_AS(code_sum(Code::zero(f2, 2), Code::zero(f3, 2)),
                  DomainError);
  CHECK_THROWS_AS(code_sum(Code::zero(f2, 2), Code::zero(f2, 3)),
                  LengthMismatch);
  CHECK_THROWS_AS(Code::full(f2, 30), EnumerationCapExceeded);
}
