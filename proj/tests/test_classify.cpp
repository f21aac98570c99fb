#include <catch2/catch_amalgamated.hpp>

#include "mpcodes/builtin.hpp"
#include "mpcodes/classify.hpp"

using namespace mpcodes;

TEST_CASE("profile factories normalize the endpoints", "[classify]") {
  SfrrProfile f = SfrrProfile::forward({2}, 3);
  CHECK(f.indices == std::vector<unsigned>{0, 2, 3});
  CHECK(f.interior() == std::vector<unsigned>{2});
  CHECK(f.block_count() == 2);
  CHECK(f.show() == "forward(2)");

  SfrrProfile r = SfrrProfile::reverse({3}, 3);
  CHECK(r.indices == std::vector<unsigned>{1, 3, 4});
  CHECK(r.show() == "reverse(3)");

  SfrrProfile t = SfrrProfile::trivial(SfrrProfile::Direction::Forward, 2);
  CHECK(t.indices == std::vector<unsigned>{0, 2});
  CHECK(t.block_count() == 1);

  CHECK_THROWS_AS(SfrrProfile::forward({5}, 3), DomainError);
  CHECK_THROWS_AS(SfrrProfile::forward({0}, 3), DomainError);
  CHECK_THROWS_AS(SfrrProfile::forward({2, 1}, 3), DomainError);
}

TEST_CASE("profile search on the ternary design", "[classify]") {
  RingMatrix t = builtin::t3();
  MdsIndexSets sets = find_profiles(t);
  CHECK(sets.forward == std::vector<unsigned>{0, 2, 3});
  CHECK(sets.reverse == std::vector<unsigned>{1, 3, 4});

  CHECK(is_sfrr(t, SfrrProfile::forward({2}, 3)));
  CHECK_FALSE(is_sfrr(t, SfrrProfile::forward({1}, 3)));
  CHECK_FALSE(is_sfrr(t, SfrrProfile::forward({1, 2}, 3)));
  CHECK(is_sfrr(t, SfrrProfile::reverse({3}, 3)));
  CHECK_FALSE(is_sfrr(t, SfrrProfile::reverse({2}, 3)));
}

TEST_CASE("column-wise nonsingularity", "[classify]") {
  RingMatrix t = builtin::t3();
  // The one-row prefix (1,0,1) has a zero entry, so T is not NSC; the last
  // two rows have a singular submatrix in columns {1,2}, so it is not
  // reversely NSC either.
  CHECK_FALSE(is_nsc(t));
  CHECK_FALSE(is_reversely_nsc(t));

  RingPtr f3 = Ring::make(RingSpec::zmod(3));
  RingMatrix a = RingMatrix::from_rows(f3, {{1, 1}, {1, 2}});
  CHECK(is_nsc(a));
  CHECK(is_reversely_nsc(a));
  // Square invertible case: NSC of A tracks reverse NSC of its inverse
  // transpose.
  CHECK(is_nsc(a) == is_reversely_nsc(inverse(a).transpose()));
}

TEST_CASE("two-way profiles", "[classify]") {
  RingMatrix t = builtin::t3();
  CHECK(is_two_way_sfrr(t, 2));
  CHECK_FALSE(is_two_way_sfrr(t, 1));
  CHECK_THROWS_AS(is_two_way_sfrr(t, 0), IndexOutOfRange);
  CHECK_THROWS_AS(is_two_way_sfrr(t, 3), IndexOutOfRange);
  // Not FRR means not two-way, not an exception.
  RingPtr f2 = Ring::make(RingSpec::zmod(2));
  RingMatrix sing = RingMatrix::from_rows(f2, {{1, 1}, {1, 1}});
  CHECK_FALSE(is_two_way_sfrr(sing, 1));
}

TEST_CASE("orthogonality classifiers", "[classify]") {
  RingPtr f2 = Ring::make(RingSpec::zmod(2));
  RingMatrix t = builtin::t3();
  CHECK_FALSE(is_quasi_orthogonal(t));
  CHECK(is_quasi_orthogonal(RingMatrix::identity(f2, 2)));
  CHECK(has_partitioned_orthogonal(t, 2));
  CHECK_FALSE(has_partitioned_orthogonal(t, 1));

  RingPtr z4 = Ring::make(RingSpec::zmod(4));
  RingMatrix a = RingMatrix::from_rows(z4, {{1, 2}, {2, 1}});
  CHECK(is_quasi_orthogonal(a));
  CHECK(has_partitioned_orthogonal(a, 1));
}

TEST_CASE("profile duality check on the ternary design", "[classify]") {
  RingMatrix t = builtin::t3();
  CHECK(prop42_check(t, SfrrProfile::forward({2}, 3)));
  CHECK(prop42_check(t, SfrrProfile::forward({}, 3)));
  CHECK(prop42_check(t, SfrrProfile::forward({1}, 3)));
  CHECK(prop42_check(t, SfrrProfile::forward({1, 2}, 3)));
}

TEST_CASE("block decomposition of the ternary design", "[classify]") {
  RingMatrix t = builtin::t3();
  SfrrProfile p = SfrrProfile::forward({2}, 3);
  BlockDecomposition bd = lemma46_decompose(t, p);
  CHECK(bd.q * t == bd.qa);
  CHECK(is_nonsingular(bd.q));
  REQUIRE(bd.block_sizes.size() == 2);
  CHECK(bd.block_sizes[0] == 2);
  CHECK(bd.block_sizes[1] == 1);
  // Profiles that are not satisfied are rejected loudly.
  CHECK_THROWS_AS(lemma46_decompose(t, SfrrProfile::forward({1}, 3)),
                  ProfileNotSfrr);
}
