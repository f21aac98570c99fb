#include <catch2/catch_amalgamated.hpp>

#include "mpcodes/matrix.hpp"
#include "oracles.hpp"

using namespace mpcodes;

namespace {

RingMatrix t3(const RingPtr& r) {
  return RingMatrix::from_rows(r, {{1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
}

}  // namespace

TEST_CASE("full row rank certificate on an invertible matrix", "[matrix]") {
  RingPtr f2 = Ring::make(RingSpec::zmod(2));
  RingMatrix a = t3(f2);
  REQUIRE(is_frr(a));
  CHECK(is_frr(a) == testoracle::brute_frr(a));
  FrrOutcome out = frr_certificate(a);
  auto* cert = std::get_if<FrrCertificate>(&out);
  REQUIRE(cert != nullptr);
  CHECK(a * cert->right_inverse == RingMatrix::identity(f2, 3));
  CHECK(cert->kernel.rows() == 0);
}

TEST_CASE("full row rank certificate on a wide matrix", "[matrix]") {
  RingPtr z6 = Ring::make(RingSpec::zmod(6));
  RingMatrix a = RingMatrix::from_rows(z6, {{1, 2, 0}, {0, 1, 3}});
  REQUIRE(is_frr(a));
  FrrOutcome out = frr_certificate(a);
  auto* cert = std::get_if<FrrCertificate>(&out);
  REQUIRE(cert != nullptr);
  CHECK(a * cert->right_inverse == RingMatrix::identity(z6, 2));
  REQUIRE(cert->kernel.rows() == 1);
  CHECK((cert->kernel * a.transpose()).is_zero());
  CHECK_FALSE(cert->kernel.is_zero());
}

TEST_CASE("rank failure produces a nonzero witness", "[matrix]") {
  RingPtr f2 = Ring::make(RingSpec::zmod(2));
  RingMatrix a = RingMatrix::from_rows(f2, {{1, 1}, {1, 1}});
  REQUIRE_FALSE(is_frr(a));
  CHECK(is_frr(a) == testoracle::brute_frr(a));
  FrrOutcome out = frr_certificate(a);
  auto* w = std::get_if<NotFrr>(&out);
  REQUIRE(w != nullptr);
  REQUIRE(w->witness.size() == a.rows());
  // x * A = 0 with x nonzero.
  bool nonzero = false;
  for (unsigned v : w->witness)
    if (v != 0) nonzero = true;
  CHECK(nonzero);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    unsigned acc = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
      acc = f2->add(acc, f2->mul(w->witness[i], a.at(i, j)));
    CHECK(acc == 0);
  }
}

TEST_CASE("zero divisor rows can still have full row rank", "[matrix]") {
  RingPtr z6 = Ring::make(RingSpec::zmod(6));
  // 2 and 3 are zero divisors, but together they generate the unit 5.
  RingMatrix a = RingMatrix::from_rows(z6, {{2, 3}});
  CHECK(is_frr(a) == testoracle::brute_frr(a));
  RingMatrix b = RingMatrix::from_rows(z6, {{2, 4}});
  CHECK(is_frr(b) == testoracle::brute_frr(b));
  CHECK(is_frr(a));
  CHECK_FALSE(is_frr(b));
}

TEST_CASE("determinant and inverse over a non-field", "[matrix]") {
  RingPtr z6 = Ring::make(RingSpec::zmod(6));
  RingMatrix a = RingMatrix::from_rows(z6, {{1, 2}, {3, 4}});
  CHECK(determinant(a) == 4);  // 4 is a zero divisor mod 6
  CHECK_FALSE(is_nonsingular(a));
  CHECK_THROWS_AS(inverse(a), Singular);

  RingMatrix b = RingMatrix::from_rows(z6, {{1, 2}, {3, 5}});
  CHECK(determinant(b) == 5);
  REQUIRE(is_nonsingular(b));
  CHECK(b * inverse(b) == RingMatrix::identity(z6, 2));
  CHECK(inverse(b) * b == RingMatrix::identity(z6, 2));
}

TEST_CASE("determinant rejects non-square input", "[matrix]") {
  RingPtr f2 = Ring::make(RingSpec::zmod(2));
  RingMatrix a = RingMatrix::from_rows(f2, {{1, 0, 1}});
  CHECK_THROWS_AS(determinant(a), NotSquare);
  CHECK_THROWS_AS(inverse(a), NotSquare);
}

TEST_CASE("kernel basis spans the left kernel", "[matrix]") {
  RingPtr f2 = Ring::make(RingSpec::zmod(2));
  RingMatrix a = RingMatrix::from_rows(f2, {{1, 1}});
  RingMatrix k = kernel_basis(a);
  REQUIRE(k.rows() == 1);
  CHECK((k * a.transpose()).is_zero());
  CHECK(k.at(0, 0) == 1);
  CHECK(k.at(0, 1) == 1);
}

TEST_CASE("extension to an invertible matrix", "[matrix]") {
  for (auto spec : {RingSpec::zmod(2), RingSpec::zmod(6)}) {
    RingPtr r = Ring::make(spec);
    RingMatrix a = RingMatrix::from_rows(r, {{1, 0, 1}, {0, 1, 1}});
    REQUIRE(is_frr(a));
    InvertibleExtension ext = extend_to_invertible(a);
    REQUIRE(ext.tilde_a.rows() == 3);
    CHECK(is_nonsingular(ext.tilde_a));
    // The first rows of the extension are A itself.
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        CHECK(ext.tilde_a.at(i, j) == a.at(i, j));
    // [B B'] is the inverse of the extension.
    RingMatrix bb = RingMatrix::hstack(ext.b, ext.b_prime);
    CHECK(ext.tilde_a * bb == RingMatrix::identity(r, 3));
  }
}

TEST_CASE("matrix algebra basics", "[matrix]") {
  RingPtr f3 = Ring::make(RingSpec::zmod(3));
  RingMatrix a = RingMatrix::from_rows(f3, {{1, 2}, {0, 1}});
  RingMatrix b = RingMatrix::from_rows(f3, {{2, 0}, {1, 1}});
  CHECK(a + b == RingMatrix::from_rows(f3, {{0, 2}, {1, 2}}));
  CHECK(a * b == RingMatrix::from_rows(f3, {{1, 2}, {1, 1}}));
  CHECK(a.transpose() == RingMatrix::from_rows(f3, {{1, 0}, {2, 1}}));
  CHECK(a.submatrix({0}, {1}) == RingMatrix::from_rows(f3, {{2}}));
  CHECK(RingMatrix::vstack(a, b).rows() == 4);
  CHECK(a.shape_str() == "2x2");
  CHECK(RingMatrix(f3, 2, 2).is_zero());
  CHECK_THROWS_AS(RingMatrix::from_rows(f3, {{1, 2}, {0}}), ShapeMismatch);
  CHECK_THROWS_AS(RingMatrix::from_rows(f3, {{3}}), DomainError);
}

TEST_CASE("rendering square and empty matrices", "[matrix]") {
  RingPtr f2 = Ring::make(RingSpec::zmod(2));
  CHECK(RingMatrix::from_rows(f2, {{1, 0}, {0, 1}}).show() == "[1 0; 0 1]");
  CHECK(RingMatrix(f2, 0, 3).show() == "[]");
}
