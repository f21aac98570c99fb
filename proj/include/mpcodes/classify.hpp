#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mpcodes/code.hpp"
#include "mpcodes/matrix.hpp"

namespace mpcodes {

// Sequence of row indices splitting an m x l matrix into blocks. Forward
// profiles are 0 = i_0 < i_1 < ... < i_t = m (prefix row codes); reverse
// profiles are 1 = i_0 < ... < i_t = m + 1 (suffix row codes). The stored
// indices always include both endpoints; the conventional profile name
// lists only the interior.
struct SfrrProfile {
  enum class Direction { Forward, Reverse };

  Direction direction = Direction::Forward;
  std::vector<unsigned> indices;

  static SfrrProfile forward(std::vector<unsigned> interior, unsigned m) {
    SfrrProfile p;
    p.direction = Direction::Forward;
    p.indices.push_back(0);
    for (unsigned i : interior) p.indices.push_back(i);
    p.indices.push_back(m);
    p.validate(m);
    return p;
  }

  static SfrrProfile reverse(std::vector<unsigned> interior, unsigned m) {
    SfrrProfile p;
    p.direction = Direction::Reverse;
    p.indices.push_back(1);
    for (unsigned i : interior) p.indices.push_back(i);
    p.indices.push_back(m + 1);
    p.validate(m);
    return p;
  }

  // The plain (interior-free) profile in either direction.
  static SfrrProfile trivial(Direction dir, unsigned m) {
    return dir == Direction::Forward ? forward({}, m) : reverse({}, m);
  }

  std::vector<unsigned> interior() const {
    if (indices.size() <= 2) return {};
    return {indices.begin() + 1, indices.end() - 1};
  }

  std::size_t block_count() const { return indices.size() - 1; }

  void validate(unsigned m) const {
    unsigned lo = direction == Direction::Forward ? 0 : 1;
    unsigned hi = direction == Direction::Forward ? m : m + 1;
    if (indices.size() < 2 || indices.front() != lo || indices.back() != hi)
      throw DomainError("profile must run from " + std::to_string(lo) +
                        " to " + std::to_string(hi));
    for (std::size_t i = 1; i < indices.size(); ++i)
      if (indices[i] <= indices[i - 1])
        throw DomainError("profile indices must be strictly increasing");
  }

  std::string show() const {
    std::ostringstream os;
    os << (direction == Direction::Forward ? "forward(" : "reverse(");
    auto in = interior();
    for (std::size_t i = 0; i < in.size(); ++i) os << (i ? "," : "") << in[i];
    os << ")";
    return os.str();
  }

  bool operator==(const SfrrProfile&) const = default;
};

// Every t x t submatrix of the first (direction Forward) or last (Reverse)
// t rows must be nonsingular, for t = 1..m.
namespace detail {

inline bool nsc_impl(const RingMatrix& a, bool reverse) {
  const std::size_t m = a.rows(), l = a.cols();
  if (m > l) return false;
  for (std::size_t t = 1; t <= m; ++t) {
    std::vector<std::size_t> rows(t);
    for (std::size_t i = 0; i < t; ++i) rows[i] = reverse ? m - t + i : i;
    // All t-subsets of columns, in lexicographic order.
    std::vector<std::size_t> cols(t);
    for (std::size_t i = 0; i < t; ++i) cols[i] = i;
    while (true) {
      if (!a.ring()->is_unit(determinant(a.submatrix(rows, cols))))
        return false;
      bool advanced = false;
      for (std::size_t i = t; i-- > 0;) {
        if (cols[i] < l - t + i) {
          ++cols[i];
          for (std::size_t j = i + 1; j < t; ++j) cols[j] = cols[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return true;
}

}  // namespace detail

inline bool is_nsc(const RingMatrix& a) { return detail::nsc_impl(a, false); }

inline bool is_reversely_nsc(const RingMatrix& a) {
  return detail::nsc_impl(a, true);
}

// MDS test for the prefix or suffix row codes named by the profile. The
// matrix must be FRR so the row codes are free of the nominal rank.
inline bool is_sfrr(const RingMatrix& a, const SfrrProfile& p) {
  FrrOutcome out = frr_certificate(a);
  if (auto* w = std::get_if<NotFrr>(&out)) throw make_not_frr_error(a, *w);
  p.validate(static_cast<unsigned>(a.rows()));
  RowDir dir = p.direction == SfrrProfile::Direction::Forward ? RowDir::Prefix
                                                              : RowDir::Suffix;
  for (unsigned i : p.indices)
    if (!row_code(a, i, dir).mds()) return false;
  return true;
}

// All indices k whose prefix (resp. suffix) row code is MDS. A forward
// profile is valid for A exactly when its indices are a subset of
// forward_mds containing the endpoints, so these two sets describe every
// profile at once; the finest valid profile uses all of them.
struct MdsIndexSets {
  std::vector<unsigned> forward;  // subset of 0..m
  std::vector<unsigned> reverse;  // subset of 1..m+1
};

inline MdsIndexSets find_profiles(const RingMatrix& a) {
  FrrOutcome out = frr_certificate(a);
  if (auto* w = std::get_if<NotFrr>(&out)) throw make_not_frr_error(a, *w);
  MdsIndexSets sets;
  const unsigned m = static_cast<unsigned>(a.rows());
  for (unsigned k = 0; k <= m; ++k)
    if (row_code(a, k, RowDir::Prefix).mds()) sets.forward.push_back(k);
  for (unsigned k = 1; k <= m + 1; ++k)
    if (row_code(a, k, RowDir::Suffix).mds()) sets.reverse.push_back(k);
  return sets;
}

// Total predicate: false for matrices that are not FRR. Checked both from
// the definition (one forward and one reverse profile) and blockwise (the
// two row blocks and the whole matrix are plain SFRR); the two
// characterizations must agree.
inline bool is_two_way_sfrr(const RingMatrix& a, unsigned m_prime) {
  const std::size_t m = a.rows();
  if (m_prime < 1 || m_prime >= m)
    throw IndexOutOfRange("two-way split index must lie in 1..m-1");
  bool def_path = false;
  if (is_frr(a)) {
    def_path =
        is_sfrr(a, SfrrProfile::forward({m_prime}, static_cast<unsigned>(m))) &&
        is_sfrr(a, SfrrProfile::reverse({m_prime + 1}, static_cast<unsigned>(m)));
  }
  auto plain_sfrr = [](const RingMatrix& x) {
    if (!is_frr(x)) return false;
    return is_sfrr(x, SfrrProfile::trivial(SfrrProfile::Direction::Forward,
                                           static_cast<unsigned>(x.rows())));
  };
  bool block_path = plain_sfrr(a.row_slice(0, m_prime)) &&
                    plain_sfrr(a.row_slice(m_prime, m)) && plain_sfrr(a);
  if (def_path != block_path)
    throw InternalError("two-way characterizations disagree");
  return def_path;
}

// A * A^T diagonal with unit diagonal entries.
inline bool is_quasi_orthogonal(const RingMatrix& a) {
  const std::size_t m = a.rows();
  if (m > a.cols()) return false;
  const Ring& R = *a.ring();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      unsigned ip = inner_product(R, a.row(i), a.row(j));
      if (i == j ? !R.is_unit(ip) : ip != 0) return false;
    }
  return true;
}

// Every row of the first block orthogonal to every row of the second.
inline bool has_partitioned_orthogonal(const RingMatrix& a, unsigned m_prime) {
  const std::size_t m = a.rows();
  if (m_prime < 1 || m_prime >= m)
    throw IndexOutOfRange("partition index must lie in 1..m-1");
  const Ring& R = *a.ring();
  for (std::size_t i = 0; i < m_prime; ++i)
    for (std::size_t j = m_prime; j < m; ++j)
      if (inner_product(R, a.row(i), a.row(j)) != 0) return false;
  return true;
}

// Duality between forward profiles of A and reverse profiles of the inverse
// transpose of an invertible extension: A is profile-SFRR iff
// (tilde_a^{-1})^T is reversely SFRR for the shifted profile (with m + 1
// appended unless m = l). Returns whether the equivalence holds.
inline bool prop42_check(const RingMatrix& a, const SfrrProfile& fwd) {
  if (fwd.direction != SfrrProfile::Direction::Forward)
    throw DomainError("prop42_check expects a forward profile");
  const unsigned m = static_cast<unsigned>(a.rows());
  const unsigned l = static_cast<unsigned>(a.cols());
  fwd.validate(m);
  InvertibleExtension ext = extend_to_invertible(a);
  RingMatrix mt = RingMatrix::hstack(ext.b, ext.b_prime).transpose();
  std::vector<unsigned> rev_interior;
  for (unsigned i : fwd.interior()) rev_interior.push_back(i + 1);
  if (m < l) rev_interior.push_back(m + 1);
  SfrrProfile rev = SfrrProfile::reverse(rev_interior, l);
  bool lhs = is_sfrr(a, fwd);
  bool rhs = is_sfrr(mt, rev);
  return lhs == rhs;
}

// Block triangular decomposition of a profile-SFRR matrix: Q is block lower
// triangular and invertible, QA is block upper triangular with identity
// diagonal blocks, and the last row of each block ends in units.
struct BlockDecomposition {
  RingMatrix q;
  RingMatrix qa;
  std::vector<unsigned> block_sizes;
};

inline BlockDecomposition lemma46_decompose(const RingMatrix& a,
                                            const SfrrProfile& profile) {
  if (profile.direction != SfrrProfile::Direction::Forward)
    throw DomainError("block decomposition expects a forward profile");
  const std::size_t m = a.rows(), l = a.cols();
  profile.validate(static_cast<unsigned>(m));
  if (!is_sfrr(a, profile))
    throw ProfileNotSfrr("matrix is not " + profile.show() + "-SFRR");

  const Ring& R = *a.ring();
  RingMatrix w = a;
  RingMatrix q = RingMatrix::identity(a.ring(), m);
  const auto& idx = profile.indices;

  auto scale_rows = [&](std::size_t lo, std::size_t hi, const RingMatrix& dinv,
                        RingMatrix& target, std::size_t ncols) {
    RingMatrix block(target.ring(), hi - lo, ncols);
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = 0; j < ncols; ++j) block.at(i - lo, j) = target.at(i, j);
    RingMatrix scaled = dinv * block;
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = 0; j < ncols; ++j) target.at(i, j) = scaled.at(i - lo, j);
  };

  for (std::size_t h = 1; h < idx.size(); ++h) {
    std::size_t lo = idx[h - 1], hi = idx[h];
    std::vector<std::size_t> rows(hi - lo), cols(hi - lo);
    for (std::size_t i = 0; i < hi - lo; ++i) {
      rows[i] = lo + i;
      cols[i] = lo + i;
    }
    RingMatrix dinv = inverse(w.submatrix(rows, cols));
    scale_rows(lo, hi, dinv, w, l);
    scale_rows(lo, hi, dinv, q, m);
    // Clear the block's columns from every later row.
    for (std::size_t r = hi; r < m; ++r)
      for (std::size_t c = lo; c < hi; ++c) {
        unsigned f = w.at(r, c);
        if (f == 0) continue;
        for (std::size_t j = 0; j < l; ++j)
          w.at(r, j) = R.sub(w.at(r, j), R.mul(f, w.at(c, j)));
        for (std::size_t j = 0; j < m; ++j)
          q.at(r, j) = R.sub(q.at(r, j), R.mul(f, q.at(c, j)));
      }
  }

  // Postconditions. These hold whenever the profile really is SFRR.
  if (!(q * a == w)) throw InternalError("block decomposition: QA mismatch");
  if (!is_nonsingular(q))
    throw InternalError("block decomposition: Q not invertible");
  for (std::size_t h = 1; h < idx.size(); ++h) {
    std::size_t lo = idx[h - 1], hi = idx[h];
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = 0; j < hi; ++j) {
        unsigned want = i == j ? R.one() : 0u;
        if (w.at(i, j) != want)
          throw InternalError("block decomposition: diagonal block not identity");
      }
      for (std::size_t j = 0; j < m; ++j)
        if (j >= hi && q.at(i, j) != 0)
          throw InternalError("block decomposition: Q not block lower triangular");
    }
    // Last row of the block: trailing entries must be units.
    std::size_t last = hi - 1;
    for (std::size_t j = hi; j < l; ++j)
      if (!R.is_unit(w.at(last, j)))
        throw InternalError("block decomposition: trailing entry not a unit");
  }

  BlockDecomposition out{std::move(q), std::move(w), {}};
  for (std::size_t h = 1; h < idx.size(); ++h)
    out.block_sizes.push_back(idx[h] - idx[h - 1]);
  return out;
}

}  // namespace mpcodes
