#pragma once

#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "mpcodes/classify.hpp"
#include "mpcodes/mpc.hpp"

namespace mpcodes {

inline constexpr std::uint64_t kDefaultSearchCap = std::uint64_t(1) << 24;

// Matrix-class membership test used by exhaustive search.
struct SearchPredicate {
  enum class Kind { TwoWaySfrr, QuasiOrthogonal, Nsc };

  Kind kind = Kind::Nsc;
  unsigned m_prime = 0;  // used by TwoWaySfrr only

  static SearchPredicate two_way_sfrr(unsigned m_prime) {
    return {Kind::TwoWaySfrr, m_prime};
  }
  static SearchPredicate quasi_orthogonal() {
    return {Kind::QuasiOrthogonal, 0};
  }
  static SearchPredicate nsc() { return {Kind::Nsc, 0}; }

  bool matches(const RingMatrix& a) const {
    switch (kind) {
      case Kind::TwoWaySfrr:
        return is_two_way_sfrr(a, m_prime);
      case Kind::QuasiOrthogonal:
        return is_quasi_orthogonal(a);
      case Kind::Nsc:
        return is_nsc(a);
    }
    return false;
  }

  std::string show() const {
    switch (kind) {
      case Kind::TwoWaySfrr:
        return "two-way (" + std::to_string(m_prime) + ")-SFRR";
      case Kind::QuasiOrthogonal:
        return "quasi-orthogonal";
      case Kind::Nsc:
        return "non-singular by columns";
    }
    return "";
  }
};

namespace detail {

// Candidate index -> matrix, mixed radix with the (0,0) entry most
// significant, so ascending indices give the lexicographic order of the
// flattened entry rows.
inline RingMatrix search_candidate(const RingPtr& ring, std::size_t rows,
                                   std::size_t cols, std::uint64_t index) {
  RingMatrix a(ring, rows, cols);
  const unsigned q = ring->order();
  for (std::size_t p = rows * cols; p-- > 0;) {
    a.at(p / cols, p % cols) = static_cast<unsigned>(index % q);
    index /= q;
  }
  return a;
}

}  // namespace detail

// Exhaustively enumerates all m x l matrices over the ring and keeps those
// matching the predicate, in lexicographic order of the flattened entries.
// The result does not depend on the worker count: workers scan disjoint
// contiguous index ranges and the chunks are concatenated in range order.
inline std::vector<RingMatrix> run_search(const RingPtr& ring,
                                          std::size_t rows, std::size_t cols,
                                          const SearchPredicate& pred,
                                          std::uint64_t cap = kDefaultSearchCap,
                                          unsigned workers = 1) {
  if (rows == 0 || cols == 0)
    throw DegenerateSpec("search needs at least one row and one column");
  if (pred.kind == SearchPredicate::Kind::TwoWaySfrr &&
      (pred.m_prime < 1 || pred.m_prime >= rows))
    throw IndexOutOfRange("two-way split index must lie in 1..m-1");

  auto total = detail::checked_pow(ring->order(), rows * cols);
  if (!total || *total > cap)
    throw SearchSpaceTooLarge("search space has |R|^(m*l) > " +
                              std::to_string(cap) + " candidates");

  if (workers == 0) workers = 1;
  if (std::uint64_t(workers) > *total)
    workers = static_cast<unsigned>(*total);

  std::vector<std::vector<RingMatrix>> found(workers);
  auto scan = [&](unsigned w) {
    std::uint64_t lo = *total * w / workers;
    std::uint64_t hi = *total * (w + 1) / workers;
    for (std::uint64_t i = lo; i < hi; ++i) {
      RingMatrix a = detail::search_candidate(ring, rows, cols, i);
      if (pred.matches(a)) found[w].push_back(std::move(a));
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    for (auto& t : pool) t.join();
  }

  std::vector<RingMatrix> out;
  for (auto& chunk : found)
    for (auto& a : chunk) out.push_back(std::move(a));
  return out;
}

}  // namespace mpcodes
