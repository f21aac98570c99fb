#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mpcodes/classify.hpp"

namespace mpcodes {

namespace detail {

inline std::optional<std::uint64_t> checked_product(
    const std::vector<std::uint64_t>& xs) {
  unsigned __int128 p = 1;
  for (std::uint64_t x : xs) {
    p *= x;
    if (p > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(p);
}

inline std::optional<std::uint64_t> checked_pow(std::uint64_t q,
                                                std::size_t e) {
  unsigned __int128 p = 1;
  for (std::size_t i = 0; i < e; ++i) {
    p *= q;
    if (p > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(p);
}

// Same test as is_sfrr, but names the first row code that fails.
inline void require_profile_sfrr(const RingMatrix& a, const SfrrProfile& p,
                                 std::uint64_t cap = kDefaultCodewordCap) {
  FrrOutcome out = frr_certificate(a);
  if (auto* w = std::get_if<NotFrr>(&out)) throw make_not_frr_error(a, *w);
  p.validate(static_cast<unsigned>(a.rows()));
  const bool fwd = p.direction == SfrrProfile::Direction::Forward;
  for (unsigned i : p.indices)
    if (!row_code(a, i, fwd ? RowDir::Prefix : RowDir::Suffix, cap).mds())
      throw ProfileNotSfrr(std::string(fwd ? "prefix" : "suffix") +
                           " row code at index " + std::to_string(i) +
                           " is not MDS, so the matrix is not " + p.show() +
                           "-SFRR");
}

}  // namespace detail

// Component codes C_1..C_m of a common length n over one ring, together
// with an m x l matrix A certified FRR at construction. A codeword is the
// n x l matrix (c_1,..,c_m)A, flattened row-major into R^(n*l).
class MpcSpec {
 public:
  MpcSpec(std::vector<Code> codes, RingMatrix a)
      : codes_(std::move(codes)), a_(std::move(a)), cert_(validate(codes_, a_)),
        n_(codes_.front().length()) {}

  const RingPtr& ring() const { return a_.ring(); }
  const std::vector<Code>& codes() const { return codes_; }
  const RingMatrix& matrix() const { return a_; }
  const FrrCertificate& certificate() const { return cert_; }

  std::size_t n() const { return n_; }
  std::size_t m() const { return codes_.size(); }
  std::size_t l() const { return a_.cols(); }
  std::size_t word_length() const { return n_ * a_.cols(); }

  // Codeword count Pi |C_j|; the row map is injective because A has a right
  // inverse. Empty when the product overflows 64 bits.
  std::optional<std::uint64_t> word_count() const {
    std::vector<std::uint64_t> sizes;
    for (const auto& c : codes_) sizes.push_back(c.size());
    return detail::checked_product(sizes);
  }

 private:
  static FrrCertificate validate(const std::vector<Code>& codes,
                                 const RingMatrix& a) {
    if (codes.empty())
      throw DegenerateSpec("a matrix product needs at least one component code");
    if (codes.size() != a.rows())
      throw ShapeMismatch("component count " + std::to_string(codes.size()) +
                          " does not match the matrix row count " +
                          std::to_string(a.rows()));
    for (const auto& c : codes) {
      if (c.ring()->spec() != a.ring()->spec())
        throw DomainError("component codes and matrix must share one ring");
      if (c.length() != codes.front().length())
        throw LengthMismatch("component codes must share one length");
    }
    FrrOutcome out = frr_certificate(a);
    if (auto* w = std::get_if<NotFrr>(&out)) throw make_not_frr_error(a, *w);
    return std::get<FrrCertificate>(std::move(out));
  }

  std::vector<Code> codes_;
  RingMatrix a_;
  FrrCertificate cert_;
  std::size_t n_;
};

// Visits every codeword exactly once (the row map is injective), in the
// lexicographic order of the component word indices, last component fastest.
// The visitor receives the flattened word; the buffer is reused.
template <typename Visitor>
void for_each_word(const MpcSpec& s, Visitor&& visit,
                   std::uint64_t cap = kDefaultCodewordCap) {
  auto total = s.word_count();
  if (!total || *total > cap)
    throw EnumerationCapExceeded(
        "matrix product enumeration exceeds the codeword cap of " +
        std::to_string(cap));

  const Ring& R = *s.ring();
  const RingMatrix& a = s.matrix();
  const std::size_t m = s.m(), l = s.l(), n = s.n(), len = n * l;

  // acc[j + 1] = acc[j] + contribution of component j's current word; the
  // word under construction is acc[m].
  std::vector<std::vector<unsigned>> acc(m + 1, std::vector<unsigned>(len, 0));
  std::vector<std::size_t> t(m, 0);
  auto fill = [&](std::size_t j) {
    auto w = s.codes()[j].words()[t[j]];
    const auto& prev = acc[j];
    auto& cur = acc[j + 1];
    for (std::size_t row = 0; row < n; ++row)
      for (std::size_t col = 0; col < l; ++col) {
        std::size_t p = row * l + col;
        unsigned aji = a.at(j, col);
        cur[p] = aji ? R.add(prev[p], R.mul(aji, w[row])) : prev[p];
      }
  };
  for (std::size_t j = 0; j < m; ++j) fill(j);

  std::uint64_t emitted = 0;
  while (true) {
    visit(static_cast<const std::vector<unsigned>&>(acc[m]));
    ++emitted;
    std::size_t j = m;
    for (; j > 0; --j) {
      if (++t[j - 1] < s.codes()[j - 1].size()) break;
      t[j - 1] = 0;
    }
    if (j == 0) break;
    for (std::size_t k = j - 1; k < m; ++k) fill(k);
  }
  if (emitted != *total)
    throw InternalError("matrix product enumeration miscounted");
}

// Materializes the product code. Linear whenever every component is linear,
// with spanning generators taken from single-slot images of the component
// generators; explicit otherwise.
inline Code build(const MpcSpec& s, std::uint64_t cap = kDefaultCodewordCap) {
  const std::size_t len = s.word_length();
  auto total = s.word_count();
  std::vector<std::uint16_t> flat;
  if (total && *total <= cap) flat.reserve(*total * len);
  for_each_word(
      s,
      [&](const std::vector<unsigned>& w) {
        for (unsigned v : w) flat.push_back(static_cast<std::uint16_t>(v));
      },
      cap);
  WordSet ws = WordSet::normalized(len, std::move(flat));
  if (ws.size() != *total)
    throw InternalError(
        "matrix product enumeration produced duplicate words; the row map "
        "must be injective for an FRR matrix");

  bool all_linear = true;
  for (const auto& c : s.codes())
    if (!c.is_linear()) all_linear = false;
  if (!all_linear) {
    std::vector<std::vector<unsigned>> words;
    words.reserve(ws.size());
    for (std::size_t i = 0; i < ws.size(); ++i)
      words.emplace_back(ws[i].begin(), ws[i].end());
    return Code::from_codewords(s.ring(), len, words, cap);
  }

  const Ring& R = *s.ring();
  const RingMatrix& a = s.matrix();
  std::vector<std::vector<unsigned>> gens;
  for (std::size_t j = 0; j < s.m(); ++j)
    for (const auto& g : s.codes()[j].spanning_generators()) {
      std::vector<unsigned> u(len, 0);
      for (std::size_t row = 0; row < s.n(); ++row)
        for (std::size_t col = 0; col < s.l(); ++col)
          u[row * s.l() + col] = R.mul(a.at(j, col), g[row]);
      gens.push_back(std::move(u));
    }
  return Code::linear_from_set(s.ring(), len, std::move(ws), std::move(gens));
}

// Streaming weight statistics over every codeword, without materializing
// the code. min_nonzero is 0 when no word has positive weight.
struct WeightScan {
  std::uint64_t total = 0;
  std::uint64_t zero_weight_words = 0;
  std::uint64_t min_nonzero = 0;
  bool all_multiples_of_4 = true;
};

inline WeightScan scan_weights(const MpcSpec& s, const WeightTable& w,
                               std::uint64_t cap = kDefaultCodewordCap) {
  if (w.ring()->spec() != s.ring()->spec())
    throw DomainError("weight table ring does not match the product ring");
  WeightScan out;
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for_each_word(
      s,
      [&](const std::vector<unsigned>& word) {
        std::uint64_t wt = w.word_weight(word);
        ++out.total;
        if (wt == 0)
          ++out.zero_weight_words;
        else
          best = std::min(best, wt);
        if (wt % 4 != 0) out.all_multiples_of_4 = false;
      },
      cap);
  if (best != std::numeric_limits<std::uint64_t>::max()) out.min_nonzero = best;
  return out;
}

// The annihilator dual of the product code, in closed form: components are
// the duals of the C_j padded with l - m copies of the full space, and the
// matrix is the transpose of (B | G^T) where B is the stored right inverse
// and G the stored kernel basis. Cardinalities are cross-checked.
inline Code dual_mpc(const MpcSpec& s, std::uint64_t cap = kDefaultCodewordCap) {
  const FrrCertificate& cert = s.certificate();
  RingMatrix btilde =
      RingMatrix::hstack(cert.right_inverse, cert.kernel.transpose());
  std::vector<Code> comps;
  for (const auto& c : s.codes()) comps.push_back(dual(c, cap));
  for (std::size_t i = s.m(); i < s.l(); ++i)
    comps.push_back(Code::full(s.ring(), s.n(), cap));
  MpcSpec ds(std::move(comps), btilde.transpose());
  Code out = build(ds, cap);

  auto primal = s.word_count();
  auto ambient = detail::checked_pow(s.ring()->order(), s.word_length());
  if (primal && ambient &&
      static_cast<unsigned __int128>(out.size()) * *primal != *ambient)
    throw InternalError("dual cardinality mismatch: |C| * |dual| != |R|^(n*l)");
  return out;
}

// Closed-form dual for a quasi-orthogonal matrix with self-orthogonal
// linear components: same shape as dual_mpc but with A itself in place of
// the transposed right inverse. The result always contains the primal code.
inline Code dual_quasi_orthogonal(const MpcSpec& s,
                                  std::uint64_t cap = kDefaultCodewordCap) {
  if (!is_quasi_orthogonal(s.matrix()))
    throw NotQuasiOrthogonal(
        "A*A^T must be diagonal with unit diagonal entries");
  for (std::size_t j = 0; j < s.m(); ++j) {
    if (!s.codes()[j].is_linear())
      throw DomainError("component " + std::to_string(j + 1) +
                        " must be linear");
    if (!is_self_orthogonal(s.codes()[j]))
      throw NotSelfOrthogonalComponent(
          j, "component " + std::to_string(j + 1) + " is not self-orthogonal");
  }
  std::vector<Code> comps;
  for (const auto& c : s.codes()) comps.push_back(dual(c, cap));
  for (std::size_t i = s.m(); i < s.l(); ++i)
    comps.push_back(Code::full(s.ring(), s.n(), cap));
  MpcSpec ds(std::move(comps),
             RingMatrix::vstack(s.matrix(), s.certificate().kernel));
  Code out = build(ds, cap);

  auto primal = s.word_count();
  auto ambient = detail::checked_pow(s.ring()->order(), s.word_length());
  if (primal && ambient &&
      static_cast<unsigned __int128>(out.size()) * *primal != *ambient)
    throw InternalError("dual cardinality mismatch: |C| * |dual| != |R|^(n*l)");
  return out;
}

// Which family of row codes a bound draws on: U uses prefixes of A's rows,
// L uses suffixes.
enum class Side { U, L };

namespace detail {

// The zero code has no nonzero word, so inside the bound formulas its
// distance is infinite and the term drops out of every minimum. A bound
// whose terms are all infinite is undefined, not huge.
inline constexpr std::uint64_t kInfDist =
    std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t hamming_or_inf(const Code& c) {
  return c.size() <= 1 ? kInfDist : c.min_hamming();
}

inline std::uint64_t dist_term(std::uint64_t factor, std::uint64_t dist) {
  return dist == kInfDist ? kInfDist : factor * dist;
}

}  // namespace detail

// min over k of d_H(C_k) * d_w(prefix-k row code) for side U, or with the
// suffix-k row code for side L. Valid for any weight table and any FRR A.
inline std::uint64_t bound_thm31(const MpcSpec& s, const WeightTable& w,
                                 Side side,
                                 std::uint64_t cap = kDefaultCodewordCap) {
  if (w.ring()->spec() != s.ring()->spec())
    throw DomainError("weight table ring does not match the product ring");
  std::uint64_t best = detail::kInfDist;
  for (std::size_t k = 1; k <= s.m(); ++k) {
    Code rc = row_code(s.matrix(), k,
                       side == Side::U ? RowDir::Prefix : RowDir::Suffix, cap);
    std::uint64_t term = detail::dist_term(
        rc.min_distance(w), detail::hamming_or_inf(s.codes()[k - 1]));
    best = std::min(best, term);
  }
  if (best == detail::kInfDist)
    throw DegenerateSpec(
        "every component is the zero code, so the row-code bound is "
        "undefined");
  return best;
}

// Blockwise lower bound on d_H: side U takes a forward profile whose prefix
// row codes are all MDS and scores component k in block h with factor
// l - i_h + 1; side L takes a reverse profile and factor l - m + i_h.
inline unsigned bound_thm45(const MpcSpec& s, const SfrrProfile& p, Side side,
                            std::uint64_t cap = kDefaultCodewordCap) {
  const bool fwd = p.direction == SfrrProfile::Direction::Forward;
  if ((side == Side::U) != fwd)
    throw DomainError("side U takes a forward profile, side L a reverse one");
  detail::require_profile_sfrr(s.matrix(), p, cap);
  const std::size_t l = s.l(), m = s.m();
  const auto& idx = p.indices;
  std::uint64_t best = detail::kInfDist;
  if (fwd) {
    for (std::size_t h = 1; h < idx.size(); ++h) {
      unsigned factor = static_cast<unsigned>(l) - idx[h] + 1;
      for (unsigned k = idx[h - 1] + 1; k <= idx[h]; ++k)
        best = std::min(best, detail::dist_term(
                                  factor, detail::hamming_or_inf(
                                              s.codes()[k - 1])));
    }
  } else {
    for (std::size_t h = 0; h + 1 < idx.size(); ++h) {
      unsigned factor = static_cast<unsigned>(l - m) + idx[h];
      for (unsigned k = idx[h]; k < idx[h + 1]; ++k)
        best = std::min(best, detail::dist_term(
                                  factor, detail::hamming_or_inf(
                                              s.codes()[k - 1])));
    }
  }
  if (best == detail::kInfDist)
    throw DegenerateSpec(
        "every component is the zero code, so the blockwise bound is "
        "undefined");
  return static_cast<unsigned>(best);
}

// Result of an exact-distance claim: value is set when the hypotheses hold,
// and reason says which one failed otherwise.
struct EqualityOutcome {
  std::optional<unsigned> value;
  std::string reason;
};

namespace detail {

// Linearity, equality inside each profile block, and nesting of the block
// representatives; these are the hypotheses under which the blockwise
// bounds are exact.
inline bool equality_conditions(const MpcSpec& s, const SfrrProfile& p,
                                std::string& reason) {
  const auto& idx = p.indices;
  const bool fwd = p.direction == SfrrProfile::Direction::Forward;
  for (std::size_t j = 0; j < s.m(); ++j)
    if (!s.codes()[j].is_linear()) {
      reason = "component " + std::to_string(j + 1) + " is not linear";
      return false;
    }
  auto block_equal = [&](unsigned lo, unsigned hi) {  // 1-based, inclusive
    for (unsigned k = lo + 1; k <= hi; ++k)
      if (!s.codes()[k - 1].same_words(s.codes()[lo - 1])) {
        reason = "components " + std::to_string(lo) + " and " +
                 std::to_string(k) + " differ inside one profile block";
        return false;
      }
    return true;
  };
  if (fwd) {
    for (std::size_t h = 1; h < idx.size(); ++h)
      if (!block_equal(idx[h - 1] + 1, idx[h])) return false;
    for (std::size_t h = 1; h + 1 < idx.size(); ++h)
      if (!s.codes()[idx[h + 1] - 1].is_subset_of(s.codes()[idx[h] - 1])) {
        reason = "component " + std::to_string(idx[h + 1]) +
                 " is not contained in component " + std::to_string(idx[h]);
        return false;
      }
  } else {
    for (std::size_t h = 0; h + 1 < idx.size(); ++h)
      if (!block_equal(idx[h], idx[h + 1] - 1)) return false;
    for (std::size_t h = 0; h + 2 < idx.size(); ++h)
      if (!s.codes()[idx[h] - 1].is_subset_of(s.codes()[idx[h + 1] - 1])) {
        reason = "component " + std::to_string(idx[h]) +
                 " is not contained in component " + std::to_string(idx[h + 1]);
        return false;
      }
  }
  reason = "conditions hold";
  return true;
}

}  // namespace detail

// Exact d_H under the blockwise hypotheses: only the block representatives
// contribute, so the minimum runs over one term per block.
inline EqualityOutcome equality_thm45(const MpcSpec& s, const SfrrProfile& p,
                                      std::uint64_t cap = kDefaultCodewordCap) {
  detail::require_profile_sfrr(s.matrix(), p, cap);
  EqualityOutcome out;
  if (!detail::equality_conditions(s, p, out.reason)) return out;
  const std::size_t l = s.l(), m = s.m();
  const auto& idx = p.indices;
  const bool fwd = p.direction == SfrrProfile::Direction::Forward;
  for (std::size_t h = fwd ? 1 : 0; h + (fwd ? 0 : 1) < idx.size(); ++h)
    if (s.codes()[idx[h] - 1].size() <= 1) {
      out.reason = "component " + std::to_string(idx[h]) +
                   " is the zero code, so its distance is undefined";
      return out;
    }
  unsigned best = std::numeric_limits<unsigned>::max();
  if (fwd) {
    for (std::size_t h = 1; h < idx.size(); ++h)
      best = std::min(best, (static_cast<unsigned>(l) - idx[h] + 1) *
                                s.codes()[idx[h] - 1].min_hamming());
  } else {
    for (std::size_t h = 0; h + 1 < idx.size(); ++h)
      best = std::min(best, (static_cast<unsigned>(l - m) + idx[h]) *
                                s.codes()[idx[h] - 1].min_hamming());
  }
  out.value = best;
  return out;
}

// Lower bound on the dual distance from a forward profile: component k in
// block h scores (i_h + 1) * d_H(dual of C_k), and when m < l the padding
// components contribute the constant m + 1. No padding term exists when A
// is square.
inline unsigned bound_thm47(const MpcSpec& s, const SfrrProfile& p,
                            std::uint64_t cap = kDefaultCodewordCap) {
  if (p.direction != SfrrProfile::Direction::Forward)
    throw DomainError("the dual-distance bound takes a forward profile");
  detail::require_profile_sfrr(s.matrix(), p, cap);
  const std::size_t l = s.l(), m = s.m();
  const auto& idx = p.indices;
  std::uint64_t best = detail::kInfDist;
  for (std::size_t h = 0; h + 1 < idx.size(); ++h) {
    unsigned factor = idx[h] + 1;
    for (unsigned k = idx[h] + 1; k <= idx[h + 1]; ++k)
      best = std::min(best,
                      detail::dist_term(factor, detail::hamming_or_inf(dual(
                                                    s.codes()[k - 1], cap))));
  }
  if (m < l)
    best = std::min(best, static_cast<std::uint64_t>(m) + 1);
  if (best == detail::kInfDist)
    throw DegenerateSpec(
        "every component is the full space, so the dual blockwise bound is "
        "undefined");
  return static_cast<unsigned>(best);
}

// Exact dual distance under the same blockwise hypotheses as
// equality_thm45, applied to the component duals.
inline EqualityOutcome equality_thm47(const MpcSpec& s, const SfrrProfile& p,
                                      std::uint64_t cap = kDefaultCodewordCap) {
  if (p.direction != SfrrProfile::Direction::Forward)
    throw DomainError("the dual-distance bound takes a forward profile");
  detail::require_profile_sfrr(s.matrix(), p, cap);
  EqualityOutcome out;
  if (!detail::equality_conditions(s, p, out.reason)) return out;
  const std::size_t l = s.l(), m = s.m();
  const auto& idx = p.indices;
  unsigned best = std::numeric_limits<unsigned>::max();
  for (std::size_t h = 0; h + 1 < idx.size(); ++h) {
    Code du = dual(s.codes()[idx[h + 1] - 1], cap);
    if (du.size() <= 1) {
      out.reason = "component " + std::to_string(idx[h + 1]) +
                   " is the full space, so its dual distance is undefined";
      return out;
    }
    best = std::min(best, (idx[h] + 1) * du.min_hamming());
  }
  if (m < l) best = std::min(best, static_cast<unsigned>(m) + 1);
  out.value = best;
  return out;
}

// Specialization to non-singular-by-columns matrices: the finest forward
// profile is available, so component k scores (l - k + 1) d_H(C_k) for the
// primal code and k * d_H(dual of C_k) for the dual, plus the m + 1 padding
// term when A is not square.
inline std::pair<unsigned, unsigned> bound_cor48(
    const MpcSpec& s, std::uint64_t cap = kDefaultCodewordCap) {
  if (!is_nsc(s.matrix()))
    throw NotNsc("every square submatrix built from leading rows must be "
                 "nonsingular");
  const std::size_t l = s.l(), m = s.m();
  std::uint64_t primal = detail::kInfDist;
  std::uint64_t dual_b = detail::kInfDist;
  for (std::size_t k = 1; k <= m; ++k) {
    primal = std::min(primal,
                      detail::dist_term(static_cast<unsigned>(l - k + 1),
                                        detail::hamming_or_inf(
                                            s.codes()[k - 1])));
    dual_b = std::min(dual_b,
                      detail::dist_term(static_cast<unsigned>(k),
                                        detail::hamming_or_inf(
                                            dual(s.codes()[k - 1], cap))));
  }
  if (m < l) dual_b = std::min(dual_b, static_cast<std::uint64_t>(m) + 1);
  if (primal == detail::kInfDist)
    throw DegenerateSpec(
        "every component is the zero code, so the column-wise bound is "
        "undefined");
  if (dual_b == detail::kInfDist)
    throw DegenerateSpec(
        "every component is the full space, so the column-wise dual bound "
        "is undefined");
  return {static_cast<unsigned>(primal), static_cast<unsigned>(dual_b)};
}

// Bounds for the block construction [C' x m', C'' x m'']A around a two-way
// split. Values are reported after normalizing to m' >= m'' (when the call
// has m' < m'', the row blocks are exchanged and the roles of the two codes
// swap; the code set is unchanged up to column order of the word matrix).
struct Thm51Bounds {
  unsigned eq52 = 0;
  unsigned eq53 = 0;
  unsigned eq54 = 0;
  unsigned eq510 = 0;
  unsigned m_prime = 0;
  unsigned m_dprime = 0;
  bool swapped = false;
};

inline Thm51Bounds bound_thm51(const Code& c_first, const Code& c_second,
                               const RingMatrix& a, unsigned m_prime,
                               std::uint64_t cap = kDefaultCodewordCap) {
  const std::size_t m = a.rows(), l = a.cols();
  if (m_prime < 1 || m_prime >= m)
    throw IndexOutOfRange("two-way split index must lie in 1..m-1");
  for (const Code* c : {&c_first, &c_second}) {
    if (c->ring()->spec() != a.ring()->spec())
      throw DomainError("codes and matrix must share one ring");
    if (!c->is_linear())
      throw DomainError("the block construction needs linear codes");
  }
  if (c_first.length() != c_second.length())
    throw LengthMismatch("the two block codes must share one length");

  Thm51Bounds out;
  out.m_prime = m_prime;
  out.m_dprime = static_cast<unsigned>(m) - m_prime;
  Code cp = c_first, cpp = c_second;
  RingMatrix an = a;
  if (out.m_prime < out.m_dprime) {
    an = RingMatrix::vstack(a.row_slice(m_prime, m), a.row_slice(0, m_prime));
    std::swap(cp, cpp);
    std::swap(out.m_prime, out.m_dprime);
    out.swapped = true;
  }
  if (!is_two_way_sfrr(an, out.m_prime))
    throw NotTwoWaySfrr("matrix is not two-way (" +
                        std::to_string(out.m_prime) + ")-SFRR");
  if (cp.size() <= 1 || cpp.size() <= 1)
    throw DegenerateSpec(
        "a block code is the zero code, so the two-way bounds are undefined");

  const unsigned lm = static_cast<unsigned>(l);
  const unsigned fp = lm - out.m_prime + 1;   // factor for the first block
  const unsigned fpp = lm - out.m_dprime + 1; // factor for the second block
  const unsigned fm = lm - static_cast<unsigned>(m) + 1;
  const unsigned dp = cp.min_hamming();
  const unsigned dpp = cpp.min_hamming();
  const unsigned dsum = code_sum(cp, cpp, cap).min_hamming();
  // The intersection may be zero; its term then drops out of the minima.
  const std::uint64_t tcap =
      detail::dist_term(fm, detail::hamming_or_inf(
                                code_intersection(cp, cpp)));

  out.eq52 = std::max(std::min(fp * dp, fm * dpp), std::min(fm * dp, fpp * dpp));
  out.eq53 = static_cast<unsigned>(
      std::min({std::uint64_t(fp) * dp, std::uint64_t(fpp) * dsum, tcap}));
  out.eq54 = static_cast<unsigned>(
      std::min({std::uint64_t(fp) * dp, std::uint64_t(fpp) * dpp, tcap}));
  out.eq510 = static_cast<unsigned>(
      std::min({std::uint64_t(fpp) * dpp, tcap, std::uint64_t(fp) * dsum}));

  // eq52 must agree with the two blockwise specializations it abbreviates.
  std::vector<Code> comps;
  for (unsigned j = 0; j < out.m_prime; ++j) comps.push_back(cp);
  for (unsigned j = 0; j < out.m_dprime; ++j) comps.push_back(cpp);
  MpcSpec s(std::move(comps), an);
  unsigned arm_u = bound_thm45(
      s, SfrrProfile::forward({out.m_prime}, static_cast<unsigned>(m)),
      Side::U, cap);
  unsigned arm_l = bound_thm45(
      s, SfrrProfile::reverse({out.m_prime + 1}, static_cast<unsigned>(m)),
      Side::L, cap);
  if (out.eq52 != std::max(arm_u, arm_l))
    throw InternalError("two-way bound disagrees with its blockwise arms");
  return out;
}

// Certifies self-orthogonality of [C' x m', C'' x m'']A from the split
// orthogonality of A and self-orthogonality of the two codes; self-duality
// additionally needs self-dual codes and invertible A. When the product is
// small enough the built code is checked directly.
struct PartitionOrthogonality {
  bool self_orthogonal = false;
  bool self_dual = false;
};

inline PartitionOrthogonality self_orthogonal_by_partition(
    const Code& c_first, const Code& c_second, const RingMatrix& a,
    unsigned m_prime, std::uint64_t verify_cap = kDefaultCodewordCap) {
  const std::size_t m = a.rows();
  if (m_prime < 1 || m_prime >= m)
    throw IndexOutOfRange("partition index must lie in 1..m-1");
  for (const Code* c : {&c_first, &c_second}) {
    if (c->ring()->spec() != a.ring()->spec())
      throw DomainError("codes and matrix must share one ring");
    if (!c->is_linear())
      throw DomainError("the block construction needs linear codes");
  }
  if (c_first.length() != c_second.length())
    throw LengthMismatch("the two block codes must share one length");
  if (!has_partitioned_orthogonal(a, m_prime))
    throw NotPartitionedOrthogonal(
        "the first " + std::to_string(m_prime) +
        " rows are not orthogonal to the remaining rows");
  if (!is_self_orthogonal(c_first))
    throw NotSelfOrthogonalComponent(0, "the first code is not self-orthogonal");
  if (!is_self_orthogonal(c_second))
    throw NotSelfOrthogonalComponent(1,
                                     "the second code is not self-orthogonal");

  PartitionOrthogonality out;
  out.self_orthogonal = true;
  out.self_dual = is_self_dual(c_first) && is_self_dual(c_second) &&
                  a.rows() == a.cols() && is_nonsingular(a);

  std::vector<Code> comps;
  for (unsigned j = 0; j < m_prime; ++j) comps.push_back(c_first);
  for (std::size_t j = m_prime; j < m; ++j) comps.push_back(c_second);
  MpcSpec s(std::move(comps), a);
  auto total = s.word_count();
  if (total && *total <= verify_cap) {
    Code built = build(s, verify_cap);
    if (!is_self_orthogonal(built))
      throw InternalError("split-orthogonal product failed the direct "
                          "self-orthogonality check");
    if (out.self_dual && !is_self_dual(built))
      throw InternalError("split-orthogonal product failed the direct "
                          "self-duality check");
  }
  return out;
}

// One-stop evaluation: every applicable bound, the profiles and split that
// produced them, enumerated distances when feasible, and the consistency
// verdict. Inapplicable bounds carry a reason in `applicability`.
struct BoundReport {
  std::optional<std::uint64_t> thm31_U, thm31_L;
  std::optional<unsigned> thm45_U, thm45_L;
  std::optional<unsigned> thm45_U_equality, thm45_L_equality;
  std::optional<unsigned> thm47, thm47_equality;
  std::optional<unsigned> cor48_primal, cor48_dual;
  std::optional<unsigned> thm51_lower_52, thm51_lower_53, thm51_upper_54,
      thm51_lower_510;
  std::optional<unsigned> m_prime;
  std::optional<SfrrProfile> forward_profile, reverse_profile;
  std::optional<std::uint64_t> code_size, dual_size;
  std::optional<unsigned> d_hamming, d_hamming_dual;
  std::optional<std::uint64_t> d_weight;
  std::optional<std::uint64_t> best_lower;
  std::string best_lower_source;
  bool verified_sandwich = false;
  std::vector<std::pair<std::string, std::string>> applicability;
};

struct BoundOptions {
  bool enumerate = true;
  std::uint64_t cap = kDefaultCodewordCap;
  std::optional<unsigned> m_prime;
  std::optional<SfrrProfile> forward_profile;
  std::optional<SfrrProfile> reverse_profile;
  std::optional<WeightTable> weight;
};

inline BoundReport run_bounds(const MpcSpec& s, const BoundOptions& opt = {}) {
  BoundReport rep;
  auto note = [&](const std::string& k, const std::string& v) {
    rep.applicability.emplace_back(k, v);
  };
  const std::size_t m = s.m();
  const WeightTable wt =
      opt.weight ? *opt.weight : WeightTable::hamming(s.ring());
  const bool hamming_weight = wt == WeightTable::hamming(s.ring());

  try {
    rep.thm31_U = bound_thm31(s, wt, Side::U, opt.cap);
    rep.thm31_L = bound_thm31(s, wt, Side::L, opt.cap);
    note("thm31", hamming_weight ? "ok" : "ok (bounds the chosen weight, "
                                          "not the Hamming distance)");
  } catch (const DegenerateSpec& e) {
    note("thm31", e.what());
  }

  // Profiles: a caller-supplied one is checked loudly; otherwise the finest
  // valid profile is used, which maximizes every blockwise bound.
  MdsIndexSets sets = find_profiles(s.matrix());
  bool row_space_mds =
      std::find(sets.forward.begin(), sets.forward.end(),
                static_cast<unsigned>(m)) != sets.forward.end();
  if (opt.forward_profile) {
    if (opt.forward_profile->direction != SfrrProfile::Direction::Forward)
      throw DomainError("forward_profile must have the forward direction");
    detail::require_profile_sfrr(s.matrix(), *opt.forward_profile, opt.cap);
    rep.forward_profile = opt.forward_profile;
  } else if (row_space_mds) {
    std::vector<unsigned> interior;
    for (unsigned i : sets.forward)
      if (i != 0 && i != m) interior.push_back(i);
    rep.forward_profile =
        SfrrProfile::forward(interior, static_cast<unsigned>(m));
  }
  if (opt.reverse_profile) {
    if (opt.reverse_profile->direction != SfrrProfile::Direction::Reverse)
      throw DomainError("reverse_profile must have the reverse direction");
    detail::require_profile_sfrr(s.matrix(), *opt.reverse_profile, opt.cap);
    rep.reverse_profile = opt.reverse_profile;
  } else if (row_space_mds) {
    std::vector<unsigned> interior;
    for (unsigned i : sets.reverse)
      if (i != 1 && i != m + 1) interior.push_back(i);
    rep.reverse_profile =
        SfrrProfile::reverse(interior, static_cast<unsigned>(m));
  }

  if (rep.forward_profile) {
    try {
      rep.thm45_U = bound_thm45(s, *rep.forward_profile, Side::U, opt.cap);
      EqualityOutcome eq = equality_thm45(s, *rep.forward_profile, opt.cap);
      rep.thm45_U_equality = eq.value;
      note("thm45_U", "ok, profile " + rep.forward_profile->show());
      note("thm45_U_equality", eq.reason);
    } catch (const DegenerateSpec& e) {
      note("thm45_U", e.what());
    }
  } else {
    note("thm45_U", "no forward profile: the full row space is not MDS");
  }
  if (rep.reverse_profile) {
    try {
      rep.thm45_L = bound_thm45(s, *rep.reverse_profile, Side::L, opt.cap);
      EqualityOutcome eq = equality_thm45(s, *rep.reverse_profile, opt.cap);
      rep.thm45_L_equality = eq.value;
      note("thm45_L", "ok, profile " + rep.reverse_profile->show());
      note("thm45_L_equality", eq.reason);
    } catch (const DegenerateSpec& e) {
      note("thm45_L", e.what());
    }
  } else {
    note("thm45_L", "no reverse profile: the full row space is not MDS");
  }

  if (rep.forward_profile) {
    try {
      rep.thm47 = bound_thm47(s, *rep.forward_profile, opt.cap);
      EqualityOutcome eq = equality_thm47(s, *rep.forward_profile, opt.cap);
      rep.thm47_equality = eq.value;
      note("thm47", "ok, profile " + rep.forward_profile->show());
      note("thm47_equality", eq.reason);
    } catch (const EnumerationCapExceeded& e) {
      note("thm47", std::string("component dual too large: ") + e.what());
    } catch (const DegenerateSpec& e) {
      note("thm47", e.what());
    }
  } else {
    note("thm47", "no forward profile: the full row space is not MDS");
  }

  if (is_nsc(s.matrix())) {
    try {
      auto pd = bound_cor48(s, opt.cap);
      rep.cor48_primal = pd.first;
      rep.cor48_dual = pd.second;
      note("cor48", "ok");
    } catch (const EnumerationCapExceeded& e) {
      note("cor48", std::string("component dual too large: ") + e.what());
    } catch (const DegenerateSpec& e) {
      note("cor48", e.what());
    }
  } else {
    note("cor48", "matrix is not non-singular by columns");
  }

  // Two-way split: the component list must be two constant blocks. A
  // caller-supplied split is checked loudly; otherwise the largest valid
  // split is used.
  auto grouped = [&](unsigned mp) {
    for (std::size_t j = 0; j < mp; ++j)
      if (!s.codes()[j].same_words(s.codes()[0])) return false;
    for (std::size_t j = mp; j < m; ++j)
      if (!s.codes()[j].same_words(s.codes()[mp])) return false;
    return true;
  };
  std::optional<unsigned> split;
  if (opt.m_prime) {
    if (*opt.m_prime < 1 || *opt.m_prime >= m)
      throw IndexOutOfRange("two-way split index must lie in 1..m-1");
    if (!grouped(*opt.m_prime))
      throw DomainError("component codes are not constant on the two blocks "
                        "of the requested split");
    split = opt.m_prime;
  } else if (m >= 2) {
    for (unsigned mp = static_cast<unsigned>(m) - 1; mp >= 1; --mp) {
      if (grouped(mp) && is_two_way_sfrr(s.matrix(), mp)) {
        split = mp;
        break;
      }
      if (mp == 1) break;
    }
  }
  if (split) {
    try {
      Thm51Bounds tb =
          bound_thm51(s.codes()[0], s.codes()[*split], s.matrix(), *split,
                      opt.cap);
      rep.m_prime = *split;
      rep.thm51_lower_52 = tb.eq52;
      rep.thm51_lower_53 = tb.eq53;
      rep.thm51_upper_54 = tb.eq54;
      rep.thm51_lower_510 = tb.eq510;
      note("thm51", "ok, split " + std::to_string(tb.m_prime) + "+" +
                        std::to_string(tb.m_dprime) +
                        (tb.swapped ? " after exchanging the blocks" : ""));
    } catch (const NotTwoWaySfrr& e) {
      note("thm51", e.what());
    } catch (const DomainError& e) {
      note("thm51", e.what());
    }
  } else {
    note("thm51", m < 2 ? "needs at least two components"
                        : "no two-way split: either the components are not "
                          "two constant blocks or no split is two-way SFRR");
  }

  if (opt.enumerate) {
    try {
      Code built = build(s, opt.cap);
      rep.code_size = built.size();
      rep.d_hamming = built.min_hamming();
      if (!hamming_weight) rep.d_weight = built.min_distance(wt);
      note("enumeration", "ok");
    } catch (const EnumerationCapExceeded& e) {
      note("enumeration", e.what());
    }
    try {
      Code d = dual_mpc(s, opt.cap);
      rep.dual_size = d.size();
      rep.d_hamming_dual = d.min_hamming();
      note("dual_enumeration", "ok");
    } catch (const EnumerationCapExceeded& e) {
      note("dual_enumeration", e.what());
    }
  } else {
    note("enumeration", "disabled");
  }

  // Strongest lower bound on d_H; ties resolve toward the block bounds,
  // then the blockwise profiles, then the generic row-code bound. With a
  // non-Hamming table the thm31 values bound a different quantity and stay
  // out of this aggregation.
  std::vector<std::pair<std::string, std::uint64_t>> lowers;
  auto add_lower = [&](const char* name, std::optional<unsigned> v) {
    if (v) lowers.emplace_back(name, *v);
  };
  add_lower("thm51_lower_53", rep.thm51_lower_53);
  add_lower("thm51_lower_52", rep.thm51_lower_52);
  add_lower("thm51_lower_510", rep.thm51_lower_510);
  add_lower("thm45_U", rep.thm45_U);
  add_lower("thm45_L", rep.thm45_L);
  add_lower("cor48_primal", rep.cor48_primal);
  if (hamming_weight) {
    if (rep.thm31_U) lowers.emplace_back("thm31_U", *rep.thm31_U);
    if (rep.thm31_L) lowers.emplace_back("thm31_L", *rep.thm31_L);
  }
  for (const auto& [name, v] : lowers)
    if (!rep.best_lower || v > *rep.best_lower) {
      rep.best_lower = v;
      rep.best_lower_source = name;
    }

  // Consistency: lower bounds below the enumerated distance, the upper
  // bound above it, equality claims exact. Any violation is recorded, not
  // thrown, so a report can show the contradiction.
  if (rep.d_hamming) {
    bool ok = true;
    auto expect = [&](bool cond, const std::string& what) {
      if (!cond) {
        ok = false;
        note("sandwich", what);
      }
    };
    for (const auto& [name, v] : lowers)
      expect(v <= *rep.d_hamming, name + " exceeds the enumerated distance");
    if (rep.thm51_upper_54)
      expect(*rep.thm51_upper_54 >= *rep.d_hamming,
             "thm51_upper_54 is below the enumerated distance");
    if (rep.thm45_U_equality)
      expect(*rep.thm45_U_equality == *rep.d_hamming,
             "thm45_U_equality does not match the enumerated distance");
    if (rep.thm45_L_equality)
      expect(*rep.thm45_L_equality == *rep.d_hamming,
             "thm45_L_equality does not match the enumerated distance");
    if (!hamming_weight && rep.d_weight) {
      expect(*rep.thm31_U <= *rep.d_weight,
             "thm31_U exceeds the enumerated weighted distance");
      expect(*rep.thm31_L <= *rep.d_weight,
             "thm31_L exceeds the enumerated weighted distance");
    }
    if (rep.d_hamming_dual) {
      if (rep.thm47)
        expect(*rep.thm47 <= *rep.d_hamming_dual,
               "thm47 exceeds the enumerated dual distance");
      if (rep.cor48_dual)
        expect(*rep.cor48_dual <= *rep.d_hamming_dual,
               "cor48_dual exceeds the enumerated dual distance");
      if (rep.thm47_equality)
        expect(*rep.thm47_equality == *rep.d_hamming_dual,
               "thm47_equality does not match the enumerated dual distance");
    }
    rep.verified_sandwich = ok;
  }
  return rep;
}

}  // namespace mpcodes
