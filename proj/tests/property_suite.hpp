#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mpcodes/classify.hpp"
#include "mpcodes/mpc.hpp"
#include "oracles.hpp"

// Randomized invariants shared by the unit tests (small counts) and the
// acceptance run (200+ cases per ring). All randomness is seed-fixed.

namespace propsuite {

using namespace mpcodes;

struct Counters {
  int total = 0;
  std::map<std::string, int> per_item;
  std::vector<std::string> failures;

  void pass(const std::string& item) {
    ++total;
    ++per_item[item];
  }
  void fail(const std::string& item, const std::string& what) {
    ++total;
    ++per_item[item];
    failures.push_back(item + ": " + what);
  }
  void check(const std::string& item, bool ok, const std::string& what) {
    if (ok)
      pass(item);
    else
      fail(item, what);
  }
};

using Rng = std::mt19937_64;

inline unsigned pick(Rng& rng, unsigned lo, unsigned hi) {
  return lo + static_cast<unsigned>(rng() % (hi - lo + 1));
}

inline RingMatrix random_matrix(Rng& rng, const RingPtr& ring, std::size_t m,
                                std::size_t l) {
  RingMatrix a(ring, m, l);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < l; ++j)
      a.at(i, j) = static_cast<unsigned>(rng() % ring->order());
  return a;
}

inline Code random_code(Rng& rng, const RingPtr& ring, std::size_t n,
                        unsigned max_gens) {
  unsigned g = pick(rng, 1, max_gens);
  std::vector<std::vector<unsigned>> gens;
  for (unsigned i = 0; i < g; ++i) {
    std::vector<unsigned> row(n);
    for (auto& v : row) v = static_cast<unsigned>(rng() % ring->order());
    gens.push_back(std::move(row));
  }
  return Code::span(ring, n, gens);
}

// Fixed per-ring seeds for the constructive duality items: a
// quasi-orthogonal matrix, a matrix with an m'-partitioned orthogonality,
// and a self-orthogonal component code.
struct RingSeeds {
  std::string name;
  RingPtr ring;
  RingMatrix qo;
  RingMatrix po;
  unsigned po_split;
  Code self_orth;
};

inline std::vector<RingSeeds> standard_rings() {
  std::vector<RingSeeds> out;
  auto add = [&](std::string name, RingSpec spec,
                 std::vector<std::vector<long long>> qo,
                 std::vector<std::vector<long long>> po, unsigned split,
                 std::vector<std::vector<long long>> so_gens) {
    RingPtr r = Ring::make(spec);
    auto reduce = [&](const std::vector<std::vector<long long>>& rows) {
      RingMatrix a(r, rows.size(), rows.front().size());
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
          long long k = rows[i][j];
          unsigned step = k >= 0 ? r->one() : r->neg(r->one());
          unsigned acc = 0;
          for (long long t = k >= 0 ? k : -k; t > 0; --t)
            acc = r->add(acc, step);
          a.at(i, j) = acc;
        }
      return a;
    };
    RingMatrix som = reduce(so_gens);
    std::vector<std::vector<unsigned>> gens;
    for (std::size_t i = 0; i < som.rows(); ++i) gens.push_back(som.row(i));
    out.push_back({std::move(name), r, reduce(qo), reduce(po), split,
                   Code::span(r, som.cols(), gens)});
  };
  std::vector<std::vector<long long>> t = {{1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  add("F2", RingSpec::zmod(2), {{0, 1}, {1, 0}}, t, 2, {{1, 1}});
  add("F3", RingSpec::zmod(3), {{1, 1}, {1, 2}}, {{1, 1}, {1, 2}}, 1,
      {{1, 1, 1}});
  add("F4", RingSpec::polyquot(2, {1, 1, 1}), {{1, 0}, {0, 1}}, t, 2,
      {{1, 1}});
  add("Z4", RingSpec::zmod(4), {{1, 2}, {2, 1}}, {{1, 2}, {2, 1}}, 1,
      {{2, 0}, {0, 2}});
  add("Z6", RingSpec::zmod(6), {{1, 2}, {4, 1}}, {{1, 2}, {4, 1}}, 1,
      {{2, 2, 2}});
  add("F2[x]/(x^2)", RingSpec::polyquot(2, {0, 0, 1}), {{1, 0}, {0, 1}}, t, 2,
      {{1, 1}});
  return out;
}

namespace detail {

inline std::string show_case(const std::string& ring, const RingMatrix& a) {
  return "over " + ring + ", matrix " + a.show();
}

// (a) duality basics on random codes.
inline void item_dual(Counters& ct, Rng& rng, const RingSeeds& rs, int cases) {
  for (int i = 0; i < cases; ++i) {
    std::size_t n = pick(rng, 2, 4);
    Code c = random_code(rng, rs.ring, n, 2);
    Code d = dual(c);
    std::uint64_t ambient = 1;
    for (std::size_t k = 0; k < n; ++k) ambient *= rs.ring->order();
    bool sizes = c.size() * d.size() == ambient;
    bool involution = dual(d).same_words(c);
    auto oracle = testoracle::dual_words(c);
    bool matches = oracle.size() == d.size();
    if (matches)
      for (const auto& w : oracle) matches &= d.contains_word(w);
    ct.check("a:dual", sizes && involution && matches,
             "over " + rs.name + ", code of length " + std::to_string(n) +
                 " size " + std::to_string(c.size()) +
                 (sizes ? "" : ": |C||C'| != |R|^n") +
                 (involution ? "" : ": double dual differs") +
                 (matches ? "" : ": dual differs from oracle"));
  }
}

inline RingMatrix random_frr_matrix(Rng& rng, const RingPtr& ring,
                                    std::size_t m, std::size_t l) {
  for (int tries = 0; tries < 200; ++tries) {
    RingMatrix a = random_matrix(rng, ring, m, l);
    if (is_frr(a)) return a;
  }
  // Unit diagonal forces full row rank.
  RingMatrix a = random_matrix(rng, ring, m, l);
  for (std::size_t i = 0; i < m; ++i) a.at(i, i) = ring->one();
  if (is_frr(a)) return a;
  return l == m ? RingMatrix::identity(ring, m)
                : RingMatrix::hstack(RingMatrix::identity(ring, m),
                                     RingMatrix(ring, m, l - m));
}

// Keeps q^(n*l) small enough for brute-force duals over the ambient space.
inline std::size_t budget_n(const RingPtr& ring, std::size_t l,
                            std::size_t n) {
  while (n > 1) {
    long double total = 1;
    for (std::size_t i = 0; i < n * l; ++i) total *= ring->order();
    if (total <= 70000.0L) break;
    --n;
  }
  return n;
}

// (b) the dual formula against brute force, and the built words against
// direct substitution.
inline void item_dual_mpc(Counters& ct, Rng& rng, const RingSeeds& rs,
                          int cases) {
  for (int i = 0; i < cases; ++i) {
    std::size_t m = pick(rng, 1, 2);
    std::size_t l = m + pick(rng, 0, 2);
    std::size_t n = budget_n(rs.ring, l, pick(rng, 1, 2));
    RingMatrix a = random_frr_matrix(rng, rs.ring, m, l);
    std::vector<Code> cs;
    for (std::size_t j = 0; j < m; ++j)
      cs.push_back(random_code(rng, rs.ring, n, 2));
    MpcSpec spec(cs, a);
    Code c = build(spec);
    auto direct = testoracle::mpc_words(cs, a);
    bool words_ok = direct.size() == c.size();
    if (words_ok)
      for (const auto& w : direct) words_ok &= c.contains_word(w);
    Code df = dual_mpc(spec);
    Code db = dual(c);
    ct.check("b:dual_mpc", words_ok && df.same_words(db),
             show_case(rs.name, a) +
                 (words_ok ? "" : ": built words differ from substitution") +
                 (df.same_words(db) ? "" : ": formula dual != brute dual"));
  }
}

// (c) every reported lower bound really sandwiches the enumerated distance.
inline void item_sandwich(Counters& ct, Rng& rng, const RingSeeds& rs,
                          int cases) {
  for (int i = 0; i < cases; ++i) {
    std::size_t m = pick(rng, 1, 3);
    std::size_t l = m + pick(rng, 0, 1);
    std::size_t n = budget_n(rs.ring, l, pick(rng, 1, 2));
    RingMatrix a = random_frr_matrix(rng, rs.ring, m, l);
    std::vector<Code> cs;
    for (std::size_t j = 0; j < m; ++j)
      cs.push_back(random_code(rng, rs.ring, n, 2));
    MpcSpec spec(cs, a);
    BoundReport rep = run_bounds(spec);
    ct.check("c:sandwich",
             rep.d_hamming.has_value() && rep.verified_sandwich,
             show_case(rs.name, a) + ": sandwich checks failed");
  }
}

// (d) the equality form of the blockwise bound under E1-E3.
inline void item_equality(Counters& ct, Rng& rng, const RingSeeds& rs,
                          int cases) {
  int done = 0, guard = 0;
  while (done < cases && ++guard < cases * 60) {
    std::size_t m = pick(rng, 2, 3);
    std::size_t l = m + pick(rng, 0, 2);
    RingMatrix a = random_matrix(rng, rs.ring, m, l);
    if (!is_frr(a)) continue;
    MdsIndexSets sets = find_profiles(a);
    bool fwd = rng() % 2 == 0;
    const auto& good = fwd ? sets.forward : sets.reverse;
    unsigned lo_end = fwd ? 0u : 1u;
    unsigned hi_end = static_cast<unsigned>(m) + (fwd ? 0u : 1u);
    auto has = [&](unsigned k) {
      return std::find(good.begin(), good.end(), k) != good.end();
    };
    if (!has(lo_end) || !has(hi_end)) continue;
    std::vector<unsigned> interior;
    for (unsigned k : good)
      if (k != lo_end && k != hi_end && rng() % 2 == 0) interior.push_back(k);
    SfrrProfile p = fwd ? SfrrProfile::forward(interior, (unsigned)m)
                        : SfrrProfile::reverse(interior, (unsigned)m);
    if (!is_sfrr(a, p)) continue;

    // Nested chain, equal within blocks: forward blocks decrease, reverse
    // blocks increase toward the last block.
    std::size_t n = 2;
    std::size_t t = p.block_count();
    std::vector<std::vector<unsigned>> gens;
    for (std::size_t g = 0; g < t; ++g) {
      // Nonzero generators keep every block code nonzero, so the exact
      // blockwise distance is defined.
      std::vector<unsigned> row(n, 0);
      while (std::all_of(row.begin(), row.end(),
                         [](unsigned v) { return v == 0; }))
        for (auto& v : row) v = static_cast<unsigned>(rng() % rs.ring->order());
      gens.push_back(std::move(row));
    }
    std::vector<Code> blocks;
    for (std::size_t h = 0; h < t; ++h) {
      // Forward block h spans generators h..t-1 (shrinking), reverse block h
      // spans 0..h (growing).
      std::vector<std::vector<unsigned>> use;
      if (fwd)
        use.assign(gens.begin() + h, gens.end());
      else
        use.assign(gens.begin(), gens.begin() + h + 1);
      blocks.push_back(Code::span(rs.ring, n, use));
    }
    std::vector<Code> cs;
    for (std::size_t h = 1; h < p.indices.size(); ++h) {
      std::size_t lo = fwd ? p.indices[h - 1] : p.indices[h - 1] - 1;
      std::size_t hi = fwd ? p.indices[h] : p.indices[h] - 1;
      for (std::size_t j = lo; j < hi; ++j) cs.push_back(blocks[h - 1]);
    }
    MpcSpec spec(cs, a);
    EqualityOutcome eq = equality_thm45(spec, p);
    if (!eq.value) {
      ct.fail("d:equality", show_case(rs.name, a) + ": " + eq.reason);
      ++done;
      continue;
    }
    unsigned d = build(spec).min_hamming();
    ct.check("d:equality", *eq.value == d,
             show_case(rs.name, a) + ": equality value " +
                 std::to_string(*eq.value) + " but enumerated " +
                 std::to_string(d));
    ++done;
  }
}

// (e) profile duality and the non-singular-by-columns equivalences.
inline void item_prop42(Counters& ct, Rng& rng, const RingSeeds& rs,
                        int cases) {
  for (int i = 0; i < cases; ++i) {
    std::size_t m = pick(rng, 1, 3);
    std::size_t l = m + pick(rng, 0, 2);
    RingMatrix a = random_frr_matrix(rng, rs.ring, m, l);
    std::vector<unsigned> interior;
    for (unsigned k = 1; k < m; ++k)
      if (rng() % 2 == 0) interior.push_back(k);
    SfrrProfile p = SfrrProfile::forward(interior, (unsigned)m);
    bool ok = prop42_check(a, p);

    // Full-interior profile membership is the same as non-singular by
    // columns; in the square case the inverse transpose mirrors it.
    std::vector<unsigned> full;
    for (unsigned k = 1; k < m; ++k) full.push_back(k);
    bool nsc_eq =
        is_nsc(a) == is_sfrr(a, SfrrProfile::forward(full, (unsigned)m));
    bool square_ok = true;
    if (m == l && is_nonsingular(a))
      square_ok = is_nsc(a) == is_reversely_nsc(inverse(a).transpose());
    ct.check("e:prop42", ok && nsc_eq && square_ok,
             show_case(rs.name, a) +
                 (ok ? "" : ": profile duality violated") +
                 (nsc_eq ? "" : ": NSC != full-profile SFRR") +
                 (square_ok ? "" : ": square inverse equivalence failed"));
  }
}

// (f) block decomposition postconditions.
inline void item_lemma46(Counters& ct, Rng& rng, const RingSeeds& rs,
                         int cases) {
  int done = 0, guard = 0;
  while (done < cases && ++guard < cases * 60) {
    std::size_t m = pick(rng, 1, 3);
    std::size_t l = m + pick(rng, 0, 2);
    RingMatrix a = random_matrix(rng, rs.ring, m, l);
    if (!is_frr(a)) continue;
    MdsIndexSets sets = find_profiles(a);
    auto has = [&](unsigned k) {
      return std::find(sets.forward.begin(), sets.forward.end(), k) !=
             sets.forward.end();
    };
    if (!has(0) || !has(static_cast<unsigned>(m))) continue;
    std::vector<unsigned> interior;
    for (unsigned k : sets.forward)
      if (k != 0 && k != m && rng() % 2 == 0) interior.push_back(k);
    SfrrProfile p = SfrrProfile::forward(interior, (unsigned)m);
    if (!is_sfrr(a, p)) continue;
    try {
      BlockDecomposition bd = lemma46_decompose(a, p);
      unsigned sum = 0;
      for (unsigned b : bd.block_sizes) sum += b;
      ct.check("f:lemma46",
               bd.q * a == bd.qa && sum == m &&
                   bd.block_sizes.size() == p.block_count(),
               show_case(rs.name, a) + ": decomposition shape broken");
    } catch (const Error& e) {
      ct.fail("f:lemma46", show_case(rs.name, a) + ": " + e.what());
    }
    ++done;
  }
}

// (g) the constructive self-orthogonality routes, verified pairwise.
inline void item_self_orth(Counters& ct, const RingSeeds& rs) {
  const Ring& R = *rs.ring;
  // Quasi-orthogonal route: the structured dual equals the brute dual.
  {
    std::vector<Code> cs(rs.qo.rows(), rs.self_orth);
    MpcSpec spec(cs, rs.qo);
    Code dq = dual_quasi_orthogonal(spec);
    Code db = dual(build(spec));
    ct.check("g:self_orth", dq.same_words(db),
             "over " + rs.name + ": quasi-orthogonal dual differs");
  }
  // Partition route: the built code must be self-orthogonal, checked over
  // every pair of codewords.
  {
    std::size_t m = rs.po.rows();
    std::vector<Code> cs;
    for (std::size_t j = 0; j < m; ++j) cs.push_back(rs.self_orth);
    auto claim = self_orthogonal_by_partition(rs.self_orth, rs.self_orth,
                                              rs.po, rs.po_split);
    Code c = build(MpcSpec(cs, rs.po));
    auto words = testoracle::code_words(c);
    bool pairwise = true;
    for (const auto& u : words)
      for (const auto& v : words)
        pairwise &= testoracle::ip(R, u, v) == 0;
    ct.check("g:self_orth", claim.self_orthogonal && pairwise,
             "over " + rs.name + ": partition self-orthogonality broken");
  }
}

}  // namespace detail

struct SuitePlan {
  int dual = 50;
  int dual_mpc = 35;
  int sandwich = 35;
  int equality = 30;
  int prop42 = 40;
  int lemma46 = 15;
  // plus 2 fixed self-orthogonality cases; 207 per ring when every
  // guarded item fills its quota
};

inline Counters run_property_suite(const RingSeeds& rs, std::uint64_t seed,
                                   const SuitePlan& plan = {}) {
  Counters ct;
  Rng rng(seed);
  detail::item_dual(ct, rng, rs, plan.dual);
  detail::item_dual_mpc(ct, rng, rs, plan.dual_mpc);
  detail::item_sandwich(ct, rng, rs, plan.sandwich);
  detail::item_equality(ct, rng, rs, plan.equality);
  detail::item_prop42(ct, rng, rs, plan.prop42);
  detail::item_lemma46(ct, rng, rs, plan.lemma46);
  detail::item_self_orth(ct, rs);
  return ct;
}

}  // namespace propsuite
