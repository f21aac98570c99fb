#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mpcodes/builtin.hpp"
#include "mpcodes/classify.hpp"
#include "mpcodes/mpc.hpp"
#include "mpcodes/search.hpp"

// Recomputation of the worked examples from built-in data. Every stated
// fact becomes one Claim; callers print the PASS/FAIL lines and fold the
// results into an exit status.

namespace mpcodes {

struct Claim {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ReproReport {
  std::string example;
  std::vector<Claim> claims;

  bool all_pass() const {
    for (const auto& c : claims)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

inline void claim(std::vector<Claim>& out, std::string name, bool pass,
                  std::string detail = "") {
  out.push_back({std::move(name), pass, std::move(detail)});
}

// k -> k * 1_R, so integer matrices with negative entries make sense over
// any ring.
inline unsigned int_in(const Ring& ring, long long k) {
  unsigned acc = 0;
  unsigned step = k >= 0 ? ring.one() : ring.neg(ring.one());
  for (long long i = k >= 0 ? k : -k; i > 0; --i) acc = ring.add(acc, step);
  return acc;
}

inline RingMatrix int_matrix(const RingPtr& ring,
                             const std::vector<std::vector<long long>>& rows) {
  RingMatrix a(ring, rows.size(), rows.front().size());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      a.at(i, k) = int_in(*ring, rows[i][k]);
  return a;
}

inline bool weights_all_mod4(const Code& c) {
  for (std::size_t i = 0; i < c.words().size(); ++i) {
    auto w = c.words()[i];
    std::size_t wt = 0;
    for (auto v : w) wt += v != 0;
    if (wt % 4 != 0) return false;
  }
  return true;
}

inline std::string show_params(const Code& c) {
  std::ostringstream os;
  os << "size " << c.size() << ", d_H " << c.min_hamming();
  return os.str();
}

inline std::vector<std::pair<std::string, RingPtr>> rings_any() {
  return {{"F2", Ring::make(RingSpec::zmod(2))},
          {"F3", Ring::make(RingSpec::zmod(3))},
          {"F4", Ring::make(RingSpec::polyquot(2, {1, 1, 1}))},
          {"Z4", Ring::make(RingSpec::zmod(4))},
          {"Z6", Ring::make(RingSpec::zmod(6))},
          {"F2[x]/(x^2)", Ring::make(RingSpec::polyquot(2, {0, 0, 1}))}};
}

inline std::vector<std::pair<std::string, RingPtr>> rings_char2() {
  return {{"F2", Ring::make(RingSpec::zmod(2))},
          {"F4", Ring::make(RingSpec::polyquot(2, {1, 1, 1}))},
          {"F2[x]/(x^2)", Ring::make(RingSpec::polyquot(2, {0, 0, 1}))}};
}

// "Characteristic different from 2" needs 2 to be a unit: rings of odd
// characteristic. Z4 has characteristic 4 but 2 is a zero divisor there
// and the claimed matrices stop being SFRR.
inline std::vector<std::pair<std::string, RingPtr>> rings_two_unit() {
  return {{"F3", Ring::make(RingSpec::zmod(3))},
          {"F5", Ring::make(RingSpec::zmod(5))},
          {"Z9", Ring::make(RingSpec::zmod(9))},
          {"Z15", Ring::make(RingSpec::zmod(15))}};
}

// Rings where both 2 and 3 are units.
inline std::vector<std::pair<std::string, RingPtr>> rings_two_three_unit() {
  return {{"F5", Ring::make(RingSpec::zmod(5))},
          {"F7", Ring::make(RingSpec::zmod(7))},
          {"Z25", Ring::make(RingSpec::zmod(25))},
          {"Z35", Ring::make(RingSpec::zmod(35))}};
}

inline const std::vector<std::vector<long long>> kT = {
    {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
inline const std::vector<std::vector<long long>> kTInvT = {
    {0, -1, 1}, {-1, 0, 1}, {1, 1, -1}};

inline std::vector<Claim> repro_ex41() {
  std::vector<Claim> out;
  std::vector<std::pair<std::string, RingPtr>> rings = {
      {"F2", Ring::make(RingSpec::zmod(2))},
      {"F3", Ring::make(RingSpec::zmod(3))},
      {"Z4", Ring::make(RingSpec::zmod(4))}};
  for (auto& [name, ring] : rings) {
    RingMatrix t = int_matrix(ring, kT);
    claim(out, "T has full row rank over " + name, is_frr(t));
    claim(out, "T is a (2)-SFRR matrix over " + name,
          is_sfrr(t, SfrrProfile::forward({2}, 3)));
    bool u1_not_mds = !row_code(t, 1, RowDir::Prefix).mds();
    claim(out, "T is not non-singular by columns over " + name,
          !is_nsc(t) && u1_not_mds,
          u1_not_mds ? "the one-row prefix code is not MDS" : "");
    claim(out, "T is a reversely (3)-SFRR matrix over " + name,
          is_sfrr(t, SfrrProfile::reverse({3}, 3)));
    RingMatrix ti = inverse(t).transpose();
    claim(out, "(T^-1)^T matches the stated entries over " + name,
          ti == int_matrix(ring, kTInvT));
    claim(out, "(T^-1)^T is a reversely (3)-SFRR matrix over " + name,
          is_sfrr(ti, SfrrProfile::reverse({3}, 3)));
  }
  return out;
}

inline std::vector<Claim> repro_ex51(unsigned workers) {
  std::vector<Claim> out;

  // (i) T is two-way (2)-SFRR over every sampled ring.
  for (auto& [name, ring] : rings_any())
    claim(out, "T is a two-way (2)-SFRR matrix over " + name,
          is_two_way_sfrr(int_matrix(ring, kT), 2));

  // (i) characteristic 2: 2-partitioned orthogonal but not quasi-orthogonal.
  for (auto& [name, ring] : rings_char2()) {
    RingMatrix t = int_matrix(ring, kT);
    claim(out,
          "T is 2-partitioned orthogonal but not quasi-orthogonal over " +
              name,
          has_partitioned_orthogonal(t, 2) && !is_quasi_orthogonal(t));
  }

  // (i) binary uniqueness, checked exhaustively.
  {
    auto f2 = builtin::binary_ring();
    auto hits =
        run_search(f2, 3, 3, SearchPredicate::two_way_sfrr(2),
                   kDefaultSearchCap, workers);
    bool unique = hits.size() == 1 && hits.front() == builtin::t3();
    std::ostringstream os;
    if (!unique) {
      bool has_t = false;
      for (const auto& h : hits) has_t |= h == builtin::t3();
      // Compare the hit set against the column permutations of T.
      std::vector<std::vector<unsigned>> perms, found;
      RingMatrix t = builtin::t3();
      std::vector<std::size_t> cols = {0, 1, 2};
      std::vector<std::size_t> rows = {0, 1, 2};
      do {
        perms.push_back(t.submatrix(rows, cols).entries());
      } while (std::next_permutation(cols.begin(), cols.end()));
      for (const auto& h : hits) found.push_back(h.entries());
      std::sort(perms.begin(), perms.end());
      std::sort(found.begin(), found.end());
      os << "search found " << hits.size() << " matrices"
         << (has_t ? ", T among them" : "")
         << (perms == found
                 ? "; they are exactly the column permutations of T"
                 : "");
    }
    claim(out, "T is the unique two-way (2)-SFRR matrix of order 3 over F2",
          unique, os.str());
  }

  // (ii) [[1,1],[1,-1]] when 2 is a unit.
  for (auto& [name, ring] : rings_two_unit()) {
    RingMatrix a = int_matrix(ring, {{1, 1}, {1, -1}});
    claim(out,
          "[[1,1],[1,-1]] is two-way (1)-SFRR and quasi-orthogonal over " +
              name,
          is_two_way_sfrr(a, 1) && is_quasi_orthogonal(a),
          "\"characteristic different from 2\" read as: 2 is a unit");
  }

  // (ii) no binary two-way (1)-SFRR matrices of order 2.
  {
    auto hits = run_search(builtin::binary_ring(), 2, 2,
                           SearchPredicate::two_way_sfrr(1),
                           kDefaultSearchCap, workers);
    claim(out, "no two-way (1)-SFRR matrix of order 2 exists over F2",
          hits.empty(),
          hits.empty() ? "exhaustive search over all 16 matrices" : "");
  }

  // (ii) char-2 fields beyond F2: [[1,w],[w,1]] for every w outside {0,1}.
  {
    std::vector<std::pair<std::string, RingPtr>> fields = {
        {"F4", Ring::make(RingSpec::polyquot(2, {1, 1, 1}))},
        {"F8", Ring::make(RingSpec::polyquot(2, {1, 1, 0, 1}))}};
    for (auto& [name, ring] : fields) {
      bool all_ok = true;
      for (unsigned w = 2; w < ring->order(); ++w) {
        RingMatrix a(ring, 2, 2);
        a.at(0, 0) = ring->one();
        a.at(0, 1) = w;
        a.at(1, 0) = w;
        a.at(1, 1) = ring->one();
        all_ok &= is_two_way_sfrr(a, 1) && is_quasi_orthogonal(a);
      }
      claim(out,
            "[[1,w],[w,1]] is two-way (1)-SFRR and quasi-orthogonal for "
            "every w outside {0,1} over " +
                name,
            all_ok, "\"1 != w\" read as: w is neither 0 nor 1");
    }
  }

  // (iii) first 4x4 matrix when 2 is a unit.
  for (auto& [name, ring] : rings_two_unit()) {
    RingMatrix a = int_matrix(
        ring, {{1, 0, 1, 1}, {0, 1, 1, -1}, {1, 1, 1, 0}, {1, -1, 0, 1}});
    claim(out, "the first 4x4 matrix is two-way (2)-SFRR over " + name,
          is_two_way_sfrr(a, 2));
  }

  // (iii) second 4x4 matrix when 2 and 3 are units.
  for (auto& [name, ring] : rings_two_three_unit()) {
    RingMatrix a = int_matrix(
        ring, {{1, 0, 1, 1}, {0, 1, 1, -1}, {1, 1, -1, 0}, {1, -1, 0, -1}});
    claim(out,
          "the second 4x4 matrix is two-way (2)-SFRR and quasi-orthogonal "
          "over " +
              name,
          is_two_way_sfrr(a, 2) && is_quasi_orthogonal(a));
  }

  // (iii) no binary 4x4 two-way matrices for any split.
  for (unsigned mp = 1; mp <= 3; ++mp) {
    auto hits = run_search(builtin::binary_ring(), 4, 4,
                           SearchPredicate::two_way_sfrr(mp),
                           kDefaultSearchCap, workers);
    claim(out,
          "no two-way (" + std::to_string(mp) +
              ")-SFRR matrix of size 4x4 exists over F2",
          hits.empty(),
          hits.empty() ? "exhaustive search over all 65536 matrices" : "");
  }

  return out;
}

inline std::vector<Claim> repro_ex52() {
  std::vector<Claim> out;
  RingMatrix t = builtin::t3();
  Code c1 = builtin::c1(), c2 = builtin::c2(), c3 = builtin::c3(),
       c3p = builtin::c3_prime();

  claim(out, "T is two-way (2)-SFRR with the 2-partitioned orthogonal "
             "property over F2",
        is_two_way_sfrr(t, 2) && has_partitioned_orthogonal(t, 2));

  claim(out, "C1 is a [4,1,4] self-orthogonal code",
        c1.size() == 2 && c1.min_hamming() == 4 && is_self_orthogonal(c1));
  claim(out, "C2 is a [4,2,2] code that is not self-orthogonal",
        c2.size() == 4 && c2.min_hamming() == 2 && !is_self_orthogonal(c2));
  claim(out, "C3 is a [4,2,2] Type I self-dual code",
        c3.size() == 4 && c3.min_hamming() == 2 && is_self_dual(c3) &&
            !weights_all_mod4(c3));
  claim(out, "C3' is a [4,2,2] Type I self-dual code",
        c3p.size() == 4 && c3p.min_hamming() == 2 && is_self_dual(c3p) &&
            !weights_all_mod4(c3p));

  // (i) C = [C2,C2,C1]T
  {
    Code cap = code_intersection(c2, c1);
    Code sum = code_sum(c2, c1);
    claim(out, "C2 and C1 intersect trivially", cap.size() == 1);
    claim(out, "C2 + C1 is a [4,3,1] code",
          sum.size() == 8 && sum.min_hamming() == 1);

    auto b = bound_thm51(c2, c1, t, 2);
    claim(out, "[C2,C2,C1]T: the two-way lower bound gives 4",
          b.eq52 == 4, "eq52 = " + std::to_string(b.eq52));
    claim(out, "[C2,C2,C1]T: the sum-based lower bound gives 3",
          b.eq53 == 3, "eq53 = " + std::to_string(b.eq53));
    claim(out, "[C2,C2,C1]T: the two-way bound beats the sum-based bound",
          b.eq52 > b.eq53);
    claim(out, "[C2,C2,C1]T: the upper bound gives 4", b.eq54 == 4);

    MpcSpec spec({c2, c2, c1}, t);
    Code c = build(spec);
    claim(out, "[C2,C2,C1]T is a [12,5,4] code",
          c.size() == 32 && c.min_hamming() == 4, show_params(c));

    std::vector<unsigned> w1 = {1, 1, 1, 1, 0, 0, 1, 0, 0, 1, 0, 0};
    std::vector<unsigned> w2 = {0, 1, 0, 1, 1, 1, 0, 1, 0, 1, 1, 1};
    bool witness = c.contains_word(w1) && c.contains_word(w2) &&
                   inner_product(*t.ring(), w1, w2) != 0;
    claim(out, "[C2,C2,C1]T is not self-orthogonal",
          !is_self_orthogonal(c) && witness,
          witness ? "the two stated codewords have inner product 1" : "");
  }

  // (ii) C = [C3,C3,C3']T
  {
    Code cap = code_intersection(c3, c3p);
    Code sum = code_sum(c3, c3p);
    claim(out, "C3 and C3' intersect in C1", cap.same_words(c1));
    claim(out, "C3 + C3' is a [4,3,2] code",
          sum.size() == 8 && sum.min_hamming() == 2);

    auto b = bound_thm51(c3, c3p, t, 2);
    claim(out, "[C3,C3,C3']T: the two-way lower bound gives 2",
          b.eq52 == 2, "eq52 = " + std::to_string(b.eq52));
    claim(out, "[C3,C3,C3']T: the sum-based lower bound gives 4",
          b.eq53 == 4, "eq53 = " + std::to_string(b.eq53));
    claim(out, "[C3,C3,C3']T: the two-way bound is weaker here",
          b.eq52 < b.eq53);
    claim(out, "[C3,C3,C3']T: the upper bound gives 4", b.eq54 == 4);

    MpcSpec spec({c3, c3, c3p}, t);
    Code c = build(spec);
    claim(out, "[C3,C3,C3']T is a [12,6,4] code",
          c.size() == 64 && c.min_hamming() == 4, show_params(c));

    auto po = self_orthogonal_by_partition(c3, c3p, t, 2);
    claim(out, "[C3,C3,C3']T is self-dual",
          po.self_dual && is_self_dual(c),
          "partition argument and direct check agree");

    std::vector<unsigned> w = {0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1, 1};
    bool witness = c.contains_word(w);
    std::size_t wt = 0;
    for (unsigned v : w) wt += v != 0;
    claim(out, "[C3,C3,C3']T is Type I, not Type II",
          !weights_all_mod4(c) && witness && wt % 4 != 0,
          "the stated codeword has weight 6");
  }

  // (iii) C = [C3,C3,C1]T
  {
    claim(out, "C1 is contained in C3", c1.is_subset_of(c3));

    MpcSpec spec({c3, c3, c1}, t);
    auto eq = equality_thm45(spec, SfrrProfile::forward({2}, 3));
    claim(out,
          "[C3,C3,C1]T: nested equal blocks force d_H = min(2 d(C3), d(C1)) "
          "= 4",
          eq.value && *eq.value == 4, eq.reason);

    Code c = build(spec);
    claim(out, "[C3,C3,C1]T is a [12,5,4] code",
          c.size() == 32 && c.min_hamming() == 4, show_params(c));

    auto po = self_orthogonal_by_partition(c3, c1, t, 2);
    claim(out, "[C3,C3,C1]T is self-orthogonal",
          po.self_orthogonal && is_self_orthogonal(c),
          "partition argument and direct check agree");
  }

  return out;
}

inline std::vector<Claim> repro_ex53() {
  std::vector<Claim> out;
  RingMatrix a = builtin::a5();
  Code cp = builtin::c_prime(), cpp = builtin::c_dprime();

  claim(out, "A is two-way (4)-SFRR with the 4-partitioned orthogonal "
             "property over F2",
        is_two_way_sfrr(a, 4) && has_partitioned_orthogonal(a, 4));

  claim(out, "C' is an [8,4,4] Type II code",
        cp.size() == 16 && cp.min_hamming() == 4 && is_self_dual(cp) &&
            weights_all_mod4(cp));
  claim(out, "C'' is an [8,4,4] Type II code",
        cpp.size() == 16 && cpp.min_hamming() == 4 && is_self_dual(cpp) &&
            weights_all_mod4(cpp));

  Code cap = code_intersection(cp, cpp);
  Code sum = code_sum(cp, cpp);
  claim(out, "C' and C'' intersect in an [8,1,8] code",
        cap.size() == 2 && cap.min_hamming() == 8);
  claim(out, "C' + C'' is an [8,7,2] code",
        sum.size() == 128 && sum.min_hamming() == 2);

  auto b = bound_thm51(cp, cpp, a, 4);
  claim(out, "[C',C',C',C',C'']A: lower bound min{2*4, 5*2, 1*8} = 8",
        b.eq53 == 8, "eq53 = " + std::to_string(b.eq53));
  claim(out, "[C',C',C',C',C'']A: upper bound min{2*4, 5*4, 1*8} = 8",
        b.eq54 == 8, "eq54 = " + std::to_string(b.eq54));

  MpcSpec spec({cp, cp, cp, cp, cpp}, a);
  auto scan = scan_weights(spec, WeightTable::hamming(a.ring()));
  claim(out, "full enumeration covers all 2^20 codewords",
        scan.total == (std::uint64_t(1) << 20),
        std::to_string(scan.total) + " words");
  claim(out, "the minimum distance is exactly 8", scan.min_nonzero == 8,
        "enumerated minimum " + std::to_string(scan.min_nonzero));
  claim(out, "every codeword weight is divisible by 4",
        scan.all_multiples_of_4);

  auto po = self_orthogonal_by_partition(cp, cpp, a, 4);
  Code c = build(spec);
  bool cardinality = c.size() * c.size() == (std::uint64_t(1) << 40);
  claim(out, "the code is self-dual",
        po.self_dual && is_self_orthogonal(c) && cardinality,
        "partition argument, plus |C|^2 = 2^40 with C self-orthogonal");

  claim(out, "the result is a [40,20,8] Type II code",
        scan.total == (std::uint64_t(1) << 20) && scan.min_nonzero == 8 &&
            scan.all_multiples_of_4 && po.self_dual && cardinality);

  return out;
}

}  // namespace detail

inline ReproReport run_repro(const std::string& example_id,
                             unsigned workers = 1) {
  ReproReport rep;
  rep.example = example_id;
  if (example_id == "ex4.1")
    rep.claims = detail::repro_ex41();
  else if (example_id == "ex5.1")
    rep.claims = detail::repro_ex51(workers);
  else if (example_id == "ex5.2")
    rep.claims = detail::repro_ex52();
  else if (example_id == "ex5.3")
    rep.claims = detail::repro_ex53();
  else
    throw UnknownExample("no example named \"" + example_id +
                         "\"; choose ex4.1, ex5.1, ex5.2 or ex5.3");
  return rep;
}

}  // namespace mpcodes
