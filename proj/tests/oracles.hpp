#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "mpcodes/code.hpp"
#include "mpcodes/matrix.hpp"
#include "mpcodes/ring.hpp"

// Independent recomputations used to cross-check library results. Everything
// here is written as plainly as possible: full enumeration, no pruning, no
// shared helpers with the library.

namespace testoracle {

using mpcodes::Code;
using mpcodes::Ring;
using mpcodes::RingMatrix;
using mpcodes::WeightTable;

inline std::vector<std::vector<unsigned>> all_words(const Ring& R,
                                                    std::size_t n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> w(n, 0);
  while (true) {
    out.push_back(w);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++w[i] < R.order()) break;
      w[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

inline unsigned ip(const Ring& R, const std::vector<unsigned>& u,
                   const std::vector<unsigned>& v) {
  unsigned s = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    s = R.add(s, R.mul(u[i], v[i]));
  return s;
}

inline std::vector<std::vector<unsigned>> code_words(const Code& c) {
  std::vector<std::vector<unsigned>> out;
  for (std::size_t i = 0; i < c.words().size(); ++i) {
    auto w = c.words()[i];
    out.emplace_back(w.begin(), w.end());
  }
  return out;
}

// Dual by filtering the whole ambient space against every codeword.
inline std::set<std::vector<unsigned>> dual_words(const Code& c) {
  const Ring& R = *c.ring();
  auto words = code_words(c);
  std::set<std::vector<unsigned>> out;
  for (const auto& x : all_words(R, c.length())) {
    bool ok = true;
    for (const auto& w : words)
      if (ip(R, w, x) != 0) {
        ok = false;
        break;
      }
    if (ok) out.insert(x);
  }
  return out;
}

// Module span as a closure under addition and scalar multiplication.
inline std::set<std::vector<unsigned>> span_words(
    const Ring& R, std::size_t n,
    const std::vector<std::vector<unsigned>>& gens) {
  std::set<std::vector<unsigned>> out;
  out.insert(std::vector<unsigned>(n, 0));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<unsigned>> cur(out.begin(), out.end());
    for (const auto& w : cur) {
      for (const auto& g : gens) {
        std::vector<unsigned> s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = R.add(w[i], g[i]);
        grew |= out.insert(s).second;
      }
      for (unsigned c = 0; c < R.order(); ++c) {
        std::vector<unsigned> s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = R.mul(c, w[i]);
        grew |= out.insert(s).second;
      }
    }
  }
  return out;
}

// Minimum distance over distinct pairs, w(c - c') exactly as defined.
inline std::uint64_t min_distance_pairs(const Code& c, const WeightTable& w) {
  const Ring& R = *c.ring();
  auto words = code_words(c);
  std::uint64_t best = 0;
  bool seen = false;
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (i == j) continue;
      std::uint64_t d = 0;
      for (std::size_t k = 0; k < words[i].size(); ++k)
        d += w(R.sub(words[i][k], words[j][k]));
      if (!seen || d < best) best = d, seen = true;
    }
  return seen ? best : 0;
}

// Full row rank means nothing but zero multiplies the rows to zero.
inline bool brute_frr(const RingMatrix& a) {
  const Ring& R = *a.ring();
  for (const auto& x : all_words(R, a.rows())) {
    bool zero_x = true;
    for (unsigned v : x) zero_x &= v == 0;
    if (zero_x) continue;
    bool kills = true;
    for (std::size_t j = 0; j < a.cols() && kills; ++j) {
      unsigned s = 0;
      for (std::size_t i = 0; i < a.rows(); ++i)
        s = R.add(s, R.mul(x[i], a.at(i, j)));
      kills = s == 0;
    }
    if (kills) return false;
  }
  return true;
}

// Matrix product words by direct substitution into the defining formula:
// the codeword is the n x l matrix [c_1^T ... c_m^T] A, flattened row-major.
inline std::set<std::vector<unsigned>> mpc_words(const std::vector<Code>& cs,
                                                 const RingMatrix& a) {
  const Ring& R = *a.ring();
  const std::size_t m = cs.size(), l = a.cols(), n = cs.front().length();
  std::vector<std::vector<std::vector<unsigned>>> comp;
  for (const auto& c : cs) comp.push_back(code_words(c));

  std::set<std::vector<unsigned>> out;
  std::vector<std::size_t> pick(m, 0);
  while (true) {
    std::vector<unsigned> word(n * l, 0);
    for (std::size_t row = 0; row < n; ++row)
      for (std::size_t col = 0; col < l; ++col) {
        unsigned s = 0;
        for (std::size_t j = 0; j < m; ++j)
          s = R.add(s, R.mul(comp[j][pick[j]][row], a.at(j, col)));
        word[row * l + col] = s;
      }
    out.insert(word);
    std::size_t j = m;
    bool done = true;
    while (j > 0) {
      --j;
      if (++pick[j] < comp[j].size()) {
        done = false;
        break;
      }
      pick[j] = 0;
    }
    if (done) return out;
  }
}

}  // namespace testoracle
