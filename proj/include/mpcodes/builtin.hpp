#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mpcodes/code.hpp"
#include "mpcodes/matrix.hpp"

// Fixed binary objects used by the repro subcommand and by tests.

namespace mpcodes {
namespace builtin {

inline RingPtr binary_ring() {
  static RingPtr ring = Ring::make(RingSpec::zmod(2));
  return ring;
}

// 3x3 matrix T: FRR, (2)-SFRR, reversely (3)-SFRR, not NSC.
inline RingMatrix t3() {
  return RingMatrix::from_rows(binary_ring(),
                               {{1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
}

// 5x5 matrix A: two-way (4)-SFRR with a 4-partitioned orthogonality.
inline RingMatrix a5() {
  return RingMatrix::from_rows(binary_ring(), {{1, 1, 0, 0, 0},
                                               {0, 1, 1, 0, 0},
                                               {0, 0, 1, 1, 0},
                                               {0, 0, 0, 1, 1},
                                               {1, 1, 1, 1, 1}});
}

// Generator matrices of two [8,4,4] self-dual binary codes.
inline RingMatrix g_prime() {
  return RingMatrix::from_rows(binary_ring(), {{1, 1, 0, 1, 0, 0, 0, 1},
                                               {0, 1, 1, 0, 1, 0, 0, 1},
                                               {0, 0, 1, 1, 0, 1, 0, 1},
                                               {0, 0, 0, 1, 1, 0, 1, 1}});
}

inline RingMatrix g_dprime() {
  return RingMatrix::from_rows(binary_ring(), {{1, 0, 1, 1, 0, 0, 0, 1},
                                               {0, 1, 0, 1, 1, 0, 0, 1},
                                               {0, 0, 1, 0, 1, 1, 0, 1},
                                               {0, 0, 0, 1, 0, 1, 1, 1}});
}

inline Code span_of(const RingMatrix& gens) {
  std::vector<std::vector<unsigned>> rows;
  for (std::size_t i = 0; i < gens.rows(); ++i) rows.push_back(gens.row(i));
  return Code::span(gens.ring(), gens.cols(), rows);
}

inline Code c_prime() { return span_of(g_prime()); }
inline Code c_dprime() { return span_of(g_dprime()); }

// [4,1,4] repetition code, self-orthogonal.
inline Code c1() {
  return Code::span(binary_ring(), 4, {{1, 1, 1, 1}});
}

// [4,2,2] code, not self-orthogonal.
inline Code c2() {
  return Code::span(binary_ring(), 4, {{1, 0, 1, 0}, {0, 1, 1, 1}});
}

// [4,2,2] self-dual code with a word of weight not divisible by 4.
inline Code c3() {
  return Code::span(binary_ring(), 4, {{1, 0, 1, 0}, {0, 1, 0, 1}});
}

// [4,2,2] self-dual code, pairwise-disjoint supports.
inline Code c3_prime() {
  return Code::span(binary_ring(), 4, {{1, 1, 0, 0}, {0, 0, 1, 1}});
}

inline std::vector<std::pair<std::string, RingMatrix>> matrices() {
  return {{"T", t3()},
          {"A5", a5()},
          {"Gp", g_prime()},
          {"Gpp", g_dprime()}};
}

inline std::vector<std::pair<std::string, Code>> codes() {
  return {{"C1", c1()},         {"C2", c2()},      {"C3", c3()},
          {"C3p", c3_prime()},  {"Cp", c_prime()}, {"Cpp", c_dprime()}};
}

}  // namespace builtin
}  // namespace mpcodes
