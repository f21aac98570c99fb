#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mpcodes/matrix.hpp"
#include "mpcodes/ring.hpp"

namespace mpcodes {

inline constexpr std::uint64_t kDefaultCodewordCap = std::uint64_t(1) << 22;

// Sorted, duplicate-free set of length-n words, stored flat.
class WordSet {
 public:
  explicit WordSet(std::size_t n) : n_(n) {}

  std::size_t length() const { return n_; }
  std::size_t size() const { return n_ ? flat_.size() / n_ : 0; }

  std::span<const std::uint16_t> operator[](std::size_t i) const {
    return {flat_.data() + i * n_, n_};
  }

  const std::vector<std::uint16_t>& flat() const { return flat_; }

  bool contains(std::span<const std::uint16_t> w) const {
    return find(w) != npos;
  }

  std::size_t find(std::span<const std::uint16_t> w) const {
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      int c = cmp((*this)[mid], w);
      if (c == 0) return mid;
      if (c < 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    return npos;
  }

  // Takes an unsorted flat buffer of words and normalizes it.
  static WordSet normalized(std::size_t n, std::vector<std::uint16_t> flat) {
    WordSet ws(n);
    if (n == 0) return ws;
    std::size_t cnt = flat.size() / n;
    std::vector<std::uint32_t> idx(cnt);
    std::iota(idx.begin(), idx.end(), 0);
    auto begin = flat.begin();
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
      return std::lexicographical_compare(begin + std::size_t(a) * n,
                                          begin + std::size_t(a + 1) * n,
                                          begin + std::size_t(b) * n,
                                          begin + std::size_t(b + 1) * n);
    });
    ws.flat_.reserve(flat.size());
    for (std::uint32_t i : idx) {
      auto row = begin + std::size_t(i) * n;
      std::size_t have = ws.flat_.size();
      if (have >= n &&
          std::equal(row, row + n, ws.flat_.end() - n, ws.flat_.end()))
        continue;
      ws.flat_.insert(ws.flat_.end(), row, row + n);
    }
    return ws;
  }

  bool operator==(const WordSet& o) const {
    return n_ == o.n_ && flat_ == o.flat_;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  static int cmp(std::span<const std::uint16_t> a,
                 std::span<const std::uint16_t> b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] < b[i]) return -1;
      if (a[i] > b[i]) return 1;
    }
    return 0;
  }

 private:
  std::size_t n_;
  std::vector<std::uint16_t> flat_;
};

struct CodeParams {
  std::size_t n = 0;
  std::uint64_t size = 0;
  unsigned d_hamming = 0;
  bool is_free = false;
  unsigned rank = 0;  // meaningful only when is_free
  bool is_mds = false;
};

// A block code of length n over a finite commutative ring, fully
// materialized. Linear codes are left R-submodules of R^n given by
// generators; Explicit codes are arbitrary word sets.
class Code {
 public:
  enum class Kind { Linear, Explicit };

  static Code span(RingPtr ring, std::size_t n,
                   std::vector<std::vector<unsigned>> generators,
                   std::uint64_t cap = kDefaultCodewordCap) {
    check_shape(*ring, n, generators);
    WordSet ws = closure(*ring, n, generators, cap);
    auto impl = std::make_shared<Impl>();
    impl->ring = std::move(ring);
    impl->n = n;
    impl->kind = Kind::Linear;
    impl->gens = std::move(generators);
    impl->words = std::move(ws);
    impl->linear_checked = true;
    return Code(std::move(impl));
  }

  static Code from_codewords(RingPtr ring, std::size_t n,
                             const std::vector<std::vector<unsigned>>& words,
                             std::uint64_t cap = kDefaultCodewordCap) {
    check_shape(*ring, n, words);
    if (words.empty()) throw DomainError("a code needs at least one codeword");
    if (words.size() > cap)
      throw EnumerationCapExceeded("codeword count exceeds cap");
    std::vector<std::uint16_t> flat;
    flat.reserve(words.size() * n);
    for (const auto& w : words)
      for (unsigned v : w) flat.push_back(static_cast<std::uint16_t>(v));
    auto impl = std::make_shared<Impl>();
    impl->ring = std::move(ring);
    impl->n = n;
    impl->kind = Kind::Explicit;
    impl->words = WordSet::normalized(n, std::move(flat));
    return Code(std::move(impl));
  }

  // Fast path for sets already known to be closed under the module
  // operations (duals, intersections of linear codes, enumerated products).
  // Callers that already hold a spanning set pass it along so the greedy
  // reconstruction never runs on large word sets.
  static Code linear_from_set(RingPtr ring, std::size_t n, WordSet ws,
                              std::vector<std::vector<unsigned>> gens = {}) {
    if (ws.size() == 0) throw DomainError("a code needs at least one codeword");
    check_shape(*ring, n, gens);
    auto impl = std::make_shared<Impl>();
    impl->ring = std::move(ring);
    impl->n = n;
    impl->kind = Kind::Linear;
    impl->gens = std::move(gens);
    impl->words = std::move(ws);
    impl->linear_checked = true;
    return Code(std::move(impl));
  }

  static Code zero(RingPtr ring, std::size_t n) {
    return span(std::move(ring), n, {});
  }

  static Code full(RingPtr ring, std::size_t n,
                   std::uint64_t cap = kDefaultCodewordCap) {
    // The size is q^n by construction; reject before spanning anything.
    const unsigned q = ring->order();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (total > cap / q)
        throw EnumerationCapExceeded("the full space has more than " +
                                     std::to_string(cap) + " words");
      total *= q;
    }
    std::vector<std::vector<unsigned>> gens;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<unsigned> g(n, 0);
      g[i] = ring->one();
      gens.push_back(std::move(g));
    }
    return span(std::move(ring), n, std::move(gens), cap);
  }

  const RingPtr& ring() const { return impl_->ring; }
  std::size_t length() const { return impl_->n; }
  std::uint64_t size() const { return impl_->words.size(); }
  Kind kind() const { return impl_->kind; }
  const WordSet& words() const { return impl_->words; }

  const std::vector<std::vector<unsigned>>& generators() const {
    return impl_->gens;
  }

  bool contains_word(std::span<const std::uint16_t> w) const {
    return impl_->words.contains(w);
  }

  bool contains_word(const std::vector<unsigned>& w) const {
    std::vector<std::uint16_t> t(w.begin(), w.end());
    return impl_->words.contains(t);
  }

  bool is_subset_of(const Code& o) const {
    if (impl_->n != o.impl_->n) return false;
    const auto& a = impl_->words;
    const auto& b = o.impl_->words;
    if (a.size() > b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!b.contains(a[i])) return false;
    return true;
  }

  bool same_words(const Code& o) const {
    return impl_->ring->spec() == o.impl_->ring->spec() &&
           impl_->words == o.impl_->words;
  }

  // True when the word set is closed under addition and ring scaling.
  // Explicit codes are checked once by spanning them under a cap that can
  // only be exceeded if the closure is strictly larger.
  bool is_linear() const {
    std::scoped_lock lk(impl_->mu);
    return linear_check_locked();
  }

  // A subset of the stored words spanning the same module; used as dual
  // constraints and for rank computations.
  std::vector<std::vector<unsigned>> spanning_generators() const {
    std::scoped_lock lk(impl_->mu);
    return spanning_generators_locked();
  }

  // Minimum w-distance. For linear codes this is the minimum weight of a
  // nonzero word (differences of codewords are codewords); for explicit sets
  // it is the minimum over ordered pairs of distinct words. A one-word code
  // has no pairs and gets n + 1 by convention.
  unsigned min_distance(const WeightTable& w) const {
    if (w.ring()->spec() != impl_->ring->spec())
      throw DomainError("weight table ring does not match the code ring");
    std::scoped_lock lk(impl_->mu);
    auto it = impl_->dist_cache.find(w.values());
    if (it != impl_->dist_cache.end()) return it->second;
    unsigned d = compute_min_distance(w);
    impl_->dist_cache.emplace(w.values(), d);
    return d;
  }

  unsigned min_hamming() const {
    return min_distance(WeightTable::hamming(impl_->ring));
  }

  // Freeness as an R-module together with the rank when free. Works per
  // local component: a component submodule is free iff unit-pivot sweeps
  // exhaust it, and the whole module is free iff every component is free
  // with one common rank.
  std::pair<bool, unsigned> free_rank() const {
    std::scoped_lock lk(impl_->mu);
    if (impl_->free_rank_cache) return *impl_->free_rank_cache;
    std::pair<bool, unsigned> result{false, 0};
    bool lin = impl_->kind == Kind::Linear;
    if (!lin) {
      // Unlock for is_linear's own locking by computing inline here.
      lin = linear_check_locked();
    }
    if (lin) result = free_rank_locked();
    impl_->free_rank_cache = result;
    return result;
  }

  CodeParams params() const {
    CodeParams p;
    p.n = impl_->n;
    p.size = size();
    p.d_hamming = min_hamming();
    auto fr = free_rank();
    p.is_free = fr.first;
    p.rank = fr.second;
    p.is_mds = mds();
    return p;
  }

  // Size criterion |C| = q^(n - d + 1) with the Hamming minimum distance;
  // the zero code satisfies it with d = n + 1.
  bool mds() const {
    unsigned d = min_hamming();
    std::uint64_t q = impl_->ring->order();
    std::uint64_t sz = size();
    std::uint64_t exp = impl_->n + 1 - d;
    unsigned __int128 pow = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
      pow *= q;
      if (pow > sz) return false;
    }
    return pow == sz;
  }

 private:
  struct Impl {
    RingPtr ring;
    std::size_t n = 0;
    Kind kind = Kind::Linear;
    std::vector<std::vector<unsigned>> gens;
    WordSet words{0};
    mutable std::mutex mu;
    mutable std::map<std::vector<std::uint64_t>, unsigned> dist_cache;
    mutable std::optional<bool> linear_checked;
    mutable std::optional<std::vector<std::vector<unsigned>>> span_gens;
    mutable std::optional<std::pair<bool, unsigned>> free_rank_cache;
  };

  explicit Code(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

  static void check_shape(const Ring& ring, std::size_t n,
                          const std::vector<std::vector<unsigned>>& rows) {
    if (n == 0) throw DegenerateSpec("code length must be positive");
    for (const auto& r : rows) {
      if (r.size() != n)
        throw LengthMismatch("codeword length does not match the code length");
      for (unsigned v : r)
        if (v >= ring.order())
          throw DomainError("codeword entry out of range for the ring");
    }
  }

  static WordSet closure(const Ring& R, std::size_t n,
                         const std::vector<std::vector<unsigned>>& gens,
                         std::uint64_t cap) {
    std::vector<std::uint16_t> cur(n, 0);
    WordSet ws = WordSet::normalized(n, std::move(cur));
    const unsigned q = R.order();
    for (const auto& g : gens) {
      std::vector<std::uint16_t> next;
      next.reserve(ws.flat().size() * q);
      for (std::size_t i = 0; i < ws.size(); ++i) {
        auto w = ws[i];
        for (unsigned r = 0; r < q; ++r) {
          for (std::size_t j = 0; j < n; ++j)
            next.push_back(static_cast<std::uint16_t>(
                R.add(w[j], R.mul(r, g[j]))));
        }
      }
      ws = WordSet::normalized(n, std::move(next));
      if (ws.size() > cap)
        throw EnumerationCapExceeded(
            "span exceeds the codeword cap of " + std::to_string(cap));
    }
    return ws;
  }

  bool linear_check_locked() const {
    if (!impl_->linear_checked) {
      bool lin = false;
      std::vector<std::uint16_t> zero(impl_->n, 0);
      if (impl_->words.contains(zero)) {
        try {
          WordSet closed = closure(*impl_->ring, impl_->n,
                                   spanning_generators_locked(),
                                   impl_->words.size());
          lin = closed == impl_->words;
        } catch (const EnumerationCapExceeded&) {
          lin = false;
        }
      }
      impl_->linear_checked = lin;
    }
    return *impl_->linear_checked;
  }

  std::vector<std::vector<unsigned>> spanning_generators_locked() const {
    if (impl_->span_gens) return *impl_->span_gens;
    if (impl_->kind == Kind::Linear && !impl_->gens.empty()) {
      impl_->span_gens = impl_->gens;
      return *impl_->span_gens;
    }
    // Greedy: keep a word when it is not yet in the closure of the kept
    // ones. The closure of an explicit set can be larger than the set, so
    // this uses the general cap rather than the set size.
    std::vector<std::vector<unsigned>> kept;
    WordSet closed = closure(*impl_->ring, impl_->n, {}, kDefaultCodewordCap);
    for (std::size_t i = 0; i < impl_->words.size(); ++i) {
      auto w = impl_->words[i];
      if (closed.contains(w)) continue;
      kept.emplace_back(w.begin(), w.end());
      closed = closure(*impl_->ring, impl_->n, kept, kDefaultCodewordCap);
    }
    impl_->span_gens = std::move(kept);
    return *impl_->span_gens;
  }

  unsigned compute_min_distance(const WeightTable& w) const {
    const std::size_t n = impl_->n;
    const WordSet& ws = impl_->words;
    if (ws.size() <= 1) return static_cast<unsigned>(n + 1);
    std::uint64_t best = ~std::uint64_t(0);
    bool lin = impl_->kind == Kind::Linear;
    if (lin) {
      std::vector<std::uint16_t> zero(n, 0);
      for (std::size_t i = 0; i < ws.size(); ++i) {
        auto word = ws[i];
        if (std::equal(word.begin(), word.end(), zero.begin())) continue;
        best = std::min(best, w.word_weight(word));
      }
    } else {
      const Ring& R = *impl_->ring;
      for (std::size_t i = 0; i < ws.size(); ++i)
        for (std::size_t j = 0; j < ws.size(); ++j) {
          if (i == j) continue;
          auto a = ws[i], b = ws[j];
          std::uint64_t acc = 0;
          for (std::size_t t = 0; t < n; ++t) acc += w(R.sub(a[t], b[t]));
          best = std::min(best, acc);
        }
    }
    return static_cast<unsigned>(best);
  }

  std::pair<bool, unsigned> free_rank_locked() const {
    const Ring& R = *impl_->ring;
    auto gens = spanning_generators_locked();
    std::optional<unsigned> rank;
    for (std::size_t k = 0; k < R.component_count(); ++k) {
      const Ring& rk = R.component(k);
      std::vector<std::vector<unsigned>> rows;
      for (const auto& g : gens) {
        std::vector<unsigned> r(impl_->n);
        for (std::size_t j = 0; j < impl_->n; ++j) r[j] = R.project(g[j], k);
        rows.push_back(std::move(r));
      }
      unsigned rank_k = 0;
      std::vector<bool> done(rows.size(), false);
      while (true) {
        std::size_t pr = rows.size(), pc = 0;
        for (std::size_t r = 0; r < rows.size() && pr == rows.size(); ++r) {
          if (done[r]) continue;
          for (std::size_t c = 0; c < impl_->n; ++c)
            if (rk.is_unit(rows[r][c])) {
              pr = r;
              pc = c;
              break;
            }
        }
        if (pr == rows.size()) break;
        unsigned u = rk.inv(rows[pr][pc]);
        for (auto& v : rows[pr]) v = rk.mul(v, u);
        for (std::size_t r = 0; r < rows.size(); ++r) {
          if (r == pr) continue;
          unsigned f = rows[r][pc];
          if (f == 0) continue;
          for (std::size_t c = 0; c < impl_->n; ++c)
            rows[r][c] = rk.sub(rows[r][c], rk.mul(f, rows[pr][c]));
        }
        done[pr] = true;
        ++rank_k;
      }
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (done[r]) continue;
        for (unsigned v : rows[r])
          if (v != 0) return {false, 0};
      }
      if (rank && *rank != rank_k) return {false, 0};
      rank = rank_k;
    }
    return {true, rank.value_or(0)};
  }

  std::shared_ptr<const Impl> impl_;
};

inline unsigned inner_product(const Ring& R, std::span<const unsigned> u,
                              std::span<const unsigned> v) {
  if (u.size() != v.size())
    throw ShapeMismatch("inner product of vectors of different lengths");
  unsigned acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    acc = R.add(acc, R.mul(u[i], v[i]));
  return acc;
}

inline unsigned inner_product(const Ring& R, std::span<const std::uint16_t> u,
                              std::span<const std::uint16_t> v) {
  if (u.size() != v.size())
    throw ShapeMismatch("inner product of vectors of different lengths");
  unsigned acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    acc = R.add(acc, R.mul(u[i], v[i]));
  return acc;
}

inline unsigned inner_product(const Ring& R, const std::vector<unsigned>& u,
                              const std::vector<unsigned>& v) {
  return inner_product(R, std::span<const unsigned>(u),
                       std::span<const unsigned>(v));
}

// Entrywise inner product of equal-shape matrices.
inline unsigned inner_product(const RingMatrix& x, const RingMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols() ||
      x.ring()->spec() != y.ring()->spec())
    throw ShapeMismatch("inner product of matrices of different shapes");
  const Ring& R = *x.ring();
  unsigned acc = 0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      acc = R.add(acc, R.mul(x.at(i, j), y.at(i, j)));
  return acc;
}

// Annihilator dual { v : <v, c> = 0 for all c in C } under the standard
// bilinear form, computed by depth-first enumeration with constraint
// pruning. The ambient space q^n must fit under the cap.
inline Code dual(const Code& c, std::uint64_t cap = kDefaultCodewordCap) {
  const Ring& R = *c.ring();
  const std::size_t n = c.length();
  const unsigned q = R.order();
  std::uint64_t ambient = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (ambient > cap / q)
      throw EnumerationCapExceeded(
          "dual enumeration space exceeds the codeword cap");
    ambient *= q;
  }

  std::vector<std::vector<unsigned>> cons = c.spanning_generators();
  std::erase_if(cons, [](const std::vector<unsigned>& g) {
    return std::all_of(g.begin(), g.end(), [](unsigned v) { return v == 0; });
  });
  const std::size_t t = cons.size();
  std::vector<std::size_t> last_nz(t, 0);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (cons[i][j] != 0) last_nz[i] = j;

  std::vector<std::uint16_t> out;
  std::vector<std::uint16_t> word(n, 0);
  std::vector<unsigned> partial(t, 0);

  // Depth-first over coordinates; a constraint is decided at its last
  // nonzero coordinate.
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == n) {
      out.insert(out.end(), word.begin(), word.end());
      return;
    }
    std::vector<unsigned> saved(partial);
    for (unsigned v = 0; v < q; ++v) {
      word[depth] = static_cast<std::uint16_t>(v);
      bool ok = true;
      for (std::size_t i = 0; i < t; ++i) {
        if (cons[i][depth] != 0)
          partial[i] = R.add(saved[i], R.mul(cons[i][depth], v));
        else
          partial[i] = saved[i];
        if (last_nz[i] == depth && partial[i] != 0) ok = false;
      }
      if (ok) self(self, depth + 1);
    }
    word[depth] = 0;
    partial = saved;
  };
  rec(rec, 0);

  return Code::linear_from_set(c.ring(), n, WordSet::normalized(n, std::move(out)));
}

inline Code code_sum(const Code& a, const Code& b,
                     std::uint64_t cap = kDefaultCodewordCap) {
  if (a.ring()->spec() != b.ring()->spec())
    throw DomainError("sum of codes over different rings");
  if (a.length() != b.length())
    throw LengthMismatch("sum of codes of different lengths");
  auto gens = a.spanning_generators();
  auto gb = b.spanning_generators();
  gens.insert(gens.end(), gb.begin(), gb.end());
  return Code::span(a.ring(), a.length(), std::move(gens), cap);
}

inline Code code_intersection(const Code& a, const Code& b) {
  if (a.ring()->spec() != b.ring()->spec())
    throw DomainError("intersection of codes over different rings");
  if (a.length() != b.length())
    throw LengthMismatch("intersection of codes of different lengths");
  const std::size_t n = a.length();
  std::vector<std::uint16_t> flat;
  const WordSet& small = a.size() <= b.size() ? a.words() : b.words();
  const WordSet& big = a.size() <= b.size() ? b.words() : a.words();
  for (std::size_t i = 0; i < small.size(); ++i) {
    auto w = small[i];
    if (big.contains(w)) flat.insert(flat.end(), w.begin(), w.end());
  }
  if (flat.empty())
    throw DomainError("intersection of the given codes is empty");
  WordSet ws = WordSet::normalized(n, std::move(flat));
  if (a.kind() == Code::Kind::Linear && b.kind() == Code::Kind::Linear)
    return Code::linear_from_set(a.ring(), n, std::move(ws));
  std::vector<std::vector<unsigned>> words;
  for (std::size_t i = 0; i < ws.size(); ++i)
    words.emplace_back(ws[i].begin(), ws[i].end());
  return Code::from_codewords(a.ring(), n, words);
}

enum class RowDir { Prefix, Suffix };

// Row space of a leading or trailing slice of A. Prefix k spans the first k
// rows (k in [0, m], 0 giving the zero code); suffix k spans rows k..m in
// 1-based terms (k in [1, m + 1], m + 1 giving the zero code).
inline Code row_code(const RingMatrix& a, std::size_t k, RowDir dir,
                     std::uint64_t cap = kDefaultCodewordCap) {
  const std::size_t m = a.rows();
  std::vector<std::vector<unsigned>> gens;
  if (dir == RowDir::Prefix) {
    if (k > m)
      throw IndexOutOfRange("prefix row index " + std::to_string(k) +
                            " out of range 0.." + std::to_string(m));
    for (std::size_t i = 0; i < k; ++i) gens.push_back(a.row(i));
  } else {
    if (k < 1 || k > m + 1)
      throw IndexOutOfRange("suffix row index " + std::to_string(k) +
                            " out of range 1.." + std::to_string(m + 1));
    for (std::size_t i = k - 1; i < m; ++i) gens.push_back(a.row(i));
  }
  return Code::span(a.ring(), a.cols(), std::move(gens), cap);
}

inline bool is_self_orthogonal(const Code& c) {
  const Ring& R = *c.ring();
  if (c.kind() == Code::Kind::Linear || c.is_linear()) {
    auto gens = c.spanning_generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i; j < gens.size(); ++j)
        if (inner_product(R, gens[i], gens[j]) != 0) return false;
    return true;
  }
  const WordSet& ws = c.words();
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (std::size_t j = i; j < ws.size(); ++j)
      if (inner_product(R, ws[i], ws[j]) != 0) return false;
  return true;
}

inline bool is_self_dual(const Code& c) {
  if (!is_self_orthogonal(c)) return false;
  unsigned __int128 sq = static_cast<unsigned __int128>(c.size()) * c.size();
  unsigned __int128 ambient = 1;
  for (std::size_t i = 0; i < c.length(); ++i) {
    ambient *= c.ring()->order();
    if (ambient > sq) return false;
  }
  return ambient == sq;
}

inline bool is_mds(const Code& c) { return c.mds(); }

}  // namespace mpcodes
