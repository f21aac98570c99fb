#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mpcodes/errors.hpp"

namespace mpcodes {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// Default cap on |R|; callers can raise it explicitly. The hard cap below
// bounds the operation tables (q^2 entries each) to a few dozen MB.
inline constexpr unsigned kDefaultMaxRingOrder = 64;
inline constexpr unsigned kHardMaxRingOrder = 4096;

// Describes a finite commutative ring as a tower: Z_n, Z_p[x]/(f), or a
// direct product of such. Every ring built from this grammar is Frobenius.
struct RingSpec {
  enum class Kind { ZMod, PolyQuot, Product };

  Kind kind = Kind::ZMod;
  unsigned n = 0;                  // ZMod
  unsigned p = 0;                  // PolyQuot
  std::vector<unsigned> modulus;   // PolyQuot: coefficients low-to-high, monic
  std::vector<RingSpec> factors;   // Product

  static RingSpec zmod(unsigned n) {
    RingSpec s;
    s.kind = Kind::ZMod;
    s.n = n;
    return s;
  }

  static RingSpec polyquot(unsigned p, std::vector<unsigned> modulus) {
    RingSpec s;
    s.kind = Kind::PolyQuot;
    s.p = p;
    s.modulus = std::move(modulus);
    return s;
  }

  static RingSpec product(std::vector<RingSpec> factors) {
    RingSpec s;
    s.kind = Kind::Product;
    s.factors = std::move(factors);
    return s;
  }

  bool operator==(const RingSpec&) const = default;
};

namespace detail {

inline bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense polynomials over Z_p, coefficients low-to-high, no trailing zeros
// (the zero polynomial is the empty vector).
using Poly = std::vector<unsigned>;

inline Poly poly_trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return poly_trim(std::move(c));
}

// Remainder of a by the monic polynomial g.
inline Poly poly_mod(Poly a, const Poly& g, unsigned p) {
  a = poly_trim(std::move(a));
  while (a.size() >= g.size()) {
    unsigned lead = a.back();
    std::size_t shift = a.size() - g.size();
    if (lead != 0) {
      for (std::size_t i = 0; i < g.size(); ++i) {
        unsigned sub = (lead * g[i]) % p;
        unsigned& coef = a[shift + i];
        coef = (coef + p - sub) % p;
      }
    }
    a.pop_back();
    a = poly_trim(std::move(a));
  }
  return a;
}

// Quotient when g (monic) divides a exactly; nullopt otherwise.
inline std::optional<Poly> poly_divide_exact(Poly a, const Poly& g, unsigned p) {
  a = poly_trim(std::move(a));
  if (a.empty()) return Poly{};
  if (a.size() < g.size()) return std::nullopt;
  Poly q(a.size() - g.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    unsigned lead = a.size() > k + g.size() - 1 ? a[k + g.size() - 1] : 0;
    q[k] = lead;
    if (lead != 0)
      for (std::size_t i = 0; i < g.size(); ++i) {
        unsigned sub = (lead * g[i]) % p;
        unsigned& coef = a[k + i];
        coef = (coef + p - sub) % p;
      }
  }
  if (!poly_trim(std::move(a)).empty()) return std::nullopt;
  return poly_trim(std::move(q));
}

inline std::uint64_t checked_pow_cap(std::uint64_t base, std::uint64_t exp,
                                     std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (r > cap / std::max<std::uint64_t>(base, 1)) return cap + 1;
    r *= base;
    if (r > cap) return cap + 1;
  }
  return r;
}

}  // namespace detail

struct RingElement;

// A finite commutative Frobenius ring with fully materialized operation
// tables over canonical element indices 0..order-1. Index 0 is always the
// additive identity; the multiplicative identity is one() (equal to 1 for
// ZMod and PolyQuot rings, but not in general for products, where the
// canonical index follows the mixed-radix element encoding).
class Ring : public std::enable_shared_from_this<Ring> {
 public:
  static RingPtr make(const RingSpec& spec,
                      unsigned max_order = kDefaultMaxRingOrder) {
    RingSpec norm = normalize(spec);
    auto r = RingPtr(new Ring(norm, max_order));
    // Shared handles to component rings need the final owner, so the
    // decomposition is finished after the shared_ptr exists.
    const_cast<Ring*>(r.get())->build_components(max_order);
    return r;
  }

  const RingSpec& spec() const { return spec_; }
  unsigned order() const { return q_; }
  unsigned characteristic() const { return char_; }
  unsigned zero() const { return 0; }
  unsigned one() const { return one_; }

  unsigned add(unsigned a, unsigned b) const { return add_[a * q_ + b]; }
  unsigned mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }
  unsigned neg(unsigned a) const { return neg_[a]; }
  unsigned sub(unsigned a, unsigned b) const { return add_[a * q_ + neg_[b]]; }

  bool is_unit(unsigned a) const { return inv_[a] != kNoInverse; }

  unsigned inv(unsigned a) const {
    if (inv_[a] == kNoInverse)
      throw NotAUnit(a, "element " + show(a) + " is not a unit in " + name());
    return inv_[a];
  }

  unsigned unit_count() const { return unit_count_; }

  // Local (indecomposable) factors R = R_1 x ... x R_s via the primitive
  // idempotent decomposition. A local ring has itself as its only component.
  std::size_t component_count() const { return components_.size(); }

  bool is_local() const {
    return components_.size() == 1 && components_[0].ring == nullptr;
  }

  const Ring& component(std::size_t k) const {
    check_component(k);
    const auto& c = components_[k];
    return c.ring ? *c.ring : *this;
  }

  RingPtr component_ptr(std::size_t k) const {
    check_component(k);
    const auto& c = components_[k];
    return c.ring ? c.ring : shared_from_this();
  }

  unsigned idempotent(std::size_t k) const {
    check_component(k);
    return components_[k].idempotent;
  }

  // Image of a in the k-th local factor, as that factor's canonical index.
  unsigned project(unsigned a, std::size_t k) const {
    check_component(k);
    return components_[k].proj[a];
  }

  // The element of R projecting to v in factor k and to 0 elsewhere.
  unsigned embed(unsigned v, std::size_t k) const {
    check_component(k);
    return components_[k].embed[v];
  }

  unsigned lift(const std::vector<unsigned>& comps) const {
    if (comps.size() != components_.size())
      throw ShapeMismatch("lift expects one value per local component");
    unsigned x = 0;
    for (std::size_t k = 0; k < comps.size(); ++k)
      x = add(x, embed(comps[k], k));
    return x;
  }

  std::string show(unsigned a) const {
    switch (spec_.kind) {
      case RingSpec::Kind::ZMod:
        return std::to_string(a);
      case RingSpec::Kind::PolyQuot: {
        std::ostringstream os;
        os << '[';
        unsigned deg = static_cast<unsigned>(spec_.modulus.size()) - 1;
        unsigned x = a;
        for (unsigned i = 0; i < deg; ++i) {
          if (i) os << ',';
          os << x % spec_.p;
          x /= spec_.p;
        }
        os << ']';
        return os.str();
      }
      case RingSpec::Kind::Product: {
        std::ostringstream os;
        os << '(';
        unsigned x = a;
        for (std::size_t j = 0; j < factor_rings_.size(); ++j) {
          if (j) os << ',';
          unsigned qj = factor_rings_[j]->order();
          os << factor_rings_[j]->show(x % qj);
          x /= qj;
        }
        os << ')';
        return os.str();
      }
    }
    return std::to_string(a);
  }

  std::string name() const {
    switch (spec_.kind) {
      case RingSpec::Kind::ZMod:
        return "Z" + std::to_string(spec_.n);
      case RingSpec::Kind::PolyQuot: {
        std::ostringstream os;
        os << "Z" << spec_.p << "[x]/(";
        bool first = true;
        for (std::size_t i = spec_.modulus.size(); i-- > 0;) {
          unsigned c = spec_.modulus[i];
          if (c == 0) continue;
          if (!first) os << "+";
          first = false;
          if (i == 0 || c != 1) os << c;
          if (i >= 1) {
            os << "x";
            if (i >= 2) os << "^" << i;
          }
        }
        os << ")";
        return os.str();
      }
      case RingSpec::Kind::Product: {
        std::ostringstream os;
        for (std::size_t j = 0; j < factor_rings_.size(); ++j) {
          if (j) os << "x";
          os << factor_rings_[j]->name();
        }
        return os.str();
      }
    }
    return "?";
  }

  // Factor rings of a Product spec (empty for ZMod / PolyQuot).
  const std::vector<RingPtr>& factor_rings() const { return factor_rings_; }

 private:
  struct Component {
    RingSpec spec;
    RingPtr ring;  // nullptr means the component is the ring itself
    unsigned idempotent = 0;
    std::vector<unsigned> proj;   // size q_
    std::vector<unsigned> embed;  // size component order
  };

  static constexpr unsigned kNoInverse = std::numeric_limits<unsigned>::max();

  RingSpec spec_;
  unsigned q_ = 0;
  unsigned one_ = 0;
  unsigned char_ = 0;
  unsigned unit_count_ = 0;
  std::vector<unsigned> add_, mul_, neg_, inv_;
  std::vector<RingPtr> factor_rings_;
  std::vector<Component> components_;

  static RingSpec normalize(const RingSpec& spec) {
    RingSpec s = spec;
    switch (s.kind) {
      case RingSpec::Kind::ZMod:
        if (s.n < 2) throw DegenerateSpec("ZMod modulus must be at least 2");
        break;
      case RingSpec::Kind::PolyQuot: {
        if (!detail::is_prime(s.p))
          throw NonPrimeModulus("PolyQuot base " + std::to_string(s.p) +
                                " is not prime");
        for (unsigned& c : s.modulus) c %= s.p;
        if (s.modulus.size() < 2)
          throw DegenerateSpec("PolyQuot modulus must have degree at least 1");
        if (s.modulus.back() != 1)
          throw DegenerateSpec("PolyQuot modulus must be monic");
        break;
      }
      case RingSpec::Kind::Product: {
        if (s.factors.empty())
          throw DegenerateSpec("Product needs at least one factor");
        for (auto& f : s.factors) f = normalize(f);
        break;
      }
    }
    return s;
  }

  static std::uint64_t spec_order(const RingSpec& s) {
    switch (s.kind) {
      case RingSpec::Kind::ZMod:
        return s.n;
      case RingSpec::Kind::PolyQuot:
        return detail::checked_pow_cap(s.p, s.modulus.size() - 1,
                                       std::uint64_t(1) << 32);
      case RingSpec::Kind::Product: {
        std::uint64_t q = 1;
        for (const auto& f : s.factors) {
          q *= spec_order(f);
          if (q > (std::uint64_t(1) << 32)) return q;
        }
        return q;
      }
    }
    return 0;
  }

  explicit Ring(RingSpec spec, unsigned max_order) : spec_(std::move(spec)) {
    std::uint64_t q64 = spec_order(spec_);
    unsigned cap = std::min(max_order, kHardMaxRingOrder);
    if (q64 > cap)
      throw RingTooLarge("ring order " + std::to_string(q64) +
                         " exceeds the cap of " + std::to_string(cap));
    q_ = static_cast<unsigned>(q64);

    switch (spec_.kind) {
      case RingSpec::Kind::ZMod:
        build_zmod_tables();
        break;
      case RingSpec::Kind::PolyQuot:
        build_polyquot_tables();
        break;
      case RingSpec::Kind::Product:
        build_product_tables(max_order);
        break;
    }

    neg_.assign(q_, 0);
    for (unsigned a = 0; a < q_; ++a)
      for (unsigned b = 0; b < q_; ++b)
        if (add(a, b) == 0) {
          neg_[a] = b;
          break;
        }

    inv_.assign(q_, kNoInverse);
    for (unsigned a = 0; a < q_; ++a)
      for (unsigned b = 0; b < q_; ++b)
        if (mul(a, b) == one_) {
          inv_[a] = b;
          break;
        }
    unit_count_ = 0;
    for (unsigned a = 0; a < q_; ++a)
      if (inv_[a] != kNoInverse) ++unit_count_;

    // Characteristic: additive order of one().
    char_ = 0;
    unsigned acc = 0;
    do {
      acc = add(acc, one_);
      ++char_;
    } while (acc != 0);
  }

  void build_zmod_tables() {
    unsigned n = spec_.n;
    one_ = 1 % n;
    add_.resize(std::size_t(q_) * q_);
    mul_.resize(std::size_t(q_) * q_);
    for (unsigned a = 0; a < n; ++a)
      for (unsigned b = 0; b < n; ++b) {
        add_[a * n + b] = (a + b) % n;
        mul_[a * n + b] = (a * b) % n;
      }
  }

  detail::Poly index_to_poly(unsigned a) const {
    detail::Poly c;
    unsigned x = a;
    while (x) {
      c.push_back(x % spec_.p);
      x /= spec_.p;
    }
    return c;
  }

  unsigned poly_to_index(const detail::Poly& c) const {
    unsigned x = 0;
    for (std::size_t i = c.size(); i-- > 0;) x = x * spec_.p + c[i];
    return x;
  }

  void build_polyquot_tables() {
    one_ = 1;
    add_.resize(std::size_t(q_) * q_);
    mul_.resize(std::size_t(q_) * q_);
    unsigned p = spec_.p;
    detail::Poly f = detail::poly_trim(spec_.modulus);
    for (unsigned a = 0; a < q_; ++a) {
      detail::Poly pa = index_to_poly(a);
      for (unsigned b = 0; b < q_; ++b) {
        detail::Poly pb = index_to_poly(b);
        detail::Poly s(std::max(pa.size(), pb.size()), 0);
        for (std::size_t i = 0; i < s.size(); ++i) {
          unsigned ca = i < pa.size() ? pa[i] : 0;
          unsigned cb = i < pb.size() ? pb[i] : 0;
          s[i] = (ca + cb) % p;
        }
        add_[a * q_ + b] = poly_to_index(detail::poly_trim(std::move(s)));
        mul_[a * q_ + b] =
            poly_to_index(detail::poly_mod(detail::poly_mul(pa, pb, p), f, p));
      }
    }
  }

  void build_product_tables(unsigned max_order) {
    for (const auto& f : spec_.factors)
      factor_rings_.push_back(Ring::make(f, max_order));
    add_.resize(std::size_t(q_) * q_);
    mul_.resize(std::size_t(q_) * q_);
    std::vector<unsigned> da(factor_rings_.size()), db(factor_rings_.size());
    for (unsigned a = 0; a < q_; ++a) {
      to_digits(a, da);
      for (unsigned b = 0; b < q_; ++b) {
        to_digits(b, db);
        unsigned s = 0, m = 0, w = 1;
        for (std::size_t j = 0; j < factor_rings_.size(); ++j) {
          s += factor_rings_[j]->add(da[j], db[j]) * w;
          m += factor_rings_[j]->mul(da[j], db[j]) * w;
          w *= factor_rings_[j]->order();
        }
        add_[a * q_ + b] = s;
        mul_[a * q_ + b] = m;
      }
    }
    unsigned w2 = 1;
    one_ = 0;
    for (std::size_t j = 0; j < factor_rings_.size(); ++j) {
      one_ += factor_rings_[j]->one() * w2;
      w2 *= factor_rings_[j]->order();
    }
  }

  void to_digits(unsigned a, std::vector<unsigned>& d) const {
    for (std::size_t j = 0; j < factor_rings_.size(); ++j) {
      unsigned qj = factor_rings_[j]->order();
      d[j] = a % qj;
      a /= qj;
    }
  }

  void check_component(std::size_t k) const {
    if (k >= components_.size())
      throw ComponentOutOfRange("component index " + std::to_string(k) +
                                " out of range for " + name() + " with " +
                                std::to_string(components_.size()) +
                                " components");
  }

  void build_components(unsigned max_order) {
    std::vector<std::pair<RingSpec, std::vector<unsigned>>> parts;
    switch (spec_.kind) {
      case RingSpec::Kind::ZMod: {
        unsigned n = spec_.n;
        for (unsigned d = 2; d <= n; ++d) {
          if (n % d) continue;
          unsigned pk = 1;
          while (n % d == 0) {
            pk *= d;
            n /= d;
          }
          std::vector<unsigned> proj(q_);
          for (unsigned a = 0; a < q_; ++a) proj[a] = a % pk;
          parts.emplace_back(RingSpec::zmod(pk), std::move(proj));
        }
        break;
      }
      case RingSpec::Kind::PolyQuot: {
        unsigned p = spec_.p;
        detail::Poly rem = detail::poly_trim(spec_.modulus);
        // Trial division by monic candidates in increasing degree; each
        // divisor found this way is irreducible.
        for (unsigned d = 1; rem.size() > 1 && d < spec_.modulus.size(); ++d) {
          std::uint64_t count = detail::checked_pow_cap(p, d, 1u << 30);
          for (std::uint64_t idx = 0; idx < count && rem.size() > 1; ++idx) {
            detail::Poly g(d + 1, 0);
            std::uint64_t x = idx;
            for (unsigned i = 0; i < d; ++i) {
              g[i] = static_cast<unsigned>(x % p);
              x /= p;
            }
            g[d] = 1;
            detail::Poly power{1};
            bool divides = false;
            while (true) {
              auto quo = detail::poly_divide_exact(rem, g, p);
              if (!quo) break;
              divides = true;
              rem = *quo;
              power = detail::poly_mul(power, g, p);
            }
            if (divides) {
              std::vector<unsigned> modulus(power.begin(), power.end());
              RingSpec cs = RingSpec::polyquot(p, modulus);
              // Component indices use the same base-p digit encoding.
              std::vector<unsigned> proj(q_);
              for (unsigned a = 0; a < q_; ++a) {
                detail::Poly r = detail::poly_mod(index_to_poly(a), power, p);
                proj[a] = poly_to_index(r);
              }
              parts.emplace_back(std::move(cs), std::move(proj));
            }
          }
        }
        if (rem.size() > 1)
          throw InternalError("modulus factorization left a nontrivial cofactor");
        break;
      }
      case RingSpec::Kind::Product: {
        unsigned w = 1;
        for (std::size_t j = 0; j < factor_rings_.size(); ++j) {
          const Ring& F = *factor_rings_[j];
          for (std::size_t c = 0; c < F.component_count(); ++c) {
            std::vector<unsigned> proj(q_);
            for (unsigned a = 0; a < q_; ++a)
              proj[a] = F.project((a / w) % F.order(), c);
            parts.emplace_back(F.component(c).spec_, std::move(proj));
          }
          w *= F.order();
        }
        break;
      }
    }

    if (parts.size() == 1 && parts[0].first == spec_) {
      // Local ring: the single component is the ring itself.
      Component self;
      self.spec = spec_;
      self.ring = nullptr;
      self.idempotent = one_;
      self.proj.resize(q_);
      for (unsigned a = 0; a < q_; ++a) self.proj[a] = a;
      self.embed = self.proj;
      components_.push_back(std::move(self));
      return;
    }

    for (auto& [cs, proj] : parts) {
      Component comp;
      comp.spec = cs;
      comp.ring = Ring::make(cs, max_order);
      comp.proj = std::move(proj);
      components_.push_back(std::move(comp));
    }

    // Primitive idempotents: e_k projects to 1 in factor k and 0 elsewhere.
    for (std::size_t k = 0; k < components_.size(); ++k) {
      unsigned target_one = components_[k].ring->one();
      bool found = false;
      for (unsigned a = 0; a < q_ && !found; ++a) {
        bool ok = true;
        for (std::size_t j = 0; j < components_.size() && ok; ++j) {
          unsigned want = j == k ? target_one : 0u;
          ok = components_[j].proj[a] == want;
        }
        if (ok) {
          components_[k].idempotent = a;
          found = true;
        }
      }
      if (!found) throw InternalError("primitive idempotent not found");
    }

    // embed[v] = (any preimage of v in factor k) * e_k; the product is
    // independent of the preimage chosen.
    for (std::size_t k = 0; k < components_.size(); ++k) {
      auto& comp = components_[k];
      unsigned cq = comp.ring->order();
      comp.embed.assign(cq, 0);
      std::vector<bool> seen(cq, false);
      for (unsigned a = 0; a < q_; ++a) {
        unsigned v = comp.proj[a];
        if (!seen[v]) {
          seen[v] = true;
          comp.embed[v] = mul(a, comp.idempotent);
        }
      }
      for (unsigned v = 0; v < cq; ++v)
        if (!seen[v]) throw InternalError("component projection not surjective");
    }

    verify_decomposition();
  }

  void verify_decomposition() const {
    // Orthogonality and completeness of the idempotents, and that
    // lift(project(a)) is the identity.
    unsigned s = 0;
    for (const auto& c : components_) s = add(s, c.idempotent);
    if (s != one_) throw InternalError("idempotents do not sum to one");
    for (std::size_t i = 0; i < components_.size(); ++i)
      for (std::size_t j = 0; j < components_.size(); ++j) {
        unsigned prod = mul(components_[i].idempotent, components_[j].idempotent);
        unsigned want = i == j ? components_[i].idempotent : 0u;
        if (prod != want) throw InternalError("idempotents not orthogonal");
      }
    for (unsigned a = 0; a < q_; ++a) {
      unsigned x = 0;
      for (std::size_t k = 0; k < components_.size(); ++k)
        x = add(x, components_[k].embed[components_[k].proj[a]]);
      if (x != a) throw InternalError("CRT round trip failed");
    }
  }
};

// An element tagged with its ring, for APIs that hand elements across ring
// boundaries (witnesses, idempotents in decompositions).
struct RingElement {
  RingPtr ring;
  unsigned index = 0;
};

struct LocalComponent {
  RingPtr ring;
  RingElement idempotent;  // idempotent of the parent ring
};

inline std::vector<LocalComponent> decompose(const RingPtr& r) {
  std::vector<LocalComponent> out;
  for (std::size_t k = 0; k < r->component_count(); ++k)
    out.push_back({r->component_ptr(k), RingElement{r, r->idempotent(k)}});
  return out;
}

// A weight function on ring elements: w(0) = 0 and w(r) > 0 otherwise.
// Word weights add coordinatewise.
class WeightTable {
 public:
  WeightTable(RingPtr ring, std::vector<std::uint64_t> values)
      : ring_(std::move(ring)), values_(std::move(values)) {
    if (values_.size() != ring_->order())
      throw DomainError("weight table needs one entry per ring element");
    if (values_[0] != 0)
      throw DomainError("weight of the zero element must be 0");
    for (std::size_t i = 1; i < values_.size(); ++i)
      if (values_[i] == 0)
        throw DomainError("weight of a nonzero element must be positive");
  }

  static WeightTable hamming(RingPtr ring) {
    std::vector<std::uint64_t> v(ring->order(), 1);
    v[0] = 0;
    return WeightTable(std::move(ring), std::move(v));
  }

  std::uint64_t operator()(unsigned a) const { return values_[a]; }

  template <typename Word>
  std::uint64_t word_weight(const Word& word) const {
    std::uint64_t w = 0;
    for (auto c : word) w += values_[c];
    return w;
  }

  const std::vector<std::uint64_t>& values() const { return values_; }
  const RingPtr& ring() const { return ring_; }

  bool operator==(const WeightTable& o) const {
    return ring_->spec() == o.ring_->spec() && values_ == o.values_;
  }

 private:
  RingPtr ring_;
  std::vector<std::uint64_t> values_;
};

}  // namespace mpcodes
