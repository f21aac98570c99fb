#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mpcodes/ring.hpp"

namespace mpcodes {

// Dense matrix over a ring, entries stored as canonical element indices.
class RingMatrix {
 public:
  RingMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols),
        data_(rows * cols, 0) {}

  static RingMatrix identity(RingPtr ring, std::size_t n) {
    RingMatrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = m.ring_->one();
    return m;
  }

  static RingMatrix from_rows(RingPtr ring,
                              const std::vector<std::vector<unsigned>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    RingMatrix m(std::move(ring), r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c)
        throw ShapeMismatch("matrix rows have inconsistent lengths");
      for (std::size_t j = 0; j < c; ++j) {
        if (rows[i][j] >= m.ring_->order())
          throw DomainError("matrix entry out of range for the ring");
        m.at(i, j) = rows[i][j];
      }
    }
    return m;
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  unsigned& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  unsigned at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  // Row-major flattened entries.
  const std::vector<unsigned>& entries() const { return data_; }

  std::vector<unsigned> row(std::size_t i) const {
    return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_};
  }

  RingMatrix transpose() const {
    RingMatrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  RingMatrix operator*(const RingMatrix& o) const {
    if (ring_->spec() != o.ring_->spec())
      throw ShapeMismatch("matrix product over different rings");
    if (cols_ != o.rows_)
      throw ShapeMismatch("matrix product shape mismatch: " + shape_str() +
                          " by " + o.shape_str());
    RingMatrix p(ring_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        unsigned a = at(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          p.at(i, j) = ring_->add(p.at(i, j), ring_->mul(a, o.at(k, j)));
      }
    return p;
  }

  RingMatrix operator+(const RingMatrix& o) const {
    if (ring_->spec() != o.ring_->spec() || rows_ != o.rows_ || cols_ != o.cols_)
      throw ShapeMismatch("matrix sum shape mismatch");
    RingMatrix s(ring_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
      s.data_[i] = ring_->add(data_[i], o.data_[i]);
    return s;
  }

  bool operator==(const RingMatrix& o) const {
    return ring_->spec() == o.ring_->spec() && rows_ == o.rows_ &&
           cols_ == o.cols_ && data_ == o.data_;
  }

  bool is_zero() const {
    for (unsigned v : data_)
      if (v != 0) return false;
    return true;
  }

  // Projections to the local components of the ring, in component order.
  std::vector<RingMatrix> split() const {
    std::vector<RingMatrix> out;
    for (std::size_t k = 0; k < ring_->component_count(); ++k) {
      RingMatrix m(ring_->component_ptr(k), rows_, cols_);
      for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
          m.at(i, j) = ring_->project(at(i, j), k);
      out.push_back(std::move(m));
    }
    return out;
  }

  RingMatrix submatrix(const std::vector<std::size_t>& row_idx,
                       const std::vector<std::size_t>& col_idx) const {
    RingMatrix m(ring_, row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
      for (std::size_t j = 0; j < col_idx.size(); ++j)
        m.at(i, j) = at(row_idx[i], col_idx[j]);
    return m;
  }

  // Rows [lo, hi).
  RingMatrix row_slice(std::size_t lo, std::size_t hi) const {
    RingMatrix m(ring_, hi - lo, cols_);
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.at(i - lo, j) = at(i, j);
    return m;
  }

  static RingMatrix hstack(const RingMatrix& a, const RingMatrix& b) {
    if (a.rows_ != b.rows_ || a.ring_->spec() != b.ring_->spec())
      throw ShapeMismatch("hstack shape mismatch");
    RingMatrix m(a.ring_, a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) m.at(i, a.cols_ + j) = b.at(i, j);
    }
    return m;
  }

  static RingMatrix vstack(const RingMatrix& a, const RingMatrix& b) {
    if (a.cols_ != b.cols_ || a.ring_->spec() != b.ring_->spec())
      throw ShapeMismatch("vstack shape mismatch");
    RingMatrix m(a.ring_, a.rows_ + b.rows_, a.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) m.at(a.rows_ + i, j) = b.at(i, j);
    return m;
  }

  std::string shape_str() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  std::string show() const {
    if (rows_ == 0 || cols_ == 0) return "[]";
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? "; " : "[");
      for (std::size_t j = 0; j < cols_; ++j)
        os << (j ? " " : "") << ring_->show(at(i, j));
    }
    os << "]";
    return os.str();
  }

 private:
  RingPtr ring_;
  std::size_t rows_, cols_;
  std::vector<unsigned> data_;
};

// Witness that A fails to have full row rank: a nonzero row vector b over
// the parent ring with b*A = 0, found in the named local component.
struct NotFrr {
  std::size_t component = 0;
  std::vector<unsigned> witness;
};

// right_inverse is l x m with A * right_inverse = I_m; kernel is an
// (l-m) x l full-row-rank matrix whose rows generate { x : A x^T = 0 }.
struct FrrCertificate {
  RingMatrix right_inverse;
  RingMatrix kernel;
};

using FrrOutcome = std::variant<FrrCertificate, NotFrr>;

namespace detail {

// Column-reduction over one local component. Returns the l x l matrix P of
// accumulated column operations when A_k * P = (I_m | 0), or a witness row
// otherwise.
struct LocalReduction {
  bool ok = false;
  std::vector<unsigned> p;        // l x l, row-major, component indices
  std::vector<unsigned> witness;  // length m, component indices
};

inline LocalReduction reduce_local(const Ring& rk, std::vector<unsigned> m_ent,
                                   std::size_t m, std::size_t l) {
  LocalReduction res;
  std::vector<unsigned>& M = m_ent;
  std::vector<unsigned> P(l * l, 0);
  for (std::size_t j = 0; j < l; ++j) P[j * l + j] = rk.one();

  for (std::size_t i = 0; i < m; ++i) {
    std::size_t piv = l;
    for (std::size_t j = i; j < l; ++j)
      if (rk.is_unit(M[i * l + j])) {
        piv = j;
        break;
      }
    if (piv == l) {
      // No unit in the residual row. Some nonzero delta kills every residual
      // entry (they all lie in the maximal ideal of the local ring rk), and
      // then delta * (row_i - sum_{r<i} M[i][r] e_r) vanishes against M.
      unsigned delta = 0;
      for (unsigned d = 1; d < rk.order() && delta == 0; ++d) {
        bool kills = true;
        for (std::size_t j = i; j < l && kills; ++j)
          kills = rk.mul(d, M[i * l + j]) == 0;
        if (kills) delta = d;
      }
      if (delta == 0)
        throw InternalError("no annihilator for a non-unit residual row");
      res.witness.assign(m, 0);
      for (std::size_t r = 0; r < i; ++r)
        res.witness[r] = rk.mul(delta, rk.neg(M[i * l + r]));
      res.witness[i] = delta;
      return res;
    }
    if (piv != i) {
      for (std::size_t r = 0; r < m; ++r)
        std::swap(M[r * l + i], M[r * l + piv]);
      for (std::size_t r = 0; r < l; ++r)
        std::swap(P[r * l + i], P[r * l + piv]);
    }
    unsigned u = rk.inv(M[i * l + i]);
    if (u != rk.one()) {
      for (std::size_t r = 0; r < m; ++r)
        M[r * l + i] = rk.mul(M[r * l + i], u);
      for (std::size_t r = 0; r < l; ++r)
        P[r * l + i] = rk.mul(P[r * l + i], u);
    }
    for (std::size_t c = 0; c < l; ++c) {
      if (c == i) continue;
      unsigned f = M[i * l + c];
      if (f == 0) continue;
      for (std::size_t r = 0; r < m; ++r)
        M[r * l + c] = rk.sub(M[r * l + c], rk.mul(f, M[r * l + i]));
      for (std::size_t r = 0; r < l; ++r)
        P[r * l + c] = rk.sub(P[r * l + c], rk.mul(f, P[r * l + i]));
    }
  }
  res.ok = true;
  res.p = std::move(P);
  return res;
}

}  // namespace detail

inline FrrOutcome frr_certificate(const RingMatrix& a) {
  const Ring& R = *a.ring();
  const std::size_t m = a.rows(), l = a.cols();
  const std::size_t s = R.component_count();

  std::vector<std::vector<unsigned>> ps;
  ps.reserve(s);
  for (std::size_t k = 0; k < s; ++k) {
    const Ring& rk = R.component(k);
    std::vector<unsigned> mk(m * l);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < l; ++j)
        mk[i * l + j] = R.project(a.at(i, j), k);
    detail::LocalReduction red = detail::reduce_local(rk, std::move(mk), m, l);
    if (!red.ok) {
      std::vector<unsigned> b(m);
      for (std::size_t r = 0; r < m; ++r) b[r] = R.embed(red.witness[r], k);
      return NotFrr{k, std::move(b)};
    }
    ps.push_back(std::move(red.p));
  }

  RingMatrix b(a.ring(), l, m);
  RingMatrix g(a.ring(), l - m, l);
  std::vector<unsigned> comps(s);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < s; ++k) comps[k] = ps[k][i * l + j];
      b.at(i, j) = R.lift(comps);
    }
  for (std::size_t r = 0; r < l - m; ++r)
    for (std::size_t c = 0; c < l; ++c) {
      // Row r of the kernel is column m + r of P, transposed.
      for (std::size_t k = 0; k < s; ++k) comps[k] = ps[k][c * l + (m + r)];
      g.at(r, c) = R.lift(comps);
    }

  if (!(a * b == RingMatrix::identity(a.ring(), m)))
    throw InternalError("certificate right inverse failed A*B = I");
  if (l > m && !(a * g.transpose()).is_zero())
    throw InternalError("certificate kernel failed A*G^T = 0");
  return FrrCertificate{std::move(b), std::move(g)};
}

inline bool is_frr(const RingMatrix& a) {
  return std::holds_alternative<FrrCertificate>(frr_certificate(a));
}

inline NotFrrError make_not_frr_error(const RingMatrix& a, const NotFrr& w) {
  std::ostringstream os;
  os << a.shape_str() << " matrix does not have full row rank: witness (";
  for (std::size_t i = 0; i < w.witness.size(); ++i)
    os << (i ? "," : "") << a.ring()->show(w.witness[i]);
  os << ") * A = 0 (component " << w.component << ")";
  return NotFrrError(w.component, w.witness, os.str());
}

// Full-row-rank generator matrix of { x in R^l : A x^T = 0 }.
inline RingMatrix kernel_basis(const RingMatrix& a) {
  FrrOutcome out = frr_certificate(a);
  if (auto* w = std::get_if<NotFrr>(&out)) throw make_not_frr_error(a, *w);
  return std::get<FrrCertificate>(std::move(out)).kernel;
}

inline unsigned determinant(const RingMatrix& a) {
  if (a.rows() != a.cols())
    throw NotSquare("determinant of a " + a.shape_str() + " matrix");
  const std::size_t n = a.rows();
  if (n > 8)
    throw DomainError("determinant limited to order 8; got " + a.shape_str());
  const Ring& R = *a.ring();
  if (n == 0) return R.one();
  // Cofactor expansion along the first available row of the masked square.
  std::vector<std::size_t> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = j;
  struct Rec {
    const RingMatrix& a;
    const Ring& R;
    unsigned run(std::size_t row, std::vector<std::size_t>& cols) {
      if (cols.size() == 1) return a.at(row, cols[0]);
      unsigned acc = 0;
      for (std::size_t idx = 0; idx < cols.size(); ++idx) {
        unsigned v = a.at(row, cols[idx]);
        if (v == 0) continue;
        std::size_t col = cols[idx];
        cols.erase(cols.begin() + idx);
        unsigned minor = run(row + 1, cols);
        cols.insert(cols.begin() + idx, col);
        unsigned term = R.mul(v, minor);
        acc = idx % 2 == 0 ? R.add(acc, term) : R.sub(acc, term);
      }
      return acc;
    }
  } rec{a, R};
  return rec.run(0, cols);
}

inline bool is_nonsingular(const RingMatrix& a) {
  if (a.rows() != a.cols())
    throw NotSquare("nonsingularity of a " + a.shape_str() + " matrix");
  bool frr = is_frr(a);
  if (a.rows() <= 8) {
    bool det_unit = a.ring()->is_unit(determinant(a));
    if (det_unit != frr)
      throw InternalError("determinant and row-rank nonsingularity disagree");
  }
  return frr;
}

inline RingMatrix inverse(const RingMatrix& a) {
  if (a.rows() != a.cols())
    throw NotSquare("inverse of a " + a.shape_str() + " matrix");
  FrrOutcome out = frr_certificate(a);
  if (std::holds_alternative<NotFrr>(out))
    throw Singular("matrix " + a.show() + " is not invertible");
  RingMatrix b = std::get<FrrCertificate>(std::move(out)).right_inverse;
  if (!(b * a == RingMatrix::identity(a.ring(), a.rows())))
    throw InternalError("right inverse of a square matrix is not two-sided");
  return b;
}

// Completion of a full-row-rank A to an invertible square matrix: the first
// m rows of tilde_a equal A, and tilde_a^{-1} = (b | b_prime) with b the
// certificate right inverse and b_prime^T the certificate kernel.
struct InvertibleExtension {
  RingMatrix tilde_a;
  RingMatrix b;
  RingMatrix b_prime;
};

inline InvertibleExtension extend_to_invertible(const RingMatrix& a) {
  FrrOutcome out = frr_certificate(a);
  if (auto* w = std::get_if<NotFrr>(&out)) throw make_not_frr_error(a, *w);
  FrrCertificate cert = std::get<FrrCertificate>(std::move(out));
  RingMatrix bt = RingMatrix::hstack(cert.right_inverse, cert.kernel.transpose());
  RingMatrix tilde = inverse(bt);
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (tilde.at(i, j) != a.at(i, j))
        throw InternalError("extension does not start with the original rows");
  return InvertibleExtension{std::move(tilde), std::move(cert.right_inverse),
                             cert.kernel.transpose()};
}

}  // namespace mpcodes
