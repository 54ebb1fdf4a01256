#pragma once

#include <optional>
#include <tuple>

#include "matrix.hpp"

namespace tropjac {

struct Smith {
  IntMatrix U, S, V; // U * A * V = S
  std::size_t rank() const {
    std::size_t r = 0;
    while (r < std::min(S.rows(), S.cols()) && S(r, r) != 0)
      ++r;
    return r;
  }
  IntVector invariant_factors() const {
    IntVector v;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
      v.push_back(S(i, i));
    return v;
  }
};

// Pivot: smallest |entry| in the trailing block, ties to lowest (row, col).
inline Smith smith_normal_form(const IntMatrix &A) {
  const std::size_t m = A.rows(), n = A.cols();
  Smith r{IntMatrix::identity(m), A, IntMatrix::identity(n)};
  IntMatrix &S = r.S;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (S(i, j) != 0 && (pi == m || abs(S(i, j)) < abs(S(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == m)
        return r;
      S.swap_rows(t, pi);
      r.U.swap_rows(t, pi);
      S.swap_cols(t, pj);
      r.V.swap_cols(t, pj);

      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0)
          continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
        S.add_row(i, t, -q);
        r.U.add_row(i, t, -q);
        dirty = dirty || S(i, t) != 0;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0)
          continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
        S.add_col(j, t, -q);
        r.V.add_col(j, t, -q);
        dirty = dirty || S(t, j) != 0;
      }
      if (dirty)
        continue;

      // Enforce divisibility of the trailing block by the pivot.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m)
        break;
      S.add_row(t, bad, Int(1));
      r.U.add_row(t, bad, Int(1));
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      r.U.negate_row(t);
    }
  }
  return r;
}

// Row-style Hermite form: echelon, positive pivots, entries above a pivot in [0, pivot).
// Zero rows are dropped.
inline IntMatrix row_hermite_form(IntMatrix a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    for (;;) {
      std::size_t p = m;
      for (std::size_t i = row; i < m; ++i)
        if (a(i, c) != 0 && (p == m || abs(a(i, c)) < abs(a(p, c))))
          p = i;
      if (p == m)
        break;
      a.swap_rows(row, p);
      bool done = true;
      for (std::size_t i = row + 1; i < m; ++i) {
        if (a(i, c) == 0)
          continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(row, c).get_mpz_t());
        a.add_row(i, row, -q);
        done = done && a(i, c) == 0;
      }
      if (done)
        break;
    }
    if (a(row, c) == 0)
      continue;
    if (a(row, c) < 0)
      a.negate_row(row);
    for (std::size_t i = 0; i < row; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(row, c).get_mpz_t());
      a.add_row(i, row, -q);
    }
    ++row;
  }
  return a.rows_range(0, row);
}

// Columns are a basis of a sublattice of Z^n.
class LatticeBasis {
public:
  LatticeBasis() = default;
  explicit LatticeBasis(IntMatrix b) : b_(std::move(b)) {
    require(tropjac::rank(b_) == b_.cols(), ErrorCode::ShapeMismatch,
            "lattice basis columns are dependent");
  }
  static LatticeBasis full(std::size_t n) { return LatticeBasis(IntMatrix::identity(n)); }

  std::size_t ambient() const { return b_.rows(); }
  std::size_t rank() const { return b_.cols(); }
  const IntMatrix &matrix() const { return b_; }

  // Canonical basis of the same lattice (column echelon form).
  LatticeBasis canonical() const {
    if (b_.cols() == 0)
      return *this;
    LatticeBasis r;
    r.b_ = row_hermite_form(b_.transpose()).transpose();
    return r;
  }

  friend bool same_lattice(const LatticeBasis &a, const LatticeBasis &b) {
    return a.ambient() == b.ambient() && a.rank() == b.rank() &&
           a.canonical().b_ == b.canonical().b_;
  }

private:
  IntMatrix b_;
};

inline LatticeBasis empty_basis(std::size_t n) {
  LatticeBasis b(IntMatrix(n, 0));
  return b;
}

// Saturated basis of {x : A x = 0}, in canonical form.
inline LatticeBasis integer_kernel(const IntMatrix &A) {
  Smith s = smith_normal_form(A);
  const std::size_t r = s.rank();
  return LatticeBasis(s.V.columns(r, A.cols())).canonical();
}

// Integer matrix Q whose kernel is exactly span_Q(B) ∩ Z^n (rows canonical).
inline IntMatrix annihilator(const IntMatrix &B) {
  return integer_kernel(B.transpose()).matrix().transpose();
}

inline LatticeBasis saturate(const LatticeBasis &B) {
  if (B.rank() == 0)
    return B;
  Smith s = smith_normal_form(B.matrix());
  IntMatrix Uinv = to_int(inverse(to_rat(s.U)));
  return LatticeBasis(Uinv.columns(0, B.rank())).canonical();
}

inline bool is_saturated(const LatticeBasis &B) {
  Smith s = smith_normal_form(B.matrix());
  for (std::size_t i = 0; i < B.rank(); ++i)
    if (s.S(i, i) != 1)
      return false;
  return true;
}

// Index [sup : sub]; nullopt stands for an infinite index.
inline std::optional<Int> lattice_index(const LatticeBasis &sub, const LatticeBasis &sup) {
  require(sub.ambient() == sup.ambient(), ErrorCode::ShapeMismatch, "ambient ranks differ");
  RatMatrix S = to_rat(sup.matrix()), B = to_rat(sub.matrix());
  if (rank(hstack(S, B)) != sup.rank())
    fail(ErrorCode::ContainmentViolation, "sublattice not in the span of the superlattice");
  auto X = solve_left(S, B);
  require(X.has_value(), ErrorCode::Internal, "containment check inconsistent");
  if (!is_integral(*X))
    fail(ErrorCode::ContainmentViolation, "sublattice is not contained in the superlattice");
  if (sub.rank() < sup.rank())
    return std::nullopt;
  return abs(determinant(to_int(*X)));
}

inline LatticeBasis image_lattice(const IntMatrix &A) {
  if (A.cols() == 0 || A.is_zero())
    return empty_basis(A.rows());
  IntMatrix h = row_hermite_form(A.transpose());
  return LatticeBasis(h.transpose());
}

// Integer R with Q R = I, for Q with trivial cokernel.
inline IntMatrix right_inverse(const IntMatrix &Q) {
  Smith s = smith_normal_form(Q);
  require(s.rank() == Q.rows(), ErrorCode::Internal, "right_inverse: not full row rank");
  for (std::size_t i = 0; i < Q.rows(); ++i)
    require(s.S(i, i) == 1, ErrorCode::Internal, "right_inverse: not surjective over Z");
  IntMatrix E(Q.cols(), Q.rows());
  for (std::size_t i = 0; i < Q.rows(); ++i)
    E(i, i) = 1;
  return s.V * E * s.U;
}

struct ExtGcd {
  Int g, x, y; // x a + y b = g >= 0
};

inline ExtGcd ext_gcd(const Int &a, const Int &b) {
  ExtGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int gcd_of(const IntVector &v) {
  Int g = 0;
  for (auto &x : v)
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

inline IntVector primitive(IntVector v) {
  Int g = gcd_of(v);
  if (g > 1)
    for (auto &x : v)
      x /= g;
  return v;
}

} // namespace tropjac
