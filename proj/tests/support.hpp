#pragma once

// Test-side helpers: the cover corpus, random torus morphisms, and oracles
// that recompute library quantities by independent routes.

#include <functional>
#include <random>

#include "tropjac/split_jacobian.hpp"

namespace testing_support {

using namespace tropjac;

inline const std::vector<Rat> &corpus_lengths() {
  static const std::vector<Rat> L = [] {
    std::vector<Rat> v;
    for (int q = 1; q <= 2; ++q)
      for (int p = 1; p <= 5; ++p) {
        Rat r(p, q);
        r.canonicalize();
        if (std::find(v.begin(), v.end(), r) == v.end())
          v.push_back(r);
      }
    return v;
  }();
  return L;
}

inline bool in_corpus_lengths(const Rat &x) {
  const auto &L = corpus_lengths();
  return std::find(L.begin(), L.end(), x) != L.end();
}

// Every valid theta cover with lengths in {1..5}/{1,2}, windings <= 3 and
// dilations <= 4 whose first two edges fix the target arcs, then every valid
// dumbbell cover with unit bridge. Subsampled with a fixed stride.
inline std::vector<CoverData> corpus(std::size_t theta_cap = 300, std::size_t dumbbell_cap = 150) {
  const auto &L = corpus_lengths();
  std::vector<CoverData> thetas, dumbbells;
  for (int n = 0; n <= 3; ++n)
    for (int n1 = 0; n1 <= 3; ++n1)
      for (int n2 = 0; n2 <= 3; ++n2)
        for (int d1 = 0; d1 <= 4; ++d1)
          for (int d2 = 0; d1 + d2 <= 4; ++d2) {
            int de = d1 + d2;
            if (de == 0)
              continue;
            // n a + (n-1) b = de le ; (n1-1) a + n1 b = d1 le1
            Rat det = Rat(n * n1 - (n - 1) * (n1 - 1));
            if (det == 0)
              continue;
            for (auto &le : L)
              for (auto &le1 : L) {
                Rat r1 = Rat(de) * le, r2 = Rat(d1) * le1;
                Rat a = (r1 * Rat(n1) - Rat(n - 1) * r2) / det;
                Rat b = (Rat(n) * r2 - Rat(n1 - 1) * r1) / det;
                if (a < 0 || b < 0 || a + b == 0)
                  continue;
                Rat rhs = Rat(n2 - 1) * a + Rat(n2) * b;
                std::vector<Rat> le2s;
                if (d2 == 0) {
                  if (rhs == 0)
                    le2s.push_back(Rat(1));
                } else if (in_corpus_lengths(rhs / Rat(d2))) {
                  le2s.push_back(rhs / Rat(d2));
                }
                for (auto &le2 : le2s) {
                  ThetaCover c{{le, le1, le2}, {n, n1, n2}, {de, d1, d2}, std::array<Rat, 2>{a, b}};
                  if (validate_cover(c).valid())
                    thetas.push_back(c);
                }
              }
          }
  for (auto &l1 : L)
    for (auto &l2 : L)
      for (int n1 = 0; n1 <= 3; ++n1)
        for (int n2 = 0; n2 <= 3; ++n2)
          for (int d1 = 0; d1 <= 4; ++d1)
            for (int d2 = 0; d2 <= 4; ++d2) {
              DumbbellCover c{{l1, l2, Rat(1)}, {n1, n2}, {d1, d2}, std::nullopt};
              if (n1 == 0 && n2 == 0)
                continue;
              if (validate_cover(c).valid())
                dumbbells.push_back(c);
            }
  auto sample = [](const std::vector<CoverData> &v, std::size_t cap) {
    if (v.size() <= cap)
      return v;
    std::vector<CoverData> out;
    for (std::size_t i = 0; i < cap; ++i)
      out.push_back(v[i * v.size() / cap]);
    return out;
  };
  auto out = sample(thetas, theta_cap);
  auto db = sample(dumbbells, dumbbell_cap);
  out.insert(out.end(), db.begin(), db.end());
  return out;
}

inline std::string describe(const CoverData &c) {
  std::string s = cover_kind(c);
  auto r = [](const Rat &x) { return x.get_str(); };
  if (auto *t = std::get_if<ThetaCover>(&c))
    s += "(" + r(t->curve.l_e) + "," + r(t->curve.l_e1) + "," + r(t->curve.l_e2) + ") n=(" +
         t->n[0].get_str() + "," + t->n[1].get_str() + "," + t->n[2].get_str() + ") d=(" +
         t->d[0].get_str() + "," + t->d[1].get_str() + "," + t->d[2].get_str() + ")";
  if (auto *d = std::get_if<DumbbellCover>(&c))
    s += "(" + r(d->curve.l_loop1) + "," + r(d->curve.l_loop2) + ") n=(" + d->n[0].get_str() + "," +
         d->n[1].get_str() + ") d=(" + d->d[0].get_str() + "," + d->d[1].get_str() + ")";
  return s;
}

// ---------------------------------------------------------------- oracles

// [Z^m : column span of A] by brute force: enumerate a box of integer vectors
// and count classes modulo the span, testing membership by exact solving.
inline Int brute_force_coset_count(const IntMatrix &A) {
  const std::size_t m = A.rows();
  Int bound = 0;
  // any nonzero maximal minor bounds the index
  std::vector<std::size_t> idx(m);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t start) {
    if (bound != 0)
      return;
    if (k == m) {
      IntMatrix sub(m, m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          sub(i, j) = A(i, idx[j]);
      Int d = abs(determinant(sub));
      if (d != 0)
        bound = d;
      return;
    }
    for (std::size_t c = start; c < A.cols(); ++c) {
      idx[k] = c;
      rec(k + 1, c + 1);
    }
  };
  rec(0, 0);
  if (bound == 0)
    return 0;
  const long B = bound.get_si();
  std::vector<IntVector> reps;
  IntVector x(m, 0);
  IntMatrix H0 = row_hermite_form(A.transpose());
  auto in_span = [&](const IntVector &v) {
    return row_hermite_form(hstack(A, IntMatrix::column(v)).transpose()) == H0;
  };
  for (;;) {
    bool fresh = true;
    for (auto &r : reps) {
      IntVector diff(m);
      for (std::size_t i = 0; i < m; ++i)
        diff[i] = x[i] - r[i];
      if (in_span(diff)) {
        fresh = false;
        break;
      }
    }
    if (fresh)
      reps.push_back(x);
    std::size_t i = 0;
    while (i < m && ++x[i] == B)
      x[i++] = 0;
    if (i == m)
      break;
  }
  return Int(static_cast<long>(reps.size()));
}

// gcd of the maximal minors of A.
inline Int determinantal_divisor(const IntMatrix &A) {
  const std::size_t m = A.rows();
  Int g = 0;
  std::vector<std::size_t> idx(m);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t start) {
    if (k == m) {
      IntMatrix sub(m, m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          sub(i, j) = A(i, idx[j]);
      Int d = determinant(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      return;
    }
    for (std::size_t c = start; c < A.cols(); ++c) {
      idx[k] = c;
      rec(k + 1, c + 1);
    }
  };
  rec(0, 0);
  return g;
}

// Index of the column span of A in its saturation: gcd of the r x r minors, r = rank.
inline Int saturation_index(const IntMatrix &A) {
  const std::size_t r = rank(A);
  if (r == 0)
    return 1;
  Int g = 0;
  std::vector<std::size_t> ri(r), ci(r);
  std::function<void(std::size_t, std::size_t)> cols = [&](std::size_t k, std::size_t start) {
    if (k == r) {
      IntMatrix sub(r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          sub(i, j) = A(ri[i], ci[j]);
      Int d = determinant(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      return;
    }
    for (std::size_t c = start; c < A.cols(); ++c) {
      ci[k] = c;
      cols(k + 1, c + 1);
    }
  };
  std::function<void(std::size_t, std::size_t)> rows = [&](std::size_t k, std::size_t start) {
    if (k == r) {
      cols(0, 0);
      return;
    }
    for (std::size_t i = start; i < A.rows(); ++i) {
      ri[k] = i;
      rows(k + 1, i + 1);
    }
  };
  rows(0, 0);
  return g;
}

// Pull-back kernel by explicit walking: for every candidate position k l / d,
// scan each edge image for the arcs it meets and check slope integrality.
inline std::vector<TorsionDivisor> brute_force_pullback_kernel(const GeneralCircleCover &c) {
  Int d = cover_degree(c);
  const Rat &l = c.target_length;
  std::vector<TorsionDivisor> out;
  for (Int k = 0; k < d; ++k) {
    Rat p = Rat(k) * l / Rat(d);
    bool ok = true;
    for (std::size_t e = 0; e < c.graph.edges().size() && ok; ++e) {
      Int de = c.dilations[e];
      if (de == 0)
        continue;
      Rat start = c.vertex_positions[c.graph.edges()[e].tail];
      Rat len = Rat(de) * c.graph.edges()[e].length;
      Rat lo = c.orientations[e] > 0 ? start : start - len;
      // arc A = (0, p) + lZ, arc B = (p, l) + lZ; does [lo, lo+len] meet them?
      bool meets_a = false, meets_b = false;
      if (len >= l) {
        meets_a = p > 0;
        meets_b = true;
      } else {
        Rat s = mod_positive(lo, l), t = s + len; // s in [0,l), t < 2l
        auto overlaps = [&](const Rat &x0, const Rat &x1) { return s < x1 && t > x0; };
        meets_a = p > 0 && (overlaps(0, p) || overlaps(l, l + p));
        meets_b = overlaps(p, l) || overlaps(l + p, 2 * l);
      }
      if (meets_a && Rat(Rat(de) * (l - p) / l).get_den() != 1)
        ok = false;
      if (meets_b && Rat(Rat(de) * p / l).get_den() != 1)
        ok = false;
    }
    if (!ok)
      continue;
    // order of p in R / lZ
    Rat q = p / l;
    out.push_back({p, q == 0 ? Int(1) : Int(q.get_den())});
  }
  return out;
}

// Pull-back kernel through the torus layer: P - P0 at position p is killed iff
// the pulled-back point is a period of the Jacobian.
inline std::vector<Rat> torus_pullback_kernel(const CoverData &c) {
  TorusMorphism pull = pullback_morphism(c);
  Int d = cover_degree(c);
  Rat l = target_length(c);
  std::vector<Rat> out;
  IntMatrix U = pull.universal();
  RatMatrix Pinv = inverse(pull.target().pairing());
  for (Int k = 0; k < d; ++k) {
    Rat p = Rat(k) * l / Rat(d);
    RatVector x(U.rows());
    for (std::size_t i = 0; i < U.rows(); ++i)
      x[i] = Rat(U(i, 0)) * p;
    RatVector coeff = Pinv.apply(x);
    bool period = true;
    for (auto &v : coeff)
      period = period && v.get_den() == 1;
    if (period)
      out.push_back(p);
  }
  return out;
}

// ------------------------------------------------------- random morphisms

struct Rng {
  std::mt19937 gen;
  explicit Rng(unsigned seed) : gen(seed) {}
  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }
};

inline IntMatrix random_int_matrix(Rng &r, std::size_t m, std::size_t n, long lo, long hi) {
  IntMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = r.uniform(lo, hi);
  return a;
}

inline RatMatrix random_pairing(Rng &r, std::size_t n) {
  for (;;) {
    RatMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        p(i, j) = make_rat(r.uniform(-4, 4), r.uniform(1, 3));
    if (n == 0 || determinant(p) != 0)
      return p;
  }
}

// Surjection onto a torus with the given pairing, from a source of rank n1.
inline TorusMorphism random_surjection(Rng &r, std::size_t n1, const RatMatrix &P2) {
  const std::size_t n2 = P2.rows();
  for (;;) {
    IntMatrix Fs = random_int_matrix(r, n1, n2, -3, 3);
    IntMatrix Fh = random_int_matrix(r, n2, n1, -3, 3);
    if (rank(Fs) != n2 || rank(Fh) != n2)
      continue;
    RatMatrix Fsr = to_rat(Fs);
    RatMatrix R = n2 ? Fsr * inverse(Fsr.transpose() * Fsr) : RatMatrix(n1, 0);
    RatMatrix P1 = R * P2 * to_rat(Fh);
    if (n1 > n2) {
      IntMatrix K = integer_kernel(Fs.transpose()).matrix();
      P1 = P1 + to_rat(K * random_int_matrix(r, n1 - n2, n1, -2, 2));
    } else if (n1 == 0) {
      P1 = RatMatrix(0, 0);
    }
    if (n1 > 0 && determinant(P1) == 0)
      continue;
    return TorusMorphism(IntegralTorus(P1), IntegralTorus(P2), Fs, Fh);
  }
}

// Arbitrary morphism of ranks <= 3: a surjection followed by a finite map.
inline TorusMorphism random_morphism(Rng &r) {
  std::size_t nb = r.uniform(1, 3);
  std::size_t na = r.uniform(nb, 3), nc = r.uniform(nb, 3);
  TorusMorphism f = random_surjection(r, na, random_pairing(r, nb));
  TorusMorphism h = random_surjection(r, nc, f.target().pairing().transpose());
  TorusMorphism g = dual_morphism(h);
  return compose(g, f);
}

// Random element of GL_n(Z): a product of elementary operations.
inline IntMatrix random_unimodular(Rng &r, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  for (int k = 0; k < 6 && n > 1; ++k) {
    std::size_t i = r.uniform(0, n - 1), j = r.uniform(0, n - 2);
    if (j >= i)
      ++j;
    Int c = r.uniform(-2, 2);
    for (std::size_t col = 0; col < n; ++col)
      u(i, col) += c * u(j, col);
  }
  return u;
}

// Morphism between tori whose pairings are unimodular integer matrices; f_hash
// is arbitrary and f_sharp is forced by compatibility.
inline TorusMorphism random_unimodular_morphism(Rng &r) {
  std::size_t na = r.uniform(1, 3), nb = r.uniform(1, 3);
  IntMatrix Pa = random_unimodular(r, na), Pb = random_unimodular(r, nb);
  IntMatrix Fh = random_int_matrix(r, nb, na, -3, 3);
  RatMatrix Fs = (to_rat(Pb) * to_rat(Fh) * inverse(to_rat(Pa))).transpose();
  return TorusMorphism(IntegralTorus(to_rat(Pa)), IntegralTorus(to_rat(Pb)), to_int(Fs), Fh);
}

// 0 -> Ker(pi)_0 -> B -> C -> 0 from the connected part of a random surjection.
inline std::pair<TorusMorphism, TorusMorphism> random_exact_pair(Rng &r) {
  std::size_t nb = r.uniform(2, 3), nc = r.uniform(1, nb - 1);
  TorusMorphism g = random_surjection(r, nb, random_pairing(r, nc));
  auto s = stein_factorization(g);
  auto k = kernel0(s.pi);
  return {k.inclusion, s.pi};
}

} // namespace testing_support
