#pragma once

#include <map>
#include <set>

#include "lattice.hpp"

namespace tropjac {

// Lambda = Lambda' = Z^n with the pairing [x, y] = x^T P y.
// The real torus is R^n modulo the column lattice of P.
class IntegralTorus {
public:
  IntegralTorus() = default;
  explicit IntegralTorus(RatMatrix pairing) : p_(std::move(pairing)) {
    require(p_.square(), ErrorCode::InvalidTorus, "pairing must be square, got " + p_.shape());
    require(p_.rows() == 0 || determinant(p_) != 0, ErrorCode::InvalidTorus,
            "pairing is degenerate");
  }
  static IntegralTorus circle(const Rat &l) { return IntegralTorus(RatMatrix{{l}}); }

  std::size_t rank() const { return p_.rows(); }
  const RatMatrix &pairing() const { return p_; }

  friend bool operator==(const IntegralTorus &a, const IntegralTorus &b) { return a.p_ == b.p_; }
  friend bool operator!=(const IntegralTorus &a, const IntegralTorus &b) { return !(a == b); }

private:
  RatMatrix p_;
};

// f_sharp: Lambda_tgt -> Lambda_src (n_src x n_tgt),
// f_hash: Lambda'_src -> Lambda'_tgt (n_tgt x n_src),
// subject to f_sharp^T P_src = P_tgt f_hash.
class TorusMorphism {
public:
  TorusMorphism() = default;
  TorusMorphism(IntegralTorus src, IntegralTorus tgt, IntMatrix f_sharp, IntMatrix f_hash)
      : src_(std::move(src)), tgt_(std::move(tgt)), sharp_(std::move(f_sharp)),
        hash_(std::move(f_hash)) {
    const std::size_t n = src_.rank(), m = tgt_.rank();
    require(sharp_.rows() == n && sharp_.cols() == m, ErrorCode::ShapeMismatch,
            "f_sharp has shape " + sharp_.shape());
    require(hash_.rows() == m && hash_.cols() == n, ErrorCode::ShapeMismatch,
            "f_hash has shape " + hash_.shape());
    require(to_rat(sharp_.transpose()) * src_.pairing() == tgt_.pairing() * to_rat(hash_),
            ErrorCode::CompatibilityViolation, "pairings are not compatible");
  }

  static TorusMorphism identity(const IntegralTorus &t) {
    return {t, t, IntMatrix::identity(t.rank()), IntMatrix::identity(t.rank())};
  }
  static TorusMorphism zero(const IntegralTorus &s, const IntegralTorus &t) {
    return {s, t, IntMatrix(s.rank(), t.rank()), IntMatrix(t.rank(), s.rank())};
  }
  static TorusMorphism multiplication(const IntegralTorus &t, const Int &k) {
    return {t, t, k * IntMatrix::identity(t.rank()), k * IntMatrix::identity(t.rank())};
  }

  const IntegralTorus &source() const { return src_; }
  const IntegralTorus &target() const { return tgt_; }
  const IntMatrix &f_sharp() const { return sharp_; }
  const IntMatrix &f_hash() const { return hash_; }
  // Linear map on universal covers, R^{n_src} -> R^{n_tgt}.
  IntMatrix universal() const { return sharp_.transpose(); }

  friend bool operator==(const TorusMorphism &a, const TorusMorphism &b) {
    return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.sharp_ == b.sharp_ && a.hash_ == b.hash_;
  }

private:
  IntegralTorus src_, tgt_;
  IntMatrix sharp_, hash_;
};

// g o f
inline TorusMorphism compose(const TorusMorphism &g, const TorusMorphism &f) {
  require(f.target() == g.source(), ErrorCode::ShapeMismatch, "morphisms are not composable");
  return {f.source(), g.target(), f.f_sharp() * g.f_sharp(), g.f_hash() * f.f_hash()};
}

inline TorusMorphism difference(const TorusMorphism &f, const TorusMorphism &g) {
  require(f.source() == g.source() && f.target() == g.target(), ErrorCode::ShapeMismatch,
          "parallel morphisms expected");
  return {f.source(), f.target(), f.f_sharp() - g.f_sharp(), f.f_hash() - g.f_hash()};
}

struct MorphismClass {
  bool surjective = false, finite = false, injective = false, isogeny = false;
};

inline MorphismClass classify(const TorusMorphism &m) {
  MorphismClass c;
  c.surjective = rank(m.f_sharp()) == m.target().rank();
  c.finite = rank(m.f_hash()) == m.source().rank();
  c.injective = c.finite && (m.source().rank() == 0 ||
                             is_saturated(LatticeBasis(m.f_hash())));
  c.isogeny = c.surjective && c.finite;
  return c;
}

inline bool is_invertible(const TorusMorphism &m) {
  auto unimodular = [](const IntMatrix &a) { return a.square() && abs(determinant(a)) == 1; };
  return unimodular(m.f_sharp()) && unimodular(m.f_hash());
}

inline IntegralTorus dual(const IntegralTorus &t) { return IntegralTorus(t.pairing().transpose()); }

inline TorusMorphism dual_morphism(const TorusMorphism &m) {
  return {dual(m.target()), dual(m.source()), m.f_hash(), m.f_sharp()};
}

struct SubTorus {
  IntegralTorus torus;
  TorusMorphism inclusion;
};

struct QuotientTorus {
  IntegralTorus torus;
  TorusMorphism projection;
};

// Connected component of the identity of ker(m).
inline SubTorus kernel0(const TorusMorphism &m) {
  const std::size_t n = m.source().rank();
  IntMatrix Q = annihilator(m.f_sharp());                 // k x n
  IntMatrix W = integer_kernel(m.f_hash()).matrix();      // n x k
  require(Q.rows() == W.cols(), ErrorCode::Internal, "kernel ranks disagree");
  if (Q.rows() == 0) {
    IntegralTorus t(RatMatrix(0, 0));
    return {t, TorusMorphism(t, m.source(), IntMatrix(0, n), IntMatrix(n, 0))};
  }
  IntMatrix R = right_inverse(Q);
  IntegralTorus k(to_rat(R.transpose()) * m.source().pairing() * to_rat(W));
  return {k, TorusMorphism(k, m.source(), Q, W)};
}

inline QuotientTorus cokernel(const TorusMorphism &m) {
  const std::size_t n = m.target().rank();
  IntMatrix K = integer_kernel(m.f_sharp()).matrix();     // n x c
  IntMatrix Q = annihilator(m.f_hash());                  // c x n
  require(K.cols() == Q.rows(), ErrorCode::Internal, "cokernel ranks disagree");
  if (K.cols() == 0) {
    IntegralTorus t(RatMatrix(0, 0));
    return {t, TorusMorphism(m.target(), t, IntMatrix(n, 0), IntMatrix(0, n))};
  }
  IntMatrix R = right_inverse(Q);
  IntegralTorus c(to_rat(K.transpose()) * m.target().pairing() * to_rat(R));
  return {c, TorusMorphism(m.target(), c, K, Q)};
}

inline SubTorus image(const TorusMorphism &m) { return kernel0(cokernel(m).projection); }

inline QuotientTorus quotient_by_subtorus(const IntegralTorus &t, const TorusMorphism &incl) {
  require(incl.target() == t, ErrorCode::ShapeMismatch, "inclusion does not land in the torus");
  require(classify(incl).injective, ErrorCode::NotInjective, "subtorus map is not injective");
  return cokernel(incl);
}

struct ProductTorus {
  IntegralTorus torus;
  TorusMorphism inj1, inj2, proj1, proj2;
};

inline ProductTorus product(const IntegralTorus &a, const IntegralTorus &b) {
  const std::size_t n1 = a.rank(), n2 = b.rank();
  IntegralTorus p(block_diag(a.pairing(), b.pairing()));
  IntMatrix e1(n1 + n2, n1), e2(n1 + n2, n2);
  for (std::size_t i = 0; i < n1; ++i)
    e1(i, i) = 1;
  for (std::size_t i = 0; i < n2; ++i)
    e2(n1 + i, i) = 1;
  return {p,
          TorusMorphism(a, p, e1.transpose(), e1),
          TorusMorphism(b, p, e2.transpose(), e2),
          TorusMorphism(p, a, e1, e1.transpose()),
          TorusMorphism(p, b, e2, e2.transpose())};
}

// S -> A (+) B from f1: S -> A, f2: S -> B.
inline TorusMorphism product_map(const TorusMorphism &f1, const TorusMorphism &f2) {
  require(f1.source() == f2.source(), ErrorCode::ShapeMismatch, "cone legs differ in source");
  auto p = product(f1.target(), f2.target());
  return {f1.source(), p.torus, hstack(f1.f_sharp(), f2.f_sharp()),
          vstack(f1.f_hash(), f2.f_hash())};
}

// A (+) B -> S from g1: A -> S, g2: B -> S.
inline TorusMorphism coproduct_map(const TorusMorphism &g1, const TorusMorphism &g2) {
  require(g1.target() == g2.target(), ErrorCode::ShapeMismatch, "cocone legs differ in target");
  auto p = product(g1.source(), g2.source());
  return {p.torus, g1.target(), vstack(g1.f_sharp(), g2.f_sharp()),
          hstack(g1.f_hash(), g2.f_hash())};
}

inline SubTorus equalizer(const TorusMorphism &f, const TorusMorphism &g) {
  return kernel0(difference(f, g));
}

inline QuotientTorus coequalizer(const TorusMorphism &f, const TorusMorphism &g) {
  return cokernel(difference(f, g));
}

// The unique h with h o pi = f, for pi surjective (a projection or an isogeny).
// Fails when f does not vanish on ker(pi).
inline std::optional<TorusMorphism> factor_through_projection(const TorusMorphism &pi,
                                                              const TorusMorphism &f) {
  require(pi.source() == f.source(), ErrorCode::ShapeMismatch, "different sources");
  auto hs = solve_left(to_rat(pi.f_sharp()), to_rat(f.f_sharp()));
  if (!hs || !is_integral(*hs))
    return std::nullopt;
  // h_hash pi_hash = f_hash, solved on transposes
  auto hh = solve_left(to_rat(pi.f_hash().transpose()), to_rat(f.f_hash().transpose()));
  if (!hh || !is_integral(*hh))
    return std::nullopt;
  return TorusMorphism(pi.target(), f.target(), to_int(*hs), to_int(hh->transpose()));
}

// The unique h with incl o h = f, for incl with surjective incl_sharp and
// injective incl_hash (a kernel0 inclusion).
inline std::optional<TorusMorphism> factor_through_inclusion(const TorusMorphism &incl,
                                                             const TorusMorphism &f) {
  require(incl.target() == f.target(), ErrorCode::ShapeMismatch, "different targets");
  IntMatrix hs = f.f_sharp() * right_inverse(incl.f_sharp());
  if (hs * incl.f_sharp() != f.f_sharp())
    return std::nullopt;
  auto hh = solve_left(to_rat(incl.f_hash()), to_rat(f.f_hash()));
  if (!hh || !is_integral(*hh))
    return std::nullopt;
  return TorusMorphism(f.source(), incl.source(), hs, to_int(*hh));
}

struct SteinFactorization {
  TorusMorphism pi;  // connected kernel
  TorusMorphism phi; // isogeny
  IntegralTorus middle;
};

inline SteinFactorization stein_factorization(const TorusMorphism &m) {
  require(classify(m).surjective, ErrorCode::NotSurjective, "Stein factorization needs a surjection");
  auto k = kernel0(m);
  auto q = quotient_by_subtorus(m.source(), k.inclusion);
  auto phi = factor_through_projection(q.projection, m);
  require(phi.has_value(), ErrorCode::Internal, "morphism does not factor through its quotient");
  require(compose(*phi, q.projection) == m, ErrorCode::Internal, "Stein factorization mismatch");
  return {q.projection, *phi, q.torus};
}

inline Int kernel_component_count(const TorusMorphism &m) {
  auto s = stein_factorization(m);
  if (s.middle.rank() == 0)
    return 1;
  auto idx = lattice_index(LatticeBasis(s.phi.f_hash()), LatticeBasis::full(s.middle.rank()));
  require(idx.has_value(), ErrorCode::Internal, "isogeny part is not finite");
  return *idx;
}

// Component count for any morphism, via its corestriction onto the image.
inline Int kernel_component_count_any(const TorusMorphism &m) {
  auto im = image(m);
  auto onto = factor_through_inclusion(im.inclusion, m);
  require(onto.has_value(), ErrorCode::Internal, "morphism does not land in its image");
  return kernel_component_count(*onto);
}

// Canonical representative of x modulo the column lattice of P: with an upper
// triangular basis H, coordinate i is reduced into [0, H_ii) from the last one up.
inline RatVector reduce_point(const IntegralTorus &t, RatVector x) {
  const std::size_t n = t.rank();
  require(x.size() == n, ErrorCode::ShapeMismatch, "point has wrong dimension");
  if (n == 0)
    return x;
  const RatMatrix &P = t.pairing();
  Int D = common_denominator(P);
  IntMatrix scaled = to_int(Rat(D) * P);
  // Column lattice basis, upper triangular: reverse coordinates, take echelon form.
  IntMatrix rev(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rev(i, j) = scaled(n - 1 - i, j);
  IntMatrix H = row_hermite_form(rev.transpose()).transpose(); // lower triangular in reversed coords
  for (std::size_t c = 0; c < n; ++c) {
    // column c of H pivots at reversed row c, i.e. real coordinate n-1-c
    const std::size_t coord = n - 1 - c;
    Rat h = Rat(H(c, c)) / Rat(D);
    Int k = floor_int(x[coord] / h);
    for (std::size_t i = 0; i < n; ++i)
      x[n - 1 - i] -= Rat(k) * Rat(H(i, c)) / Rat(D);
  }
  return x;
}

inline bool same_point(const IntegralTorus &t, const RatVector &a, const RatVector &b) {
  return reduce_point(t, a) == reduce_point(t, b);
}

// Group kernel of an isogeny, as reduced points of the source.
inline std::vector<RatVector> isogeny_kernel_points(const TorusMorphism &m) {
  require(classify(m).isogeny, ErrorCode::NotIsogeny, "kernel enumeration needs an isogeny");
  const std::size_t n = m.source().rank();
  Smith s = smith_normal_form(m.f_hash());
  IntVector sv = s.invariant_factors();
  std::vector<RatVector> pts;
  std::set<std::vector<std::string>> seen;
  IntVector k(n, 0);
  for (;;) {
    RatVector y(n), c(n);
    for (std::size_t i = 0; i < n; ++i)
      y[i] = make_rat(k[i], sv[i]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        c[i] += Rat(s.V(i, j)) * y[j];
    RatVector x = reduce_point(m.source(), m.source().pairing().apply(c));
    std::vector<std::string> key;
    for (auto &v : x)
      key.push_back(v.get_str());
    if (seen.insert(key).second)
      pts.push_back(x);
    std::size_t i = 0;
    while (i < n && ++k[i] == sv[i])
      k[i++] = 0;
    if (i == n)
      break;
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

} // namespace tropjac
