#pragma once

#include "torus.hpp"

namespace tropjac {

// zeta: Lambda' -> Lambda. Checked against a torus when wrapped in PolarizedVariety.
struct Polarization {
  IntMatrix zeta;
  friend bool operator==(const Polarization &a, const Polarization &b) { return a.zeta == b.zeta; }
};

inline bool is_polarization(const IntegralTorus &t, const IntMatrix &zeta) {
  if (zeta.rows() != t.rank() || zeta.cols() != t.rank())
    return false;
  return is_positive_definite(to_rat(zeta.transpose()) * t.pairing());
}

class PolarizedVariety {
public:
  PolarizedVariety(IntegralTorus t, Polarization p) : t_(std::move(t)), p_(std::move(p)) {
    require(is_polarization(t_, p_.zeta), ErrorCode::InvalidPolarization,
            "zeta^T P is not symmetric positive definite");
  }
  const IntegralTorus &torus() const { return t_; }
  const Polarization &pol() const { return p_; }
  const IntMatrix &zeta() const { return p_.zeta; }

private:
  IntegralTorus t_;
  Polarization p_;
};

inline PolarizedVariety principally_polarized(const IntegralTorus &t) {
  return {t, {IntMatrix::identity(t.rank())}};
}

inline IntVector polarization_type(const PolarizedVariety &pv) {
  return smith_normal_form(pv.zeta()).invariant_factors();
}

// V diag(a_1 a_n / a_i) U for U zeta V = diag(a), which equals a_1 a_n zeta^{-1}.
inline Polarization dual_polarization(const PolarizedVariety &pv) {
  const std::size_t n = pv.torus().rank();
  if (n == 0)
    return {IntMatrix(0, 0)};
  Smith s = smith_normal_form(pv.zeta());
  IntVector a = s.invariant_factors();
  IntVector c(n);
  for (std::size_t i = 0; i < n; ++i)
    c[i] = a[0] * a[n - 1] / a[i];
  Polarization d{s.V * IntMatrix::diagonal(c) * s.U};
  require(is_polarization(dual(pv.torus()), d.zeta), ErrorCode::Internal,
          "dual polarization failed positivity");
  return d;
}

inline Polarization pullback_polarization(const TorusMorphism &m, const Polarization &zeta_tgt) {
  require(classify(m).finite, ErrorCode::NotFinite, "pull-back of a polarization needs a finite map");
  PolarizedVariety tgt(m.target(), zeta_tgt);
  Polarization z{m.f_sharp() * zeta_tgt.zeta * m.f_hash()};
  require(is_polarization(m.source(), z.zeta), ErrorCode::Internal, "pull-back lost positivity");
  return z;
}

inline Polarization pushforward_polarization(const TorusMorphism &m, const Polarization &zeta_src) {
  require(classify(m).surjective, ErrorCode::NotSurjective,
          "push-forward of a polarization needs a surjective map");
  PolarizedVariety src(m.source(), zeta_src);
  Polarization dsrc = dual_polarization(src);
  TorusMorphism dm = dual_morphism(m);
  Polarization pulled = pullback_polarization(dm, dsrc);
  return dual_polarization(PolarizedVariety(dm.source(), pulled));
}

inline bool is_polarized_isogeny(const TorusMorphism &m, const Polarization &zeta_src,
                                 const Polarization &zeta_tgt) {
  require(classify(m).isogeny, ErrorCode::NotIsogeny, "not an isogeny");
  return pullback_polarization(m, zeta_tgt) == zeta_src;
}

inline bool same_saturated(const IntMatrix &a, const IntMatrix &b) {
  if (a.rows() != b.rows())
    return false;
  auto sa = image_lattice(a), sb = image_lattice(b);
  if (sa.rank() != sb.rank())
    return false;
  if (sa.rank() == 0)
    return true;
  return same_lattice(saturate(sa), saturate(sb));
}

inline bool check_exact_sequence(const TorusMorphism &f, const TorusMorphism &g) {
  if (f.target() != g.source())
    fail(ErrorCode::ShapeMismatch, "sequence maps are not composable");
  if (f.target().rank() != f.source().rank() + g.target().rank())
    return false;
  if (!classify(f).injective || !classify(g).surjective)
    return false;
  if (kernel_component_count(g) != 1)
    return false;
  // im(f) and Ker(g)_0 agree on both lattices.
  IntMatrix ker_fs = integer_kernel(f.f_sharp()).matrix();
  if (!same_saturated(ker_fs, g.f_sharp()))
    return false;
  IntMatrix ker_gh = integer_kernel(g.f_hash()).matrix();
  return same_saturated(f.f_hash(), ker_gh);
}

class ExactSequence {
public:
  ExactSequence(TorusMorphism f, TorusMorphism g) : f_(std::move(f)), g_(std::move(g)) {
    require(check_exact_sequence(f_, g_), ErrorCode::NotExact, "sequence is not exact");
  }
  const TorusMorphism &f() const { return f_; }
  const TorusMorphism &g() const { return g_; }

private:
  TorusMorphism f_, g_;
};

inline ExactSequence dualize_sequence(const ExactSequence &s) {
  return ExactSequence(dual_morphism(s.g()), dual_morphism(s.f()));
}

struct FiniteQuotient {
  PolarizedVariety quotient;
  TorusMorphism isogeny;
  bool isogeny_is_polarized;
};

inline FiniteQuotient quotient_by_finite_subgroup(const PolarizedVariety &pv,
                                                  const std::vector<RatVector> &gens) {
  const IntegralTorus &t = pv.torus();
  const std::size_t n = t.rank();
  RatMatrix all = t.pairing();
  for (auto &g : gens) {
    require(g.size() == n, ErrorCode::ShapeMismatch, "generator has wrong dimension");
    all = hstack(all, RatMatrix::column(g));
  }
  Int D = common_denominator(all);
  IntMatrix scaled = to_int(Rat(D) * all);
  IntMatrix H = row_hermite_form(scaled.transpose()).transpose();
  RatMatrix Pnew = Rat(1, D) * to_rat(H);
  IntegralTorus q(Pnew);
  TorusMorphism iso(t, q, IntMatrix::identity(n), to_int(inverse(Pnew) * t.pairing()));
  Polarization z = pushforward_polarization(iso, pv.pol());
  bool polarized = pullback_polarization(iso, z) == pv.pol();
  return {PolarizedVariety(q, z), iso, polarized};
}

// Generators given as strings; anything that is not an exact rational is rejected.
inline FiniteQuotient quotient_by_finite_subgroup(const PolarizedVariety &pv,
                                                  const std::vector<std::vector<std::string>> &gens) {
  std::vector<RatVector> g;
  for (auto &v : gens) {
    RatVector x;
    for (auto &s : v) {
      try {
        x.push_back(parse_rational(s));
      } catch (const Error &) {
        fail(ErrorCode::NotTorsion, "generator coordinate '" + s + "' is not a torsion coordinate");
      }
    }
    g.push_back(std::move(x));
  }
  return quotient_by_finite_subgroup(pv, g);
}

struct SubvarietyQuotient {
  PolarizedVariety quotient;
  TorusMorphism projection;
};

inline SubvarietyQuotient quotient_by_subvariety(const PolarizedVariety &pv, const TorusMorphism &incl) {
  auto q = quotient_by_subtorus(pv.torus(), incl);
  Polarization z = pushforward_polarization(q.projection, pv.pol());
  return {PolarizedVariety(q.torus, z), q.projection};
}

} // namespace tropjac
