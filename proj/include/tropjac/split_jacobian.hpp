#pragma once

#include "cover_analysis.hpp"

namespace tropjac {

// TE' = Ker(push)_0 as a circle of positive length, with its inclusion i = (Q, W)
// and the dual map g = (W, Q): Jac -> TE'.
struct ComplementFactor {
  IntegralTorus circle;
  TorusMorphism inclusion;
  TorusMorphism projection;
  IntVector w; // generator of the kernel cycle lattice, signed so the length is positive
};

inline ComplementFactor complement_factor(const CoverData &c) {
  OptimalityVerdict v = is_optimal(c);
  require(v.kernel_connected, ErrorCode::NotOptimal,
          "push-forward kernel has " + v.component_count.get_str() + " components");
  Int gd = dilation_gcd(c);
  require(gd == 1, ErrorCode::NotOptimal,
          "cover factors through a dilation of degree " + gd.get_str());
  TorusMorphism push = pushforward_morphism(c);
  require(push.source().rank() == 2, ErrorCode::InvalidCover, "source curve must have genus 2");
  SubTorus k = kernel0(push);
  IntMatrix Q = k.inclusion.f_sharp(), W = k.inclusion.f_hash();
  Rat len = k.torus.pairing()(0, 0);
  if (len < 0) {
    W = -W;
    len = -len;
  }
  IntegralTorus te(RatMatrix{{len}});
  TorusMorphism incl(te, push.source(), Q, W);
  TorusMorphism proj(push.source(), te, W, Q);
  return {te, incl, proj, W.col(0)};
}

struct ComplementaryCover {
  GeneralCircleCover cover;
  Rat target_length;
  std::vector<Int> dilations;
  std::vector<int> orientations;
  Int degree;
};

// Circle cover whose 1-form has per-edge slopes s = B r (r in the cycle-dual basis).
// Vertex images come from integrating along the spanning tree.
inline GeneralCircleCover cover_from_form(const MetricGraph &G, const IntVector &r, const Rat &l) {
  const IntMatrix &B = G.cycle_basis();
  const std::size_t E = G.edges().size();
  IntVector s = B.apply(r);
  std::vector<Rat> pos(G.vertex_count());
  for (std::size_t v = 0; v < G.vertex_count(); ++v) {
    Rat x = 0;
    for (std::size_t e = 0; e < E; ++e)
      x += Rat(G.root_path(v)[e] * s[e]) * G.edges()[e].length;
    pos[v] = mod_positive(x, l);
  }
  GeneralCircleCover c{G, l, pos, {}, {}};
  for (std::size_t e = 0; e < E; ++e) {
    c.dilations.push_back(abs(s[e]));
    c.orientations.push_back(s[e] < 0 ? -1 : 1);
    // each edge closes up: winding (s_e l_e + pos(tail) - pos(head)) / l must be an integer
    const Edge &ed = G.edges()[e];
    Rat turns = (Rat(s[e]) * ed.length + pos[ed.tail] - pos[ed.head]) / l;
    require(turns.get_den() == 1, ErrorCode::Internal,
            "edge " + std::to_string(e) + " has a non-integral winding");
  }
  auto rep = validate_cover(c);
  require(rep.valid(), ErrorCode::Internal,
          "constructed cover is not harmonic: " + (rep.violations.empty() ? "" : rep.violations.front()));
  return c;
}

inline ComplementaryCover complementary_cover(const CoverData &c) {
  ComplementFactor f = complement_factor(c);
  GeneralCircleCover g = cover_from_form(source_graph(c), f.w, f.circle.pairing()(0, 0));
  Int d = cover_degree(g);
  require(d == cover_degree(c), ErrorCode::Internal, "complementary cover has the wrong degree");
  return {g, g.target_length, g.dilations, g.orientations, d};
}

struct SplittingIsogeny {
  TorusMorphism phi;            // TE' (+) TE -> Jac
  IntMatrix universal;          // columns: inclusion, pull-back
  std::vector<RatVector> kernel_points;
};

inline SplittingIsogeny splitting_isogeny(const CoverData &c) {
  ComplementFactor f = complement_factor(c);
  TorusMorphism phi = coproduct_map(f.inclusion, pullback_morphism(c));
  auto pts = isogeny_kernel_points(phi);
  require(Int(pts.size()) == cover_degree(c), ErrorCode::Internal, "kernel size differs from the degree");
  return {phi, phi.universal(), pts};
}

struct SplitReport {
  IntMatrix phi, phi_tilde;
  std::vector<RatVector> kernel_points;
  Int degree;
  bool kernel_matches_d_torsion_TE = false;
  bool kernel_matches_d_torsion_TEprime = false;
  bool composite_is_mult_d = false;
  bool polarization_pullback_is_d_times_principal = false;
  bool sequence_inclusion_pushforward_exact = false;
  bool sequence_pullback_projection_exact = false;
  friend bool operator==(const SplitReport &, const SplitReport &) = default;
};

namespace detail {

inline std::vector<Rat> torsion_points(const Rat &l, const Int &d) {
  std::vector<Rat> r;
  for (Int j = 0; j < d; ++j)
    r.push_back(Rat(j) * l / Rat(d));
  return r;
}

inline std::vector<Rat> projected(const std::vector<RatVector> &pts, std::size_t i, const Rat &l) {
  std::vector<Rat> r;
  for (auto &p : pts)
    r.push_back(mod_positive(p[i], l));
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

} // namespace detail

inline SplitReport verify_split_package(const CoverData &c) {
  ComplementFactor f = complement_factor(c);
  TorusMorphism push = pushforward_morphism(c), pull = pullback_morphism(c);
  Int d = cover_degree(c);
  SplittingIsogeny s = splitting_isogeny(c);
  TorusMorphism phi_t = product_map(f.projection, push);

  SplitReport r;
  r.phi = s.universal;
  r.phi_tilde = phi_t.universal();
  r.kernel_points = s.kernel_points;
  r.degree = d;
  r.composite_is_mult_d = compose(phi_t, s.phi) == TorusMorphism::multiplication(s.phi.source(), d);
  Rat lk = f.circle.pairing()(0, 0), l = target_length(c);
  r.kernel_matches_d_torsion_TEprime =
      Int(s.kernel_points.size()) == d && detail::projected(s.kernel_points, 0, lk) == detail::torsion_points(lk, d);
  r.kernel_matches_d_torsion_TE =
      Int(s.kernel_points.size()) == d && detail::projected(s.kernel_points, 1, l) == detail::torsion_points(l, d);
  Polarization pb = pullback_polarization(s.phi, Polarization{IntMatrix::identity(2)});
  r.polarization_pullback_is_d_times_principal = pb.zeta == d * IntMatrix::identity(2);
  r.sequence_inclusion_pushforward_exact = check_exact_sequence(f.inclusion, push);
  r.sequence_pullback_projection_exact = check_exact_sequence(pull, f.projection);
  return r;
}

// Cover obtained by composing Abel-Jacobi with iso and the projection onto
// factor `which` of a product of two circles.
inline GeneralCircleCover cover_from_splitting(const MetricGraph &curve, const TorusMorphism &iso,
                                               std::size_t which = 0) {
  require(iso.source() == jacobian(curve).torus(), ErrorCode::ShapeMismatch,
          "isogeny does not start at the Jacobian of the curve");
  require(classify(iso).isogeny, ErrorCode::NotIsogeny, "map is not an isogeny");
  const RatMatrix &P = iso.target().pairing();
  require(P.rows() == 2 && P(0, 1) == 0 && P(1, 0) == 0, ErrorCode::NotProductTarget,
          "target is not a product of two circles");
  require(which < 2, ErrorCode::NotProductTarget, "factor index must be 0 or 1");
  Rat l = P(which, which);
  require(l > 0, ErrorCode::NotProductTarget, "factor circle has non-positive length");
  return cover_from_form(curve, iso.f_sharp().col(which), l);
}

} // namespace tropjac
