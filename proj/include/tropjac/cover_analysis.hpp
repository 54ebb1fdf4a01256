#pragma once

#include <algorithm>

#include "curves.hpp"

namespace tropjac {

using CoverData = std::variant<ThetaCover, DumbbellCover, GeneralCircleCover>;

inline const char *cover_kind(const CoverData &c) {
  switch (c.index()) {
  case 0: return "theta";
  case 1: return "dumbbell";
  default: return "general_circle";
  }
}

inline ValidationReport validate_cover(const CoverData &c) {
  return std::visit([](const auto &x) { return validate_cover(x); }, c);
}

inline GeneralCircleCover to_general(const CoverData &c) {
  return std::visit([](const auto &x) { return to_general(x); }, c);
}

inline MetricGraph source_graph(const CoverData &c) {
  switch (c.index()) {
  case 0: return std::get<0>(c).curve.graph();
  case 1: return std::get<1>(c).curve.graph();
  default: return std::get<2>(c).graph;
  }
}

inline Rat target_length(const CoverData &c) {
  return std::visit([](const auto &x) { return target_length(x); }, c);
}

inline Int cover_degree(const CoverData &c) {
  return std::visit([](const auto &x) { return cover_degree(x); }, c);
}

// Push-forward of an arbitrary circle cover: the pulled-back 1-form sum s_e de
// written in the basis dual to the cycles, and the winding of each cycle.
inline TorusMorphism generic_pushforward(const GeneralCircleCover &c) {
  cover_degree(c);
  const MetricGraph &G = c.graph;
  const std::size_t E = G.edges().size(), g = G.genus();
  const IntMatrix &B = G.cycle_basis();
  IntVector s(E);
  for (std::size_t e = 0; e < E; ++e)
    s[e] = c.slope(e);
  auto x = solve_left(to_rat(B), to_rat(IntMatrix::column(s)));
  require(x && is_integral(*x), ErrorCode::Internal, "pulled-back form is not an integral cycle form");
  IntMatrix hash(1, g);
  for (std::size_t i = 0; i < g; ++i) {
    Rat w = 0;
    for (std::size_t e = 0; e < E; ++e)
      w += Rat(B(e, i) * s[e]) * G.edges()[e].length;
    w /= c.target_length;
    require(w.get_den() == 1, ErrorCode::Internal, "cycle image does not close up");
    hash(0, i) = w.get_num();
  }
  return {jacobian(G).torus(), IntegralTorus::circle(c.target_length), to_int(*x), hash};
}

inline TorusMorphism pushforward_morphism(const ThetaCover &c) {
  cover_degree(c);
  const auto &[n, n1, n2] = c.n;
  return {jacobian(c.curve).torus(), IntegralTorus::circle(target_length(c)),
          IntMatrix{{c.d[0]}, {-c.d[1]}}, IntMatrix{{n + n2 - 1, n2 - n1}}};
}

inline TorusMorphism pushforward_morphism(const DumbbellCover &c) {
  cover_degree(c);
  return {jacobian(c.curve).torus(), IntegralTorus::circle(target_length(c)),
          IntMatrix{{c.d[0]}, {c.d[1]}}, IntMatrix{{c.n[0], c.n[1]}}};
}

inline TorusMorphism pushforward_morphism(const GeneralCircleCover &c) { return generic_pushforward(c); }

inline TorusMorphism pushforward_morphism(const CoverData &c) {
  return std::visit([](const auto &x) { return pushforward_morphism(x); }, c);
}

// Dual of the push-forward; both Jacobian and circle are self-dual (symmetric pairings).
template <class C> TorusMorphism pullback_morphism(const C &c) {
  return dual_morphism(pushforward_morphism(c));
}

namespace detail {

// Primitive generator of ker(f_hash) and a vector v with Q v = +-1 where Q
// annihilates f_sharp; both read off the closed formulas.
struct KernelData {
  IntVector w, v;
  RatMatrix M;
};

inline KernelData theta_kernel_data(const ThetaCover &c) {
  const auto &[n, n1, n2] = c.n;
  auto eg = ext_gcd(c.d[1], c.d[0]);
  return {primitive({n1 - n2, n + n2 - 1}), {eg.x, eg.y}, jacobian(c.curve).torus().pairing()};
}

inline KernelData dumbbell_kernel_data(const DumbbellCover &c) {
  auto eg = ext_gcd(c.d[1], -c.d[0]);
  return {primitive({-c.n[1], c.n[0]}), {eg.x, eg.y}, jacobian(c.curve).torus().pairing()};
}

inline Rat bilinear(const IntVector &a, const RatMatrix &M, const IntVector &b) {
  Rat r = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r += Rat(a[i]) * M(i, j) * Rat(b[j]);
  return r;
}

inline Rat abs_rat(const Rat &x) { return x < 0 ? Rat(-x) : x; }

// Some v with det[w; v] = 1.
inline IntVector complement(const IntVector &w) {
  auto eg = ext_gcd(w[0], w[1]);
  require(eg.g == 1, ErrorCode::Internal, "kernel vector is not primitive");
  return {-eg.y, eg.x};
}

} // namespace detail

inline Rat kernel_length_with(const ThetaCover &c, const IntVector &v) {
  auto k = detail::theta_kernel_data(c);
  return detail::abs_rat(detail::bilinear(v, k.M, k.w));
}
inline Rat kernel_length_with(const DumbbellCover &c, const IntVector &v) {
  auto k = detail::dumbbell_kernel_data(c);
  return detail::abs_rat(detail::bilinear(v, k.M, k.w));
}

inline Rat kernel_length(const ThetaCover &c) {
  cover_degree(c);
  return kernel_length_with(c, detail::theta_kernel_data(c).v);
}
inline Rat kernel_length(const DumbbellCover &c) {
  cover_degree(c);
  return kernel_length_with(c, detail::dumbbell_kernel_data(c).v);
}
// No closed formula: read the length off kernel0 of the push-forward.
inline Rat kernel_length(const GeneralCircleCover &c) {
  auto k = kernel0(generic_pushforward(c));
  require(k.torus.rank() == 1, ErrorCode::InvalidCover, "push-forward kernel is not one-dimensional");
  return detail::abs_rat(k.torus.pairing()(0, 0));
}
inline Rat kernel_length(const CoverData &c) {
  return std::visit([](const auto &x) { return kernel_length(x); }, c);
}

struct GammaData {
  Rat l_tilde;
  Int a_sharp;
  Rat a_hash;
  friend bool operator==(const GammaData &, const GammaData &) = default;
};

namespace detail {

inline GammaData gamma_from(const IntVector &fsharp, const IntVector &w, const RatMatrix &M, const Rat &l) {
  Int g = gcd_of(fsharp);
  IntVector wq = primitive(fsharp);
  IntVector vq = complement(w);
  Rat lt = abs_rat(bilinear(wq, M, vq));
  return {lt, g, lt * Rat(g) / l};
}

} // namespace detail

inline GammaData quotient_and_gamma(const ThetaCover &c) {
  cover_degree(c);
  auto k = detail::theta_kernel_data(c);
  return detail::gamma_from({c.d[0], -c.d[1]}, k.w, k.M, target_length(c));
}

inline GammaData quotient_and_gamma(const DumbbellCover &c) {
  cover_degree(c);
  auto k = detail::dumbbell_kernel_data(c);
  return detail::gamma_from({c.d[0], c.d[1]}, k.w, k.M, target_length(c));
}

// Torus-layer route: Stein factorization of the push-forward.
inline GammaData quotient_and_gamma(const GeneralCircleCover &c) {
  auto s = stein_factorization(generic_pushforward(c));
  return {detail::abs_rat(s.middle.pairing()(0, 0)), abs(s.phi.f_sharp()(0, 0)),
          Rat(abs(s.phi.f_hash()(0, 0)))};
}

inline GammaData quotient_and_gamma(const CoverData &c) {
  return std::visit([](const auto &x) { return quotient_and_gamma(x); }, c);
}

template <class C> Int component_count(const C &c) {
  GammaData g = quotient_and_gamma(c);
  require(g.a_hash.get_den() == 1, ErrorCode::Internal, "a_hash is not an integer");
  return g.a_hash.get_num();
}

struct TorsionDivisor {
  Rat position; // P sits at this coordinate of the target circle, P0 at 0
  Int order;
  friend bool operator==(const TorsionDivisor &, const TorsionDivisor &) = default;
};

struct SubEdgeSlope {
  std::size_t edge;
  Rat from, to;  // image interval on the universal cover of the target
  bool arc_a;    // inside (0, position) rather than (position, l)
  Rat value;     // d_e times the slope of f / ord on that arc
};

// The function q_Gamma for a divisor at position p (order irrelevant after
// normalisation): per sub-edge value d_e (l - p)/l on arc (0,p), d_e p / l on (p,l).
inline std::vector<SubEdgeSlope> q_gamma(const GeneralCircleCover &c, const Rat &p) {
  cover_degree(c);
  const Rat &l = c.target_length;
  require(p >= 0 && p < l, ErrorCode::OffsetOutOfRange, "divisor position outside [0, l)");
  std::vector<SubEdgeSlope> out;
  for (std::size_t e = 0; e < c.graph.edges().size(); ++e) {
    if (c.dilations[e] == 0)
      continue;
    Rat a = c.vertex_positions[c.graph.edges()[e].tail];
    Rat b = a + Rat(c.slope(e)) * c.graph.edges()[e].length;
    Rat lo = std::min(a, b), hi = std::max(a, b);
    std::vector<Rat> cuts{lo, hi};
    for (Int k = floor_int(lo / l) - 1; Rat(k) * l <= hi + l; ++k)
      for (const Rat &base : {Rat(0), p}) {
        Rat t = Rat(k) * l + base;
        if (t > lo && t < hi)
          cuts.push_back(t);
      }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      Rat mid = mod_positive((cuts[i] + cuts[i + 1]) / 2, l);
      bool in_a = mid < p;
      Rat val = Rat(c.dilations[e]) * (in_a ? (l - p) : p) / l;
      out.push_back({e, cuts[i], cuts[i + 1], in_a, val});
    }
  }
  return out;
}

inline std::vector<Int> divisors_of(const Int &d) {
  std::vector<Int> r;
  for (Int k = 1; k <= d; ++k)
    if (d % k == 0)
      r.push_back(k);
  return r;
}

inline std::vector<TorsionDivisor> pullback_kernel(const GeneralCircleCover &c) {
  Int d = cover_degree(c);
  require(d >= 1, ErrorCode::InvalidCover, "degree must be positive");
  const Rat &l = c.target_length;
  std::vector<TorsionDivisor> out;
  for (const Int &m : divisors_of(d))
    for (Int j = 0; j < m; ++j) {
      Int g;
      mpz_gcd(g.get_mpz_t(), j.get_mpz_t(), m.get_mpz_t());
      if (g != 1)
        continue; // j = 0 survives only for m = 1
      Rat p = Rat(j) * l / Rat(m);
      bool ok = true;
      for (auto &s : q_gamma(c, p))
        ok = ok && s.value.get_den() == 1;
      if (ok)
        out.push_back({p, m});
    }
  std::sort(out.begin(), out.end(),
            [](const TorsionDivisor &a, const TorsionDivisor &b) { return a.position < b.position; });
  return out;
}

template <class C> std::vector<TorsionDivisor> pullback_kernel(const C &c) {
  return pullback_kernel(to_general(c));
}

struct OptimalityVerdict {
  bool kernel_connected;
  std::optional<bool> dumbbell_gcd_free;
  Int component_count;
  std::string note;
  friend bool operator==(const OptimalityVerdict &, const OptimalityVerdict &) = default;
};

// gcd of all edge dilations; > 1 means the cover factors through a dilation of the target.
inline Int dilation_gcd(const CoverData &c) {
  Int g = 0;
  for (auto &d : to_general(c).dilations)
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
  return g;
}

inline OptimalityVerdict is_optimal(const CoverData &c) {
  OptimalityVerdict v;
  v.component_count = std::visit([](const auto &x) { return component_count(x); }, c);
  v.kernel_connected = v.component_count == 1;
  Int gd = dilation_gcd(c);
  if (auto *db = std::get_if<DumbbellCover>(&c)) {
    Int gn = gcd_of({db->n[0], db->n[1]});
    v.dumbbell_gcd_free = gd == 1 && gn == 1;
    if (v.kernel_connected && !*v.dumbbell_gcd_free)
      v.note = "verdicts diverge: push-forward kernel is connected, but gcd(d1,d2) = " +
               gd.get_str() + " and gcd(n1,n2) = " + gn.get_str() +
               ", so the cover factors through a dilation isogeny of degree > 1";
  } else if (v.kernel_connected && gd > 1) {
    v.note = "verdicts diverge: push-forward kernel is connected, but all dilations are divisible by " +
             gd.get_str() + ", so the cover factors through a dilation isogeny of that degree";
  }
  return v;
}

struct PushforwardFactor {
  Int a_sharp;
  Int a_hash;
  TorusMorphism isogeny; // target(c2) -> target(c1)
};

inline bool same_source(const CoverData &a, const CoverData &b) {
  if (a.index() != b.index())
    return false;
  if (a.index() == 0)
    return std::get<0>(a).curve == std::get<0>(b).curve;
  if (a.index() == 1)
    return std::get<1>(a).curve == std::get<1>(b).curve;
  return false;
}

// Does push(c1) factor as h o push(c2)?
inline std::optional<PushforwardFactor> factor_pushforward(const CoverData &c1, const CoverData &c2) {
  require(c1.index() != 2 && c2.index() != 2, ErrorCode::SourceMismatch,
          "factorization needs theta or dumbbell covers");
  require(same_source(c1, c2), ErrorCode::SourceMismatch, "covers have different source curves");
  TorusMorphism mu = pushforward_morphism(c1), mut = pushforward_morphism(c2);
  auto k1 = integer_kernel(mu.f_hash()), k2 = integer_kernel(mut.f_hash());
  if (!same_lattice(k1, k2))
    return std::nullopt;
  GammaData g1 = quotient_and_gamma(c1), g2 = quotient_and_gamma(c2);
  require(g1.l_tilde == g2.l_tilde, ErrorCode::Internal, "equal kernels but different quotients");
  if (g1.a_sharp % g2.a_sharp != 0)
    return std::nullopt;
  Int a3s = g1.a_sharp / g2.a_sharp;
  Rat l2 = target_length(c1), l3 = target_length(c2);
  Rat a3h = Rat(a3s) * l3 / l2;
  if (a3h.get_den() != 1)
    return std::nullopt;
  TorusMorphism h(mut.target(), mu.target(), IntMatrix{{a3s}}, IntMatrix{{a3h.get_num()}});
  require(compose(h, mut) == mu, ErrorCode::Internal, "factorization does not compose back");
  return PushforwardFactor{a3s, a3h.get_num(), h};
}

} // namespace tropjac
