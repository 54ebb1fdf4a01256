#pragma once

#include <array>
#include <deque>
#include <string>
#include <variant>

#include "tav.hpp"

namespace tropjac {

struct Edge {
  std::size_t tail, head;
  Rat length;
};

// Connected metric graph. An explicit cycle basis (edges x genus, integer
// columns) may be attached; otherwise fundamental cycles of a BFS tree are used.
class MetricGraph {
public:
  MetricGraph() = default;
  MetricGraph(std::size_t vertices, std::vector<Edge> edges, std::optional<IntMatrix> basis = {})
      : nv_(vertices), edges_(std::move(edges)) {
    require(nv_ > 0, ErrorCode::InvalidCover, "graph needs a vertex");
    for (auto &e : edges_) {
      require(e.tail < nv_ && e.head < nv_, ErrorCode::InvalidCover, "edge endpoint out of range");
      require(e.length > 0, ErrorCode::InvalidCover, "positivity: edge lengths must be positive");
    }
    build_tree();
    basis_ = basis ? *basis : fundamental_cycles();
    require(basis_.rows() == edges_.size() && basis_.cols() == genus(), ErrorCode::InvalidCover,
            "cycle basis has shape " + basis_.shape());
    for (std::size_t j = 0; j < basis_.cols(); ++j)
      require(is_cycle(basis_.col(j)), ErrorCode::InvalidCover, "cycle basis column is not a cycle");
    require(genus() == 0 || is_saturated(LatticeBasis(basis_)), ErrorCode::InvalidCover,
            "cycle basis does not span the integral cycles");
  }

  std::size_t vertex_count() const { return nv_; }
  const std::vector<Edge> &edges() const { return edges_; }
  std::size_t genus() const { return edges_.size() + 1 - nv_; }
  const IntMatrix &cycle_basis() const { return basis_; }

  bool is_cycle(const IntVector &c) const {
    std::vector<Int> bd(nv_);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      bd[edges_[e].head] += c[e];
      bd[edges_[e].tail] -= c[e];
    }
    for (auto &x : bd)
      if (x != 0)
        return false;
    return true;
  }

  // Signed edge chain of the tree path from vertex 0 to v.
  const IntVector &root_path(std::size_t v) const { return root_path_[v]; }
  bool is_tree_edge(std::size_t e) const { return tree_edge_[e]; }

  RatMatrix period_matrix() const {
    std::vector<Rat> l;
    for (auto &e : edges_)
      l.push_back(e.length);
    return to_rat(basis_.transpose()) * RatMatrix::diagonal(l) * to_rat(basis_);
  }

private:
  void build_tree() {
    root_path_.assign(nv_, IntVector(edges_.size(), 0));
    tree_edge_.assign(edges_.size(), false);
    std::vector<bool> seen(nv_, false);
    std::deque<std::size_t> q{0};
    seen[0] = true;
    while (!q.empty()) {
      std::size_t v = q.front();
      q.pop_front();
      for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Edge &E = edges_[e];
        std::size_t w;
        int sign;
        if (E.tail == v && !seen[E.head]) {
          w = E.head;
          sign = 1;
        } else if (E.head == v && !seen[E.tail]) {
          w = E.tail;
          sign = -1;
        } else {
          continue;
        }
        seen[w] = true;
        tree_edge_[e] = true;
        root_path_[w] = root_path_[v];
        root_path_[w][e] += sign;
        q.push_back(w);
      }
    }
    for (bool s : seen)
      require(s, ErrorCode::InvalidCover, "graph is not connected");
  }

  IntMatrix fundamental_cycles() const {
    IntMatrix b(edges_.size(), genus());
    std::size_t j = 0;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (tree_edge_[e])
        continue;
      const Edge &E = edges_[e];
      for (std::size_t k = 0; k < edges_.size(); ++k)
        b(k, j) = root_path_[E.tail][k] - root_path_[E.head][k];
      b(e, j) += 1;
      ++j;
    }
    return b;
  }

  std::size_t nv_ = 0;
  std::vector<Edge> edges_;
  IntMatrix basis_;
  std::vector<IntVector> root_path_;
  std::vector<bool> tree_edge_;
};

inline MetricGraph circle_graph(const Rat &l) { return MetricGraph(1, {{0, 0, l}}); }

// Edges e: P0 -> P1, e1: P1 -> P0, e2: P1 -> P0; cycles B1 = e + e2, B2 = e2 - e1.
struct ThetaCurve {
  Rat l_e, l_e1, l_e2;
  MetricGraph graph() const {
    IntMatrix b{{1, 0}, {0, -1}, {1, 1}};
    return MetricGraph(2, {{0, 1, l_e}, {1, 0, l_e1}, {1, 0, l_e2}}, b);
  }
  friend bool operator==(const ThetaCurve &, const ThetaCurve &) = default;
};

// Edges: loop e1 at P0, loop e2 at P1, bridge P0 -> P1; cycles B1 = e1, B2 = e2.
struct DumbbellCurve {
  Rat l_loop1, l_loop2, l_bridge;
  MetricGraph graph() const {
    IntMatrix b{{1, 0}, {0, 1}, {0, 0}};
    return MetricGraph(2, {{0, 0, l_loop1}, {1, 1, l_loop2}, {0, 1, l_bridge}}, b);
  }
  friend bool operator==(const DumbbellCurve &, const DumbbellCurve &) = default;
};

inline PolarizedVariety jacobian(const MetricGraph &g) {
  return principally_polarized(IntegralTorus(g.period_matrix()));
}
inline PolarizedVariety jacobian(const ThetaCurve &c) { return jacobian(c.graph()); }
inline PolarizedVariety jacobian(const DumbbellCurve &c) { return jacobian(c.graph()); }
inline PolarizedVariety circle_jacobian(const Rat &l) { return jacobian(circle_graph(l)); }

// Integrals of the basis 1-forms along a chain with rational edge coefficients
// (coefficient 1 means the full edge).
inline RatVector integrate_chain(const MetricGraph &g, const RatVector &chain) {
  const IntMatrix &B = g.cycle_basis();
  RatVector x(g.genus());
  for (std::size_t i = 0; i < g.genus(); ++i)
    for (std::size_t e = 0; e < g.edges().size(); ++e)
      x[i] += chain[e] * Rat(B(e, i)) * g.edges()[e].length;
  return x;
}

inline RatVector abel_jacobi(const MetricGraph &g, std::size_t base, std::size_t edge,
                             const Rat &offset) {
  require(base < g.vertex_count(), ErrorCode::OffsetOutOfRange, "basepoint out of range");
  require(edge < g.edges().size(), ErrorCode::OffsetOutOfRange, "edge out of range");
  const Edge &E = g.edges()[edge];
  require(offset >= 0 && offset <= E.length, ErrorCode::OffsetOutOfRange,
          "offset " + offset.get_str() + " outside [0, " + E.length.get_str() + "]");
  RatVector chain(g.edges().size());
  for (std::size_t k = 0; k < chain.size(); ++k)
    chain[k] = Rat(g.root_path(E.tail)[k] - g.root_path(base)[k]);
  chain[edge] += offset / E.length;
  return reduce_point(jacobian(g).torus(), integrate_chain(g, chain));
}

inline RatVector abel_jacobi_vertex(const MetricGraph &g, std::size_t base, std::size_t v) {
  RatVector chain(g.edges().size());
  for (std::size_t k = 0; k < chain.size(); ++k)
    chain[k] = Rat(g.root_path(v)[k] - g.root_path(base)[k]);
  return reduce_point(jacobian(g).torus(), integrate_chain(g, chain));
}

struct ValidationReport {
  std::vector<std::string> violations;
  std::optional<Int> degree;
  bool valid() const { return violations.empty(); }
};

struct ThetaCover {
  ThetaCurve curve;
  std::array<Int, 3> n; // windings (n, n1, n2)
  std::array<Int, 3> d; // dilations (d_e, d_e1, d_e2)
  std::optional<std::array<Rat, 2>> arcs;
};

struct DumbbellCover {
  DumbbellCurve curve;
  std::array<Int, 2> n;
  std::array<Int, 2> d;
  std::optional<Rat> target;
};

// Per-edge signed slope s_e = orientation * dilation; the image of edge e runs
// from position(tail) over a signed length s_e * l_e.
struct GeneralCircleCover {
  MetricGraph graph;
  Rat target_length;
  std::vector<Rat> vertex_positions;
  std::vector<Int> dilations;
  std::vector<int> orientations;

  Int slope(std::size_t e) const { return dilations[e] * orientations[e]; }
};

namespace detail {

inline std::string str(const Int &x) { return x.get_str(); }

// Solve the metric realizability equations for the two target arcs.
inline std::optional<std::array<Rat, 2>> derive_theta_arcs(const ThetaCover &c,
                                                            std::vector<std::string> &why) {
  const auto &[n, n1, n2] = c.n;
  RatMatrix A{{Rat(n), Rat(n - 1)}, {Rat(n1 - 1), Rat(n1)}, {Rat(n2 - 1), Rat(n2)}};
  RatMatrix b{{Rat(c.d[0]) * c.curve.l_e}, {Rat(c.d[1]) * c.curve.l_e1}, {Rat(c.d[2]) * c.curve.l_e2}};
  if (rank(A) < 2) {
    if (rank(hstack(A, b)) > rank(A))
      why.push_back("metric realizability: equations are inconsistent");
    else
      why.push_back("metric realizability: target arcs are underdetermined; supply target_arcs");
    return std::nullopt;
  }
  auto x = solve_left(A, b);
  if (!x) {
    why.push_back("metric realizability: equations are inconsistent");
    return std::nullopt;
  }
  return std::array<Rat, 2>{(*x)(0, 0), (*x)(1, 0)};
}

} // namespace detail

inline ValidationReport validate_cover(const ThetaCover &c) {
  ValidationReport r;
  auto &v = r.violations;
  const auto &cv = c.curve;
  if (!(cv.l_e > 0 && cv.l_e1 > 0 && cv.l_e2 > 0))
    v.push_back("positivity: edge lengths must be positive");
  bool nonneg = true;
  for (int i = 0; i < 3; ++i)
    nonneg = nonneg && c.n[i] >= 0 && c.d[i] >= 0;
  if (!nonneg)
    v.push_back("nonnegativity: windings and dilations must be nonnegative");
  if (c.d[0] != c.d[1] + c.d[2])
    v.push_back("balancing: d_e = d_e1 + d_e2");
  if (c.d[0] == 0 && c.d[1] == 0 && c.d[2] == 0)
    v.push_back("surjectivity: some edge must have positive dilation");
  if (!v.empty())
    return r;

  std::optional<std::array<Rat, 2>> arcs = c.arcs;
  if (!arcs)
    arcs = detail::derive_theta_arcs(c, v);
  if (!arcs)
    return r;
  const Rat &a = (*arcs)[0], &b = (*arcs)[1];
  if (a < 0 || b < 0 || a + b <= 0)
    v.push_back("target arcs: lengths must be nonnegative with positive total");
  const auto &[n, n1, n2] = c.n;
  if (Rat(c.d[0]) * cv.l_e != Rat(n) * a + Rat(n - 1) * b)
    v.push_back("metric realizability: d_e*l_e = n*l~1 + (n-1)*l~2");
  if (Rat(c.d[1]) * cv.l_e1 != Rat(n1 - 1) * a + Rat(n1) * b)
    v.push_back("metric realizability: d_e1*l_e1 = (n1-1)*l~1 + n1*l~2");
  if (Rat(c.d[2]) * cv.l_e2 != Rat(n2 - 1) * a + Rat(n2) * b)
    v.push_back("metric realizability: d_e2*l_e2 = (n2-1)*l~1 + n2*l~2");
  Int deg1 = n * c.d[0] + (n1 - 1) * c.d[1] + (n2 - 1) * c.d[2];
  Int deg2 = (n - 1) * c.d[0] + n1 * c.d[1] + n2 * c.d[2];
  if (deg1 != deg2)
    v.push_back("degree equations: fibre weights over the two target arcs differ");
  else if (deg1 < 1)
    v.push_back("degree: d must be at least 1");
  if (v.empty())
    r.degree = deg1;
  return r;
}

inline ValidationReport validate_cover(const DumbbellCover &c) {
  ValidationReport r;
  auto &v = r.violations;
  const auto &cv = c.curve;
  if (!(cv.l_loop1 > 0 && cv.l_loop2 > 0 && cv.l_bridge > 0))
    v.push_back("positivity: edge lengths must be positive");
  if (c.n[0] < 0 || c.n[1] < 0 || c.d[0] < 0 || c.d[1] < 0)
    v.push_back("nonnegativity: windings and dilations must be nonnegative");
  if (c.d[0] == 0 && c.d[1] == 0)
    v.push_back("surjectivity: some loop must have positive dilation");
  if (!v.empty())
    return r;
  std::optional<Rat> l = c.target;
  const Rat len[2] = {cv.l_loop1, cv.l_loop2};
  for (int i = 0; i < 2 && !l; ++i)
    if (c.n[i] != 0)
      l = Rat(c.d[i]) * len[i] / Rat(c.n[i]);
  if (!l) {
    v.push_back("metric realizability: target length is underdetermined; supply target_length");
    return r;
  }
  if (*l <= 0)
    v.push_back("target length: l must be positive");
  for (int i = 0; i < 2; ++i)
    if (Rat(c.d[i]) * len[i] != Rat(c.n[i]) * *l)
      v.push_back("metric realizability: d" + std::to_string(i + 1) + "*l_loop" +
                  std::to_string(i + 1) + " = n" + std::to_string(i + 1) + "*l");
  if (v.empty())
    r.degree = c.n[0] * c.d[0] + c.n[1] * c.d[1];
  return r;
}

inline ValidationReport validate_cover(const GeneralCircleCover &c) {
  ValidationReport r;
  auto &v = r.violations;
  const auto &G = c.graph;
  const std::size_t E = G.edges().size();
  if (c.target_length <= 0)
    v.push_back("target length: l must be positive");
  if (c.dilations.size() != E || c.orientations.size() != E ||
      c.vertex_positions.size() != G.vertex_count()) {
    v.push_back("shape: one dilation and orientation per edge, one position per vertex");
    return r;
  }
  for (std::size_t e = 0; e < E; ++e) {
    if (c.dilations[e] < 0)
      v.push_back("nonnegativity: dilation of edge " + std::to_string(e) + " is negative");
    if (c.orientations[e] != 1 && c.orientations[e] != -1)
      v.push_back("orientation: edge " + std::to_string(e) + " must have orientation +1 or -1");
  }
  if (!v.empty())
    return r;
  for (std::size_t i = 0; i < c.vertex_positions.size(); ++i)
    if (c.vertex_positions[i] < 0 || c.vertex_positions[i] >= c.target_length)
      v.push_back("vertex position " + std::to_string(i) + " outside [0, l)");
  bool any = false;
  for (std::size_t e = 0; e < E; ++e) {
    const Edge &ed = G.edges()[e];
    any = any || c.dilations[e] != 0;
    Rat end = c.vertex_positions[ed.tail] + Rat(c.slope(e)) * ed.length;
    if (mod_positive(end - c.vertex_positions[ed.head], c.target_length) != 0)
      v.push_back("continuity: image of edge " + std::to_string(e) + " does not end at its head");
  }
  if (!any)
    v.push_back("surjectivity: some edge must have positive dilation");
  for (std::size_t x = 0; x < G.vertex_count(); ++x) {
    Int plus = 0, minus = 0;
    for (std::size_t e = 0; e < E; ++e) {
      const Edge &ed = G.edges()[e];
      Int s = c.slope(e);
      if (ed.tail == x)
        (s > 0 ? plus : minus) += abs(s);
      if (ed.head == x)
        (s > 0 ? minus : plus) += abs(s);
    }
    if (plus != minus)
      v.push_back("harmonicity: vertex " + std::to_string(x) + " is not balanced");
  }
  if (!v.empty())
    return r;
  Rat deg = 0;
  for (std::size_t e = 0; e < E; ++e)
    deg += Rat(c.dilations[e] * c.dilations[e]) * G.edges()[e].length;
  deg /= c.target_length;
  if (deg.get_den() != 1)
    v.push_back("degree: sum of d_e^2 l_e / l is not an integer");
  else
    r.degree = deg.get_num();
  return r;
}

template <class C> Int cover_degree(const C &c) {
  auto r = validate_cover(c);
  if (!r.valid())
    fail(ErrorCode::InvalidCover, r.violations.front());
  return *r.degree;
}

inline std::array<Rat, 2> theta_arcs(const ThetaCover &c) {
  if (c.arcs)
    return *c.arcs;
  std::vector<std::string> why;
  auto a = detail::derive_theta_arcs(c, why);
  require(a.has_value(), ErrorCode::InvalidCover, why.empty() ? "arcs" : why.front());
  return *a;
}

inline Rat target_length(const ThetaCover &c) {
  auto a = theta_arcs(c);
  return a[0] + a[1];
}

inline Rat target_length(const DumbbellCover &c) {
  if (c.target)
    return *c.target;
  for (int i = 0; i < 2; ++i)
    if (c.n[i] != 0)
      return Rat(c.d[i]) * (i ? c.curve.l_loop2 : c.curve.l_loop1) / Rat(c.n[i]);
  fail(ErrorCode::InvalidCover, "target length is underdetermined");
}

inline Rat target_length(const GeneralCircleCover &c) { return c.target_length; }

inline GeneralCircleCover to_general(const ThetaCover &c) {
  cover_degree(c);
  auto a = theta_arcs(c);
  Rat l = a[0] + a[1];
  return {c.curve.graph(), l, {Rat(0), mod_positive(a[0], l)},
          {c.d[0], c.d[1], c.d[2]}, {1, 1, 1}};
}

inline GeneralCircleCover to_general(const DumbbellCover &c) {
  cover_degree(c);
  return {c.curve.graph(), target_length(c), {Rat(0), Rat(0)}, {c.d[0], c.d[1], Int(0)}, {1, 1, 1}};
}

inline GeneralCircleCover to_general(const GeneralCircleCover &c) { return c; }

struct CurvePoint {
  enum Kind { Vertex, EdgeInterior } kind;
  std::size_t index;
};

inline Int ramification_index(const GeneralCircleCover &c, const CurvePoint &p) {
  cover_degree(c);
  const auto &G = c.graph;
  if (p.kind == CurvePoint::EdgeInterior) {
    require(p.index < G.edges().size(), ErrorCode::InvalidCover, "edge out of range");
    Int d = c.dilations[p.index];
    return 2 * d - 2 - 2 * (d - 1);
  }
  require(p.index < G.vertex_count(), ErrorCode::InvalidCover, "vertex out of range");
  Int local = 0, sum = 0;
  for (std::size_t e = 0; e < G.edges().size(); ++e) {
    const Edge &ed = G.edges()[e];
    Int s = c.slope(e);
    if (ed.tail == p.index) {
      sum += abs(s) - 1;
      if (s > 0)
        local += s;
    }
    if (ed.head == p.index) {
      sum += abs(s) - 1;
      if (s < 0)
        local += -s;
    }
  }
  return 2 * local - 2 - sum;
}

template <class C> Int ramification_index(const C &c, const CurvePoint &p) {
  return ramification_index(to_general(c), p);
}

} // namespace tropjac
