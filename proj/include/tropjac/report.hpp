#pragma once

// JSON encoding of cover documents and analysis reports. Rationals travel as
// "p/q" strings, integers as JSON integers (or decimal strings when they do
// not fit in 64 bits).

#include <json.hpp>

#include "split_jacobian.hpp"

namespace tropjac {

using json = nlohmann::json;

class DiagnosticError : public Error {
public:
  DiagnosticError(ErrorCode c, std::vector<std::string> items)
      : Error(c, join(items)), items_(std::move(items)) {}
  const std::vector<std::string> &items() const { return items_; }

private:
  static std::string join(const std::vector<std::string> &v) {
    std::string s;
    for (auto &x : v)
      s += (s.empty() ? "" : "; ") + x;
    return s;
  }
  std::vector<std::string> items_;
};

namespace io {

inline json int_json(const Int &v) {
  if (v.fits_slong_p())
    return json(v.get_si());
  return json(v.get_str());
}

inline Int json_int(const json &j, const std::string &what) {
  if (j.is_number_integer())
    return Int(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned())
    return Int(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    Int v;
    if (v.set_str(j.get<std::string>(), 10) == 0)
      return v;
  }
  fail(ErrorCode::ParseError, what + ": expected an integer");
}

inline json rat_json(const Rat &v) { return json(v.get_str()); }

inline Rat json_rat(const json &j, const std::string &what) {
  if (j.is_number_float())
    fail(ErrorCode::ParseError, what + ": floating-point literals are not accepted, use \"p/q\"");
  if (j.is_number_integer() || j.is_number_unsigned())
    return Rat(json_int(j, what));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error &) {
    }
  }
  fail(ErrorCode::ParseError, what + ": expected a rational \"p/q\"");
}

template <class T> json matrix_json(const Matrix<T> &m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<T, Int>)
        row.push_back(int_json(m(i, j)));
      else
        row.push_back(rat_json(m(i, j)));
    }
    a.push_back(row);
  }
  return a;
}

template <class T> Matrix<T> json_matrix(const json &j, const std::string &what) {
  if (!j.is_array())
    fail(ErrorCode::ParseError, what + ": expected a matrix");
  std::size_t r = j.size(), c = r ? j[0].size() : 0;
  Matrix<T> m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c)
      fail(ErrorCode::ParseError, what + ": ragged matrix");
    for (std::size_t k = 0; k < c; ++k) {
      if constexpr (std::is_same_v<T, Int>)
        m(i, k) = json_int(j[i][k], what);
      else
        m(i, k) = json_rat(j[i][k], what);
    }
  }
  return m;
}

inline json point_json(const RatVector &p) {
  json a = json::array();
  for (auto &x : p)
    a.push_back(rat_json(x));
  return a;
}

inline RatVector json_point(const json &j) {
  RatVector p;
  for (auto &x : j)
    p.push_back(json_rat(x, "point"));
  return p;
}

inline const json &field(const json &j, const char *key) {
  if (!j.is_object() || !j.contains(key))
    fail(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

template <std::size_t N, class F>
auto fixed_array(const json &j, const char *key, F conv) {
  const json &a = field(j, key);
  if (!a.is_array() || a.size() != N)
    fail(ErrorCode::ParseError, std::string("field '") + key + "' must have " + std::to_string(N) + " entries");
  std::array<decltype(conv(a[0], key)), N> out;
  for (std::size_t i = 0; i < N; ++i)
    out[i] = conv(a[i], key);
  return out;
}

} // namespace io

// --- cover documents -------------------------------------------------------

inline CoverData cover_from_json(const json &j) {
  using namespace io;
  if (!j.is_object())
    fail(ErrorCode::ParseError, "cover document must be a JSON object");
  const json &k = field(j, "kind");
  if (!k.is_string())
    fail(ErrorCode::ParseError, "field 'kind' must be a string");
  std::string kind = k.get<std::string>();
  auto rat = [](const json &x, const std::string &w) { return json_rat(x, w); };
  auto integer = [](const json &x, const std::string &w) { return json_int(x, w); };

  CoverData c;
  if (kind == "theta") {
    auto l = fixed_array<3>(j, "lengths", rat);
    ThetaCover t{{l[0], l[1], l[2]}, fixed_array<3>(j, "windings", integer),
                 fixed_array<3>(j, "dilations", integer), std::nullopt};
    if (j.contains("target_arcs"))
      t.arcs = fixed_array<2>(j, "target_arcs", rat);
    c = t;
  } else if (kind == "dumbbell") {
    auto l = fixed_array<3>(j, "lengths", rat);
    DumbbellCover d{{l[0], l[1], l[2]}, fixed_array<2>(j, "windings", integer),
                    fixed_array<2>(j, "dilations", integer), std::nullopt};
    if (j.contains("target_length"))
      d.target = json_rat(j.at("target_length"), "target_length");
    c = d;
  } else if (kind == "general_circle") {
    const json &edges = field(j, "edges");
    if (!edges.is_array())
      fail(ErrorCode::ParseError, "field 'edges' must be an array");
    std::vector<Edge> es;
    std::vector<std::string> bad;
    for (auto &e : edges) {
      if (!e.is_array() || e.size() != 3)
        fail(ErrorCode::ParseError, "each edge is [tail, head, \"length\"]");
      Int t = json_int(e[0], "edge tail"), h = json_int(e[1], "edge head");
      if (t < 0 || h < 0)
        fail(ErrorCode::ParseError, "edge endpoints must be nonnegative");
      es.push_back({t.get_ui(), h.get_ui(), json_rat(e[2], "edge length")});
    }
    Int nv = json_int(field(j, "vertices"), "vertices");
    if (nv < 1)
      fail(ErrorCode::ParseError, "vertices must be positive");
    std::optional<IntMatrix> basis;
    if (j.contains("cycle_basis"))
      basis = json_matrix<Int>(j.at("cycle_basis"), "cycle_basis");
    MetricGraph g;
    try {
      g = MetricGraph(nv.get_ui(), es, basis);
    } catch (const Error &e) {
      throw DiagnosticError(ErrorCode::ValidationError, {e.what()});
    }
    GeneralCircleCover gc{g, json_rat(field(j, "target_length"), "target_length"), {}, {}, {}};
    for (auto &x : field(j, "vertex_positions"))
      gc.vertex_positions.push_back(json_rat(x, "vertex_positions"));
    for (auto &x : field(j, "dilations"))
      gc.dilations.push_back(json_int(x, "dilations"));
    if (j.contains("orientations")) {
      for (auto &x : j.at("orientations"))
        gc.orientations.push_back(static_cast<int>(json_int(x, "orientations").get_si()));
    } else {
      gc.orientations.assign(gc.dilations.size(), 1);
    }
    c = gc;
  } else {
    fail(ErrorCode::ParseError, "unknown kind '" + kind + "'");
  }
  auto rep = validate_cover(c);
  if (!rep.valid())
    throw DiagnosticError(ErrorCode::ValidationError, rep.violations);
  return c;
}

inline CoverData parse_cover(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    fail(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
  return cover_from_json(j);
}

inline json cover_to_json(const CoverData &c) {
  using namespace io;
  json j;
  j["kind"] = cover_kind(c);
  if (auto *t = std::get_if<ThetaCover>(&c)) {
    j["lengths"] = {rat_json(t->curve.l_e), rat_json(t->curve.l_e1), rat_json(t->curve.l_e2)};
    j["windings"] = {int_json(t->n[0]), int_json(t->n[1]), int_json(t->n[2])};
    j["dilations"] = {int_json(t->d[0]), int_json(t->d[1]), int_json(t->d[2])};
    if (t->arcs)
      j["target_arcs"] = {rat_json((*t->arcs)[0]), rat_json((*t->arcs)[1])};
  } else if (auto *d = std::get_if<DumbbellCover>(&c)) {
    j["lengths"] = {rat_json(d->curve.l_loop1), rat_json(d->curve.l_loop2), rat_json(d->curve.l_bridge)};
    j["windings"] = {int_json(d->n[0]), int_json(d->n[1])};
    j["dilations"] = {int_json(d->d[0]), int_json(d->d[1])};
    if (d->target)
      j["target_length"] = rat_json(*d->target);
  } else {
    const auto &g = std::get<GeneralCircleCover>(c);
    j["vertices"] = g.graph.vertex_count();
    j["edges"] = json::array();
    for (auto &e : g.graph.edges())
      j["edges"].push_back({e.tail, e.head, rat_json(e.length)});
    j["cycle_basis"] = matrix_json(g.graph.cycle_basis());
    j["target_length"] = rat_json(g.target_length);
    j["vertex_positions"] = json::array();
    for (auto &p : g.vertex_positions)
      j["vertex_positions"].push_back(rat_json(p));
    j["dilations"] = json::array();
    for (auto &x : g.dilations)
      j["dilations"].push_back(int_json(x));
    j["orientations"] = g.orientations;
  }
  return j;
}

// --- reports ---------------------------------------------------------------

struct MorphismMatrices {
  IntMatrix f_sharp, f_hash;
  friend bool operator==(const MorphismMatrices &, const MorphismMatrices &) = default;
};

struct ComplementReport {
  Rat target_length;
  std::vector<Rat> vertex_positions;
  std::vector<Int> dilations;
  std::vector<int> orientations;
  Int degree;
  friend bool operator==(const ComplementReport &, const ComplementReport &) = default;
};

struct AnalysisReport {
  std::string kind;
  std::vector<std::string> violations;
  Int degree;
  RatMatrix period_matrix;
  MorphismMatrices pushforward, pullback;
  std::optional<Rat> kernel_length;
  GammaData gamma;
  Int component_count;
  OptimalityVerdict optimality;
  std::vector<TorsionDivisor> pullback_kernel;
  std::optional<SplitReport> split;
  friend bool operator==(const AnalysisReport &, const AnalysisReport &) = default;
};

inline json to_json_value(const MorphismMatrices &m) {
  return {{"f_sharp", io::matrix_json(m.f_sharp)},
          {"f_hash", io::matrix_json(m.f_hash)},
          {"universal_matrix", io::matrix_json(m.f_sharp.transpose())}};
}

inline MorphismMatrices morphism_from_json(const json &j) {
  return {io::json_matrix<Int>(io::field(j, "f_sharp"), "f_sharp"),
          io::json_matrix<Int>(io::field(j, "f_hash"), "f_hash")};
}

inline json to_json_value(const GammaData &g) {
  return {{"l_tilde", io::rat_json(g.l_tilde)},
          {"a_sharp", io::int_json(g.a_sharp)},
          {"a_hash", io::rat_json(g.a_hash)}};
}

inline GammaData gamma_from_json(const json &j) {
  return {io::json_rat(io::field(j, "l_tilde"), "l_tilde"), io::json_int(io::field(j, "a_sharp"), "a_sharp"),
          io::json_rat(io::field(j, "a_hash"), "a_hash")};
}

inline json to_json_value(const OptimalityVerdict &v) {
  json j{{"kernel_connected", v.kernel_connected},
         {"component_count", io::int_json(v.component_count)},
         {"dumbbell_gcd_free", v.dumbbell_gcd_free ? json(*v.dumbbell_gcd_free) : json(nullptr)}};
  if (!v.note.empty())
    j["note"] = v.note;
  return j;
}

inline OptimalityVerdict verdict_from_json(const json &j) {
  OptimalityVerdict v;
  v.kernel_connected = io::field(j, "kernel_connected").get<bool>();
  v.component_count = io::json_int(io::field(j, "component_count"), "component_count");
  const json &g = io::field(j, "dumbbell_gcd_free");
  if (!g.is_null())
    v.dumbbell_gcd_free = g.get<bool>();
  if (j.contains("note"))
    v.note = j.at("note").get<std::string>();
  return v;
}

inline json to_json_value(const std::vector<TorsionDivisor> &ds) {
  json a = json::array();
  for (auto &d : ds)
    a.push_back({{"position", io::rat_json(d.position)}, {"order", io::int_json(d.order)}});
  return a;
}

inline std::vector<TorsionDivisor> divisors_from_json(const json &j) {
  std::vector<TorsionDivisor> v;
  for (auto &x : j)
    v.push_back({io::json_rat(io::field(x, "position"), "position"), io::json_int(io::field(x, "order"), "order")});
  return v;
}

inline json to_json_value(const SplitReport &r) {
  json pts = json::array();
  for (auto &p : r.kernel_points)
    pts.push_back(io::point_json(p));
  return {{"phi", io::matrix_json(r.phi)},
          {"phi_tilde", io::matrix_json(r.phi_tilde)},
          {"kernel_points", pts},
          {"kernel_size", r.kernel_points.size()},
          {"degree", io::int_json(r.degree)},
          {"flags",
           {{"kernel_matches_d_torsion_TE", r.kernel_matches_d_torsion_TE},
            {"kernel_matches_d_torsion_TEprime", r.kernel_matches_d_torsion_TEprime},
            {"composite_is_mult_d", r.composite_is_mult_d},
            {"polarization_pullback_is_d_times_principal", r.polarization_pullback_is_d_times_principal},
            {"sequence_inclusion_pushforward_exact", r.sequence_inclusion_pushforward_exact},
            {"sequence_pullback_projection_exact", r.sequence_pullback_projection_exact}}}};
}

inline SplitReport split_from_json(const json &j) {
  SplitReport r;
  r.phi = io::json_matrix<Int>(io::field(j, "phi"), "phi");
  r.phi_tilde = io::json_matrix<Int>(io::field(j, "phi_tilde"), "phi_tilde");
  for (auto &p : io::field(j, "kernel_points"))
    r.kernel_points.push_back(io::json_point(p));
  r.degree = io::json_int(io::field(j, "degree"), "degree");
  const json &f = io::field(j, "flags");
  r.kernel_matches_d_torsion_TE = io::field(f, "kernel_matches_d_torsion_TE").get<bool>();
  r.kernel_matches_d_torsion_TEprime = io::field(f, "kernel_matches_d_torsion_TEprime").get<bool>();
  r.composite_is_mult_d = io::field(f, "composite_is_mult_d").get<bool>();
  r.polarization_pullback_is_d_times_principal =
      io::field(f, "polarization_pullback_is_d_times_principal").get<bool>();
  r.sequence_inclusion_pushforward_exact = io::field(f, "sequence_inclusion_pushforward_exact").get<bool>();
  r.sequence_pullback_projection_exact = io::field(f, "sequence_pullback_projection_exact").get<bool>();
  return r;
}

inline ComplementReport complement_report(const ComplementaryCover &c) {
  return {c.target_length, c.cover.vertex_positions, c.dilations, c.orientations, c.degree};
}

inline json to_json_value(const ComplementReport &c) {
  json pos = json::array(), dil = json::array();
  for (auto &p : c.vertex_positions)
    pos.push_back(io::rat_json(p));
  for (auto &d : c.dilations)
    dil.push_back(io::int_json(d));
  return {{"target_length", io::rat_json(c.target_length)},
          {"vertex_positions", pos},
          {"dilations", dil},
          {"orientations", c.orientations},
          {"degree", io::int_json(c.degree)}};
}

inline ComplementReport complement_from_json(const json &j) {
  ComplementReport c;
  c.target_length = io::json_rat(io::field(j, "target_length"), "target_length");
  for (auto &p : io::field(j, "vertex_positions"))
    c.vertex_positions.push_back(io::json_rat(p, "vertex_positions"));
  for (auto &d : io::field(j, "dilations"))
    c.dilations.push_back(io::json_int(d, "dilations"));
  c.orientations = io::field(j, "orientations").get<std::vector<int>>();
  c.degree = io::json_int(io::field(j, "degree"), "degree");
  return c;
}

inline json to_json_value(const AnalysisReport &r) {
  json j{{"kind", r.kind},
         {"validation", {{"valid", r.violations.empty()}, {"violations", r.violations}}},
         {"degree", io::int_json(r.degree)},
         {"period_matrix", io::matrix_json(r.period_matrix)},
         {"pushforward", to_json_value(r.pushforward)},
         {"pullback", to_json_value(r.pullback)},
         {"kernel_length", r.kernel_length ? io::rat_json(*r.kernel_length) : json(nullptr)},
         {"gamma", to_json_value(r.gamma)},
         {"component_count", io::int_json(r.component_count)},
         {"optimality", to_json_value(r.optimality)},
         {"pullback_kernel", to_json_value(r.pullback_kernel)}};
  if (r.split)
    j["split"] = to_json_value(*r.split);
  return j;
}

inline AnalysisReport analysis_from_json(const json &j) {
  AnalysisReport r;
  r.kind = io::field(j, "kind").get<std::string>();
  r.violations = io::field(io::field(j, "validation"), "violations").get<std::vector<std::string>>();
  r.degree = io::json_int(io::field(j, "degree"), "degree");
  r.period_matrix = io::json_matrix<Rat>(io::field(j, "period_matrix"), "period_matrix");
  r.pushforward = morphism_from_json(io::field(j, "pushforward"));
  r.pullback = morphism_from_json(io::field(j, "pullback"));
  if (!io::field(j, "kernel_length").is_null())
    r.kernel_length = io::json_rat(j.at("kernel_length"), "kernel_length");
  r.gamma = gamma_from_json(io::field(j, "gamma"));
  r.component_count = io::json_int(io::field(j, "component_count"), "component_count");
  r.optimality = verdict_from_json(io::field(j, "optimality"));
  r.pullback_kernel = divisors_from_json(io::field(j, "pullback_kernel"));
  if (j.contains("split"))
    r.split = split_from_json(j.at("split"));
  return r;
}

inline AnalysisReport analyze(const CoverData &c, bool with_split) {
  AnalysisReport r;
  r.kind = cover_kind(c);
  r.violations = validate_cover(c).violations;
  r.degree = cover_degree(c);
  MetricGraph g = source_graph(c);
  r.period_matrix = g.period_matrix();
  TorusMorphism push = pushforward_morphism(c), pull = pullback_morphism(c);
  r.pushforward = {push.f_sharp(), push.f_hash()};
  r.pullback = {pull.f_sharp(), pull.f_hash()};
  if (g.genus() == 2)
    r.kernel_length = kernel_length(c);
  r.gamma = quotient_and_gamma(c);
  r.component_count = std::visit([](const auto &x) { return component_count(x); }, c);
  r.optimality = is_optimal(c);
  r.pullback_kernel = pullback_kernel(c);
  if (with_split && g.genus() == 2 && r.optimality.kernel_connected && dilation_gcd(c) == 1)
    r.split = verify_split_package(c);
  return r;
}

} // namespace tropjac
