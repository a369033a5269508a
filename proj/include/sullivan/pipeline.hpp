#pragma once

// Batch pipeline behind the command-line tool: group -> graph -> algebra ->
// classification -> degree certificates, with deterministic JSON reports.
//
// Reports never contain timings or addresses, so identical inputs and budgets
// give byte-identical output. Every report embeds the budgets it ran under.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sullivan/automorphism.hpp"
#include "sullivan/classify.hpp"
#include "sullivan/cohomology.hpp"
#include "sullivan/ellipticity.hpp"
#include "sullivan/frucht.hpp"
#include "sullivan/mg.hpp"
#include "sullivan/perm_group.hpp"
#include "sullivan/serialize.hpp"
#include "sullivan/tilde.hpp"

namespace sullivan {

enum class OutputFormat { json, text };

struct PipelineConfig {
  Rational u1 = 0, u2 = 1;
  std::size_t monomial_budget = kDefaultMonomialBudget;
  std::size_t groebner_budget = kDefaultGroebnerBudget;
  std::size_t split_budget = kDefaultSplitBudget;
  std::size_t vertex_budget = kDefaultVertexBudget;
  std::size_t order_budget = kDefaultOrderBudget;
  OutputFormat format = OutputFormat::json;
  bool trace = false;
  std::uint64_t seed = 1;

  void validate() const {
    if (u1 == 0 && u2 == 0) throw TrivialVariant();
    if (monomial_budget == 0 || groebner_budget == 0 || split_budget == 0 || vertex_budget == 0 || order_budget == 0)
      throw ValidationError("budgets must be positive");
  }

  ClassifyOptions classify_options() const {
    ClassifyOptions o;
    o.solver.split_budget = split_budget;
    o.solver.groebner_budget = groebner_budget;
    o.seed = seed;
    o.budget = monomial_budget;
    return o;
  }

  Json budgets_json() const {
    return Json{{"monomial", monomial_budget}, {"groebner_pairs", groebner_budget}, {"splits", split_budget},
                {"vertices", vertex_budget},   {"group_order", order_budget}};
  }

  Json variant_json() const { return Json::array({to_string(u1), to_string(u2)}); }
};

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string artifact_hash(const Json& j) { return fnv1a_hex(j.dump()); }

// ---- pieces -----------------------------------------------------------------------

inline Json structure_json(const StructureReport& r) {
  return Json{{"homogeneous", r.homogeneous},     {"lower_degree", r.lower_degree},
              {"filtration", r.filtration},       {"d_squared_zero", r.d_squared_zero},
              {"minimal", r.minimal},             {"simply_connected", r.simply_connected},
              {"failures", r.failures}};
}

inline Json graph_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& [i, j] : g.edges()) edges.push_back(Json::array({g.label(i), g.label(j)}));
  return Json{{"vertices", g.labels()}, {"edges", edges}};
}

inline Json permutations_json(const Graph& g, const PermGroup& aut) {
  Json out = Json::array();
  std::vector<Permutation> els = aut.elements();
  std::sort(els.begin(), els.end());
  for (const auto& p : els) out.push_back(label_cycles(g, p));
  return out;
}

/// Images of the generators below degree 119; the upper images are fixed up
/// to exact terms and are summarized by a hash.
inline Json representative_json(const MGAlgebra& mg, const Morphism& f) {
  Json lower = Json::object();
  Json upper = Json::object();
  const auto& gs = mg.algebra->generators();
  for (std::size_t g = 0; g < gs.size(); ++g) {
    if (detail::is_lower(mg, g))
      lower[gs[g].name] = f.image(g).to_string();
    else
      upper[gs[g].name] = fnv1a_hex(f.image(g).to_string());
  }
  return Json{{"images", lower}, {"upper_image_hashes", upper}};
}

inline Json certificate_json(const DegreeCertificate& d) {
  Json a = Json::array();
  for (int v : d.a) a.push_back(v);
  Json j{{"class", d.class_name},
         {"a", a},
         {"tilde_degree", d.tilde_degree},
         {"reason", to_string(d.reason)},
         {"justification", d.justification}};
  return j;
}

// ---- build ------------------------------------------------------------------------

struct BuildResult {
  MGAlgebra mg;
  StructureReport structure;
  EllipticityCertificate certificate;
  long formal_dimension = 0;
  Json report;
  bool ok() const { return structure.ok() && structure.minimal && certificate.valid; }
};

inline BuildResult run_build(const Graph& g, const PipelineConfig& cfg) {
  cfg.validate();
  BuildResult r{build_mg(g, cfg.u1, cfg.u2), {}, {}, 0, {}};
  r.structure = check_structure(*r.mg);
  r.formal_dimension = formal_dimension(*r.mg);
  r.certificate = ellipticity_certificate(r.mg, cfg.groebner_budget, cfg.monomial_budget);
  Json alg = algebra_to_json(*r.mg);
  Json cert = certificate_to_json(r.certificate, r.formal_dimension);
  Json gj = graph_json(g);
  r.report = Json{{"command", "build"},
                  {"graph", gj},
                  {"variant", cfg.variant_json()},
                  {"budgets", cfg.budgets_json()},
                  {"structure", structure_json(r.structure)},
                  {"formal_dimension", r.formal_dimension},
                  {"algebra", alg},
                  {"certificate", cert},
                  {"hashes", {{"graph", artifact_hash(gj)}, {"algebra", artifact_hash(alg)}, {"certificate", artifact_hash(cert)}}},
                  {"ok", r.ok()}};
  return r;
}

// ---- aut --------------------------------------------------------------------------

inline Json run_aut(const Graph& g, const PipelineConfig& cfg) {
  auto aut = automorphism_group(g, cfg.vertex_budget, cfg.order_budget);
  Json gens = Json::array();
  for (const auto& p : aut.generators()) gens.push_back(label_cycles(g, p));
  Json gj = graph_json(g);
  return Json{{"command", "aut"},
              {"graph", gj},
              {"budgets", cfg.budgets_json()},
              {"order", aut.order()},
              {"generators", gens},
              {"permutations", permutations_json(g, aut)},
              {"hashes", {{"graph", artifact_hash(gj)}}}};
}

// ---- frucht -----------------------------------------------------------------------

inline Json group_json(const GroupSpec& spec) {
  Json gens = Json::array();
  for (const auto& p : spec.generators) gens.push_back(p.to_cycles());
  return Json{{"order", spec.group.order()}, {"degree", spec.group.degree()}, {"generators", gens}};
}

inline Json witness_json(const Graph& g, const PermGroup& group, const PermGroup& aut, const IsoResult& w) {
  Json out = Json::array();
  if (!w) return out;
  for (std::size_t i = 0; i < group.order(); ++i)
    out.push_back(Json::array({group.element(i).to_cycles(), label_cycles(g, aut.element(w.witness[i]))}));
  return out;
}

struct FruchtRun {
  FruchtResult result;
  Json report;
};

inline FruchtRun run_frucht(const GroupSpec& spec, const PipelineConfig& cfg) {
  (void)cfg;
  FruchtRun r{frucht_graph(spec.group, spec.generators), {}};
  Json gj = graph_json(r.result.graph);
  Json grp = group_json(spec);
  r.report = Json{{"command", "frucht"},
                  {"group", grp},
                  {"budgets", cfg.budgets_json()},
                  {"graph", gj},
                  {"graph_text", r.result.graph.to_text()},
                  {"automorphism_order", r.result.automorphisms.order()},
                  {"iso_witness", witness_json(r.result.graph, spec.group, r.result.automorphisms, r.result.witness)},
                  {"hashes", {{"group", artifact_hash(grp)}, {"graph", artifact_hash(gj)}}}};
  return r;
}

// ---- endos ------------------------------------------------------------------------

struct EndosRun {
  MGAlgebra mg;
  EndoClassification classification;
  EquivalenceGroup equivalence;
  std::vector<DegreeCertificate> degrees;
  Json report;

  bool inflexible() const { return is_inflexible(degrees); }
};

inline Json classification_json(const EndosRun& r, const PipelineConfig& cfg) {
  const auto& mg = r.mg;
  const auto& cls = r.classification;
  Json classes = Json::array();
  for (std::size_t i = 0; i < cls.classes.size(); ++i) {
    const auto& c = cls.classes[i];
    Json j{{"name", c.name}, {"kind", to_string(c.kind)}};
    if (c.sigma) j["sigma"] = label_cycles(mg.graph, *c.sigma);
    if (c.kind == EndoKind::constant) j["s"] = c.s;
    j["leaves"] = c.leaves;
    j["free_parameters"] = c.free_parameters;
    j["representative"] = representative_json(mg, c.representative);
    j["degree"] = certificate_json(r.degrees[i]);
    classes.push_back(std::move(j));
  }
  Json iso = Json::array();
  const auto& eq = r.equivalence;
  if (eq.witness)
    for (std::size_t i = 0; i < eq.group.order(); ++i) {
      // group element i acts as left multiplication by some class; find it through the identity column
      std::size_t id_pos = 0;
      for (std::size_t k = 0; k < eq.classes.size(); ++k)
        if (cls.classes[eq.classes[k]].sigma->is_identity()) id_pos = k;
      std::size_t cls_pos = eq.group.element(i)(static_cast<std::uint32_t>(id_pos));
      iso.push_back(Json::array({cls.classes[eq.classes[cls_pos]].name,
                                 label_cycles(mg.graph, eq.automorphisms.element(eq.witness.witness[i]))}));
    }
  Json degrees = Json::array();
  for (const auto& d : r.degrees) degrees.push_back(certificate_json(d));
  Json gj = graph_json(mg.graph);
  Json j{{"command", "endos"},
         {"graph", gj},
         {"variant", cfg.variant_json()},
         {"budgets", cfg.budgets_json()},
         {"class_count", cls.classes.size()},
         {"constant_classes", cls.count(EndoKind::constant)},
         {"automorphism_classes", cls.count(EndoKind::automorphism)},
         {"other_classes", cls.count(EndoKind::other)},
         {"classes", classes},
         {"group_order", eq.group.order()},
         {"automorphism_group_order", eq.automorphisms.order()},
         {"iso_witness", iso},
         {"composition_matches_graph", eq.sigma_homomorphism},
         {"inflexible", r.inflexible()},
         {"negative_degree", has_negative_degree(r.degrees)},
         {"degrees", degrees},
         {"case_tree_summary", cls.tree.summary_json()}};
  if (cfg.trace) j["case_tree"] = cls.tree.to_json();
  Json hashes{{"graph", artifact_hash(gj)},
              {"algebra", artifact_hash(algebra_to_json(*mg.algebra))},
              {"case_tree", artifact_hash(cls.tree.to_json())},
              {"classes", artifact_hash(classes)}};
  j["hashes"] = hashes;
  return j;
}

inline EndosRun run_endos(const Graph& g, const PipelineConfig& cfg) {
  cfg.validate();
  auto mg = build_mg(g, cfg.u1, cfg.u2);
  auto cls = classify_endos(mg, cfg.classify_options());
  auto eq = equivalence_group(mg, cls, cfg.monomial_budget);
  EndosRun r{std::move(mg), std::move(cls), std::move(eq), {}, {}};
  for (const auto& c : r.classification.classes) r.degrees.push_back(degree_certificate(r.mg, c, cfg.monomial_budget));
  r.report = classification_json(r, cfg);
  return r;
}

// ---- tilde ------------------------------------------------------------------------

/// Extension of M_G in its formal dimension 2n. A representative of the
/// fundamental class in degree 2n is out of reach, so the extension is built
/// on the closed decomposable element x = d(z*x1^k) of degree 2n; generator
/// degrees and minimality, hence the formal dimension 4n-1, only depend on the
/// degree of x. Degrees of the extended classes come from the certificates.
inline Json run_tilde_graph(const Graph& g, const PipelineConfig& cfg) {
  auto endos = run_endos(g, cfg);
  const auto& mg = endos.mg;
  long n2 = formal_dimension(*mg);
  long k = (n2 - 1 - 119) / 8;
  RElement w = RElement::generator(mg.algebra->universe(), static_cast<std::uint32_t>(mg.z())) *
               RElement::generator(mg.algebra->universe(), static_cast<std::uint32_t>(mg.x1()), static_cast<std::uint32_t>(k));
  RElement x = differentiate(*mg, w);
  auto te = tilde_extend(mg.algebra, x, w * x);
  Json degrees = Json::array();
  for (const auto& d : endos.degrees) degrees.push_back(certificate_json(d));
  Json j{{"command", "tilde"},
         {"graph", graph_json(mg.graph)},
         {"variant", cfg.variant_json()},
         {"budgets", cfg.budgets_json()},
         {"formal_dimension", n2},
         {"tilde_formal_dimension", formal_dimension(*te.extended)},
         {"tilde_minimal", te.minimal},
         {"extension_element", x.to_string().size() > 200 ? "d(" + w.to_string() + ")" : x.to_string()},
         {"class_count", endos.classification.classes.size()},
         {"degrees", degrees},
         {"inflexible", endos.inflexible()},
         {"negative_degree", has_negative_degree(endos.degrees)}};
  j["hashes"] = Json{{"algebra", artifact_hash(algebra_to_json(*mg.algebra))},
                     {"extended", artifact_hash(algebra_to_json(*te.extended))},
                     {"degrees", artifact_hash(degrees)}};
  return j;
}

/// Extension of a small algebra given as JSON, by a closed element x. The
/// witness for x^2 is found by exact linear algebra. An optional map given as
/// generator -> element text is extended to the new generator.
inline Json run_tilde_algebra(const AlgebraPtr& base, const std::string& x_text,
                              const std::optional<Json>& map, int max_degree, const PipelineConfig& cfg) {
  RElement x = parse_element(base->universe(), x_text);
  RElement zw = base->zero();
  RElement sq = x * x;
  if (!sq.is_zero()) {
    auto ans = solve_exactness(*base, sq, cfg.monomial_budget);
    if (!ans) throw ValidationError("x^2 is not exact: " + ans.reason);
    zw = ans.preimage;
  }
  auto te = tilde_extend(base, x, zw);
  if (max_degree < 0) max_degree = 2 * *x.degree() + 2;
  Json dims = Json::array();
  for (int k = 0; k <= max_degree; ++k) dims.push_back(cohomology_dim(*te.extended, k, cfg.monomial_budget));
  Json ext = algebra_to_json(*te.extended);
  Json j{{"command", "tilde"},
         {"budgets", cfg.budgets_json()},
         {"base", algebra_to_json(*base)},
         {"x", x.to_string()},
         {"z_witness", zw.to_string()},
         {"extended", ext},
         {"structure", structure_json(te.structure)},
         {"minimal", te.minimal},
         {"fundamental_representative", te.fundamental_rep.to_string()},
         {"cohomology_dimensions", dims}};
  if (te.minimal) j["formal_dimension"] = formal_dimension(*te.extended);
  if (map) {
    std::map<std::string, RElement> images;
    for (const auto& [name, text] : map->items()) {
      if (!text.is_string()) throw ParseError("map values must be element strings");
      images.emplace(name, parse_element(base->universe(), text.get<std::string>()));
    }
    Morphism f = Morphism::from_map(base, base, images);
    auto tf = extend_to_tilde(te, f, cfg.monomial_budget);
    auto top = top_scalar(te, tf.map, cfg.monomial_budget);
    Json m{{"scalar", to_string(tf.scalar)},
           {"y_image", tf.map.image(te.y_index).to_string()},
           {"top_scalar", top ? Json(to_string(*top)) : Json()}};
    j["map"] = m;
  }
  j["hashes"] = Json{{"extended", artifact_hash(ext)}};
  return j;
}

// ---- realize ----------------------------------------------------------------------

struct RealizeRun {
  Json report;
  bool ok = false;
  std::optional<Error> failure;
};

/// Runs the whole chain; a budget or certificate failure leaves the report
/// partial with the stage that stopped it.
inline RealizeRun run_realize(const GroupSpec& spec, const PipelineConfig& cfg) {
  cfg.validate();
  RealizeRun out;
  Json rep{{"command", "realize"}, {"variant", cfg.variant_json()}, {"budgets", cfg.budgets_json()}};
  Json grp = group_json(spec);
  rep["group"] = grp;
  Json hashes{{"group", artifact_hash(grp)}};
  std::string stage = "frucht";
  try {
    auto fr = frucht_graph(spec.group, spec.generators);
    Json gj = graph_json(fr.graph);
    rep["frucht"] = Json{{"graph", gj},
                         {"automorphism_order", fr.automorphisms.order()},
                         {"iso_witness", witness_json(fr.graph, spec.group, fr.automorphisms, fr.witness)}};
    hashes["graph"] = artifact_hash(gj);
    if (!fr.witness) throw InvariantViolation("Frucht graph automorphisms are not isomorphic to the group");

    stage = "build";
    auto b = run_build(fr.graph, cfg);
    rep["build"] = Json{{"formal_dimension", b.formal_dimension},
                        {"elliptic", b.certificate.valid},
                        {"structure_ok", b.structure.ok() && b.structure.minimal}};
    hashes["algebra"] = b.report["hashes"]["algebra"];
    hashes["certificate"] = b.report["hashes"]["certificate"];
    if (!b.ok()) throw InvariantViolation("algebra fails the structure or ellipticity checks");

    stage = "classify";
    auto e = run_endos(fr.graph, cfg);
    Json cj = e.report;
    cj.erase("command");
    cj.erase("graph");
    cj.erase("variant");
    cj.erase("budgets");
    hashes["case_tree"] = cj["hashes"]["case_tree"];
    hashes["classes"] = cj["hashes"]["classes"];
    cj.erase("hashes");
    rep["classification"] = cj;

    stage = "realization";
    auto iso = groups_isomorphic(spec.group, e.equivalence.group);
    Json w = Json::array();
    if (iso) {
      std::size_t id_pos = 0;
      const auto& eq = e.equivalence;
      for (std::size_t k = 0; k < eq.classes.size(); ++k)
        if (e.classification.classes[eq.classes[k]].sigma->is_identity()) id_pos = k;
      for (std::size_t i = 0; i < spec.group.order(); ++i) {
        std::size_t pos = eq.group.element(iso.witness[i])(static_cast<std::uint32_t>(id_pos));
        w.push_back(Json::array({spec.group.element(i).to_cycles(), e.classification.classes[eq.classes[pos]].name}));
      }
    }
    rep["equivalence_order"] = e.equivalence.group.order();
    rep["group_iso_equivalence"] = Json{{"isomorphic", iso.isomorphic}, {"witness", w}};
    rep["inflexible"] = e.inflexible();
    rep["negative_degree"] = has_negative_degree(e.degrees);
    out.ok = iso.isomorphic && e.inflexible();
    rep["status"] = out.ok ? "ok" : "failed";
    if (!out.ok) out.failure = InvariantViolation("realization chain did not close");
  } catch (const Error& err) {
    rep["status"] = "partial";
    rep["stopped_at"] = stage;
    rep["error"] = err.what();
    out.failure = err;
  }
  rep["hashes"] = hashes;
  out.report = std::move(rep);
  return out;
}

// ---- text form --------------------------------------------------------------------

/// Flat "key: value" rendering; arrays of scalars on one line, nested objects
/// indented. Large algebra and tree payloads are left to the JSON form.
inline void render_text(std::ostream& os, const Json& j, int indent = 0) {
  auto pad = std::string(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (const auto& [k, v] : j.items()) {
    if ((v.is_object() && v.contains("generators")) || k == "case_tree" || k == "graph_text") {
      os << pad << k << ": (json only)\n";
    } else if (v.is_object()) {
      os << pad << k << ":\n";
      render_text(os, v, indent + 2);
    } else if (v.is_array()) {
      bool flat = std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
      if (flat) {
        os << pad << k << ":";
        for (const auto& e : v) os << " " << scalar(e);
        os << "\n";
      } else {
        os << pad << k << ":\n";
        for (const auto& e : v) {
          if (e.is_object()) {
            os << pad << "  -\n";
            render_text(os, e, indent + 4);
          } else {
            os << pad << "  -";
            if (e.is_array())
              for (const auto& x : e) os << " " << (x.is_primitive() ? scalar(x) : x.dump());
            else
              os << " " << scalar(e);
            os << "\n";
          }
        }
      }
    } else {
      os << pad << k << ": " << scalar(v) << "\n";
    }
  }
}

inline std::string format_report(const Json& j, OutputFormat f) {
  if (f == OutputFormat::json) return j.dump(2) + "\n";
  std::ostringstream os;
  render_text(os, j);
  return os.str();
}

}  // namespace sullivan
