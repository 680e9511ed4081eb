// Command-line front end: one subcommand per operation, JSON reports.
//
// Exit codes: 0 pass, 1 verified violation or negative verdict, 2 input error.

#include "cubex/actions.hpp"
#include "cubex/artin.hpp"
#include "cubex/continuity.hpp"
#include "cubex/errors.hpp"
#include "cubex/families.hpp"
#include "cubex/io.hpp"
#include "cubex/weights.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using Json = nlohmann::ordered_json;
using namespace cubex;

constexpr const char* kSchema = "cubical-exactness/1";

enum Exit : int { kPass = 0, kViolation = 1, kInputError = 2 };

struct Outcome {
  int code = kPass;
  Json findings = Json::array();
  Json result = Json::object();
};

struct Loaded {
  CubeComplex complex;
  std::optional<FamilySpec> family;
};

std::optional<FamilySpec> parse_complex_spec(const std::string& text) {
  const bool plain_file = text.find(':') == std::string::npos && text.find('(') == std::string::npos &&
                          text.size() > 5 && text.substr(text.size() - 5) == ".json";
  return FamilySpec::parse(plain_file ? "file:" + text : text);
}

Loaded load_complex(const std::string& text, const std::optional<std::size_t>& ambient) {
  FamilySpec spec = *parse_complex_spec(text);
  CubeComplex c = build_family(spec);
  if (ambient) {
    c = c.with_ambient_dimension(*ambient);
  }
  std::optional<FamilySpec> family;
  if (spec.kind != FamilyKind::Explicit) {
    family = spec;
  }
  return {std::move(c), family};
}

std::string strip_file_prefix(const std::string& path) {
  return path.rfind("file:", 0) == 0 ? path.substr(5) : path;
}

std::vector<NamedPermutation> load_generators(const Loaded& in, const std::string& action) {
  if (action == "builtin") {
    if (!in.family) {
      throw InputError("--action builtin needs a family complex");
    }
    return standard_symmetries(*in.family);
  }
  return load_action_file(strip_file_prefix(action), in.complex);
}

Json signs_json(const CubeComplex& c, const SignVector& z) {
  Json a = Json::array();
  for (std::size_t h = 0; h < c.hyperplane_count(); ++h) {
    a.push_back(to_int(z[HyperplaneId(h)]));
  }
  return a;
}

Json point_json(const CubeComplex& c, const SignVector& z) {
  if (auto v = c.find(z)) {
    return c.vertex_name(*v);
  }
  return signs_json(c, z);
}

Json finding_json(const Finding& f) {
  return Json{{"kind", f.kind}, {"message", f.message}, {"witness", f.witness}};
}

void add_findings(Outcome& out, const VerificationReport& r) {
  for (const auto& f : r.violations) {
    out.findings.push_back(finding_json(f));
  }
  if (!r.ok()) {
    out.code = kViolation;
  }
}

Json names_json(const CubeComplex& c, const std::vector<VertexId>& vs) {
  Json a = Json::array();
  for (VertexId v : vs) {
    a.push_back(c.vertex_name(v));
  }
  return a;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

// --- subcommands ----------------------------------------------------------

struct Globals {
  std::string out;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
};

struct ValidateArgs {
  std::string complex;
  std::size_t exhaustive = 300;
  std::size_t samples = 200000;
};

Outcome run_validate(const ValidateArgs& a, const Globals& g) {
  Loaded in = load_complex(a.complex, std::nullopt);
  const CubeComplex& c = in.complex;
  ValidationOptions opts{a.exhaustive, a.samples, g.seed};
  const auto report = validate_complex(c, opts);
  Outcome out;
  add_findings(out, report);
  out.result = {{"vertices", c.vertex_count()},
                {"hyperplanes", c.hyperplane_count()},
                {"N", c.ambient_dimension()},
                {"dimension_estimate", dimension_estimate(c)},
                {"checks", report.checks},
                {"valid", report.ok()}};
  return out;
}

struct MedianArgs {
  std::string complex, x, y, z;
};

Outcome run_median(const MedianArgs& a, const Globals&) {
  Loaded in = load_complex(a.complex, std::nullopt);
  const CubeComplex& c = in.complex;
  const VertexId x = c.vertex(a.x), y = c.vertex(a.y), z = c.vertex(a.z);
  const SignVector m = median(c.signs(x), c.signs(y), c.signs(z));
  Outcome out;
  const bool in_all = interval_membership(m, c.signs(x), c.signs(y)) &&
                      interval_membership(m, c.signs(y), c.signs(z)) &&
                      interval_membership(m, c.signs(x), c.signs(z));
  const bool original = c.find(m).has_value();
  out.result = {{"median", point_json(c, m)},
                {"original", original},
                {"in_all_intervals", in_all},
                {"distances", {{"xy", distance(c, x, y)}, {"yz", distance(c, y, z)}, {"xz", distance(c, x, z)}}}};
  if (!in_all || !original) {
    out.code = kViolation;
    out.findings.push_back({{"kind", "median"}, {"message", "median is not an original vertex in all three intervals"},
                            {"witness", {a.x, a.y, a.z}}});
  }
  return out;
}

struct WeightsArgs {
  std::string complex, source, target;
  std::size_t n = 0;
  std::optional<std::size_t> N;
  bool normalized = false;
};

SignVector resolve_target(const Loaded& in, const std::string& target) {
  if (target.rfind("ideal:", 0) == 0) {
    if (!in.family) {
      throw InputError("ideal targets need a family complex");
    }
    const std::string label = target.substr(6);
    for (const auto& p : ideal_points(*in.family)) {
      if (p.label == label) {
        return p.restriction;
      }
    }
    throw InputError("unknown ideal point " + label);
  }
  return in.complex.signs(in.complex.vertex(target));
}

Outcome run_weights(const WeightsArgs& a, const Globals&) {
  Loaded in = load_complex(a.complex, a.N);
  const CubeComplex& c = in.complex;
  const VertexId x = c.vertex(a.source);
  const SignVector z = resolve_target(in, a.target);
  const WeightVector w = weight_vector(c, a.n, x, z);
  const std::size_t big_n = c.ambient_dimension();
  const BigInt expected = binomial(static_cast<long>(a.n + big_n), static_cast<long>(big_n));

  Outcome out;
  Json values = Json::object();
  for (const auto& [v, value] : w.values) {
    values[c.vertex_name(v)] = to_string(value);
  }
  bool support_ok = true;
  for (const auto& [v, value] : w.values) {
    support_ok = support_ok && value > 0 && distance(c, x, v) <= a.n &&
                 interval_membership(c.signs(v), c.signs(x), z);
  }
  Json checks = Json::array();
  checks.push_back({{"name", "mass"}, {"expected", to_string(expected)}, {"actual", to_string(w.mass())},
                    {"ok", w.mass() == expected}});
  checks.push_back({{"name", "support"}, {"ok", support_ok}});
  out.result = {{"n", a.n}, {"N", big_n}, {"source", a.source}, {"target", a.target},
                {"values", values}, {"mass", to_string(w.mass())}, {"checks", checks}};
  if (a.normalized) {
    Json norm = Json::object();
    const auto measure = w.normalized();
    for (const auto& [v, m] : measure.masses()) {
      norm[c.vertex_name(v)] = to_string(m);
    }
    out.result["normalized"] = norm;
  }
  for (const auto& ch : checks) {
    if (!ch["ok"].get<bool>()) {
      out.code = kViolation;
      out.findings.push_back({{"kind", ch["name"]}, {"message", "weight identity failed"}, {"witness", Json::array()}});
    }
  }
  return out;
}

struct VerifyArgs {
  std::string complex, action;
  std::size_t max_n = 0;
  std::optional<std::size_t> N;
};

Outcome run_verify(const VerifyArgs& a, const Globals& g) {
  Loaded in = load_complex(a.complex, a.N);
  const CubeComplex& c = in.complex;
  WeightCheckOptions opts;
  opts.jobs = g.jobs;
  if (!a.action.empty()) {
    ActionOptions ao;
    ao.seed = g.seed;
    const GroupAction act = GroupAction::create(c, load_generators(in, a.action), ao);
    for (std::size_t i = 0; i < act.generator_count(); ++i) {
      opts.automorphisms.push_back(act.generator_automorphism(i));
    }
  }
  const auto report = verify_weight_identities(c, a.max_n, opts);
  Outcome out;
  add_findings(out, report);
  out.result = {{"max_n", a.max_n},
                {"N", c.ambient_dimension()},
                {"vertices", c.vertex_count()},
                {"automorphisms", opts.automorphisms.size()},
                {"checks", report.checks},
                {"violations", report.violations.size()}};
  return out;
}

struct ContinuityArgs {
  std::string family, x, a;
  std::optional<std::string> z;
  std::size_t n = 0;
  std::size_t witness = 0;
};

Outcome run_continuity(const ContinuityArgs& args, const Globals&) {
  Loaded in = load_complex(args.family, std::nullopt);
  const CubeComplex& c = in.complex;
  std::optional<FamilyAnnotations> ann;
  if (in.family) {
    ann = annotate_family(*in.family);
  }
  const FamilyAnnotations* annp = ann ? &*ann : nullptr;
  const PhiQuery q{c.vertex(args.x), c.vertex(args.a), args.n};
  const auto probe = probe_points(c, annp);

  Outcome out;
  auto labels = [&](const std::vector<std::size_t>& idx) {
    Json a = Json::array();
    for (std::size_t i : idx) {
      a.push_back(probe[i].label);
    }
    return a;
  };
  const ZeroSet zs = zero_set(c, q.x, q.a, probe);
  const LevelSetPartition ls = level_sets(c, q, probe);

  Json partition = Json::object();
  for (const auto& [value, idx] : ls.cells) {
    partition[to_string(value)] = labels(idx);
  }
  Json superlevel = Json::array();
  for (const auto& s : ls.superlevel) {
    superlevel.push_back({{"k", s.k}, {"threshold", to_string(s.threshold)}, {"set", labels(s.direct)},
                          {"evaluated", s.evaluated}, {"agree", s.agree}});
  }
  Json classification = Json::array();
  for (const auto& p : probe) {
    const auto v = continuity_classify(c, q, p, annp);
    classification.push_back({{"point", p.label}, {"value", to_string(phi(c, q, p.z))},
                              {"verdict", to_string(v.verdict)}, {"rule", v.rule}});
  }
  const long big_a = static_cast<long>(args.n) - static_cast<long>(distance(c, q.x, q.a));
  out.result = {{"n", args.n},
                {"N", c.ambient_dimension()},
                {"A", big_a},
                {"zero_set", {{"points", labels(zs.direct)}, {"half_space_formula_agrees", zs.agree}}},
                {"partition", partition},
                {"values_predicted", ls.values_predicted},
                {"half_space_formula_agrees", ls.formula_agrees},
                {"superlevel", superlevel},
                {"classification", classification}};

  const auto open = singleton_openness(c, q.a, annp);
  Json cert = Json::array();
  for (const auto& [h, s] : open.certificate) {
    cert.push_back({{"hyperplane", c.hyperplane_name(h)}, {"side", to_int(s)}});
  }
  out.result["singleton_openness"] = {{"vertex", args.a}, {"open", open.open}, {"certificate", cert},
                                      {"verified", open.verified}};

  bool ok = zs.agree && ls.ok() && (!open.open || open.verified);
  if (args.witness > 0) {
    const std::string zl = args.z.value_or(args.a);
    auto it = std::find_if(probe.begin(), probe.end(), [&](const ProbePoint& p) { return p.label == zl; });
    if (it == probe.end()) {
      throw InputError("unknown probe point " + zl);
    }
    const auto w = discontinuity_witness(c, q, *it, annp, args.witness);
    if (w) {
      Json steps = Json::array();
      for (const auto& s : w->steps) {
        steps.push_back({{"m", c.vertex_name(s.m_vertex)}, {"H", c.hyperplane_name(s.h)},
                         {"m_prime", c.vertex_name(s.m_prime)}, {"delta_m", s.delta_m},
                         {"delta_m_prime", s.delta_m_prime}, {"phi_m_prime", to_string(s.phi_m_prime)}});
      }
      out.result["witness"] = {{"point", w->point}, {"phi", to_string(phi(c, q, it->z))}, {"steps", steps},
                               {"partial", w->partial}, {"perturbation_ok", w->perturbation_ok}};
      ok = ok && w->perturbation_ok;
    } else {
      out.result["witness"] = nullptr;
    }
  }
  if (!ok) {
    out.code = kViolation;
    out.findings.push_back({{"kind", "level-set"}, {"message", "a level-set identity failed"},
                            {"witness", {args.x, args.a}}});
  }
  return out;
}

struct PropertyAArgs {
  std::string complex, action = "builtin", epsilon = "1", gen_set, nu = "uniform";
  std::optional<std::string> origin;
  std::size_t n = 0;
};

StabilizerMeasures parse_nu_entry(const Json& j, const std::map<std::string, GroupElement>& by_word) {
  auto elem = [&](const std::string& w) {
    auto it = by_word.find(w);
    if (it == by_word.end()) {
      throw InputError("unknown group element " + w);
    }
    return it->second;
  };
  if (j.is_string() && j.get<std::string>() == "uniform") {
    return StabilizerMeasures::make_uniform();
  }
  if (!j.is_object()) {
    throw InputError("stabilizer measures must be \"uniform\" or an object");
  }
  StabilizerMeasures m;
  m.uniform = false;
  for (const auto& [h, meas] : j.items()) {
    Measure<GroupElement> mu;
    for (const auto& [k, mass] : meas.items()) {
      mu.add(elem(k), parse_rational(mass.get<std::string>()));
    }
    m.values.emplace(elem(h), std::move(mu));
  }
  return m;
}

Outcome run_property_a(const PropertyAArgs& a, const Globals& g) {
  Loaded in = load_complex(a.complex, std::nullopt);
  const CubeComplex& c = in.complex;
  ActionOptions ao;
  ao.seed = g.seed;
  const GroupAction act = GroupAction::create(c, load_generators(in, a.action), ao);
  const OrbitData orbits = orbit_transversal(act);

  CertificateInput input;
  input.n = a.n;
  input.epsilon = parse_rational(a.epsilon);
  if (input.epsilon <= 0) {
    throw InputError("--epsilon must be positive");
  }
  input.origin = a.origin ? c.vertex(*a.origin) : c.base();
  std::vector<std::string> gens = split_list(a.gen_set);
  if (gens.empty()) {
    for (std::size_t i = 0; i < act.generator_count(); ++i) {
      gens.push_back(act.generator_name(i));
    }
  }
  input.E = symmetric_set(act, gens);
  if (a.nu == "uniform") {
    input.default_nu = StabilizerMeasures::make_uniform();
  } else {
    std::map<std::string, GroupElement> by_word;
    for (std::size_t e = 0; e < act.order(); ++e) {
      by_word.emplace(act.word(GroupElement(e)), GroupElement(e));
    }
    const Json doc = Json::parse(read_text_file(strip_file_prefix(a.nu)));
    for (const auto& [t, entry] : doc.items()) {
      input.nu.emplace(c.vertex(t), parse_nu_entry(entry, by_word));
    }
  }

  const Certificate cert = build_mu(c, act, orbits, input);
  const CertificateVerification ver = verify_mu(act, cert, input);
  const VerificationReport cosets = verify_coset_identities(act, orbits);
  const VerificationReport sigma = verify_sigma_equivariance(act, orbits);

  Outcome out;
  add_findings(out, ver.report);
  add_findings(out, cosets);
  add_findings(out, sigma);

  auto words = [&](const std::vector<GroupElement>& es) {
    Json arr = Json::array();
    for (GroupElement e : es) {
      arr.push_back(act.word(e));
    }
    return arr;
  };
  Json per_s = Json::array();
  for (const auto& row : ver.per_s) {
    per_s.push_back({{"s", act.word(row.s)}, {"dev", to_string(row.dev)}, {"eps_eta", to_string(row.eps_eta)},
                     {"bound_holds", row.bound_holds}});
  }
  Json per_t = Json::array();
  for (const auto& tc : cert.per_t) {
    per_t.push_back({{"t", c.vertex_name(tc.t)},
                     {"stabilizer_order", orbits.per_t[tc.position].stabilizer.size()},
                     {"Z_F", words(tc.z_f)}, {"F_t", words(tc.f_t)}, {"E_t", words(tc.e_t)}});
  }
  Json mu = Json::object();
  for (std::size_t x = 0; x < cert.mu.size(); ++x) {
    Json m = Json::object();
    for (const auto& [k, mass] : cert.mu[x].masses()) {
      m[act.word(k)] = to_string(mass);
    }
    mu[act.word(GroupElement(x))] = m;
  }
  Json transversal = Json::array();
  for (VertexId t : orbits.transversal) {
    transversal.push_back(c.vertex_name(t));
  }
  out.result = {{"group_order", act.order()},
                {"n", a.n},
                {"epsilon", to_string(input.epsilon)},
                {"origin", c.vertex_name(input.origin)},
                {"E", words(input.E)},
                {"transversal", transversal},
                {"F", names_json(c, cert.F)},
                {"T_F", per_t},
                {"support_bound_size", cert.support_bound.size()},
                {"support_size", cert.support.size()},
                {"per_generator", per_s},
                {"eps_nu", to_string(ver.eps_nu)},
                {"max_dev", to_string(ver.max_dev)},
                {"bounds_hold", ver.bounds_hold},
                {"below_epsilon", ver.below_epsilon},
                {"coset_checks", cosets.checks},
                {"sigma_checks", sigma.checks},
                {"mu", mu}};
  if (!ver.below_epsilon) {
    out.code = kViolation;
    out.findings.push_back({{"kind", "epsilon"},
                            {"message", "max deviation " + to_string(ver.max_dev) + " is not below " +
                                            to_string(input.epsilon)},
                            {"witness", Json::array()}});
  }
  return out;
}

Json spherical_json(const SphericalResult& s) {
  Json comps = Json::array();
  for (const auto& comp : s.components) {
    comps.push_back({{"type", comp.type}, {"generators", comp.generators}, {"order", to_string(comp.order)}});
  }
  Json j = {{"spherical", s.spherical}};
  if (s.spherical) {
    j["type"] = s.decomposition();
    j["order"] = to_string(s.order);
    j["components"] = comps;
  } else {
    j["reason"] = s.reason;
  }
  return j;
}

Json fc_json(const FCVerdict& v) {
  Json cliques = Json::array();
  for (const auto& rec : v.cliques) {
    Json r = spherical_json(rec.classification);
    r["clique"] = rec.clique;
    cliques.push_back(r);
  }
  Json j = {{"is_fc", v.is_fc}, {"witness", v.witness ? Json(*v.witness) : Json(nullptr)}, {"cliques", cliques}};
  return j;
}

Outcome run_artin_fc(const std::string& matrix, const Globals&) {
  const CoxeterMatrix m = load_coxeter_file(strip_file_prefix(matrix));
  Outcome out;
  try {
    const FCVerdict v = fc_check(m);
    out.result = fc_json(v);
    if (!v.is_fc) {
      out.code = kViolation;
      out.findings.push_back({{"kind", "not-fc"}, {"message", "a maximal clique is not spherical"},
                              {"witness", *v.witness}});
    }
  } catch (const CliqueCapacityError& e) {
    out.result = fc_json(e.partial());
    out.result["complete"] = false;
    throw;
  }
  return out;
}

Outcome run_artin_report(const std::string& matrix, const Globals&) {
  const CoxeterMatrix m = load_coxeter_file(strip_file_prefix(matrix));
  const ExactnessReport r = exactness_report(m);
  Outcome out;
  out.result = {{"verdict", r.verdict},
                {"exact", r.exact},
                {"stabilizer_types", r.stabilizer_types},
                {"witness", r.witness ? Json(*r.witness) : Json(nullptr)},
                {"fc", fc_json(r.fc)}};
  if (!r.exact) {
    out.code = kViolation;
    out.findings.push_back({{"kind", "inapplicable"}, {"message", "not of type FC"}, {"witness", *r.witness}});
  }
  return out;
}

struct TruncateArgs {
  std::string family;
};

Outcome run_family_truncate(const TruncateArgs& a, const Globals&) {
  Loaded in = load_complex(a.family, std::nullopt);
  const CubeComplex& c = in.complex;
  Outcome out;
  out.result = {{"family", in.family ? in.family->to_string() : a.family},
                {"complex", Json::parse(complex_to_json(c, -1))}};
  const auto report = validate_complex(c);
  add_findings(out, report);
  if (in.family && (in.family->kind == FamilyKind::Grid || in.family->kind == FamilyKind::Star ||
                    in.family->kind == FamilyKind::Tree)) {
    const QuadrantTable table(c);
    Json pts = Json::array();
    for (const auto& p : ideal_points(*in.family)) {
      Json boundary = Json::object();
      for (const auto& [h, s] : p.boundary) {
        boundary[h] = to_int(s);
      }
      const bool admissible = is_admissible(table, p.restriction);
      pts.push_back({{"label", p.label}, {"restriction", signs_json(c, p.restriction)},
                     {"boundary", boundary}, {"admissible", admissible}});
      if (!admissible) {
        out.code = kViolation;
        out.findings.push_back({{"kind", "ideal-point"}, {"message", "ideal point rule is not admissible"},
                                {"witness", {p.label}}});
      }
    }
    out.result["ideal_points"] = pts;
  }
  return out;
}

struct AdmissibleArgs {
  std::string complex, vector;
  std::size_t limit = 100000;
};

Outcome run_admissible(const AdmissibleArgs& a, const Globals&) {
  Loaded in = load_complex(a.complex, std::nullopt);
  const CubeComplex& c = in.complex;
  Outcome out;
  if (!a.vector.empty()) {
    const auto parts = split_list(a.vector);
    if (parts.size() != c.hyperplane_count()) {
      throw InputError("--vector needs " + std::to_string(c.hyperplane_count()) + " signs");
    }
    SignVector z(c.hyperplane_count());
    for (std::size_t h = 0; h < parts.size(); ++h) {
      if (parts[h] != "1" && parts[h] != "-1" && parts[h] != "+1") {
        throw InputError("--vector entries must be 1 or -1");
      }
      z.set(HyperplaneId(h), parts[h] == "-1" ? Sign::Minus : Sign::Plus);
    }
    out.result["vector"] = {{"admissible", is_admissible(c, z)}, {"original", c.find(z).has_value()}};
  }
  const auto e = enumerate_admissible(c, a.limit);
  Json vs = Json::array();
  for (const auto& z : e.vectors) {
    vs.push_back(point_json(c, z));
  }
  std::vector<SignVector> originals = c.vertices();
  std::sort(originals.begin(), originals.end());
  const bool equal = !e.partial && e.vectors == originals;
  out.result["count"] = e.vectors.size();
  out.result["partial"] = e.partial;
  out.result["equals_original_vertices"] = equal;
  out.result["admissible"] = vs;
  if (!e.partial && !equal) {
    out.code = kViolation;
    out.findings.push_back({{"kind", "admissible-closure"},
                            {"message", "admissible vertices differ from the original vertices"},
                            {"witness", Json::array()}});
  }
  return out;
}

void emit(const Json& report, const std::string& path) {
  const std::string text = report.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(path);
    if (!f) {
      throw InputError("cannot write " + path);
    }
    f << text;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorics of CAT(0) cube complexes, weight functions, Property A certificates and FC Artin groups"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--out", g.out, "Write the JSON report here instead of stdout");
  app.add_option("--jobs", g.jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for sampled checks");

  std::function<Outcome()> run;

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Check the cube-complex invariants");
  validate->add_option("--complex", va.complex, "Family spec or JSON file")->required();
  validate->add_option("--exhaustive-limit", va.exhaustive, "Check all median triples up to this many vertices");
  validate->add_option("--samples", va.samples, "Random median triples above the limit");
  validate->callback([&] { run = [&] { return run_validate(va, g); }; });

  MedianArgs ma;
  auto* med = app.add_subcommand("median", "Majority median of three vertices");
  med->add_option("--complex", ma.complex)->required();
  med->add_option("--x", ma.x)->required();
  med->add_option("--y", ma.y)->required();
  med->add_option("--z", ma.z)->required();
  med->callback([&] { run = [&] { return run_median(ma, g); }; });

  WeightsArgs wa;
  auto* weights = app.add_subcommand("weights", "Evaluate the weight function phi^n_{x,z}");
  weights->add_option("--complex", wa.complex)->required();
  weights->add_option("--n", wa.n)->required();
  weights->add_option("--N", wa.N, "Ambient dimension (default: the complex's)");
  weights->add_option("--source", wa.source)->required();
  weights->add_option("--target", wa.target, "Vertex name or ideal:<label>")->required();
  weights->add_flag("--normalized", wa.normalized);
  weights->callback([&] { run = [&] { return run_weights(wa, g); }; });

  VerifyArgs vw;
  auto* verify = app.add_subcommand("verify-weights", "Sweep the weight identities up to --max-n");
  verify->alias("verify-thm31");
  verify->add_option("--complex", vw.complex)->required();
  verify->add_option("--max-n", vw.max_n)->required();
  verify->add_option("--N", vw.N);
  verify->add_option("--action", vw.action, "builtin or an action JSON file, for equivariance");
  verify->callback([&] { run = [&] { return run_verify(vw, g); }; });

  ContinuityArgs ca;
  auto* cont = app.add_subcommand("continuity", "Level sets and continuity of z -> phi^n_{x,z}(a)");
  cont->add_option("--family,--complex", ca.family)->required();
  cont->add_option("--x", ca.x)->required();
  cont->add_option("--a", ca.a)->required();
  cont->add_option("--n", ca.n)->required();
  cont->add_option("--z", ca.z, "Probe point for the witness search (default: a)");
  cont->add_option("--witness", ca.witness, "Witness prefix length");
  cont->callback([&] { run = [&] { return run_continuity(ca, g); }; });

  PropertyAArgs pa;
  auto* prop = app.add_subcommand("property-a", "Build and verify the Property A certificate");
  prop->add_option("--complex", pa.complex)->required();
  prop->add_option("--action", pa.action, "builtin or an action JSON file");
  prop->add_option("--n", pa.n)->required();
  prop->add_option("--epsilon", pa.epsilon, "Target bound p/q");
  prop->add_option("--gen-set", pa.gen_set, "Comma-separated generator names (default: all)");
  prop->add_option("--nu", pa.nu, "uniform or a stabilizer-measure JSON file");
  prop->add_option("--origin", pa.origin, "Basepoint vertex (default: the base vertex)");
  prop->callback([&] { run = [&] { return run_property_a(pa, g); }; });

  std::string matrix;
  auto* artin = app.add_subcommand("artin", "Coxeter matrices and FC type");
  artin->require_subcommand(1);
  auto* fc = artin->add_subcommand("fc", "Decide FC type");
  fc->add_option("--matrix", matrix)->required();
  fc->callback([&] { run = [&] { return run_artin_fc(matrix, g); }; });
  auto* rep = artin->add_subcommand("report", "Exactness verdict");
  rep->add_option("--matrix", matrix)->required();
  rep->callback([&] { run = [&] { return run_artin_report(matrix, g); }; });

  TruncateArgs ta;
  auto* family = app.add_subcommand("family", "Family generators");
  family->require_subcommand(1);
  auto* truncate = family->add_subcommand("truncate", "Emit a family truncation as complex JSON");
  truncate->add_option("--family", ta.family)->required();
  truncate->callback([&] { run = [&] { return run_family_truncate(ta, g); }; });

  AdmissibleArgs aa;
  auto* adm = app.add_subcommand("admissible", "Enumerate admissible sign vectors");
  adm->add_option("--complex", aa.complex)->required();
  adm->add_option("--limit", aa.limit);
  adm->add_option("--vector", aa.vector, "Comma-separated signs to test");
  adm->callback([&] { run = [&] { return run_admissible(aa, g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kInputError;
  }

  Json argv_echo = Json::array();
  for (int i = 1; i < argc; ++i) {
    argv_echo.push_back(argv[i]);
  }
  std::string command;
  for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
    sub = sub->get_subcommands().front();
    command += (command.empty() ? "" : " ") + sub->get_name();
  }
  Json report = {{"schema", kSchema}, {"command", command}, {"argv", argv_echo}};
  const auto start = std::chrono::steady_clock::now();
  int code = kPass;
  try {
    Outcome out = run();
    code = out.code;
    report["status"] = code == kPass ? "pass" : "fail";
    report["findings"] = std::move(out.findings);
    report["result"] = std::move(out.result);
  } catch (const ActionError& e) {
    code = kInputError;
    report["status"] = "error";
    report["findings"] = Json::array({{{"kind", "action"}, {"message", e.what()}, {"witness", e.witness()}}});
  } catch (const CliqueCapacityError& e) {
    code = kInputError;
    report["status"] = "error";
    report["findings"] = Json::array({{{"kind", "capacity"}, {"message", e.what()}, {"witness", Json::array()}}});
    report["result"] = fc_json(e.partial());
  } catch (const cubex::Error& e) {
    code = kInputError;
    report["status"] = "error";
    report["findings"] = Json::array({{{"kind", "input"}, {"message", e.what()}, {"witness", Json::array()}}});
  } catch (const nlohmann::json::exception& e) {
    code = kInputError;
    report["status"] = "error";
    report["findings"] = Json::array({{{"kind", "input"}, {"message", e.what()}, {"witness", Json::array()}}});
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report["timing"] = {{"elapsed_ms", ms}};
  try {
    emit(report, g.out);
  } catch (const cubex::Error& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  }
  if (code == kInputError) {
    std::cerr << "error: " << report["findings"][0]["message"].get<std::string>() << "\n";
  }
  return code;
}
