#include "cubex/actions.hpp"

#include "cubex/errors.hpp"
#include "cubex/weights.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

namespace cubex {

namespace {

std::vector<GroupElement> sorted_unique(std::vector<GroupElement> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

VertexId median_vertex(const CubeComplex& c, VertexId x, VertexId y, VertexId z) {
  auto m = c.find(majority(c.signs(x), c.signs(y), c.signs(z)));
  if (!m) {
    throw InputError("complex is not median-closed at (" + c.vertex_name(x) + ", " + c.vertex_name(y) +
                     ", " + c.vertex_name(z) + ")");
  }
  return *m;
}

void check_generator(const CubeComplex& c, const NamedPermutation& g, const ActionOptions& options) {
  const std::size_t nv = c.vertex_count();
  if (g.images.size() != nv) {
    throw ActionError("generator " + g.name + " has " + std::to_string(g.images.size()) +
                          " images for " + std::to_string(nv) + " vertices",
                      {g.name});
  }
  std::vector<std::optional<VertexId>> preimage(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    const VertexId img = g.images[v];
    if (img.index() >= nv) {
      throw ActionError("generator " + g.name + " maps outside the vertex set", {g.name, c.vertex_name(VertexId(v))});
    }
    if (preimage[img.index()]) {
      throw ActionError("generator " + g.name + " is not a bijection",
                        {g.name, c.vertex_name(*preimage[img.index()]), c.vertex_name(VertexId(v))});
    }
    preimage[img.index()] = VertexId(v);
  }
  auto s = [&](VertexId v) { return g.images[v.index()]; };

  // A bijection carrying edges to edges on a finite graph also carries
  // non-edges to non-edges.
  for (std::size_t v = 0; v < nv; ++v) {
    for (HyperplaneId h : c.adjacent(VertexId(v))) {
      const VertexId u = *neighbor_across(c, VertexId(v), h);
      if (distance(c, s(VertexId(v)), s(u)) != 1) {
        throw ActionError("generator " + g.name + " does not preserve the edge " +
                              c.vertex_name(VertexId(v)) + " - " + c.vertex_name(u),
                          {g.name, c.vertex_name(VertexId(v)), c.vertex_name(u)});
      }
    }
  }

  auto check_triple = [&](VertexId x, VertexId y, VertexId z) {
    const VertexId m = median_vertex(c, x, y, z);
    const VertexId sm = median_vertex(c, s(x), s(y), s(z));
    if (s(m) != sm) {
      throw ActionError("generator " + g.name + " does not commute with the median",
                        {g.name, c.vertex_name(x), c.vertex_name(y), c.vertex_name(z)});
    }
  };
  if (nv <= options.exhaustive_vertex_limit) {
    for (std::size_t i = 0; i < nv; ++i) {
      for (std::size_t j = i + 1; j < nv; ++j) {
        for (std::size_t k = j + 1; k < nv; ++k) {
          check_triple(VertexId(i), VertexId(j), VertexId(k));
        }
      }
    }
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, nv - 1);
    for (std::size_t t = 0; t < options.sampled_triples; ++t) {
      check_triple(VertexId(pick(rng)), VertexId(pick(rng)), VertexId(pick(rng)));
    }
  }
}

std::string join_words(const std::string& a, const std::string& b) {
  return a == "e" ? b : a + "*" + b;
}

} // namespace

std::size_t GroupAction::PermHash::operator()(const Perm& p) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (std::uint32_t v : p) {
    h = (h ^ v) * 1099511628211ULL;
  }
  return h;
}

GroupAction GroupAction::create(const CubeComplex& c, std::vector<NamedPermutation> generators,
                                const ActionOptions& options) {
  std::sort(generators.begin(), generators.end(),
            [](const NamedPermutation& a, const NamedPermutation& b) { return a.name < b.name; });
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& name = generators[i].name;
    if (name.empty() || name == "e" || name.find('*') != std::string::npos) {
      throw InputError("invalid generator name '" + name + "'");
    }
    if (i > 0 && generators[i - 1].name == name) {
      throw InputError("duplicate generator name " + name);
    }
  }

  GroupAction g;
  g.vertex_count_ = c.vertex_count();
  for (const auto& gen : generators) {
    check_generator(c, gen, options);
    auto induced = induced_automorphism(c, gen.images);
    if (!induced) {
      throw ActionError("generator " + gen.name + " does not carry half spaces to half spaces", {gen.name});
    }
    g.generator_names_.push_back(gen.name);
    g.automorphisms_.push_back(std::move(*induced));
  }

  Perm id(c.vertex_count());
  for (std::size_t v = 0; v < id.size(); ++v) {
    id[v] = static_cast<std::uint32_t>(v);
  }
  g.elements_.push_back(id);
  g.words_.push_back("e");
  g.index_.emplace(id, GroupElement(0U));

  // Breadth-first over words, appending generators in name order, so the
  // first word reaching an element is its shortlex-least word.
  for (std::size_t i = 0; i < g.elements_.size(); ++i) {
    for (std::size_t k = 0; k < generators.size(); ++k) {
      Perm next(id.size());
      for (std::size_t v = 0; v < id.size(); ++v) {
        next[v] = g.elements_[i][generators[k].images[v].index()];
      }
      if (g.index_.count(next) != 0) {
        continue;
      }
      if (g.elements_.size() >= options.element_cap) {
        throw CapacityError("group closure exceeded " + std::to_string(options.element_cap) + " elements",
                            g.elements_.size());
      }
      g.index_.emplace(next, GroupElement(g.elements_.size()));
      g.words_.push_back(join_words(g.words_[i], generators[k].name));
      g.elements_.push_back(std::move(next));
    }
  }
  for (const auto& gen : generators) {
    Perm p(id.size());
    for (std::size_t v = 0; v < id.size(); ++v) {
      p[v] = static_cast<std::uint32_t>(gen.images[v].index());
    }
    g.generators_.push_back(g.index_.at(p));
  }

  for (const auto& p : g.elements_) {
    Perm inv(p.size());
    for (std::size_t v = 0; v < p.size(); ++v) {
      inv[p[v]] = static_cast<std::uint32_t>(v);
    }
    g.inverses_.push_back(g.index_.at(inv));
  }

  const std::size_t order = g.elements_.size();
  if (order <= options.table_limit) {
    std::vector<GroupElement> table(order * order);
    for (std::size_t a = 0; a < order; ++a) {
      for (std::size_t b = 0; b < order; ++b) {
        Perm prod(id.size());
        for (std::size_t v = 0; v < id.size(); ++v) {
          prod[v] = g.elements_[a][g.elements_[b][v]];
        }
        table[a * order + b] = g.index_.at(prod);
      }
    }
    g.table_ = std::move(table);
  }
  return g;
}

GroupElement GroupAction::generator(std::string_view name) const {
  auto it = std::find(generator_names_.begin(), generator_names_.end(), name);
  if (it == generator_names_.end()) {
    throw InputError("unknown generator " + std::string(name));
  }
  return generators_[static_cast<std::size_t>(it - generator_names_.begin())];
}

GroupElement GroupAction::multiply(GroupElement g, GroupElement h) const {
  if (!table_.empty()) {
    return table_[g.index() * elements_.size() + h.index()];
  }
  Perm prod(vertex_count_);
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    prod[v] = elements_[g.index()][elements_[h.index()][v]];
  }
  return index_.at(prod);
}

Measure<GroupElement> GroupAction::translate(GroupElement g, const Measure<GroupElement>& m) const {
  return m.pushforward([&](GroupElement k) { return multiply(g, k); });
}

Measure<VertexId> GroupAction::translate(GroupElement g, const Measure<VertexId>& m) const {
  return m.pushforward([&](VertexId v) { return apply(g, v); });
}

OrbitData orbit_transversal(const GroupAction& action) {
  const std::size_t nv = action.vertex_count();
  const std::size_t order = action.order();
  OrbitData out;
  out.orbit_of.assign(nv, nv);
  for (std::size_t v = 0; v < nv; ++v) {
    if (out.orbit_of[v] != nv) {
      continue;
    }
    const std::size_t pos = out.transversal.size();
    out.transversal.emplace_back(v);
    for (std::size_t g = 0; g < order; ++g) {
      out.orbit_of[action.apply(GroupElement(g), VertexId(v)).index()] = pos;
    }
  }

  for (VertexId t : out.transversal) {
    StabilizerData d;
    d.t = t;
    d.representative_at.assign(nv, std::nullopt);
    d.in_stabilizer.assign(order, false);
    for (std::size_t g = 0; g < order; ++g) {
      const VertexId image = action.apply(GroupElement(g), t);
      if (!d.representative_at[image.index()]) {
        d.representative_at[image.index()] = GroupElement(g);
        d.representatives.emplace_back(g);
      }
      if (image == t) {
        d.stabilizer.emplace_back(g);
        d.in_stabilizer[g] = true;
      }
    }
    for (std::size_t g = 0; g < order; ++g) {
      const GroupElement z = *d.representative_at[action.apply(GroupElement(g), t).index()];
      d.z.push_back(z);
      d.a.push_back(action.multiply(action.inverse(z), GroupElement(g)));
    }
    out.per_t.push_back(std::move(d));
  }
  return out;
}

VerificationReport verify_coset_identities(const GroupAction& action, const OrbitData& orbits) {
  VerificationReport report;
  const std::size_t order = action.order();
  for (const StabilizerData& d : orbits.per_t) {
    const std::string tn = "t=" + std::to_string(d.t.value);
    std::set<VertexId> images;
    for (GroupElement z : d.representatives) {
      ++report.checks;
      if (!images.insert(action.apply(z, d.t)).second) {
        report.fail("coset-bijection", "two representatives move t to the same vertex", {tn, action.word(z)});
      }
    }
    std::size_t orbit_size = 0;
    for (std::size_t v = 0; v < orbits.orbit_of.size(); ++v) {
      orbit_size += orbits.orbit_of[v] == orbits.orbit_of[d.t.index()] ? 1 : 0;
    }
    ++report.checks;
    if (images.size() != orbit_size) {
      report.fail("coset-bijection", "representatives do not cover the orbit", {tn});
    }

    for (std::size_t gi = 0; gi < order; ++gi) {
      const GroupElement g(gi);
      ++report.checks;
      if (action.multiply(d.z[gi], d.a[gi]) != g || !d.in_stabilizer[d.a[gi].index()]) {
        report.fail("coset-decomposition", "g != z_g a_g with a_g in the stabilizer", {tn, action.word(g)});
      }
      for (GroupElement h : d.stabilizer) {
        const GroupElement gh = action.multiply(g, h);
        ++report.checks;
        if (d.a[gh.index()] != action.multiply(d.a[gi], h)) {
          report.fail("coset-a", "a_{gh} != a_g h", {tn, action.word(g), action.word(h)});
        }
        ++report.checks;
        if (d.z[gh.index()] != d.z[gi]) {
          report.fail("coset-z", "z_{gh} != z_g", {tn, action.word(g), action.word(h)});
        }
      }
      for (std::size_t ki = 0; ki < order; ++ki) {
        const GroupElement k(ki);
        const GroupElement gk = action.multiply(g, k);
        const GroupElement lhs =
            action.multiply(d.z[gk.index()], action.multiply(d.a[gk.index()], action.inverse(d.a[ki])));
        ++report.checks;
        if (lhs != action.multiply(g, d.z[ki])) {
          report.fail("coset-product", "z_{gk} a_{gk} a_k^-1 != g z_k", {tn, action.word(g), action.word(k)});
        }
      }
    }
  }
  return report;
}

GroupElement sigma_split(const GroupAction& action, const StabilizerData& data, GroupElement g) {
  return action.inverse(data.a[action.inverse(g).index()]);
}

VerificationReport verify_sigma_equivariance(const GroupAction& action, const OrbitData& orbits) {
  VerificationReport report;
  for (const StabilizerData& d : orbits.per_t) {
    const std::string tn = "t=" + std::to_string(d.t.value);
    for (std::size_t gi = 0; gi < action.order(); ++gi) {
      const GroupElement g(gi);
      const GroupElement sg = sigma_split(action, d, g);
      ++report.checks;
      if (!d.in_stabilizer[sg.index()]) {
        report.fail("sigma-range", "sigma(g) is not in the stabilizer", {tn, action.word(g)});
      }
      for (GroupElement h : d.stabilizer) {
        ++report.checks;
        if (sigma_split(action, d, action.multiply(h, g)) != action.multiply(h, sg)) {
          report.fail("sigma-equivariance", "sigma(hg) != h sigma(g)", {tn, action.word(h), action.word(g)});
        }
      }
    }
  }
  return report;
}

MeasureFamily induce_nu(const GroupAction& action, const StabilizerData& data,
                        const StabilizerMeasures& family) {
  Measure<GroupElement> uniform;
  if (family.uniform) {
    const Rational mass(1, static_cast<unsigned long>(data.stabilizer.size()));
    for (GroupElement h : data.stabilizer) {
      uniform.add(h, mass);
    }
  } else {
    for (GroupElement h : data.stabilizer) {
      auto it = family.values.find(h);
      if (it == family.values.end()) {
        throw InputError("stabilizer measure missing for " + action.word(h));
      }
      if (!it->second.is_probability()) {
        throw InputError("stabilizer measure at " + action.word(h) + " is not a probability measure");
      }
      for (const auto& [k, m] : it->second.masses()) {
        if (!data.in_stabilizer[k.index()]) {
          throw InputError("stabilizer measure at " + action.word(h) + " charges " + action.word(k) +
                           " outside the stabilizer");
        }
      }
    }
  }
  MeasureFamily nu;
  nu.reserve(action.order());
  for (std::size_t g = 0; g < action.order(); ++g) {
    nu.push_back(family.uniform ? uniform : family.values.at(sigma_split(action, data, GroupElement(g))));
  }
  return nu;
}

Rational nu_deviation(const GroupAction& action, const MeasureFamily& nu, GroupElement h) {
  Rational worst(0);
  for (std::size_t g = 0; g < nu.size(); ++g) {
    const Rational d = l1_distance(action.translate(h, nu[g]), nu[action.multiply(h, GroupElement(g)).index()]);
    worst = std::max(worst, d);
  }
  return worst;
}

std::vector<GroupElement> symmetric_set(const GroupAction& action, const std::vector<std::string>& names) {
  std::vector<GroupElement> out{action.identity()};
  for (const auto& name : names) {
    const GroupElement s = action.generator(name);
    out.push_back(s);
    out.push_back(action.inverse(s));
  }
  return sorted_unique(std::move(out));
}

std::vector<GroupElement> compute_Et(const GroupAction& action, const StabilizerData& data,
                                     const std::vector<GroupElement>& E,
                                     const std::vector<GroupElement>& z_f) {
  std::vector<GroupElement> out;
  for (GroupElement s : E) {
    for (GroupElement g : z_f) {
      const GroupElement sg = action.multiply(s, g);
      out.push_back(action.multiply(action.inverse(data.z[sg.index()]), action.multiply(s, data.z[g.index()])));
    }
  }
  return sorted_unique(std::move(out));
}

Certificate build_mu(const CubeComplex& c, const GroupAction& action, const OrbitData& orbits,
                     const CertificateInput& input) {
  if (input.origin.index() >= c.vertex_count()) {
    throw InputError("basepoint out of range");
  }
  if (action.vertex_count() != c.vertex_count()) {
    throw InputError("action and complex disagree on the vertex count");
  }
  const std::set<GroupElement> e_set(input.E.begin(), input.E.end());
  if (e_set.count(action.identity()) == 0) {
    throw InputError("E must contain the identity");
  }
  for (GroupElement s : input.E) {
    if (s.index() >= action.order()) {
      throw InputError("E contains an unknown element");
    }
    if (e_set.count(action.inverse(s)) == 0) {
      throw InputError("E must be closed under inversion: missing the inverse of " + action.word(s));
    }
  }

  Certificate cert;
  cert.n = input.n;
  cert.origin = input.origin;
  for (std::size_t v = 0; v < c.vertex_count(); ++v) {
    cert.eta.push_back(eta(c, input.n, input.origin, c.signs(VertexId(v))));
  }

  std::set<VertexId> f;
  for (std::size_t x = 0; x < action.order(); ++x) {
    for (const auto& [v, m] : cert.eta[action.apply(GroupElement(x), input.origin).index()].masses()) {
      f.insert(v);
    }
  }
  cert.F.assign(f.begin(), f.end());

  std::set<std::size_t> t_f;
  for (VertexId v : cert.F) {
    t_f.insert(orbits.orbit_of[v.index()]);
  }
  for (std::size_t pos : t_f) {
    const StabilizerData& d = orbits.per_t[pos];
    TransversalCertificate tc;
    tc.position = pos;
    tc.t = d.t;
    for (GroupElement z : d.representatives) {
      if (f.count(action.apply(z, d.t)) != 0) {
        tc.z_f.push_back(z);
      }
    }
    const StabilizerMeasures* family = nullptr;
    if (auto it = input.nu.find(d.t); it != input.nu.end()) {
      family = &it->second;
    } else if (input.default_nu) {
      family = &*input.default_nu;
    } else {
      throw InputError("no stabilizer measures supplied for vertex " + c.vertex_name(d.t));
    }
    tc.nu = induce_nu(action, d, *family);
    std::set<GroupElement> ft;
    for (const auto& m : tc.nu) {
      for (const auto& [k, mass] : m.masses()) {
        ft.insert(k);
      }
    }
    tc.f_t.assign(ft.begin(), ft.end());
    tc.e_t = compute_Et(action, d, input.E, tc.z_f);
    for (GroupElement h : tc.e_t) {
      ++cert.construction.checks;
      if (!d.in_stabilizer[h.index()]) {
        cert.construction.fail("e-t", "element of E^t does not fix t", {c.vertex_name(d.t), action.word(h)});
      }
    }
    cert.per_t.push_back(std::move(tc));
  }

  for (std::size_t xi = 0; xi < action.order(); ++xi) {
    const GroupElement x(xi);
    const Measure<VertexId>& eta_x = cert.eta[action.apply(x, input.origin).index()];
    Measure<GroupElement> mu;
    for (const TransversalCertificate& tc : cert.per_t) {
      const StabilizerData& d = orbits.per_t[tc.position];
      for (std::size_t gi = 0; gi < action.order(); ++gi) {
        const Rational e = eta_x(action.apply(GroupElement(gi), d.t));
        if (e == 0) {
          continue;
        }
        const GroupElement index = action.multiply(action.inverse(d.z[gi]), x);
        mu.add(GroupElement(gi), e * tc.nu[index.index()](d.a[gi]));
      }
    }
    cert.mu.push_back(std::move(mu));
  }

  std::set<GroupElement> bound;
  for (const TransversalCertificate& tc : cert.per_t) {
    for (GroupElement z : tc.z_f) {
      for (GroupElement h : tc.f_t) {
        bound.insert(action.multiply(z, h));
      }
    }
  }
  cert.support_bound.assign(bound.begin(), bound.end());
  std::set<GroupElement> support;
  for (std::size_t x = 0; x < cert.mu.size(); ++x) {
    ++cert.construction.checks;
    if (!cert.mu[x].is_probability()) {
      cert.construction.fail("probability", "mu_x is not a probability measure (total " +
                                                to_string(cert.mu[x].total()) + ")",
                             {action.word(GroupElement(x))});
    }
    for (const auto& [g, m] : cert.mu[x].masses()) {
      support.insert(g);
      ++cert.construction.checks;
      if (bound.count(g) == 0) {
        cert.construction.fail("support-bound", "mu_x charges an element outside the support bound",
                               {action.word(GroupElement(x)), action.word(g)});
      }
    }
  }
  cert.support.assign(support.begin(), support.end());
  return cert;
}

CertificateVerification verify_mu(const GroupAction& action, const Certificate& cert,
                                  const CertificateInput& input) {
  CertificateVerification out;
  out.eps_nu = 0;
  for (const TransversalCertificate& tc : cert.per_t) {
    for (GroupElement h : tc.e_t) {
      out.eps_nu = std::max(out.eps_nu, nu_deviation(action, tc.nu, h));
    }
  }
  out.max_dev = 0;
  out.bounds_hold = true;
  for (GroupElement s : input.E) {
    GeneratorDeviation row{s, Rational(0), Rational(0), false};
    for (std::size_t xi = 0; xi < action.order(); ++xi) {
      const GroupElement x(xi);
      const GroupElement sx = action.multiply(s, x);
      row.dev = std::max(row.dev, l1_distance(action.translate(s, cert.mu[xi]), cert.mu[sx.index()]));
      const Measure<VertexId>& ex = cert.eta[action.apply(x, cert.origin).index()];
      const Measure<VertexId>& esx = cert.eta[action.apply(sx, cert.origin).index()];
      row.eps_eta = std::max(row.eps_eta, l1_distance(action.translate(s, ex), esx));
    }
    row.bound_holds = row.dev <= row.eps_eta + out.eps_nu;
    ++out.report.checks;
    if (!row.bound_holds) {
      out.bounds_hold = false;
      out.report.fail("two-term-bound",
                      "dev " + to_string(row.dev) + " > " + to_string(row.eps_eta) + " + " + to_string(out.eps_nu),
                      {action.word(s)});
    }
    out.max_dev = std::max(out.max_dev, row.dev);
    out.per_s.push_back(std::move(row));
  }
  out.below_epsilon = out.max_dev < input.epsilon;
  out.report.merge(cert.construction);
  return out;
}

} // namespace cubex
