#include "cubex/continuity.hpp"

#include "cubex/errors.hpp"
#include "cubex/weights.hpp"

#include <algorithm>
#include <set>

namespace cubex {

namespace {

std::vector<HyperplaneId> deficiency_hyperplanes(const CubeComplex& c, VertexId a, const SignVector& z) {
  std::vector<HyperplaneId> out;
  const SignVector& av = c.signs(a);
  for (HyperplaneId h : c.adjacent(a)) {
    if (av[h] != z[h]) {
      out.push_back(h);
    }
  }
  return out;
}

/// All k-element subsets of {0..n-1} in lexicographic order, or nullopt
/// when there are more than `cap`.
std::optional<std::vector<std::vector<std::size_t>>> subsets(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) {
    return std::vector<std::vector<std::size_t>>{};
  }
  if (binomial(static_cast<long>(n), static_cast<long>(k)) > BigInt(static_cast<unsigned long>(cap))) {
    return std::nullopt;
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) {
    idx[i] = i;
  }
  while (true) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) {
      --i;
    }
    if (i == 0) {
      break;
    }
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) {
      idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

} // namespace

BigInt phi(const CubeComplex& c, const PhiQuery& q, const SignVector& z) {
  return weight(c, q.n, c.signs(q.x), z, q.a);
}

BigInt phi_by_half_spaces(const CubeComplex& c, const PhiQuery& q, const SignVector& z) {
  const SignVector& xv = c.signs(q.x);
  const SignVector& av = c.signs(q.a);
  for (HyperplaneId k : differing(xv, av)) {
    if (z[k] != av[k]) {
      return 0;
    }
  }
  std::size_t k = 0;
  for (HyperplaneId h : c.adjacent(q.a)) {
    if (xv[h] == av[h] && z[h] != xv[h]) {
      ++k;
    }
  }
  const long big_n = static_cast<long>(c.ambient_dimension());
  if (k > c.ambient_dimension()) {
    throw DimensionError("deficiency exceeds the ambient dimension");
  }
  const long big_a = static_cast<long>(q.n) - static_cast<long>(distance(xv, av));
  const long kk = static_cast<long>(k);
  return binomial(big_a + big_n - kk, big_n - kk);
}

std::vector<ProbePoint> probe_points(const CubeComplex& c, const FamilyAnnotations* annotations) {
  std::vector<ProbePoint> out;
  for (std::size_t v = 0; v < c.vertex_count(); ++v) {
    out.push_back({c.vertex_name(VertexId(v)), c.signs(VertexId(v)), VertexId(v), false, false});
  }
  if (annotations != nullptr) {
    for (const auto& p : annotations->ideal_points) {
      if (p.restriction.size() != c.hyperplane_count()) {
        throw InputError("ideal point " + p.label + " does not match the complex");
      }
      out.push_back({p.label, p.restriction, std::nullopt, true, p.adjacency_infinite});
    }
  }
  return out;
}

ZeroSet zero_set(const CubeComplex& c, VertexId x, VertexId a, const std::vector<ProbePoint>& probe) {
  ZeroSet out;
  const SignVector& xv = c.signs(x);
  const SignVector& av = c.signs(a);
  const auto seps = differing(av, xv);
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const SignVector& z = probe[i].z;
    if (!interval_membership(av, xv, z)) {
      out.direct.push_back(i);
    }
    if (std::any_of(seps.begin(), seps.end(), [&](HyperplaneId h) { return z[h] == xv[h]; })) {
      out.half_spaces.push_back(i);
    }
  }
  out.agree = out.direct == out.half_spaces;
  return out;
}

bool LevelSetPartition::ok() const {
  if (!values_predicted || !formula_agrees) {
    return false;
  }
  return std::all_of(superlevel.begin(), superlevel.end(),
                     [](const SuperlevelCheck& s) { return !s.evaluated || s.agree; });
}

LevelSetPartition level_sets(const CubeComplex& c, const PhiQuery& q,
                             const std::vector<ProbePoint>& probe, std::size_t subset_cap) {
  LevelSetPartition out;
  const SignVector& xv = c.signs(q.x);
  const SignVector& av = c.signs(q.a);
  const long big_n = static_cast<long>(c.ambient_dimension());
  const long big_a = static_cast<long>(q.n) - static_cast<long>(distance(xv, av));

  std::vector<BigInt> values;
  out.formula_agrees = true;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    values.push_back(phi(c, q, probe[i].z));
    out.cells[values.back()].push_back(i);
    if (phi_by_half_spaces(c, q, probe[i].z) != values.back()) {
      out.formula_agrees = false;
    }
  }

  out.predicted.push_back(0);
  if (big_a == 0) {
    out.predicted.push_back(1);
  } else if (big_a > 0) {
    for (long k = 0; k <= big_n; ++k) {
      out.predicted.push_back(binomial(big_a + big_n - k, big_n - k));
    }
  }
  out.values_predicted = std::all_of(out.cells.begin(), out.cells.end(), [&](const auto& cell) {
    return std::find(out.predicted.begin(), out.predicted.end(), cell.first) != out.predicted.end();
  });

  if (big_a <= 0) {
    return out;
  }
  const auto ks = differing(xv, av);
  std::vector<HyperplaneId> hs;
  for (HyperplaneId h : c.adjacent(q.a)) {
    if (xv[h] == av[h]) {
      hs.push_back(h);
    }
  }
  for (long k = 0; k <= big_n; ++k) {
    SuperlevelCheck check;
    check.k = static_cast<std::size_t>(k);
    check.threshold = binomial(big_a + big_n - k, big_n - k);
    for (std::size_t i = 0; i < probe.size(); ++i) {
      if (values[i] > check.threshold) {
        check.direct.push_back(i);
      }
    }
    const auto family = subsets(hs.size(), check.k, subset_cap);
    if (!family) {
      check.evaluated = false;
      out.superlevel.push_back(std::move(check));
      continue;
    }
    for (std::size_t i = 0; i < probe.size(); ++i) {
      const SignVector& z = probe[i].z;
      // K_1^{a(K_1)} ∩ ... ∩ K_n^{a(K_n)}
      bool in = std::all_of(ks.begin(), ks.end(), [&](HyperplaneId h) { return z[h] == av[h]; });
      // ∩ over k-subsets of (H_{j1}^{x} ∪ ... ∪ H_{jk}^{x})
      for (const auto& subset : *family) {
        if (!in) {
          break;
        }
        in = std::any_of(subset.begin(), subset.end(), [&](std::size_t j) { return z[hs[j]] == xv[hs[j]]; });
      }
      if (in) {
        check.formula.push_back(i);
      }
    }
    check.agree = check.direct == check.formula;
    out.superlevel.push_back(std::move(check));
  }
  return out;
}

std::string to_string(Continuity c) {
  switch (c) {
  case Continuity::Continuous:
    return "continuous";
  case Continuity::Discontinuous:
    return "discontinuous";
  case Continuity::NotDetermined:
    return "not-determined";
  }
  return {};
}

std::optional<DiscontinuityWitness> discontinuity_witness(const CubeComplex& c, const PhiQuery& q,
                                                          const ProbePoint& z,
                                                          const FamilyAnnotations* annotations,
                                                          std::size_t prefix_len) {
  if (phi(c, q, z.z) == 0) {
    return std::nullopt;
  }
  if (annotations == nullptr || !annotations->vertex_infinite(q.a)) {
    return std::nullopt;
  }
  const SignVector& xv = c.signs(q.x);
  const SignVector& av = c.signs(q.a);
  const std::size_t big_n = c.ambient_dimension();
  const auto target = deficiency_hyperplanes(c, q.a, z.z);

  DiscontinuityWitness w{z.label, {}, false, true};
  std::set<HyperplaneId> used;
  for (VertexId m : interval(c, av, z.z)) {
    if (w.steps.size() >= prefix_len) {
      break;
    }
    const SignVector& mv = c.signs(m);
    const auto nm = deficiency_hyperplanes(c, q.a, mv);
    if (nm != target) {
      continue;
    }
    for (HyperplaneId h : c.adjacent(q.a)) {
      if (w.steps.size() >= prefix_len) {
        break;
      }
      if (used.count(h) != 0) {
        continue;
      }
      const auto across = neighbor_across(c, m, h);
      if (!across || !interval_membership(av, xv, c.signs(*across))) {
        continue;
      }
      WitnessStep step{mv, m, h, *across, big_n - nm.size(),
                       big_n - deficiency_hyperplanes(c, q.a, c.signs(*across)).size(),
                       phi(c, q, c.signs(*across))};
      const long change = static_cast<long>(step.delta_m_prime) - static_cast<long>(step.delta_m);
      if (change != 1 && change != -1) {
        w.perturbation_ok = false;
      }
      used.insert(h);
      w.steps.push_back(std::move(step));
    }
  }
  if (w.steps.empty()) {
    return std::nullopt;
  }
  w.partial = w.steps.size() < prefix_len;
  return w;
}

ContinuityVerdict continuity_classify(const CubeComplex& c, const PhiQuery& q, const ProbePoint& z,
                                      const FamilyAnnotations* annotations) {
  if (phi(c, q, z.z) == 0) {
    return {Continuity::Continuous, "Phi(z) = 0"};
  }
  if (q.n <= distance(c, q.x, q.a)) {
    return {Continuity::Continuous, "n <= d(x,a)"};
  }
  if (!z.ideal) {
    if (annotations != nullptr && z.vertex && annotations->shared_infinite(q.a, *z.vertex)) {
      return {Continuity::Discontinuous, "infinitely many hyperplanes adjacent to both a and z"};
    }
    return {Continuity::Continuous, "finitely many hyperplanes adjacent to both a and z"};
  }
  const bool a_infinite = annotations != nullptr && annotations->vertex_infinite(q.a);
  if (z.adjacency_infinite && a_infinite) {
    return {Continuity::Discontinuous, "infinitely many hyperplanes adjacent to both a and z"};
  }
  if (!a_infinite) {
    return {Continuity::Continuous, "a is a finite vertex"};
  }
  if (discontinuity_witness(c, q, z, annotations, 1)) {
    return {Continuity::Discontinuous, "witness sequence in [a,z]"};
  }
  return {Continuity::NotDetermined, "no rule applies"};
}

SingletonOpenness singleton_openness(const CubeComplex& c, VertexId a,
                                     const FamilyAnnotations* annotations,
                                     std::size_t enumeration_limit) {
  SingletonOpenness out;
  if (annotations != nullptr && annotations->vertex_infinite(a)) {
    return out;
  }
  out.open = true;
  const SignVector& av = c.signs(a);
  for (HyperplaneId h : c.adjacent(a)) {
    out.certificate.emplace_back(h, av[h]);
  }
  const auto admissible = enumerate_admissible(c, enumeration_limit);
  out.partial = admissible.partial;
  for (const auto& z : admissible.vectors) {
    if (std::all_of(out.certificate.begin(), out.certificate.end(),
                    [&](const auto& hs) { return z[hs.first] == hs.second; })) {
      out.members.push_back(z);
    }
  }
  out.verified = !out.partial && out.members.size() == 1 && out.members.front() == av;
  return out;
}

} // namespace cubex
