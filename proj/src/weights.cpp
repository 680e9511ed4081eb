#include "cubex/weights.hpp"

#include "cubex/errors.hpp"

#include <thread>

namespace cubex {

namespace {

std::string sign_label(const CubeComplex& c, const SignVector& z) {
  if (auto v = c.find(z)) {
    return c.vertex_name(*v);
  }
  std::string s = "{";
  for (HyperplaneId h : z.negative_set()) {
    s += (s.size() > 1 ? "," : "") + c.hyperplane_name(h);
  }
  return s + "}^-";
}

std::size_t deficiency_count(const CubeComplex& c, const SignVector& z, VertexId a) {
  const SignVector& av = c.signs(a);
  std::size_t count = 0;
  for (HyperplaneId h : c.adjacent(a)) {
    if (av[h] != z[h]) {
      ++count;
    }
  }
  return count;
}

/// Sweep for one source vertex; reports are merged in source order.
VerificationReport check_source(const CubeComplex& c, std::size_t n_max, VertexId x,
                                const std::vector<SignVector>& targets,
                                const WeightCheckOptions& options) {
  VerificationReport report;
  const std::size_t big_n = c.ambient_dimension();
  const std::string xn = c.vertex_name(x);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const BigInt mass = binomial(static_cast<long>(n + big_n), static_cast<long>(big_n));
    const BigInt step = 2 * binomial(static_cast<long>(n + big_n) - 1, static_cast<long>(big_n) - 1);
    const std::string ns = std::to_string(n);
    for (const SignVector& z : targets) {
      const std::string zn = sign_label(c, z);
      try {
        const WeightVector phi = weight_vector(c, n, x, z);

        ++report.checks;
        for (const auto& [a, value] : phi.values) {
          if (value < 0) {
            report.fail("values", "negative weight", {ns, xn, zn, c.vertex_name(a)});
          }
          if (distance(c, x, a) > n || !interval_membership(c.signs(a), c.signs(x), z)) {
            report.fail("support", "weight outside B_n(x) and [x,z]", {ns, xn, zn, c.vertex_name(a)});
          }
        }

        ++report.checks;
        if (phi.mass() != mass) {
          report.fail("mass", "total " + to_string(phi.mass()) + " != " + to_string(mass), {ns, xn, zn});
        }

        for (HyperplaneId h : c.adjacent(x)) {
          const VertexId y = *neighbor_across(c, x, h);
          ++report.checks;
          const BigInt diff = l1_distance(phi, weight_vector(c, n, y, z));
          if (diff != step) {
            report.fail("adjacent-difference", to_string(diff) + " != " + to_string(step),
                        {ns, xn, c.vertex_name(y), zn});
          }
        }

        if (options.triangle_bound) {
          for (std::size_t y = 0; y < c.vertex_count(); ++y) {
            const VertexId yv(y);
            ++report.checks;
            const BigInt diff = l1_distance(phi, weight_vector(c, n, yv, z));
            const BigInt bound = BigInt(static_cast<unsigned long>(distance(c, x, yv))) * step;
            if (diff > bound) {
              report.fail("triangle-bound", to_string(diff) + " > " + to_string(bound),
                          {ns, xn, c.vertex_name(yv), zn});
            }
          }
        }

        for (std::size_t k = 0; k < options.automorphisms.size(); ++k) {
          const Automorphism& s = options.automorphisms[k];
          ++report.checks;
          const WeightVector image = weight_vector(c, n, s(x), s.apply(z));
          bool same = image.values.size() == phi.values.size();
          for (const auto& [a, value] : phi.values) {
            same = same && image(s(a)) == value;
          }
          if (!same) {
            report.fail("equivariance", "s.phi != phi_{sx,sz} for automorphism " + std::to_string(k),
                        {ns, xn, zn});
          }
        }
      } catch (const DimensionError& e) {
        report.fail("dimension", e.what(), {ns, xn, zn});
      }
    }
  }
  return report;
}

} // namespace

DeficiencySet deficiency_set(const CubeComplex& c, const SignVector& x, const SignVector& z,
                             VertexId a) {
  const SignVector& av = c.signs(a);
  if (!interval_membership(av, x, z)) {
    throw DomainError("vertex " + c.vertex_name(a) + " is not in the interval [" + sign_label(c, x) +
                      ", " + sign_label(c, z) + "]");
  }
  DeficiencySet d{a, z, {}, 0};
  for (HyperplaneId h : c.adjacent(a)) {
    if (av[h] != z[h]) {
      d.set.push_back(h);
    }
  }
  if (d.set.size() > c.ambient_dimension()) {
    throw DimensionError("vertex " + c.vertex_name(a) + " has " + std::to_string(d.set.size()) +
                         " deficiency hyperplanes but N = " + std::to_string(c.ambient_dimension()));
  }
  d.deficiency = c.ambient_dimension() - d.set.size();
  return d;
}

BigInt weight(const CubeComplex& c, std::size_t n, const SignVector& x, const SignVector& z,
              VertexId a) {
  const SignVector& av = c.signs(a);
  if (!interval_membership(av, x, z)) {
    return 0;
  }
  const std::size_t d = distance(x, av);
  const std::size_t k = deficiency_count(c, z, a);
  if (k > c.ambient_dimension()) {
    throw DimensionError("vertex " + c.vertex_name(a) + " has " + std::to_string(k) +
                         " deficiency hyperplanes but N = " + std::to_string(c.ambient_dimension()));
  }
  const long delta = static_cast<long>(c.ambient_dimension() - k);
  return binomial(static_cast<long>(n) - static_cast<long>(d) + delta, delta);
}

BigInt WeightVector::operator()(VertexId a) const {
  auto it = values.find(a);
  return it == values.end() ? BigInt(0) : it->second;
}

BigInt WeightVector::mass() const {
  BigInt total(0);
  for (const auto& [a, v] : values) {
    total += v;
  }
  return total;
}

Measure<VertexId> WeightVector::normalized() const {
  const Rational scale(binomial(static_cast<long>(n + N), static_cast<long>(N)));
  Measure<VertexId> m;
  for (const auto& [a, v] : values) {
    m.add(a, Rational(v) / scale);
  }
  return m;
}

WeightVector weight_vector(const CubeComplex& c, std::size_t n, VertexId x, const SignVector& z) {
  WeightVector w{x, z, n, c.ambient_dimension(), {}};
  const SignVector& xv = c.signs(x);
  for (std::size_t a = 0; a < c.vertex_count(); ++a) {
    const VertexId av(a);
    if (distance(xv, c.signs(av)) > n) {
      continue;
    }
    BigInt value = weight(c, n, xv, z, av);
    if (value != 0) {
      w.values.emplace(av, std::move(value));
    }
  }
  return w;
}

Measure<VertexId> eta(const CubeComplex& c, std::size_t n, VertexId basepoint, const SignVector& z) {
  return weight_vector(c, n, basepoint, z).normalized();
}

BigInt l1_distance(const WeightVector& a, const WeightVector& b) {
  BigInt d(0);
  auto ia = a.values.begin();
  auto ib = b.values.begin();
  while (ia != a.values.end() || ib != b.values.end()) {
    if (ib == b.values.end() || (ia != a.values.end() && ia->first < ib->first)) {
      d += abs(ia->second);
      ++ia;
    } else if (ia == a.values.end() || ib->first < ia->first) {
      d += abs(ib->second);
      ++ib;
    } else {
      d += abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return d;
}

VerificationReport verify_weight_identities(const CubeComplex& c, std::size_t n_max,
                                            const WeightCheckOptions& options) {
  std::vector<SignVector> targets = c.vertices();
  targets.insert(targets.end(), options.extra_targets.begin(), options.extra_targets.end());
  for (const auto& z : targets) {
    if (z.size() != c.hyperplane_count()) {
      throw InputError("target sign vector has the wrong number of hyperplanes");
    }
  }

  const std::size_t nv = c.vertex_count();
  std::vector<VerificationReport> per_source(nv);
  const unsigned jobs = std::max(1U, std::min<unsigned>(options.jobs, static_cast<unsigned>(nv)));
  if (jobs == 1) {
    for (std::size_t x = 0; x < nv; ++x) {
      per_source[x] = check_source(c, n_max, VertexId(x), targets, options);
    }
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(jobs);
    for (unsigned j = 0; j < jobs; ++j) {
      workers.emplace_back([&, j] {
        try {
          for (std::size_t x = j; x < nv; x += jobs) {
            per_source[x] = check_source(c, n_max, VertexId(x), targets, options);
          }
        } catch (...) {
          errors[j] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) {
      w.join();
    }
    for (auto& e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
  }
  VerificationReport report;
  for (auto& r : per_source) {
    report.merge(std::move(r));
  }
  return report;
}

} // namespace cubex
