#include "cubex/actions.hpp"
#include "cubex/artin.hpp"
#include "cubex/complex.hpp"
#include "cubex/continuity.hpp"
#include "cubex/errors.hpp"
#include "cubex/families.hpp"
#include "cubex/io.hpp"
#include "cubex/weights.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace cubex;

namespace {

py::object to_py(const BigInt& z) {
  const std::string s = z.get_str();
  return py::reinterpret_steal<py::object>(PyLong_FromString(s.c_str(), nullptr, 10));
}

py::object to_py(const Rational& q) {
  return py::module_::import("fractions").attr("Fraction")(to_py(BigInt(q.get_num())), to_py(BigInt(q.get_den())));
}

Rational from_py(const py::handle& h) {
  return parse_rational(py::str(h).cast<std::string>());
}

std::vector<int> signs_list(const SignVector& v) {
  std::vector<int> out;
  for (std::size_t h = 0; h < v.size(); ++h) {
    out.push_back(to_int(v[HyperplaneId(h)]));
  }
  return out;
}

SignVector to_signs(const CubeComplex& c, const std::vector<int>& values) {
  if (values.size() != c.hyperplane_count()) {
    throw InputError("sign vector has " + std::to_string(values.size()) + " entries, expected " +
                     std::to_string(c.hyperplane_count()));
  }
  std::vector<Sign> s;
  for (int v : values) {
    if (v != 1 && v != -1) {
      throw InputError("sign entries must be +1 or -1");
    }
    s.push_back(v == 1 ? Sign::Plus : Sign::Minus);
  }
  return SignVector::from_signs(s);
}

// A vertex name or a list of signs.
SignVector point(const CubeComplex& c, const py::handle& h) {
  if (py::isinstance<py::str>(h)) {
    return c.signs(c.vertex(h.cast<std::string>()));
  }
  return to_signs(c, h.cast<std::vector<int>>());
}

py::dict report_dict(const VerificationReport& r) {
  py::list findings;
  for (const auto& f : r.violations) {
    py::dict d;
    d["kind"] = f.kind;
    d["message"] = f.message;
    d["witness"] = f.witness;
    findings.append(d);
  }
  py::dict out;
  out["ok"] = r.ok();
  out["checks"] = r.checks;
  out["findings"] = findings;
  return out;
}

py::dict vertex_measure(const CubeComplex& c, const Measure<VertexId>& m) {
  py::dict out;
  for (const auto& [v, mass] : m.masses()) {
    out[py::str(c.vertex_name(v))] = to_py(mass);
  }
  return out;
}

struct Action {
  CubeComplex complex;
  GroupAction group;

  GroupElement element(const std::string& word) const {
    for (std::size_t g = 0; g < group.order(); ++g) {
      if (group.word(GroupElement(g)) == word) {
        return GroupElement(g);
      }
    }
    throw InputError("unknown group element " + word);
  }

  py::dict measure(const Measure<GroupElement>& m) const {
    py::dict out;
    for (const auto& [g, mass] : m.masses()) {
      out[py::str(group.word(g))] = to_py(mass);
    }
    return out;
  }
};

Action make_action(const CubeComplex& c, const std::map<std::string, std::map<std::string, std::string>>& gens) {
  std::vector<NamedPermutation> perms;
  for (const auto& [name, images] : gens) {
    NamedPermutation p{name, {}};
    for (std::size_t v = 0; v < c.vertex_count(); ++v) {
      p.images.push_back(VertexId(v));
    }
    for (const auto& [from, to] : images) {
      p.images[c.vertex(from).index()] = c.vertex(to);
    }
    perms.push_back(std::move(p));
  }
  return Action{c, GroupAction::create(c, std::move(perms))};
}

CoxeterMatrix coxeter(std::vector<std::string> names, const py::list& rows) {
  std::vector<std::vector<CoxeterEntry>> entries;
  for (const auto& row : rows) {
    std::vector<CoxeterEntry> r;
    for (const auto& e : row) {
      if (e.is_none() || (py::isinstance<py::str>(e) && e.cast<std::string>() == "inf") ||
          (py::isinstance<py::float_>(e) && std::isinf(e.cast<double>()))) {
        r.push_back(kInfinity);
      } else {
        const long v = e.cast<long>();
        if (v < 1) {
          throw InputError("Coxeter labels must be positive or infinite");
        }
        r.push_back(static_cast<std::uint64_t>(v));
      }
    }
    entries.push_back(std::move(r));
  }
  return validate_matrix(std::move(names), std::move(entries));
}

py::dict fc_dict(const FCVerdict& v) {
  py::list cliques;
  for (const auto& rec : v.cliques) {
    py::dict d;
    d["clique"] = rec.clique;
    d["spherical"] = rec.classification.spherical;
    d["type"] = rec.classification.spherical ? py::object(py::str(rec.classification.decomposition())) : py::none();
    d["order"] = rec.classification.spherical ? to_py(rec.classification.order) : py::none();
    cliques.append(d);
  }
  py::dict out;
  out["is_fc"] = v.is_fc;
  out["witness"] = v.witness ? py::cast(*v.witness) : py::none();
  out["cliques"] = cliques;
  return out;
}

} // namespace

PYBIND11_MODULE(_cubex, m) {
  m.doc() = "CAT(0) cube complex combinatorics with exact arithmetic";
  m.attr("__version__") = "0.1.0";

  py::register_exception<Error>(m, "CubexError", PyExc_ValueError);

  py::class_<CubeComplex>(m, "Complex")
      .def_property_readonly("vertex_count", &CubeComplex::vertex_count)
      .def_property_readonly("hyperplane_count", &CubeComplex::hyperplane_count)
      .def_property_readonly("ambient_dimension", &CubeComplex::ambient_dimension)
      .def_property_readonly("base", [](const CubeComplex& c) { return c.vertex_name(c.base()); })
      .def_property_readonly("vertices", &CubeComplex::vertex_names)
      .def_property_readonly("hyperplanes", &CubeComplex::hyperplane_names)
      .def("signs", [](const CubeComplex& c, const std::string& v) { return signs_list(c.signs(c.vertex(v))); })
      .def("distance", [](const CubeComplex& c, const py::object& x, const py::object& y) {
        return distance(point(c, x), point(c, y));
      })
      .def("median",
           [](const CubeComplex& c, const py::object& x, const py::object& y, const py::object& z) -> py::object {
             const SignVector mv = median(point(c, x), point(c, y), point(c, z));
             if (auto v = c.find(mv)) {
               return py::str(c.vertex_name(*v));
             }
             return py::cast(signs_list(mv));
           })
      .def("interval",
           [](const CubeComplex& c, const py::object& x, const py::object& z) {
             std::vector<std::string> out;
             for (VertexId v : interval(c, point(c, x), point(c, z))) {
               out.push_back(c.vertex_name(v));
             }
             return out;
           })
      .def("adjacent",
           [](const CubeComplex& c, const std::string& v) {
             std::vector<std::string> out;
             for (HyperplaneId h : c.adjacent(c.vertex(v))) {
               out.push_back(c.hyperplane_name(h));
             }
             return out;
           })
      .def("is_admissible", [](const CubeComplex& c, const std::vector<int>& z) { return is_admissible(c, to_signs(c, z)); })
      .def("validate", [](const CubeComplex& c) { return report_dict(validate_complex(c)); })
      .def("with_ambient_dimension", &CubeComplex::with_ambient_dimension)
      .def("to_json", [](const CubeComplex& c) { return complex_to_json(c); })
      .def("__repr__", [](const CubeComplex& c) {
        return "<Complex " + std::to_string(c.vertex_count()) + " vertices, " + std::to_string(c.hyperplane_count()) +
               " hyperplanes, N=" + std::to_string(c.ambient_dimension()) + ">";
      });

  m.def("family", [](const std::string& spec) { return build_family(FamilySpec::parse(spec)); }, py::arg("spec"));
  m.def("parse_complex", [](const std::string& text) { return parse_complex(text); }, py::arg("text"));
  m.def("load_complex", &load_complex_file, py::arg("path"));
  m.def(
      "median_closure",
      [](const std::vector<std::vector<int>>& vectors, const std::vector<std::string>& names) {
        std::vector<SignVector> vs;
        for (const auto& v : vectors) {
          std::vector<Sign> s;
          for (int x : v) {
            s.push_back(x < 0 ? Sign::Minus : Sign::Plus);
          }
          vs.push_back(SignVector::from_signs(s));
        }
        return median_closure(vs, names);
      },
      py::arg("vectors"), py::arg("hyperplanes") = std::vector<std::string>{});
  m.def(
      "ideal_points",
      [](const std::string& spec) {
        py::dict out;
        for (const auto& p : ideal_points(FamilySpec::parse(spec))) {
          out[py::str(p.label)] = signs_list(p.restriction);
        }
        return out;
      },
      py::arg("spec"));

  m.def(
      "weights",
      [](const CubeComplex& c, std::size_t n, const std::string& source, const py::object& target, bool normalized) {
        const WeightVector w = weight_vector(c, n, c.vertex(source), point(c, target));
        if (normalized) {
          return vertex_measure(c, w.normalized());
        }
        py::dict out;
        for (const auto& [v, value] : w.values) {
          out[py::str(c.vertex_name(v))] = to_py(value);
        }
        return out;
      },
      py::arg("complex"), py::arg("n"), py::arg("source"), py::arg("target"), py::arg("normalized") = false);
  m.def(
      "eta",
      [](const CubeComplex& c, std::size_t n, const py::object& target, std::optional<std::string> basepoint) {
        const VertexId x0 = basepoint ? c.vertex(*basepoint) : c.base();
        return vertex_measure(c, eta(c, n, x0, point(c, target)));
      },
      py::arg("complex"), py::arg("n"), py::arg("target"), py::arg("basepoint") = py::none());
  m.def(
      "verify_weights",
      [](const CubeComplex& c, std::size_t n_max, unsigned jobs, bool triangle_bound) {
        WeightCheckOptions opts;
        opts.jobs = jobs;
        opts.triangle_bound = triangle_bound;
        VerificationReport r;
        {
          py::gil_scoped_release release;
          r = verify_weight_identities(c, n_max, opts);
        }
        return report_dict(r);
      },
      py::arg("complex"), py::arg("n_max"), py::arg("jobs") = 1, py::arg("triangle_bound") = true);

  m.def(
      "phi",
      [](const CubeComplex& c, const std::string& x, const std::string& a, std::size_t n, const py::object& z) {
        return to_py(phi(c, PhiQuery{c.vertex(x), c.vertex(a), n}, point(c, z)));
      },
      py::arg("complex"), py::arg("x"), py::arg("a"), py::arg("n"), py::arg("z"));
  m.def(
      "continuity",
      [](const std::string& spec, const std::string& x, const std::string& a, std::size_t n) {
        const FamilySpec fs = FamilySpec::parse(spec);
        const CubeComplex c = build_family(fs);
        const FamilyAnnotations ann = annotate_family(fs);
        const FamilyAnnotations* annp = &ann;
        const PhiQuery q{c.vertex(x), c.vertex(a), n};
        py::list out;
        for (const auto& p : probe_points(c, annp)) {
          const auto v = continuity_classify(c, q, p, annp);
          py::dict d;
          d["point"] = p.label;
          d["value"] = to_py(phi(c, q, p.z));
          d["verdict"] = to_string(v.verdict);
          d["rule"] = v.rule;
          out.append(d);
        }
        return out;
      },
      py::arg("spec"), py::arg("x"), py::arg("a"), py::arg("n"));

  py::class_<Action>(m, "Action")
      .def(py::init(&make_action), py::arg("complex"), py::arg("generators"))
      .def_static(
          "builtin",
          [](const std::string& spec) {
            const FamilySpec fs = FamilySpec::parse(spec);
            CubeComplex c = build_family(fs);
            GroupAction g = GroupAction::create(c, standard_symmetries(fs));
            return Action{std::move(c), std::move(g)};
          },
          py::arg("spec"))
      .def_property_readonly("complex", [](const Action& a) { return a.complex; })
      .def_property_readonly("order", [](const Action& a) { return a.group.order(); })
      .def_property_readonly("generators",
                             [](const Action& a) {
                               std::vector<std::string> out;
                               for (std::size_t i = 0; i < a.group.generator_count(); ++i) {
                                 out.push_back(a.group.generator_name(i));
                               }
                               return out;
                             })
      .def_property_readonly("elements",
                             [](const Action& a) {
                               std::vector<std::string> out;
                               for (std::size_t g = 0; g < a.group.order(); ++g) {
                                 out.push_back(a.group.word(GroupElement(g)));
                               }
                               return out;
                             })
      .def("apply",
           [](const Action& a, const std::string& g, const std::string& v) {
             return a.complex.vertex_name(a.group.apply(a.element(g), a.complex.vertex(v)));
           })
      .def("multiply",
           [](const Action& a, const std::string& g, const std::string& h) {
             return a.group.word(a.group.multiply(a.element(g), a.element(h)));
           })
      .def("inverse", [](const Action& a, const std::string& g) { return a.group.word(a.group.inverse(a.element(g))); })
      .def("verify_cosets",
           [](const Action& a) {
             const OrbitData orbits = orbit_transversal(a.group);
             VerificationReport r = verify_coset_identities(a.group, orbits);
             r.merge(verify_sigma_equivariance(a.group, orbits));
             return report_dict(r);
           })
      .def(
          "certificate",
          [](const Action& a, std::size_t n, const py::object& epsilon, std::optional<std::vector<std::string>> gen_set,
             std::optional<std::string> origin) {
            std::vector<std::string> names;
            if (gen_set) {
              names = *gen_set;
            } else {
              for (std::size_t i = 0; i < a.group.generator_count(); ++i) {
                names.push_back(a.group.generator_name(i));
              }
            }
            CertificateInput in;
            in.n = n;
            in.epsilon = from_py(epsilon);
            in.origin = origin ? a.complex.vertex(*origin) : a.complex.base();
            in.E = symmetric_set(a.group, names);
            in.default_nu = StabilizerMeasures::make_uniform();
            const OrbitData orbits = orbit_transversal(a.group);
            const Certificate cert = build_mu(a.complex, a.group, orbits, in);
            const CertificateVerification ver = verify_mu(a.group, cert, in);

            py::dict mu;
            for (std::size_t x = 0; x < cert.mu.size(); ++x) {
              mu[py::str(a.group.word(GroupElement(x)))] = a.measure(cert.mu[x]);
            }
            py::list per;
            for (const auto& row : ver.per_s) {
              py::dict d;
              d["s"] = a.group.word(row.s);
              d["dev"] = to_py(row.dev);
              d["eps_eta"] = to_py(row.eps_eta);
              d["bound_holds"] = row.bound_holds;
              per.append(d);
            }
            VerificationReport checks = cert.construction;
            checks.merge(ver.report);
            py::dict out;
            out["mu"] = mu;
            out["per_generator"] = per;
            out["eps_nu"] = to_py(ver.eps_nu);
            out["max_dev"] = to_py(ver.max_dev);
            out["bounds_hold"] = ver.bounds_hold;
            out["below_epsilon"] = ver.below_epsilon;
            out["checks"] = report_dict(checks);
            return out;
          },
          py::arg("n"), py::arg("epsilon") = 1, py::arg("gen_set") = py::none(), py::arg("origin") = py::none())
      .def("__repr__", [](const Action& a) { return "<Action of order " + std::to_string(a.group.order()) + ">"; });

  m.def(
      "artin_fc", [](std::vector<std::string> names, const py::list& rows) { return fc_dict(fc_check(coxeter(std::move(names), rows))); },
      py::arg("names"), py::arg("matrix"));
  m.def(
      "artin_report",
      [](std::vector<std::string> names, const py::list& rows) {
        const ExactnessReport r = exactness_report(coxeter(std::move(names), rows));
        py::dict out;
        out["exact"] = r.exact;
        out["verdict"] = r.verdict;
        out["stabilizer_types"] = r.stabilizer_types;
        out["witness"] = r.witness ? py::cast(*r.witness) : py::none();
        out["fc"] = fc_dict(r.fc);
        return out;
      },
      py::arg("names"), py::arg("matrix"));
}
