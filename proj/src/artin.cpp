#include "cubex/artin.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <tuple>
#include <unordered_set>

namespace cubex {

namespace {

std::string coord(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

struct Edge {
  std::size_t u, v;
  std::uint64_t label;
};

/// Canonical string of an edge-labelled tree: AHU encoding rooted at each
/// centre, smallest one kept.
std::string canonical_tree(std::size_t k, const std::vector<Edge>& edges) {
  std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> adj(k);
  for (const auto& e : edges) {
    adj[e.u].push_back({e.v, e.label});
    adj[e.v].push_back({e.u, e.label});
  }
  std::vector<std::size_t> degree(k);
  std::vector<std::size_t> layer;
  for (std::size_t v = 0; v < k; ++v) {
    degree[v] = adj[v].size();
    if (degree[v] <= 1) {
      layer.push_back(v);
    }
  }
  std::size_t remaining = k;
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<std::size_t> next;
    for (std::size_t v : layer) {
      for (auto [w, l] : adj[v]) {
        if (--degree[w] == 1) {
          next.push_back(w);
        }
      }
    }
    layer = std::move(next);
  }

  std::function<std::string(std::size_t, std::size_t)> encode = [&](std::size_t v, std::size_t parent) {
    std::vector<std::string> parts;
    for (auto [w, l] : adj[v]) {
      if (w != parent) {
        parts.push_back(std::to_string(l) + encode(w, v));
      }
    }
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (const auto& p : parts) {
      s += p;
    }
    return s + ")";
  };
  std::string best;
  for (std::size_t c : layer) {
    std::string s = encode(c, k);
    if (best.empty() || s < best) {
      best = std::move(s);
    }
  }
  return best;
}

BigInt factorial(unsigned long n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

BigInt power_of_two(unsigned long n) {
  BigInt p(1);
  p <<= n;
  return p;
}

struct Template {
  std::string type;
  std::vector<Edge> edges;
  BigInt order;
};

std::vector<Edge> path_edges(const std::vector<std::uint64_t>& labels) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    e.push_back({i, i + 1, labels[i]});
  }
  return e;
}

/// The connected finite Coxeter diagrams on k nodes. For k = 2 the label
/// is taken from the component itself (A2, B2 or I2(m)).
std::vector<Template> templates(std::size_t k, std::uint64_t pair_label) {
  std::vector<Template> out;
  const auto n = static_cast<unsigned long>(k);
  if (k == 1) {
    out.push_back({"A1", {}, BigInt(2)});
    return out;
  }
  if (k == 2) {
    if (pair_label == 3) {
      out.push_back({"A2", path_edges({3}), BigInt(6)});
    } else if (pair_label == 4) {
      out.push_back({"B2", path_edges({4}), BigInt(8)});
    } else if (pair_label >= 5) {
      out.push_back({"I2(" + std::to_string(pair_label) + ")", path_edges({pair_label}),
                     BigInt(2) * BigInt(std::to_string(pair_label))});
    }
    return out;
  }
  out.push_back({"A" + std::to_string(k), path_edges(std::vector<std::uint64_t>(k - 1, 3)),
                 factorial(n + 1)});
  std::vector<std::uint64_t> b(k - 1, 3);
  b.back() = 4;
  out.push_back({"B" + std::to_string(k), path_edges(b), power_of_two(n) * factorial(n)});
  if (k >= 4) {
    auto e = path_edges(std::vector<std::uint64_t>(k - 2, 3));
    e.push_back({k - 3, k - 1, 3});
    out.push_back({"D" + std::to_string(k), e, power_of_two(n - 1) * factorial(n)});
  }
  if (k >= 6 && k <= 8) {
    static const std::map<std::size_t, const char*> e_orders{
        {6, "51840"}, {7, "2903040"}, {8, "696729600"}};
    auto e = path_edges(std::vector<std::uint64_t>(k - 2, 3));
    e.push_back({2, k - 1, 3});
    out.push_back({"E" + std::to_string(k), e, BigInt(e_orders.at(k))});
  }
  if (k == 4) {
    out.push_back({"F4", path_edges({3, 4, 3}), BigInt(1152)});
    out.push_back({"H4", path_edges({5, 3, 3}), BigInt(14400)});
  }
  if (k == 3) {
    out.push_back({"H3", path_edges({5, 3}), BigInt(120)});
  }
  return out;
}

} // namespace

std::string to_string(const CoxeterEntry& e) { return e ? std::to_string(*e) : "inf"; }

std::size_t CoxeterMatrix::index(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    throw InputError("unknown generator " + std::string(name));
  }
  return static_cast<std::size_t>(it - names_.begin());
}

CoxeterMatrix validate_matrix(std::vector<std::string> names,
                              std::vector<std::vector<CoxeterEntry>> rows) {
  const std::size_t n = rows.size();
  if (names.size() != n) {
    throw InputError("coxeter matrix has " + std::to_string(n) + " rows but " +
                     std::to_string(names.size()) + " generators");
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : names) {
    if (name.empty() || !seen.insert(name).second) {
      throw InputError("generator names must be non-empty and distinct: '" + name + "'");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw InputError("coxeter matrix row " + std::to_string(i) + " has length " +
                       std::to_string(rows[i].size()) + ", expected " + std::to_string(n));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i][i] != CoxeterEntry(1)) {
      throw InputError("diagonal entry at " + coord(i, i) + " must be 1, got " + to_string(rows[i][i]));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        continue;
      }
      if (rows[i][j] != rows[j][i]) {
        throw InputError("asymmetric at " + coord(i, j) + ": " + to_string(rows[i][j]) + " vs " +
                         to_string(rows[j][i]));
      }
      if (rows[i][j] && *rows[i][j] < 2) {
        throw InputError("off-diagonal entry at " + coord(i, j) + " must be at least 2, got " +
                         to_string(rows[i][j]));
      }
    }
  }
  CoxeterMatrix m;
  m.names_ = std::move(names);
  for (auto& row : rows) {
    m.entries_.insert(m.entries_.end(), row.begin(), row.end());
  }
  return m;
}

CoxeterMatrix parabolic_restrict(const CoxeterMatrix& m, const std::vector<std::size_t>& subset) {
  std::vector<std::string> names;
  std::vector<std::vector<CoxeterEntry>> rows;
  for (std::size_t i : subset) {
    if (i >= m.size()) {
      throw InputError("generator index " + std::to_string(i) + " out of range");
    }
    names.push_back(m.name(i));
    std::vector<CoxeterEntry> row;
    for (std::size_t j : subset) {
      row.push_back(m(i, j));
    }
    rows.push_back(std::move(row));
  }
  return validate_matrix(std::move(names), std::move(rows));
}

CoxeterMatrix parabolic_restrict(const CoxeterMatrix& m, const std::vector<std::string>& subset) {
  std::vector<std::size_t> idx;
  for (const auto& name : subset) {
    idx.push_back(m.index(name));
  }
  return parabolic_restrict(m, idx);
}

std::string SphericalResult::decomposition() const {
  if (components.empty()) {
    return "trivial";
  }
  std::string s;
  for (const auto& c : components) {
    if (!s.empty()) {
      s += "x";
    }
    s += c.type;
  }
  return s;
}

SphericalResult spherical_classify(const CoxeterMatrix& m, const std::vector<std::size_t>& subset) {
  SphericalResult result;
  const std::size_t k = subset.size();
  for (std::size_t a = 0; a < k; ++a) {
    if (subset[a] >= m.size()) {
      throw InputError("generator index " + std::to_string(subset[a]) + " out of range");
    }
    for (std::size_t b = a + 1; b < k; ++b) {
      if (!m.finite(subset[a], subset[b])) {
        result.reason = "infinite label between " + m.name(subset[a]) + " and " + m.name(subset[b]);
        return result;
      }
    }
  }

  // Connected components of the diagram (edges where the label is >= 3).
  std::vector<std::size_t> component(k, k);
  std::size_t count = 0;
  for (std::size_t s = 0; s < k; ++s) {
    if (component[s] != k) {
      continue;
    }
    std::vector<std::size_t> stack{s};
    component[s] = count;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w = 0; w < k; ++w) {
        if (component[w] == k && *m(subset[v], subset[w]) >= 3) {
          component[w] = count;
          stack.push_back(w);
        }
      }
    }
    ++count;
  }

  result.order = 1;
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t v = 0; v < k; ++v) {
      if (component[v] == c) {
        members.push_back(v);
      }
    }
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const std::uint64_t label = *m(subset[members[a]], subset[members[b]]);
        if (label >= 3) {
          edges.push_back({a, b, label});
        }
      }
    }
    std::vector<std::string> gens;
    for (std::size_t v : members) {
      gens.push_back(m.name(subset[v]));
    }
    auto describe = [&] {
      std::string s;
      for (const auto& g : gens) {
        s += (s.empty() ? "" : ",") + g;
      }
      return "{" + s + "}";
    };
    if (edges.size() != members.size() - 1) {
      result.reason = "diagram component " + describe() + " contains a cycle";
      result.components.clear();
      return result;
    }
    const std::string form = canonical_tree(members.size(), edges);
    const std::uint64_t pair_label = members.size() == 2 ? edges[0].label : 0;
    const Template* match = nullptr;
    const auto candidates = templates(members.size(), pair_label);
    for (const auto& t : candidates) {
      if (canonical_tree(members.size(), t.edges) == form) {
        match = &t;
        break;
      }
    }
    if (match == nullptr) {
      result.reason = "diagram component " + describe() + " is not a finite Coxeter type";
      result.components.clear();
      return result;
    }
    result.components.push_back({match->type, gens, match->order});
    result.order *= match->order;
  }
  result.spherical = true;
  return result;
}

SphericalResult spherical_classify(const CoxeterMatrix& m) {
  std::vector<std::size_t> all(m.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    all[i] = i;
  }
  return spherical_classify(m, all);
}

FCVerdict fc_check(const CoxeterMatrix& m, const FCOptions& options) {
  const std::size_t n = m.size();
  if (n > options.max_generators || n > 64) {
    throw CapacityError("fc_check supports at most " +
                            std::to_string(std::min<std::size_t>(options.max_generators, 64)) +
                            " generators",
                        n);
  }
  using Mask = std::uint64_t;
  std::vector<Mask> neighbours(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && m.finite(i, j)) {
        neighbours[i] |= Mask{1} << j;
      }
    }
  }

  FCVerdict verdict;
  std::vector<std::vector<std::size_t>> cliques;
  // Bron-Kerbosch with a max-degree pivot; candidates taken lowest index first.
  std::function<void(Mask, Mask, Mask)> expand = [&](Mask r, Mask p, Mask x) {
    if (p == 0 && x == 0) {
      if (cliques.size() >= options.max_cliques) {
        throw CapacityError("clique cap", cliques.size());
      }
      std::vector<std::size_t> clique;
      for (std::size_t i = 0; i < n; ++i) {
        if ((r >> i) & 1U) {
          clique.push_back(i);
        }
      }
      cliques.push_back(std::move(clique));
      return;
    }
    std::size_t pivot = 0;
    int best = -1;
    for (std::size_t u = 0; u < n; ++u) {
      if (((p | x) >> u) & 1U) {
        const int d = std::popcount(p & neighbours[u]);
        if (d > best) {
          best = d;
          pivot = u;
        }
      }
    }
    Mask candidates = p & ~neighbours[pivot];
    for (std::size_t v = 0; v < n; ++v) {
      if (!((candidates >> v) & 1U)) {
        continue;
      }
      const Mask bit = Mask{1} << v;
      expand(r | bit, p & neighbours[v], x & neighbours[v]);
      p &= ~bit;
      x |= bit;
    }
  };

  const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  auto record = [&] {
    for (const auto& clique : cliques) {
      CliqueRecord rec;
      for (std::size_t i : clique) {
        rec.clique.push_back(m.name(i));
      }
      rec.classification = spherical_classify(m, clique);
      if (!rec.classification.spherical && verdict.is_fc) {
        verdict.is_fc = false;
        verdict.witness = rec.clique;
      }
      verdict.cliques.push_back(std::move(rec));
    }
  };
  try {
    expand(0, all, 0);
  } catch (const CapacityError&) {
    record();
    throw CliqueCapacityError("maximal clique enumeration exceeded " +
                                  std::to_string(options.max_cliques) + " cliques",
                              std::move(verdict));
  }
  record();
  return verdict;
}

ExactnessReport exactness_report(const CoxeterMatrix& m, const FCOptions& options) {
  ExactnessReport report;
  report.fc = fc_check(m, options);
  report.exact = report.fc.is_fc;
  if (report.exact) {
    report.verdict = "exact";
    std::set<std::string> types;
    for (const auto& rec : report.fc.cliques) {
      types.insert(rec.classification.decomposition());
    }
    report.stabilizer_types.assign(types.begin(), types.end());
  } else {
    report.verdict = "inapplicable";
    report.witness = report.fc.witness;
  }
  return report;
}

} // namespace cubex
