#include "cubex/complex.hpp"

#include "cubex/errors.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <unordered_set>

namespace cubex {

CubeComplex::CubeComplex(std::vector<std::string> hyperplane_names,
                         std::vector<std::string> vertex_names,
                         std::vector<SignVector> vertices,
                         VertexId base,
                         std::size_t ambient_dimension)
    : hyperplane_names_(std::move(hyperplane_names)),
      vertex_names_(std::move(vertex_names)),
      vertices_(std::move(vertices)),
      base_(base),
      ambient_dimension_(ambient_dimension) {
  if (vertex_names_.size() != vertices_.size()) {
    throw InputError("vertex name count does not match vertex count");
  }
  if (vertices_.empty()) {
    throw InputError("a complex needs at least one vertex");
  }
  if (base_.index() >= vertices_.size()) {
    throw InputError("base vertex out of range");
  }
  for (std::size_t h = 0; h < hyperplane_names_.size(); ++h) {
    if (!hyperplane_by_name_.emplace(hyperplane_names_[h], HyperplaneId(h)).second) {
      throw InputError("duplicate hyperplane name '" + hyperplane_names_[h] + "'");
    }
  }
  index_.reserve(vertices_.size());
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].size() != hyperplane_names_.size()) {
      throw InputError("vertex '" + vertex_names_[v] + "' has " +
                       std::to_string(vertices_[v].size()) + " signs, expected " +
                       std::to_string(hyperplane_names_.size()));
    }
    if (!vertex_by_name_.emplace(vertex_names_[v], VertexId(v)).second) {
      throw InputError("duplicate vertex name '" + vertex_names_[v] + "'");
    }
    auto [it, fresh] = index_.emplace(vertices_[v], VertexId(v));
    if (!fresh) {
      throw InputError("vertices '" + vertex_names_[it->second.index()] + "' and '" +
                       vertex_names_[v] + "' have the same sign vector");
    }
  }
  adjacency_.resize(vertices_.size());
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    SignVector probe = vertices_[v];
    for (std::size_t h = 0; h < hyperplane_names_.size(); ++h) {
      probe.flip(HyperplaneId(h));
      if (index_.contains(probe)) {
        adjacency_[v].emplace_back(h);
      }
      probe.flip(HyperplaneId(h));
    }
  }
}

std::optional<VertexId> CubeComplex::find(const SignVector& v) const {
  if (auto it = index_.find(v); it != index_.end()) {
    return it->second;
  }
  return std::nullopt;
}

std::optional<VertexId> CubeComplex::find_vertex(std::string_view name) const {
  if (auto it = vertex_by_name_.find(std::string(name)); it != vertex_by_name_.end()) {
    return it->second;
  }
  return std::nullopt;
}

std::optional<HyperplaneId> CubeComplex::find_hyperplane(std::string_view name) const {
  if (auto it = hyperplane_by_name_.find(std::string(name)); it != hyperplane_by_name_.end()) {
    return it->second;
  }
  return std::nullopt;
}

VertexId CubeComplex::vertex(std::string_view name) const {
  if (auto v = find_vertex(name)) {
    return *v;
  }
  throw InputError("unknown vertex '" + std::string(name) + "'");
}

HyperplaneId CubeComplex::hyperplane(std::string_view name) const {
  if (auto h = find_hyperplane(name)) {
    return *h;
  }
  throw InputError("unknown hyperplane '" + std::string(name) + "'");
}

CubeComplex CubeComplex::with_ambient_dimension(std::size_t n) const {
  CubeComplex out(*this);
  out.ambient_dimension_ = n;
  return out;
}

namespace {

using Bits = std::vector<std::uint64_t>;

/// Minus-side membership of each hyperplane as a bitset over vertices.
std::vector<Bits> minus_sides(const CubeComplex& c) {
  const std::size_t words = (c.vertex_count() + 63) / 64;
  std::vector<Bits> sides(c.hyperplane_count(), Bits(words, 0));
  for (std::size_t v = 0; v < c.vertex_count(); ++v) {
    for (HyperplaneId h : c.signs(VertexId(v)).negative_set()) {
      sides[h.index()][v >> 6] |= std::uint64_t{1} << (v & 63);
    }
  }
  return sides;
}

std::size_t popcount(const Bits& b) {
  std::size_t n = 0;
  for (auto w : b) {
    n += static_cast<std::size_t>(std::popcount(w));
  }
  return n;
}

std::size_t popcount_and(const Bits& a, const Bits& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    n += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  }
  return n;
}

struct BitsHash {
  std::size_t operator()(const Bits& b) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto w : b) {
      h = (h ^ w) * 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Partition key: complement the minus side when it contains vertex 0 so a
/// hyperplane and its reorientation give the same key.
Bits partition_key(Bits side, std::size_t vertex_count) {
  if (!side.empty() && (side[0] & 1U)) {
    for (auto& w : side) {
      w = ~w;
    }
    if (vertex_count % 64 != 0) {
      side.back() &= (std::uint64_t{1} << (vertex_count % 64)) - 1;
    }
  }
  return side;
}

void check_median_triple(const CubeComplex& c, std::size_t i, std::size_t j, std::size_t k,
                         ValidationReport& report, std::size_t& reported) {
  ++report.checks;
  const SignVector m = majority(c.signs(VertexId(i)), c.signs(VertexId(j)), c.signs(VertexId(k)));
  if (!c.find(m) && reported < 16) {
    ++reported;
    report.fail("median-closure",
                "the median of " + c.vertex_name(VertexId(i)) + ", " + c.vertex_name(VertexId(j)) +
                    ", " + c.vertex_name(VertexId(k)) + " is not a vertex",
                {c.vertex_name(VertexId(i)), c.vertex_name(VertexId(j)), c.vertex_name(VertexId(k))});
  }
}

/// Maximum clique size by Bron-Kerbosch with pivoting. `adj` is symmetric.
std::size_t max_clique(const std::vector<std::vector<char>>& adj) {
  std::size_t best = 0;
  auto recurse = [&](auto&& self, std::vector<std::size_t>& r, std::vector<std::size_t> p,
                     std::vector<std::size_t> x) -> void {
    if (p.empty() && x.empty()) {
      best = std::max(best, r.size());
      return;
    }
    if (r.size() + p.size() <= best) {
      return;
    }
    std::size_t pivot = p.empty() ? x.front() : p.front();
    std::size_t pivot_degree = 0;
    for (auto u : p) {
      std::size_t d = 0;
      for (auto w : p) {
        d += static_cast<std::size_t>(adj[u][w]);
      }
      if (d >= pivot_degree) {
        pivot = u;
        pivot_degree = d;
      }
    }
    std::vector<std::size_t> candidates;
    for (auto u : p) {
      if (!adj[pivot][u]) {
        candidates.push_back(u);
      }
    }
    for (auto v : candidates) {
      std::vector<std::size_t> np, nx;
      for (auto w : p) {
        if (adj[v][w]) {
          np.push_back(w);
        }
      }
      for (auto w : x) {
        if (adj[v][w]) {
          nx.push_back(w);
        }
      }
      r.push_back(v);
      self(self, r, std::move(np), std::move(nx));
      r.pop_back();
      std::erase(p, v);
      x.push_back(v);
    }
  };
  std::vector<std::size_t> r, p(adj.size());
  for (std::size_t i = 0; i < adj.size(); ++i) {
    p[i] = i;
  }
  recurse(recurse, r, std::move(p), {});
  return best;
}

} // namespace

ValidationReport validate_complex(const CubeComplex& c, const ValidationOptions& options) {
  ValidationReport report;
  const std::size_t nv = c.vertex_count();

  ++report.checks;
  if (const auto minus = c.signs(c.base()).negative_set(); !minus.empty()) {
    std::vector<std::string> witness{c.vertex_name(c.base())};
    for (auto h : minus) {
      witness.push_back(c.hyperplane_name(h));
    }
    report.fail("base-orientation", "base vertex has sign -1 on some hyperplane", witness);
  }

  const auto sides = minus_sides(c);
  std::unordered_map<Bits, HyperplaneId, BitsHash> seen;
  for (std::size_t h = 0; h < c.hyperplane_count(); ++h) {
    ++report.checks;
    const std::size_t minus = popcount(sides[h]);
    if (minus == 0 || minus == nv) {
      report.fail("non-separating",
                  "hyperplane " + c.hyperplane_name(HyperplaneId(h)) +
                      " has the same sign on every vertex",
                  {c.hyperplane_name(HyperplaneId(h))});
      continue;
    }
    auto [it, fresh] = seen.emplace(partition_key(sides[h], nv), HyperplaneId(h));
    if (!fresh) {
      report.fail("duplicate-partition",
                  "hyperplanes " + c.hyperplane_name(it->second) + " and " +
                      c.hyperplane_name(HyperplaneId(h)) + " induce the same vertex partition",
                  {c.hyperplane_name(it->second), c.hyperplane_name(HyperplaneId(h))});
    }
  }

  std::size_t reported = 0;
  if (nv <= options.exhaustive_vertex_limit) {
    for (std::size_t i = 0; i < nv; ++i) {
      for (std::size_t j = i + 1; j < nv; ++j) {
        for (std::size_t k = j + 1; k < nv; ++k) {
          check_median_triple(c, i, j, k, report, reported);
        }
      }
    }
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, nv - 1);
    for (std::size_t s = 0; s < options.sampled_triples; ++s) {
      check_median_triple(c, pick(rng), pick(rng), pick(rng), report, reported);
    }
  }

  ++report.checks;
  if (const std::size_t dim = dimension_estimate(c); dim > c.ambient_dimension()) {
    report.fail("ambient-dimension",
                "ambient dimension " + std::to_string(c.ambient_dimension()) +
                    " is below the dimension estimate " + std::to_string(dim));
  }
  return report;
}

std::vector<HyperplaneId> separators(const SignVector& x, const SignVector& y) {
  return differing(x, y);
}

std::vector<HyperplaneId> separators(const CubeComplex& c, VertexId x, VertexId y) {
  return differing(c.signs(x), c.signs(y));
}

std::size_t distance(const SignVector& x, const SignVector& y) { return hamming(x, y); }

std::size_t distance(const CubeComplex& c, VertexId x, VertexId y) {
  return hamming(c.signs(x), c.signs(y));
}

SignVector median(const SignVector& x, const SignVector& y, const SignVector& z) {
  return majority(x, y, z);
}

std::vector<VertexId> interval(const CubeComplex& c, const SignVector& x, const SignVector& y) {
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < c.vertex_count(); ++v) {
    if (between(c.signs(VertexId(v)), x, y)) {
      out.emplace_back(v);
    }
  }
  return out;
}

bool interval_membership(const SignVector& a, const SignVector& x, const SignVector& y) {
  return between(a, x, y);
}

std::optional<VertexId> neighbor_across(const CubeComplex& c, VertexId a, HyperplaneId h) {
  if (h.index() >= c.hyperplane_count()) {
    throw InputError("unknown hyperplane index " + std::to_string(h.index()));
  }
  return c.find(c.signs(a).flipped(h));
}

std::vector<HyperplaneId> adjacent_hyperplanes(const CubeComplex& c, VertexId a) {
  auto adj = c.adjacent(a);
  return {adj.begin(), adj.end()};
}

bool crosses(const CubeComplex& c, HyperplaneId h, HyperplaneId k) {
  unsigned seen = 0;
  for (const auto& v : c.vertices()) {
    seen |= 1U << ((v[h] == Sign::Minus ? 2 : 0) + (v[k] == Sign::Minus ? 1 : 0));
    if (seen == 0xF) {
      return true;
    }
  }
  return false;
}

std::size_t dimension_estimate(const CubeComplex& c) {
  std::size_t dim = 0;
  for (std::size_t v = 0; v < c.vertex_count(); ++v) {
    const auto adj = c.adjacent(VertexId(v));
    if (adj.size() <= dim) {
      continue;
    }
    std::vector<std::vector<char>> square(adj.size(), std::vector<char>(adj.size(), 0));
    for (std::size_t i = 0; i < adj.size(); ++i) {
      for (std::size_t j = i + 1; j < adj.size(); ++j) {
        SignVector corner = c.signs(VertexId(v)).flipped(adj[i]);
        corner.flip(adj[j]);
        square[i][j] = square[j][i] = c.find(corner).has_value() ? 1 : 0;
      }
    }
    dim = std::max(dim, max_clique(square));
  }
  return dim;
}

QuadrantTable::QuadrantTable(const CubeComplex& c)
    : count_(c.hyperplane_count()), masks_(count_ * count_, 0) {
  const auto sides = minus_sides(c);
  std::vector<std::size_t> minus(count_);
  for (std::size_t h = 0; h < count_; ++h) {
    minus[h] = popcount(sides[h]);
  }
  const std::size_t nv = c.vertex_count();
  for (std::size_t h = 0; h < count_; ++h) {
    for (std::size_t k = h; k < count_; ++k) {
      const std::size_t mm = popcount_and(sides[h], sides[k]);
      const std::size_t mp = minus[h] - mm;
      const std::size_t pm = minus[k] - mm;
      const std::size_t pp = nv - minus[h] - minus[k] + mm;
      // bit (2*[h minus] + [k minus])
      std::uint8_t mask = static_cast<std::uint8_t>((pp ? 1 : 0) | (pm ? 2 : 0) | (mp ? 4 : 0) |
                                                    (mm ? 8 : 0));
      masks_[h * count_ + k] = mask;
      std::uint8_t swapped = static_cast<std::uint8_t>((pp ? 1 : 0) | (mp ? 2 : 0) |
                                                       (pm ? 4 : 0) | (mm ? 8 : 0));
      masks_[k * count_ + h] = swapped;
    }
  }
}

bool QuadrantTable::realized(HyperplaneId h, Sign sh, HyperplaneId k, Sign sk) const {
  const unsigned bit = (sh == Sign::Minus ? 2U : 0U) + (sk == Sign::Minus ? 1U : 0U);
  return (masks_[h.index() * count_ + k.index()] >> bit) & 1U;
}

bool is_admissible(const QuadrantTable& table, const SignVector& z) {
  const std::size_t n = table.hyperplane_count();
  if (z.size() != n) {
    throw InputError("sign vector has " + std::to_string(z.size()) + " entries, expected " +
                     std::to_string(n));
  }
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t k = h; k < n; ++k) {
      if (!table.realized(HyperplaneId(h), z[HyperplaneId(h)], HyperplaneId(k),
                          z[HyperplaneId(k)])) {
        return false;
      }
    }
  }
  return true;
}

bool is_admissible(const CubeComplex& c, const SignVector& z) {
  return is_admissible(QuadrantTable(c), z);
}

AdmissibleEnumeration enumerate_admissible(const CubeComplex& c, std::size_t limit) {
  const QuadrantTable table(c);
  const std::size_t n = c.hyperplane_count();
  AdmissibleEnumeration out;
  SignVector current(n);

  auto consistent = [&](std::size_t i, Sign s) {
    for (std::size_t j = 0; j <= i; ++j) {
      const Sign sj = j == i ? s : current[HyperplaneId(j)];
      if (!table.realized(HyperplaneId(j), sj, HyperplaneId(i), s)) {
        return false;
      }
    }
    return true;
  };

  auto recurse = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) {
      if (out.vectors.size() >= limit) {
        out.partial = true;
        return false;
      }
      out.vectors.push_back(current);
      return true;
    }
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      if (consistent(i, s)) {
        current.set(HyperplaneId(i), s);
        if (!self(self, i + 1)) {
          return false;
        }
      }
    }
    current.set(HyperplaneId(i), Sign::Plus);
    return true;
  };
  recurse(recurse, 0);
  std::sort(out.vectors.begin(), out.vectors.end());
  return out;
}

SignVector Automorphism::apply(const SignVector& z) const {
  SignVector out(z.size());
  for (std::size_t h = 0; h < z.size(); ++h) {
    const Sign s = z[HyperplaneId(h)];
    out.set(hyperplane_image[h], orientation[h] == Sign::Plus ? s : -s);
  }
  return out;
}

std::optional<Automorphism> induced_automorphism(const CubeComplex& c,
                                                 std::span<const VertexId> vertex_image) {
  const std::size_t nv = c.vertex_count();
  if (vertex_image.size() != nv) {
    return std::nullopt;
  }
  const auto sides = minus_sides(c);
  std::unordered_map<Bits, HyperplaneId, BitsHash> by_side;
  for (std::size_t h = 0; h < sides.size(); ++h) {
    by_side.emplace(sides[h], HyperplaneId(h));
  }
  const Bits full = [&] {
    Bits b((nv + 63) / 64, ~std::uint64_t{0});
    if (nv % 64 != 0) {
      b.back() = (std::uint64_t{1} << (nv % 64)) - 1;
    }
    return b;
  }();

  Automorphism out;
  out.vertex_image.assign(vertex_image.begin(), vertex_image.end());
  out.hyperplane_image.resize(c.hyperplane_count());
  out.orientation.resize(c.hyperplane_count());
  std::vector<char> hit(c.hyperplane_count(), 0);
  for (std::size_t h = 0; h < sides.size(); ++h) {
    Bits image(full.size(), 0);
    for (std::size_t v = 0; v < nv; ++v) {
      if ((sides[h][v >> 6] >> (v & 63)) & 1U) {
        const std::size_t w = vertex_image[v].index();
        image[w >> 6] |= std::uint64_t{1} << (w & 63);
      }
    }
    if (auto it = by_side.find(image); it != by_side.end()) {
      out.hyperplane_image[h] = it->second;
      out.orientation[h] = Sign::Plus;
    } else {
      for (std::size_t i = 0; i < image.size(); ++i) {
        image[i] ^= full[i];
      }
      auto jt = by_side.find(image);
      if (jt == by_side.end()) {
        return std::nullopt;
      }
      out.hyperplane_image[h] = jt->second;
      out.orientation[h] = Sign::Minus;
    }
    if (hit[out.hyperplane_image[h].index()]++) {
      return std::nullopt;
    }
  }
  return out;
}

} // namespace cubex
