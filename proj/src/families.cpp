#include "cubex/families.hpp"

#include "cubex/errors.hpp"
#include "cubex/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <unordered_set>

namespace cubex {

namespace {

constexpr std::size_t kSaturated = std::numeric_limits<std::size_t>::max();

std::size_t sat_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > kSaturated / a) {
    return kSaturated;
  }
  return a * b;
}

std::size_t sat_add(std::size_t a, std::size_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

class SpecParser {
public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  FamilySpec parse_all() {
    FamilySpec spec = parse();
    if (pos_ != text_.size()) {
      fail("trailing characters");
    }
    return spec;
  }

private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("bad family spec '" + std::string(text_) + "' at offset " +
                     std::to_string(pos_) + ": " + why);
  }

  bool consume(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!consume(token)) {
      fail("expected '" + std::string(token) + "'");
    }
  }

  std::size_t number() {
    std::size_t value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) {
      fail("expected a natural number");
    }
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  FamilySpec parse() {
    if (consume("product(")) {
      FamilySpec a = parse();
      expect(",");
      FamilySpec b = parse();
      expect(")");
      return FamilySpec::product(std::move(a), std::move(b));
    }
    if (consume("edge")) {
      return FamilySpec::edge();
    }
    if (consume("path:")) {
      return FamilySpec::path_of(number());
    }
    if (consume("grid:")) {
      std::size_t w = number();
      expect("x");
      return FamilySpec::grid(w, number());
    }
    if (consume("star:")) {
      return FamilySpec::star(number());
    }
    if (consume("tree:")) {
      std::size_t v = number();
      expect(",");
      return FamilySpec::tree(v, number());
    }
    if (consume("cube:")) {
      return FamilySpec::cube(number());
    }
    if (consume("file:")) {
      // A path runs to the end, or to the next ',' / ')' inside a product.
      std::size_t end = pos_;
      while (end < text_.size() && text_[end] != ',' && text_[end] != ')') {
        ++end;
      }
      FamilySpec spec{FamilyKind::Explicit, {}, {}, std::string(text_.substr(pos_, end - pos_))};
      if (spec.path.empty()) {
        fail("empty file path");
      }
      pos_ = end;
      return spec;
    }
    fail("unknown family");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::size_t tree_vertex_count(std::size_t valence, std::size_t depth) {
  std::size_t total = 1, layer = 1;
  for (std::size_t d = 0; d < depth; ++d) {
    layer = sat_mul(layer, d == 0 ? valence : valence - 1);
    total = sat_add(total, layer);
  }
  return total;
}

/// Vertex and hyperplane counts, saturating, for the desk-scale bound.
std::pair<std::size_t, std::size_t> family_size(const FamilySpec& spec) {
  const auto& p = spec.params;
  switch (spec.kind) {
  case FamilyKind::Edge:
    return {2, 1};
  case FamilyKind::Path:
    return {p[0], p[0] == 0 ? 0 : p[0] - 1};
  case FamilyKind::Grid:
    return {sat_mul(p[0], p[1]), p[0] + p[1] - 2};
  case FamilyKind::Star:
    return {sat_add(p[0], 1), p[0]};
  case FamilyKind::Tree: {
    const std::size_t v = tree_vertex_count(p[0], p[1]);
    return {v, v == kSaturated ? kSaturated : v - 1};
  }
  case FamilyKind::Cube:
    return {p[0] >= 63 ? kSaturated : std::size_t{1} << p[0], p[0]};
  case FamilyKind::Product: {
    auto [va, ha] = family_size(spec.factors[0]);
    auto [vb, hb] = family_size(spec.factors[1]);
    return {sat_mul(va, vb), sat_add(ha, hb)};
  }
  case FamilyKind::Explicit:
    return {0, 0};
  }
  return {0, 0};
}

void check_parameters(const FamilySpec& spec) {
  const auto& p = spec.params;
  auto need = [&](bool ok, const char* why) {
    if (!ok) {
      throw InputError("family " + spec.to_string() + ": " + why);
    }
  };
  switch (spec.kind) {
  case FamilyKind::Path:
    need(p[0] >= 1, "a path needs at least one vertex");
    break;
  case FamilyKind::Grid:
    need(p[0] >= 1 && p[1] >= 1, "grid sides must be positive");
    break;
  case FamilyKind::Star:
    need(p[0] >= 1, "star needs at least one leaf");
    break;
  case FamilyKind::Tree:
    need(p[0] >= 2, "tree valence must be at least 2");
    break;
  case FamilyKind::Product:
    check_parameters(spec.factors[0]);
    check_parameters(spec.factors[1]);
    break;
  default:
    break;
  }
  if (spec.kind != FamilyKind::Explicit) {
    auto [v, h] = family_size(spec);
    need(v <= kMaxFamilyVertices, "more than 10^6 vertices");
    need(sat_mul(v, std::max<std::size_t>(h, 1)) <= kMaxFamilyIncidences,
         "vertices x hyperplanes exceeds 10^8");
  }
}

std::string coord_name(std::size_t p, std::size_t q) {
  return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

CubeComplex build_edge() {
  return CubeComplex({"H"}, {"x", "y"},
                     {SignVector(1), SignVector(1).flipped(HyperplaneId(0))}, VertexId(0), 1);
}

CubeComplex build_path(std::size_t length) {
  const std::size_t nh = length - 1;
  std::vector<std::string> hyper, names;
  std::vector<SignVector> verts;
  for (std::size_t n = 0; n < nh; ++n) {
    hyper.push_back("H" + std::to_string(n));
  }
  for (std::size_t i = 0; i < length; ++i) {
    names.push_back("p" + std::to_string(i));
    SignVector v(nh);
    for (std::size_t n = 0; n < i; ++n) {
      v.set(HyperplaneId(n), Sign::Minus);
    }
    verts.push_back(std::move(v));
  }
  return CubeComplex(std::move(hyper), std::move(names), std::move(verts), VertexId(0),
                     nh == 0 ? 0 : 1);
}

CubeComplex build_grid(std::size_t w, std::size_t h) {
  // H_n : y = n + 1/2 for 0 <= n < h-1, then K_n : x = n + 1/2 for 0 <= n < w-1.
  const std::size_t nh = h - 1, nk = w - 1;
  std::vector<std::string> hyper;
  for (std::size_t n = 0; n < nh; ++n) {
    hyper.push_back("H" + std::to_string(n));
  }
  for (std::size_t n = 0; n < nk; ++n) {
    hyper.push_back("K" + std::to_string(n));
  }
  std::vector<std::string> names;
  std::vector<SignVector> verts;
  names.reserve(w * h);
  verts.reserve(w * h);
  for (std::size_t p = 0; p < w; ++p) {
    for (std::size_t q = 0; q < h; ++q) {
      names.push_back(coord_name(p, q));
      SignVector v(nh + nk);
      for (std::size_t n = 0; n < q; ++n) {
        v.set(HyperplaneId(n), Sign::Minus);
      }
      for (std::size_t n = 0; n < p; ++n) {
        v.set(HyperplaneId(nh + n), Sign::Minus);
      }
      verts.push_back(std::move(v));
    }
  }
  const std::size_t dim = (nh > 0 ? 1 : 0) + (nk > 0 ? 1 : 0);
  return CubeComplex(std::move(hyper), std::move(names), std::move(verts), VertexId(0), dim);
}

CubeComplex build_star(std::size_t m) {
  std::vector<std::string> hyper, names{"center"};
  std::vector<SignVector> verts{SignVector(m)};
  for (std::size_t j = 1; j <= m; ++j) {
    hyper.push_back("H" + std::to_string(j));
    names.push_back("l" + std::to_string(j));
    verts.push_back(SignVector(m).flipped(HyperplaneId(j - 1)));
  }
  return CubeComplex(std::move(hyper), std::move(names), std::move(verts), VertexId(0), 1);
}

struct TreeLayout {
  std::vector<std::string> vertex_names;    // "r", "r.0", "r.0.1", ...
  std::vector<std::string> hyperplane_names; // "h.0", "h.0.1", ... one per non-root vertex
  std::vector<std::vector<HyperplaneId>> path; // edges from the root
  std::vector<std::size_t> depth;
};

TreeLayout tree_layout(std::size_t valence, std::size_t depth) {
  TreeLayout t;
  t.vertex_names.push_back("r");
  t.path.emplace_back();
  t.depth.push_back(0);
  for (std::size_t v = 0; v < t.vertex_names.size(); ++v) {
    if (t.depth[v] == depth) {
      continue;
    }
    const std::size_t children = t.depth[v] == 0 ? valence : valence - 1;
    const std::string suffix = t.vertex_names[v].substr(1);
    for (std::size_t c = 0; c < children; ++c) {
      const std::string child = suffix + "." + std::to_string(c);
      const HyperplaneId h(t.hyperplane_names.size());
      t.hyperplane_names.push_back("h" + child);
      t.vertex_names.push_back("r" + child);
      auto p = t.path[v];
      p.push_back(h);
      t.path.push_back(std::move(p));
      t.depth.push_back(t.depth[v] + 1);
    }
  }
  return t;
}

CubeComplex build_tree(std::size_t valence, std::size_t depth) {
  TreeLayout t = tree_layout(valence, depth);
  const std::size_t nh = t.hyperplane_names.size();
  std::vector<SignVector> verts;
  for (const auto& p : t.path) {
    verts.push_back(SignVector::from_negative_set(nh, p));
  }
  return CubeComplex(std::move(t.hyperplane_names), std::move(t.vertex_names), std::move(verts),
                     VertexId(0), nh == 0 ? 0 : 1);
}

std::string cube_vertex_name(std::size_t bits, std::size_t n) {
  std::string s = "(";
  for (std::size_t i = 0; i < n; ++i) {
    s += (bits >> i) & 1U ? '1' : '0';
    if (i + 1 < n) {
      s += ',';
    }
  }
  return s + ")";
}

CubeComplex build_cube(std::size_t n) {
  std::vector<std::string> hyper, names;
  std::vector<SignVector> verts;
  for (std::size_t i = 0; i < n; ++i) {
    hyper.push_back("H" + std::to_string(i));
  }
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    names.push_back(cube_vertex_name(bits, n));
    SignVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
      if ((bits >> i) & 1U) {
        v.set(HyperplaneId(i), Sign::Minus);
      }
    }
    verts.push_back(std::move(v));
  }
  return CubeComplex(std::move(hyper), std::move(names), std::move(verts), VertexId(0), n);
}

CubeComplex build_product(const CubeComplex& a, const CubeComplex& b) {
  const std::size_t ha = a.hyperplane_count(), hb = b.hyperplane_count();
  std::vector<std::string> hyper;
  for (const auto& n : a.hyperplane_names()) {
    hyper.push_back("1." + n);
  }
  for (const auto& n : b.hyperplane_names()) {
    hyper.push_back("2." + n);
  }
  std::vector<std::string> names;
  std::vector<SignVector> verts;
  for (std::size_t i = 0; i < a.vertex_count(); ++i) {
    for (std::size_t j = 0; j < b.vertex_count(); ++j) {
      names.push_back("(" + a.vertex_name(VertexId(i)) + "," + b.vertex_name(VertexId(j)) + ")");
      SignVector v(ha + hb);
      for (HyperplaneId h : a.signs(VertexId(i)).negative_set()) {
        v.set(h, Sign::Minus);
      }
      for (HyperplaneId h : b.signs(VertexId(j)).negative_set()) {
        v.set(HyperplaneId(ha + h.index()), Sign::Minus);
      }
      verts.push_back(std::move(v));
    }
  }
  const VertexId base(a.base().index() * b.vertex_count() + b.base().index());
  return CubeComplex(std::move(hyper), std::move(names), std::move(verts), base,
                     a.ambient_dimension() + b.ambient_dimension());
}

std::vector<IdealPointSpec> grid_ideal_points(std::size_t w, std::size_t h) {
  const std::size_t nh = h - 1, nk = w - 1;
  // A coordinate is either a finite lattice value or one of the two ends.
  struct Coord {
    enum Kind { Finite, PlusInf, MinusInf } kind;
    std::size_t value = 0;
    std::string label() const {
      return kind == PlusInf ? "+inf" : kind == MinusInf ? "-inf" : std::to_string(value);
    }
  };
  auto orient = [](const Coord& c, long n) {
    switch (c.kind) {
    case Coord::PlusInf:
      return n >= 0 ? Sign::Minus : Sign::Plus;
    case Coord::MinusInf:
      return n < 0 ? Sign::Minus : Sign::Plus;
    default:
      return (n >= 0 && static_cast<std::size_t>(n) < c.value) ? Sign::Minus : Sign::Plus;
    }
  };
  auto make = [&](const Coord& x, const Coord& y) {
    IdealPointSpec pt;
    pt.label = "(" + x.label() + "," + y.label() + ")";
    pt.restriction = SignVector(nh + nk);
    for (std::size_t n = 0; n < nh; ++n) {
      pt.restriction.set(HyperplaneId(n), orient(y, static_cast<long>(n)));
    }
    for (std::size_t n = 0; n < nk; ++n) {
      pt.restriction.set(HyperplaneId(nh + n), orient(x, static_cast<long>(n)));
    }
    pt.boundary = {{"H-1", orient(y, -1)},
                   {"H" + std::to_string(nh), orient(y, static_cast<long>(nh))},
                   {"K-1", orient(x, -1)},
                   {"K" + std::to_string(nk), orient(x, static_cast<long>(nk))}};
    return pt;
  };
  std::vector<IdealPointSpec> out;
  for (auto xk : {Coord::PlusInf, Coord::MinusInf}) {
    for (auto yk : {Coord::PlusInf, Coord::MinusInf}) {
      out.push_back(make({xk}, {yk}));
    }
  }
  for (std::size_t q = 0; q < h; ++q) {
    out.push_back(make({Coord::PlusInf}, {Coord::Finite, q}));
    out.push_back(make({Coord::MinusInf}, {Coord::Finite, q}));
  }
  for (std::size_t p = 0; p < w; ++p) {
    out.push_back(make({Coord::Finite, p}, {Coord::PlusInf}));
    out.push_back(make({Coord::Finite, p}, {Coord::MinusInf}));
  }
  return out;
}

std::vector<IdealPointSpec> tree_ideal_points(std::size_t valence, std::size_t depth) {
  TreeLayout t = tree_layout(valence, depth);
  const std::size_t nh = t.hyperplane_names.size();
  std::vector<IdealPointSpec> out;
  for (std::size_t v = 0; v < t.vertex_names.size(); ++v) {
    if (t.depth[v] != depth) {
      continue;
    }
    // The end of the ray that leaves the truncation through this leaf and
    // keeps taking child 0.
    IdealPointSpec pt;
    pt.label = "end(" + t.vertex_names[v] + ")";
    pt.restriction = SignVector::from_negative_set(nh, t.path[v]);
    pt.boundary = {{"h" + t.vertex_names[v].substr(1) + ".0", Sign::Minus}};
    out.push_back(std::move(pt));
  }
  return out;
}

std::vector<VertexId> permutation_from(std::size_t n, auto&& f) {
  std::vector<VertexId> images(n);
  for (std::size_t v = 0; v < n; ++v) {
    images[v] = VertexId(f(v));
  }
  return images;
}

} // namespace

FamilySpec FamilySpec::parse(std::string_view text) {
  FamilySpec spec = SpecParser(text).parse_all();
  check_parameters(spec);
  return spec;
}

std::string FamilySpec::to_string() const {
  switch (kind) {
  case FamilyKind::Edge:
    return "edge";
  case FamilyKind::Path:
    return "path:" + std::to_string(params[0]);
  case FamilyKind::Grid:
    return "grid:" + std::to_string(params[0]) + "x" + std::to_string(params[1]);
  case FamilyKind::Star:
    return "star:" + std::to_string(params[0]);
  case FamilyKind::Tree:
    return "tree:" + std::to_string(params[0]) + "," + std::to_string(params[1]);
  case FamilyKind::Cube:
    return "cube:" + std::to_string(params[0]);
  case FamilyKind::Product:
    return "product(" + factors[0].to_string() + "," + factors[1].to_string() + ")";
  case FamilyKind::Explicit:
    return "file:" + path;
  }
  return {};
}

CubeComplex build_family(const FamilySpec& spec) {
  check_parameters(spec);
  const auto& p = spec.params;
  switch (spec.kind) {
  case FamilyKind::Edge:
    return build_edge();
  case FamilyKind::Path:
    return build_path(p[0]);
  case FamilyKind::Grid:
    return build_grid(p[0], p[1]);
  case FamilyKind::Star:
    return build_star(p[0]);
  case FamilyKind::Tree:
    return build_tree(p[0], p[1]);
  case FamilyKind::Cube:
    return build_cube(p[0]);
  case FamilyKind::Product:
    return build_product(build_family(spec.factors[0]), build_family(spec.factors[1]));
  case FamilyKind::Explicit:
    return load_complex_file(spec.path);
  }
  throw InputError("unknown family kind");
}

std::vector<IdealPointSpec> ideal_points(const FamilySpec& spec) {
  check_parameters(spec);
  switch (spec.kind) {
  case FamilyKind::Grid:
    return grid_ideal_points(spec.params[0], spec.params[1]);
  case FamilyKind::Star:
    return {};
  case FamilyKind::Tree:
    return tree_ideal_points(spec.params[0], spec.params[1]);
  default:
    throw InputError("not annotated: " + spec.to_string());
  }
}

bool FamilyAnnotations::shared_infinite(VertexId a, VertexId z) const {
  for (const auto& c : infinite_classes[a.index()]) {
    const auto& other = infinite_classes[z.index()];
    if (std::find(other.begin(), other.end(), c) != other.end()) {
      return true;
    }
  }
  return false;
}

bool FamilyAnnotations::locally_finite() const {
  return std::all_of(infinite_classes.begin(), infinite_classes.end(),
                     [](const auto& c) { return c.empty(); });
}

FamilyAnnotations annotate_family(const FamilySpec& spec) {
  FamilyAnnotations out;
  switch (spec.kind) {
  case FamilyKind::Star:
    // In the infinite star the centre is adjacent to infinitely many hyperplanes.
    out.infinite_classes.assign(spec.params[0] + 1, {});
    out.infinite_classes[0] = {"leaves"};
    break;
  case FamilyKind::Product: {
    FamilyAnnotations a = annotate_family(spec.factors[0]);
    FamilyAnnotations b = annotate_family(spec.factors[1]);
    for (const auto& ca : a.infinite_classes) {
      for (const auto& cb : b.infinite_classes) {
        std::vector<std::string> merged;
        for (const auto& c : ca) {
          merged.push_back("1." + c);
        }
        for (const auto& c : cb) {
          merged.push_back("2." + c);
        }
        out.infinite_classes.push_back(std::move(merged));
      }
    }
    return out;
  }
  default:
    out.infinite_classes.assign(build_family(spec).vertex_count(), {});
    break;
  }
  if (spec.kind == FamilyKind::Grid || spec.kind == FamilyKind::Star ||
      spec.kind == FamilyKind::Tree) {
    out.ideal_points = ideal_points(spec);
  }
  return out;
}

std::vector<NamedPermutation> standard_symmetries(const FamilySpec& spec) {
  check_parameters(spec);
  const auto& p = spec.params;
  std::vector<NamedPermutation> out;
  switch (spec.kind) {
  case FamilyKind::Edge:
    out.push_back({"s", permutation_from(2, [](std::size_t v) { return 1 - v; })});
    break;
  case FamilyKind::Path:
    out.push_back({"s", permutation_from(p[0], [&](std::size_t v) { return p[0] - 1 - v; })});
    break;
  case FamilyKind::Cube: {
    const std::size_t n = p[0];
    const std::size_t count = std::size_t{1} << n;
    if (n >= 1) {
      out.push_back({"r", permutation_from(count, [](std::size_t v) { return v ^ 1U; })});
    }
    for (std::size_t i = 1; i < n; ++i) {
      out.push_back({"s" + std::to_string(i), permutation_from(count, [i](std::size_t v) {
                       const std::size_t a = (v >> (i - 1)) & 1U, b = (v >> i) & 1U;
                       return a == b ? v : v ^ ((std::size_t{1} << (i - 1)) | (std::size_t{1} << i));
                     })});
    }
    break;
  }
  case FamilyKind::Grid: {
    const std::size_t w = p[0], h = p[1];
    out.push_back({"a", permutation_from(w * h, [&](std::size_t v) {
                     return (w - 1 - v / h) * h + v % h;
                   })});
    out.push_back({"b", permutation_from(w * h, [&](std::size_t v) {
                     return (v / h) * h + (h - 1 - v % h);
                   })});
    if (w == h) {
      out.push_back({"d", permutation_from(w * h, [&](std::size_t v) {
                       return (v % h) * h + v / h;
                     })});
    }
    break;
  }
  case FamilyKind::Star: {
    const std::size_t m = p[0];
    if (m >= 3) {
      out.push_back({"c", permutation_from(m + 1, [m](std::size_t v) {
                       return v == 0 ? 0 : v % m + 1;
                     })});
    }
    if (m >= 2) {
      out.push_back({"s", permutation_from(m + 1, [](std::size_t v) {
                       return v == 1 ? 2 : v == 2 ? 1 : v;
                     })});
    }
    break;
  }
  default:
    throw InputError("no built-in symmetries for " + spec.to_string());
  }
  return out;
}

CubeComplex median_closure(const std::vector<SignVector>& vectors,
                           const std::vector<std::string>& hyperplane_names, std::size_t cap) {
  if (vectors.empty()) {
    throw InputError("median closure of an empty set");
  }
  const std::size_t nh = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != nh) {
      throw InputError("median closure inputs have different hyperplane counts");
    }
  }
  if (!hyperplane_names.empty() && hyperplane_names.size() != nh) {
    throw InputError("hyperplane name count does not match the sign vectors");
  }

  std::vector<SignVector> closed;
  std::unordered_set<SignVector, SignVectorHash> seen;
  for (const auto& v : vectors) {
    if (seen.insert(v).second) {
      closed.push_back(v);
    }
  }
  if (closed.size() > cap) {
    throw CapacityError("median closure exceeded " + std::to_string(cap) + " vertices", closed.size());
  }
  // Every triple is visited once, keyed by its largest index; new medians
  // are appended and picked up as larger indices.
  for (std::size_t k = 0; k < closed.size(); ++k) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        SignVector m = majority(closed[i], closed[j], closed[k]);
        if (seen.insert(m).second) {
          closed.push_back(std::move(m));
          if (closed.size() > cap) {
            throw CapacityError("median closure exceeded " + std::to_string(cap) + " vertices",
                                closed.size());
          }
        }
      }
    }
  }

  // Keep hyperplanes that separate, dropping later duplicates of a partition.
  const SignVector& base = closed.front();
  std::vector<std::size_t> kept;
  std::unordered_set<std::vector<bool>> partitions;
  for (std::size_t h = 0; h < nh; ++h) {
    std::vector<bool> side;
    side.reserve(closed.size());
    for (const auto& v : closed) {
      side.push_back(v[HyperplaneId(h)] != base[HyperplaneId(h)]);
    }
    const bool separates = std::find(side.begin(), side.end(), true) != side.end();
    if (separates && partitions.insert(side).second) {
      kept.push_back(h);
    }
  }

  std::vector<std::string> names;
  for (std::size_t h : kept) {
    names.push_back(hyperplane_names.empty() ? "H" + std::to_string(h) : hyperplane_names[h]);
  }
  std::vector<std::string> vertex_names;
  std::vector<SignVector> rebased;
  for (std::size_t i = 0; i < closed.size(); ++i) {
    vertex_names.push_back("v" + std::to_string(i));
    SignVector r(kept.size());
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (closed[i][HyperplaneId(kept[j])] != base[HyperplaneId(kept[j])]) {
        r.set(HyperplaneId(j), Sign::Minus);
      }
    }
    rebased.push_back(std::move(r));
  }
  CubeComplex out(std::move(names), std::move(vertex_names), std::move(rebased), VertexId(0), 0);
  return out.with_ambient_dimension(dimension_estimate(out));
}

} // namespace cubex
