#include "cubex/io.hpp"

#include "cubex/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cubex {

namespace {

using Json = nlohmann::ordered_json;

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
}

const Json& member(const Json& obj, const char* key, const char* where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw InputError(std::string(where) + ": missing \"" + key + "\"");
  }
  return obj.at(key);
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) {
    throw InputError(where + ": expected a string");
  }
  return j.get<std::string>();
}

Sign as_sign(const Json& j, const std::string& where) {
  if (j.is_number_integer()) {
    const auto v = j.get<long long>();
    if (v == 1) {
      return Sign::Plus;
    }
    if (v == -1) {
      return Sign::Minus;
    }
  }
  throw InputError(where + ": sign must be 1 or -1");
}

} // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CubeComplex parse_complex(std::string_view json_text) {
  const Json doc = parse_json(json_text);
  const Json& hs = member(doc, "hyperplanes", "complex");
  if (!hs.is_array()) {
    throw InputError("complex: \"hyperplanes\" must be an array");
  }
  std::vector<std::string> hyperplanes;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    hyperplanes.push_back(as_string(hs[i], "hyperplanes[" + std::to_string(i) + "]"));
  }
  std::unordered_map<std::string, std::size_t> hyper_index;
  for (std::size_t i = 0; i < hyperplanes.size(); ++i) {
    hyper_index.emplace(hyperplanes[i], i);
  }

  const Json& vs = member(doc, "vertices", "complex");
  if (!vs.is_object() || vs.empty()) {
    throw InputError("complex: \"vertices\" must be a non-empty object");
  }
  std::vector<std::string> names;
  std::vector<SignVector> vertices;
  for (const auto& [name, value] : vs.items()) {
    const std::string where = "vertex " + name;
    SignVector v(hyperplanes.size());
    if (value.is_array()) {
      if (value.size() != hyperplanes.size()) {
        throw InputError(where + ": sign array has length " + std::to_string(value.size()) +
                         ", expected " + std::to_string(hyperplanes.size()));
      }
      for (std::size_t i = 0; i < value.size(); ++i) {
        v.set(HyperplaneId(i), as_sign(value[i], where));
      }
    } else if (value.is_object()) {
      if (value.size() != hyperplanes.size()) {
        throw InputError(where + ": must orient every hyperplane");
      }
      for (const auto& [h, s] : value.items()) {
        auto it = hyper_index.find(h);
        if (it == hyper_index.end()) {
          throw InputError(where + ": unknown hyperplane " + h);
        }
        v.set(HyperplaneId(it->second), as_sign(s, where));
      }
    } else {
      throw InputError(where + ": expected a sign array");
    }
    names.push_back(name);
    vertices.push_back(std::move(v));
  }

  const std::string base_name = as_string(member(doc, "base", "complex"), "base");
  auto base = std::find(names.begin(), names.end(), base_name);
  if (base == names.end()) {
    throw InputError("complex: unknown base vertex " + base_name);
  }
  const VertexId base_id(static_cast<std::size_t>(base - names.begin()));

  std::optional<std::size_t> n;
  if (doc.contains("N")) {
    const Json& nj = doc.at("N");
    if (!nj.is_number_integer() || nj.get<long long>() < 0) {
      throw InputError("complex: \"N\" must be a natural number");
    }
    n = nj.get<std::size_t>();
  }
  CubeComplex c(std::move(hyperplanes), std::move(names), std::move(vertices), base_id, n.value_or(0));
  return n ? c : c.with_ambient_dimension(dimension_estimate(c));
}

CubeComplex load_complex_file(const std::string& path) {
  try {
    return parse_complex(read_text_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string complex_to_json(const CubeComplex& c, int indent) {
  Json doc;
  doc["hyperplanes"] = c.hyperplane_names();
  doc["base"] = c.vertex_name(c.base());
  doc["N"] = c.ambient_dimension();
  Json vs = Json::object();
  for (std::size_t v = 0; v < c.vertex_count(); ++v) {
    Json signs = Json::array();
    const SignVector& s = c.signs(VertexId(v));
    for (std::size_t h = 0; h < c.hyperplane_count(); ++h) {
      signs.push_back(to_int(s[HyperplaneId(h)]));
    }
    vs[c.vertex_name(VertexId(v))] = std::move(signs);
  }
  doc["vertices"] = std::move(vs);
  return doc.dump(indent);
}

std::vector<NamedPermutation> parse_action(std::string_view json_text, const CubeComplex& c) {
  const Json doc = parse_json(json_text);
  const Json& gens = member(doc, "generators", "action");
  if (!gens.is_object()) {
    throw InputError("action: \"generators\" must be an object");
  }
  std::vector<NamedPermutation> out;
  for (const auto& [name, map] : gens.items()) {
    if (!map.is_object()) {
      throw InputError("generator " + name + ": expected a vertex map");
    }
    NamedPermutation p{name, {}};
    for (std::size_t v = 0; v < c.vertex_count(); ++v) {
      p.images.emplace_back(v);
    }
    for (const auto& [from, to] : map.items()) {
      const VertexId src = c.vertex(from);
      p.images[src.index()] = c.vertex(as_string(to, "generator " + name));
    }
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(),
            [](const NamedPermutation& a, const NamedPermutation& b) { return a.name < b.name; });
  return out;
}

std::vector<NamedPermutation> load_action_file(const std::string& path, const CubeComplex& c) {
  try {
    return parse_action(read_text_file(path), c);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

CoxeterMatrix parse_coxeter(std::string_view json_text) {
  const Json doc = parse_json(json_text);
  const Json& mj = member(doc, "matrix", "coxeter");
  if (!mj.is_array()) {
    throw InputError("coxeter: \"matrix\" must be an array of rows");
  }
  std::vector<std::vector<CoxeterEntry>> rows;
  for (std::size_t i = 0; i < mj.size(); ++i) {
    if (!mj[i].is_array()) {
      throw InputError("coxeter: row " + std::to_string(i) + " is not an array");
    }
    std::vector<CoxeterEntry> row;
    for (std::size_t j = 0; j < mj[i].size(); ++j) {
      const Json& e = mj[i][j];
      const std::string where = "coxeter: entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
      if (e.is_string()) {
        if (e.get<std::string>() != "inf") {
          throw InputError(where + ": only \"inf\" is allowed as a string");
        }
        row.push_back(kInfinity);
      } else if (e.is_number_unsigned() || (e.is_number_integer() && e.get<long long>() >= 0)) {
        row.emplace_back(e.get<std::uint64_t>());
      } else {
        throw InputError(where + ": expected a natural number or \"inf\"");
      }
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::string> names;
  if (doc.contains("generators")) {
    const Json& g = doc.at("generators");
    if (!g.is_array()) {
      throw InputError("coxeter: \"generators\" must be an array");
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
      names.push_back(as_string(g[i], "generators[" + std::to_string(i) + "]"));
    }
  } else {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      names.push_back("s" + std::to_string(i + 1));
    }
  }
  return validate_matrix(std::move(names), std::move(rows));
}

CoxeterMatrix load_coxeter_file(const std::string& path) {
  try {
    return parse_coxeter(read_text_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

} // namespace cubex
