#ifndef GFS_IO_HPP
#define GFS_IO_HPP

// JSON reading and writing for groupoids, measures, functions, matrices and
// representation triples. Output uses ordered_json so that key order, and
// therefore the serialized text, is deterministic.

#include "gfs/bundle.hpp"
#include "gfs/convolution.hpp"
#include "gfs/groupoid.hpp"
#include "gfs/measures.hpp"
#include "gfs/representation.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gfs::io {

using Json = nlohmann::ordered_json;

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("'" + path + "': " + e.what());
  }
}

/// Identifiers may be strings or numbers in input files.
inline std::string id_string(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer() || j.is_number_unsigned()) return std::to_string(j.get<long long>());
  if (j.is_number()) return j.dump();
  throw std::invalid_argument("identifier must be a string or a number, got " + j.dump());
}

inline double number(const Json& j, const char* what) {
  if (!j.is_number()) throw std::invalid_argument(std::string(what) + " must be a number, got " + j.dump());
  return j.get<double>();
}

inline Complex complex_value(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], "real part"), number(j[1], "imaginary part")};
  if (j.is_object()) return {j.contains("re") ? number(j["re"], "re") : 0.0, j.contains("im") ? number(j["im"], "im") : 0.0};
  throw std::invalid_argument("complex value must be a number, [re, im] or {re, im}, got " + j.dump());
}

inline Json to_json(Complex z) { return Json::array({z.real() + 0.0, z.imag() + 0.0}); }

inline Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

inline CMatrix matrix_value(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw std::invalid_argument("matrix rows must have equal length");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_value(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

inline CVector vector_value(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("vector must be an array");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_value(j[i]);
  return v;
}

struct LoadedGroupoid {
  FiniteGroupoid groupoid;
  HaarSystem haar;
};

namespace detail {

inline LoadedGroupoid from_constructor(const Json& j) {
  const std::string kind = j.at("constructor").get<std::string>();
  auto size = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 1)
      throw std::invalid_argument("constructor '" + kind + "' needs a positive integer '" + key + "'");
    return static_cast<std::size_t>(j[key].get<long long>());
  };
  FiniteGroupoid g;
  if (kind == "pair")
    g = pair_groupoid(size("n"));
  else if (kind == "unit")
    g = unit_groupoid(size("n"));
  else if (kind == "cyclic-bundle")
    g = cyclic_group_bundle(size("base"), size("order"));
  else
    throw std::invalid_argument("unknown constructor '" + kind + "'");
  return {g, counting_haar(g)};
}

}  // namespace detail

/// {"units": [...], "arrows": [{"id", "r", "s"}], "product": [[g1, g2, g1g2]],
///  "inverse": [[g, ginv]], "haar": [{"arrow", "weight"}], "unitArrows": [[u, e]]}
/// or {"constructor": "pair" | "unit" | "cyclic-bundle", "n" | "base", "order"}.
/// Missing products are undefined; missing Haar weights default to 1. When
/// "unitArrows" is absent the unit arrow of u is the arrow labelled u, or
/// else the idempotent arrow with range and source u.
inline LoadedGroupoid parse_groupoid(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("groupoid file must hold a JSON object");
  LoadedGroupoid out;
  if (j.contains("constructor")) {
    out = detail::from_constructor(j);
  } else {
    if (!j.contains("units") || !j.contains("arrows") || !j.contains("inverse"))
      throw std::invalid_argument("groupoid needs 'units', 'arrows' and 'inverse'");
    std::vector<std::string> ul, al;
    std::map<std::string, Unit> unit_index;
    for (const auto& u : j["units"]) {
      ul.push_back(id_string(u));
      if (!unit_index.emplace(ul.back(), ul.size() - 1).second)
        throw std::invalid_argument("duplicate unit '" + ul.back() + "'");
    }
    std::vector<Unit> r, s;
    std::map<std::string, Arrow> arrow_index;
    auto unit_of = [&](const Json& v) {
      const auto id = id_string(v);
      auto it = unit_index.find(id);
      if (it == unit_index.end()) throw std::invalid_argument("unknown unit '" + id + "'");
      return it->second;
    };
    for (const auto& a : j["arrows"]) {
      al.push_back(id_string(a.at("id")));
      if (!arrow_index.emplace(al.back(), al.size() - 1).second)
        throw std::invalid_argument("duplicate arrow '" + al.back() + "'");
      r.push_back(unit_of(a.at("r")));
      s.push_back(unit_of(a.at("s")));
    }
    auto arrow_of = [&](const Json& v) {
      const auto id = id_string(v);
      auto it = arrow_index.find(id);
      if (it == arrow_index.end()) throw std::invalid_argument("unknown arrow '" + id + "'");
      return it->second;
    };
    const std::size_t na = al.size();
    std::vector<std::int64_t> prod(na * na, FiniteGroupoid::kUndefined);
    if (j.contains("product"))
      for (const auto& t : j["product"]) {
        if (!t.is_array() || t.size() != 3) throw std::invalid_argument("product entries are [g1, g2, g1g2]");
        prod[arrow_of(t[0]) * na + arrow_of(t[1])] = static_cast<std::int64_t>(arrow_of(t[2]));
      }
    std::vector<std::optional<Arrow>> inv_opt(na);
    for (const auto& p : j["inverse"]) {
      if (!p.is_array() || p.size() != 2) throw std::invalid_argument("inverse entries are [g, ginv]");
      inv_opt[arrow_of(p[0])] = arrow_of(p[1]);
    }
    std::vector<Arrow> inv(na);
    for (Arrow a = 0; a < na; ++a) {
      if (!inv_opt[a]) throw std::invalid_argument("inverse is missing for arrow '" + al[a] + "'");
      inv[a] = *inv_opt[a];
    }
    std::vector<std::optional<Arrow>> ua_opt(ul.size());
    if (j.contains("unitArrows"))
      for (const auto& p : j["unitArrows"]) ua_opt[unit_of(p.at(0))] = arrow_of(p.at(1));
    std::vector<Arrow> ua(ul.size());
    for (Unit u = 0; u < ul.size(); ++u) {
      if (!ua_opt[u]) {
        if (auto it = arrow_index.find(ul[u]); it != arrow_index.end()) ua_opt[u] = it->second;
      }
      if (!ua_opt[u]) {
        for (Arrow a = 0; a < na && !ua_opt[u]; ++a)
          if (r[a] == u && s[a] == u && prod[a * na + a] == static_cast<std::int64_t>(a)) ua_opt[u] = a;
      }
      if (!ua_opt[u]) throw std::invalid_argument("no unit arrow found for unit '" + ul[u] + "'");
      ua[u] = *ua_opt[u];
    }
    out.groupoid = FiniteGroupoid(std::move(ul), std::move(al), std::move(r), std::move(s), std::move(prod),
                                  std::move(inv), std::move(ua));
    out.haar = counting_haar(out.groupoid);
  }
  if (j.contains("haar"))
    for (const auto& w : j["haar"])
      out.haar.weights[out.groupoid.arrow(id_string(w.at("arrow")))] = number(w.at("weight"), "haar weight");
  return out;
}

inline Json groupoid_to_json(const FiniteGroupoid& g, const HaarSystem& h) {
  Json j;
  j["units"] = g.unit_labels();
  Json arrows = Json::array();
  for (Arrow a = 0; a < g.arrow_count(); ++a)
    arrows.push_back({{"id", g.arrow_label(a)}, {"r", g.unit_label(g.range(a))}, {"s", g.unit_label(g.source(a))}});
  j["arrows"] = std::move(arrows);
  Json prod = Json::array();
  for (Arrow a = 0; a < g.arrow_count(); ++a)
    for (Arrow b = 0; b < g.arrow_count(); ++b)
      if (auto p = g.product(a, b)) prod.push_back({g.arrow_label(a), g.arrow_label(b), g.arrow_label(*p)});
  j["product"] = std::move(prod);
  Json inv = Json::array();
  for (Arrow a = 0; a < g.arrow_count(); ++a) inv.push_back({g.arrow_label(a), g.arrow_label(g.inverse(a))});
  j["inverse"] = std::move(inv);
  Json ua = Json::array();
  for (Unit u = 0; u < g.unit_count(); ++u) ua.push_back({g.unit_label(u), g.arrow_label(g.unit_arrow(u))});
  j["unitArrows"] = std::move(ua);
  Json haar = Json::array();
  for (Arrow a = 0; a < g.arrow_count(); ++a) haar.push_back({{"arrow", g.arrow_label(a)}, {"weight", h[a]}});
  j["haar"] = std::move(haar);
  return j;
}

/// {"measure": [{"unit", "weight"}]}; units not listed get weight 0.
inline UnitMeasure parse_measure(const Json& j, const FiniteGroupoid& g) {
  if (!j.is_object() || !j.contains("measure") || !j["measure"].is_array())
    throw std::invalid_argument("measure file needs a 'measure' array");
  UnitMeasure mu{std::vector<double>(g.unit_count(), 0.0)};
  for (const auto& e : j["measure"]) {
    const double w = number(e.at("weight"), "measure weight");
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("measure weights must be finite and >= 0");
    mu[g.unit(id_string(e.at("unit")))] = w;
  }
  return mu;
}

inline Json measure_to_json(const UnitMeasure& mu, const FiniteGroupoid& g) {
  Json arr = Json::array();
  for (Unit x = 0; x < g.unit_count(); ++x) arr.push_back({{"unit", g.unit_label(x)}, {"weight", mu[x]}});
  return Json{{"measure", std::move(arr)}};
}

/// {"function": [{"arrow", "re", "im"}]}; arrows not listed are 0.
inline GroupoidFunction parse_function(const Json& j, const FiniteGroupoid& g) {
  if (!j.is_object() || !j.contains("function") || !j["function"].is_array())
    throw std::invalid_argument("function file needs a 'function' array");
  std::vector<Complex> values(g.arrow_count(), 0.0);
  for (const auto& e : j["function"]) {
    const Arrow a = g.arrow(id_string(e.at("arrow")));
    values[a] = {e.contains("re") ? number(e["re"], "re") : 0.0, e.contains("im") ? number(e["im"], "im") : 0.0};
  }
  return GroupoidFunction(std::move(values));
}

inline Json function_to_json(const GroupoidFunction& f, const FiniteGroupoid& g) {
  Json arr = Json::array();
  for (Arrow a = 0; a < g.arrow_count(); ++a)
    arr.push_back({{"arrow", g.arrow_label(a)}, {"re", f[a].real()}, {"im", f[a].imag()}});
  return Json{{"function", std::move(arr)}};
}

/// {"matrix": [[[re, im], ...], ...]}; plain numbers are real entries.
inline CMatrix parse_matrix(const Json& j) {
  if (!j.is_object() || !j.contains("matrix")) throw std::invalid_argument("matrix file needs a 'matrix' entry");
  return matrix_value(j["matrix"]);
}

struct LoadedRepresentation {
  RepresentationTriple triple;
  std::optional<BundleSection> alpha;
  std::optional<BundleSection> beta;
  std::optional<std::vector<Complex>> a;  // unit functions for the duality pairing
  std::optional<std::vector<Complex>> b;
};

namespace detail {

inline BundleSection section_value(const Json& j, const FiniteGroupoid& g, const HilbertBundle& bundle) {
  BundleSection s = BundleSection::zero(bundle);
  for (const auto& e : j) {
    const Unit x = g.unit(id_string(e.at("unit")));
    s[x] = vector_value(e.at("vector"));
  }
  require_matching(s, bundle, "representation file");
  return s;
}

inline std::vector<Complex> unit_function_value(const Json& j, const FiniteGroupoid& g) {
  std::vector<Complex> out(g.unit_count(), 0.0);
  for (const auto& e : j) out[g.unit(id_string(e.at("unit")))] = complex_value(e.at("value"));
  return out;
}

}  // namespace detail

/// {"dims": [{"unit", "dim"}], "action": [{"arrow", "matrix"}],
///  "alpha"/"beta": [{"unit", "vector"}], "a"/"b": [{"unit", "value"}],
///  "measure": [...]}. Arrows without a matrix get the identity, which only
/// makes sense when range and source fibers have the same dimension.
inline LoadedRepresentation parse_representation(const Json& j, const FiniteGroupoid& g, const UnitMeasure& mu) {
  if (!j.is_object() || !j.contains("dims")) throw std::invalid_argument("representation file needs 'dims'");
  std::vector<std::size_t> dims(g.unit_count(), 0);
  for (const auto& e : j["dims"]) {
    const auto d = e.at("dim");
    if (!d.is_number_integer() || d.get<long long>() < 0) throw std::invalid_argument("fiber dimensions must be >= 0");
    dims[g.unit(id_string(e.at("unit")))] = static_cast<std::size_t>(d.get<long long>());
  }
  LoadedRepresentation out;
  out.triple.bundle = HilbertBundle(dims);
  out.triple.mu = j.contains("measure") ? parse_measure(Json{{"measure", j["measure"]}}, g) : mu;
  std::vector<std::optional<CMatrix>> mats(g.arrow_count());
  if (j.contains("action"))
    for (const auto& e : j["action"]) mats[g.arrow(id_string(e.at("arrow")))] = matrix_value(e.at("matrix"));
  for (Arrow a = 0; a < g.arrow_count(); ++a) {
    if (mats[a]) {
      out.triple.action.unitaries.push_back(*mats[a]);
    } else {
      const auto rows = static_cast<Eigen::Index>(dims[g.range(a)]);
      const auto cols = static_cast<Eigen::Index>(dims[g.source(a)]);
      out.triple.action.unitaries.push_back(CMatrix::Identity(rows, cols));
    }
  }
  if (j.contains("alpha")) out.alpha = detail::section_value(j["alpha"], g, out.triple.bundle);
  if (j.contains("beta")) out.beta = detail::section_value(j["beta"], g, out.triple.bundle);
  if (j.contains("a")) out.a = detail::unit_function_value(j["a"], g);
  if (j.contains("b")) out.b = detail::unit_function_value(j["b"], g);
  return out;
}

inline Json section_to_json(const BundleSection& s, const FiniteGroupoid& g) {
  Json arr = Json::array();
  for (Unit x = 0; x < g.unit_count(); ++x) arr.push_back({{"unit", g.unit_label(x)}, {"vector", to_json(s[x])}});
  return arr;
}

inline Json representation_to_json(const RepresentationTriple& rep, const FiniteGroupoid& g) {
  Json j;
  Json dims = Json::array();
  for (Unit x = 0; x < g.unit_count(); ++x) dims.push_back({{"unit", g.unit_label(x)}, {"dim", rep.bundle.dim(x)}});
  j["dims"] = std::move(dims);
  Json action = Json::array();
  for (Arrow a = 0; a < g.arrow_count(); ++a)
    action.push_back({{"arrow", g.arrow_label(a)}, {"matrix", to_json(rep.action[a])}});
  j["action"] = std::move(action);
  j["measure"] = measure_to_json(rep.mu, g)["measure"];
  return j;
}

inline Json report_to_json(const ValidationReport& rep) {
  Json arr = Json::array();
  for (const auto& v : rep.violations)
    arr.push_back({{"axiom", v.axiom}, {"witness", v.witness}, {"detail", v.detail}});
  return arr;
}

}  // namespace gfs::io

#endif  // GFS_IO_HPP
