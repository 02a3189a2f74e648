#ifndef GPDALG_JSON_IO_HPP
#define GPDALG_JSON_IO_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpdalg/algebra.hpp"
#include "gpdalg/groupoid.hpp"
#include "gpdalg/inverse_semigroup.hpp"
#include "gpdalg/reconstruction.hpp"
#include "gpdalg/structure.hpp"

namespace gpdalg {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Groupoid text format: arrows/units by name, source/range maps, compose
/// triples [x, y, xy]. Inversion is derived and cross-checked.
inline json groupoid_to_json(const Groupoid& g) {
  json j;
  j["format"] = kFormatVersion;
  j["arrows"] = g.arrow_names();
  std::vector<std::string> units;
  for (int u : g.units()) units.push_back(g.name(u));
  j["units"] = units;
  json src = json::object(), rng = json::object();
  for (int x = 0; x < g.num_arrows(); ++x) {
    src[g.name(x)] = g.name(g.source(x));
    rng[g.name(x)] = g.name(g.range(x));
  }
  j["source"] = src;
  j["range"] = rng;
  json comp = json::array();
  for (int x = 0; x < g.num_arrows(); ++x)
    for (int y = 0; y < g.num_arrows(); ++y)
      if (g.compose(x, y) >= 0)
        comp.push_back({g.name(x), g.name(y), g.name(g.compose(x, y))});
  j["compose"] = comp;
  return j;
}

inline Groupoid groupoid_from_json(const json& j) {
  try {
    if (j.value("format", 0) != kFormatVersion)
      throw ParseError("groupoid: missing or unsupported format version");
    std::vector<std::string> names = j.at("arrows").get<std::vector<std::string>>();
    const int n = static_cast<int>(names.size());
    std::map<std::string, int> idx;
    for (int i = 0; i < n; ++i) {
      if (!idx.emplace(names[i], i).second)
        throw ParseError("groupoid: duplicate arrow name '" + names[i] + "'");
    }
    auto lookup = [&](const std::string& s) {
      auto it = idx.find(s);
      if (it == idx.end()) throw ParseError("groupoid: unknown arrow '" + s + "'");
      return it->second;
    };
    std::vector<int> units;
    for (const auto& u : j.at("units")) units.push_back(lookup(u.get<std::string>()));
    std::vector<int> src(n, -1), rng(n, -1);
    for (auto& [k, v] : j.at("source").items()) src[lookup(k)] = lookup(v.get<std::string>());
    for (auto& [k, v] : j.at("range").items()) rng[lookup(k)] = lookup(v.get<std::string>());
    for (int i = 0; i < n; ++i)
      if (src[i] < 0 || rng[i] < 0)
        throw ParseError("groupoid: source/range missing for '" + names[i] + "'");
    std::vector<int> comp(static_cast<std::size_t>(n) * n, -1);
    for (const auto& t : j.at("compose")) {
      if (!t.is_array() || t.size() != 3)
        throw ParseError("groupoid: compose entries must be [x, y, xy] triples");
      int x = lookup(t[0].get<std::string>());
      int y = lookup(t[1].get<std::string>());
      comp[static_cast<std::size_t>(x) * n + y] = lookup(t[2].get<std::string>());
    }
    std::vector<int> inv;
    try {
      inv = detail::derive_inverses(n, src, rng, comp);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("groupoid: ") + e.what());
    }
    return Groupoid(std::move(names), std::move(units), std::move(src),
                    std::move(rng), std::move(comp), std::move(inv));
  } catch (const json::exception& e) {
    throw ParseError(std::string("groupoid: malformed JSON: ") + e.what());
  }
}

/// AlgElem serialization: map arrow-name -> [re, im].
inline json algelem_to_json(const Groupoid& g, const AlgElem& f) {
  json j;
  j["format"] = kFormatVersion;
  json c = json::object();
  for (int x = 0; x < g.num_arrows(); ++x)
    c[g.name(x)] = {f[x].real(), f[x].imag()};
  j["coeffs"] = c;
  return j;
}

inline AlgElem algelem_from_json(const Groupoid& g, const json& j) {
  try {
    AlgElem f(g);
    std::map<std::string, int> idx;
    for (int i = 0; i < g.num_arrows(); ++i) idx[g.name(i)] = i;
    for (auto& [k, v] : j.at("coeffs").items()) {
      auto it = idx.find(k);
      if (it == idx.end()) throw ParseError("algelem: unknown arrow '" + k + "'");
      f[it->second] = Complex(v.at(0).get<double>(), v.at(1).get<double>());
    }
    return f;
  } catch (const json::exception& e) {
    throw ParseError(std::string("algelem: malformed JSON: ") + e.what());
  }
}

inline json invsemigroup_to_json(const InvSemigroup& s) {
  json j;
  j["format"] = kFormatVersion;
  std::vector<std::string> names;
  for (int i = 0; i < s.size(); ++i) names.push_back(s.name(i));
  j["elements"] = names;
  json mul = json::array(), dag = json::array();
  for (int a = 0; a < s.size(); ++a) {
    json row = json::array();
    for (int b = 0; b < s.size(); ++b) row.push_back(s.mul(a, b));
    mul.push_back(row);
    dag.push_back(s.dagger(a));
  }
  j["mul"] = mul;
  j["dagger"] = dag;
  return j;
}

inline InvSemigroup invsemigroup_from_json(const json& j) {
  try {
    std::vector<std::string> names = j.at("elements").get<std::vector<std::string>>();
    const int n = static_cast<int>(names.size());
    std::vector<int> mul;
    mul.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : j.at("mul"))
      for (const auto& v : row) mul.push_back(v.get<int>());
    if (mul.size() != static_cast<std::size_t>(n) * n)
      throw ParseError("invsemigroup: mul table has wrong shape");
    return InvSemigroup(std::move(names), std::move(mul));
  } catch (const json::exception& e) {
    throw ParseError(std::string("invsemigroup: malformed JSON: ") + e.what());
  }
}

inline json mp_decomposition_to_json(const Groupoid& g, const MPDecomposition& d) {
  json j;
  std::vector<std::string> names;
  for (int x : d.bisection) names.push_back(g.name(x));
  j["bisection"] = names;
  json phases = json::array();
  for (const auto& z : d.phase) phases.push_back({z.real(), z.imag()});
  j["phases"] = phases;
  return j;
}

inline json reconstruction_report_to_json(const ReconstructionReport& r) {
  json j;
  j["success"] = r.success;
  if (!r.failed_stage.empty()) j["failed_stage"] = r.failed_stage;
  j["groupoid"] = r.groupoid_summary;
  j["ctx"] = norm_kind_name(r.kind);
  j["p"] = r.p;
  j["spi_size"] = r.spi_size;
  j["tight_filters"] = r.tight_filter_count;
  j["germs"] = r.germ_count;
  if (r.success) j["isomorphism"] = r.isomorphism;
  j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

}  // namespace gpdalg

#endif  // GPDALG_JSON_IO_HPP
