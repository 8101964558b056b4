#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kdec/maps.hpp"
#include "kdec/subspace.hpp"

// JSON exchange format: sparse exact-rational documents for rank-4 tensors
// and bilinear forms, plus the decomposition report emitted by the CLI.
// Rationals travel as strings "p/q" in lowest terms with positive
// denominator; omitted entries are zero; serialization is byte-deterministic.

namespace kdec {

using Json = nlohmann::ordered_json;

struct TensorDocument {
  int m = 0;
  ElementKind kind = ElementKind::Tensor4Kind;
  std::optional<Tensor4> tensor;
  std::optional<Bilinear> bilinear;
  std::map<std::string, std::string> metadata;

  bool operator==(const TensorDocument& o) const {
    return m == o.m && kind == o.kind && tensor == o.tensor &&
           bilinear == o.bilinear && metadata == o.metadata;
  }
  bool operator!=(const TensorDocument& o) const { return !(*this == o); }
};

inline TensorDocument make_tensor_document(
    const Tensor4& A, std::map<std::string, std::string> metadata = {}) {
  TensorDocument doc;
  doc.m = A.m;
  doc.kind = ElementKind::Tensor4Kind;
  doc.tensor = A;
  doc.metadata = std::move(metadata);
  return doc;
}

inline TensorDocument make_tensor_document(
    const Bilinear& phi, std::map<std::string, std::string> metadata = {}) {
  TensorDocument doc;
  doc.m = phi.m;
  doc.kind = ElementKind::BilinearKind;
  doc.bilinear = phi;
  doc.metadata = std::move(metadata);
  return doc;
}

namespace detail {

inline Json entries_json(const Tensor4& A) {
  Json entries = Json::array();
  for (int i = 0; i < A.m; ++i)
    for (int j = 0; j < A.m; ++j)
      for (int k = 0; k < A.m; ++k)
        for (int l = 0; l < A.m; ++l) {
          const Rational& v = A.at(i, j, k, l);
          if (v.is_zero()) continue;
          entries.push_back(Json::array(
              {Json::array({i, j, k, l}), format_rational(v)}));
        }
  return entries;
}

inline Json entries_json(const Bilinear& phi) {
  Json entries = Json::array();
  for (int i = 0; i < phi.m; ++i)
    for (int j = 0; j < phi.m; ++j) {
      const Rational& v = phi.at(i, j);
      if (v.is_zero()) continue;
      entries.push_back(
          Json::array({Json::array({i, j}), format_rational(v)}));
    }
  return entries;
}

inline Json matrix_json(const Bilinear& phi) {
  Json rows = Json::array();
  for (int i = 0; i < phi.m; ++i) {
    Json row = Json::array();
    for (int j = 0; j < phi.m; ++j) row.push_back(format_rational(phi.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline int parse_index(const Json& v, int m, const char* what) {
  if (!v.is_number_integer())
    throw ParseError(std::string(what) + " index must be an integer");
  const long long raw = v.get<long long>();
  if (raw < 0 || raw >= m)
    throw ParseError(std::string(what) + " index " + std::to_string(raw) +
                     " out of range for m = " + std::to_string(m));
  return static_cast<int>(raw);
}

}  // namespace detail

inline std::string serialize_tensor_document(const TensorDocument& doc) {
  Json j;
  j["m"] = doc.m;
  j["kind"] = doc.kind == ElementKind::Tensor4Kind ? "tensor4" : "bilinear";
  j["entries"] = doc.kind == ElementKind::Tensor4Kind
                     ? detail::entries_json(*doc.tensor)
                     : detail::entries_json(*doc.bilinear);
  Json meta = Json::object();
  for (const auto& [key, value] : doc.metadata) meta[key] = value;
  j["metadata"] = std::move(meta);
  return j.dump(2) + "\n";
}

inline TensorDocument parse_tensor_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  for (const auto& item : j.items())
    if (item.key() != "m" && item.key() != "kind" && item.key() != "entries" &&
        item.key() != "metadata")
      throw ParseError("unknown field '" + item.key() + "'");
  if (!j.contains("m") || !j["m"].is_number_integer())
    throw ParseError("field 'm' must be an integer");
  const long long m_raw = j["m"].get<long long>();
  if (m_raw < 2 || m_raw % 2 != 0 || m_raw > 64)
    throw ParseError("field 'm' must be a small even integer >= 2");
  const int m = static_cast<int>(m_raw);
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ParseError("field 'kind' must be a string");
  const std::string kind = j["kind"].get<std::string>();
  if (kind != "tensor4" && kind != "bilinear")
    throw ParseError("field 'kind' must be \"tensor4\" or \"bilinear\"");
  if (!j.contains("entries") || !j["entries"].is_array())
    throw ParseError("field 'entries' must be an array");

  TensorDocument doc;
  doc.m = m;
  doc.kind =
      kind == "tensor4" ? ElementKind::Tensor4Kind : ElementKind::BilinearKind;
  const int arity = doc.kind == ElementKind::Tensor4Kind ? 4 : 2;
  if (doc.kind == ElementKind::Tensor4Kind)
    doc.tensor = Tensor4(m);
  else
    doc.bilinear = Bilinear(m);

  std::set<std::vector<int>> seen;
  for (const Json& entry : j["entries"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_array() ||
        entry[0].size() != static_cast<std::size_t>(arity) ||
        !entry[1].is_string())
      throw ParseError("each entry must be [[indices...], \"p/q\"]");
    std::vector<int> idx;
    for (const Json& v : entry[0])
      idx.push_back(detail::parse_index(v, m, "entry"));
    if (!seen.insert(idx).second) {
      std::string tuple;
      for (int v : idx) tuple += (tuple.empty() ? "" : ",") + std::to_string(v);
      throw ParseError("duplicate entry for indices (" + tuple + ")");
    }
    const Rational value = parse_rational(entry[1].get<std::string>());
    if (doc.kind == ElementKind::Tensor4Kind)
      doc.tensor->at(idx[0], idx[1], idx[2], idx[3]) = value;
    else
      doc.bilinear->at(idx[0], idx[1]) = value;
  }

  if (j.contains("metadata")) {
    if (!j["metadata"].is_object())
      throw ParseError("field 'metadata' must be an object");
    for (const auto& item : j["metadata"].items()) {
      if (!item.value().is_string())
        throw ParseError("metadata values must be strings");
      doc.metadata[item.key()] = item.value().get<std::string>();
    }
  }
  return doc;
}

// Decomposition report written by the decompose command: every labeled
// component with its squared norm, both scalar traces, both Ricci-type
// contractions, and the residual (zero for every genuine member of K).
inline Json decomposition_json(const Decomposition& d) {
  Json j;
  j["m"] = d.input.m;
  const auto [tau, tau_j] = traces(d.input);
  j["tau"] = format_rational(tau);
  j["tau_j"] = format_rational(tau_j);
  j["rho"] = detail::matrix_json(ricci(d.input));
  j["rho13"] = detail::matrix_json(ricci13(d.input));
  Json components = Json::array();
  for (const auto& c : d.components) {
    Json comp;
    comp["label"] = component_label_name(c.label);
    comp["norm_squared"] = format_rational(inner_product(c.tensor, c.tensor));
    comp["entries"] = detail::entries_json(c.tensor);
    components.push_back(std::move(comp));
  }
  j["components"] = std::move(components);
  j["residual"] = detail::entries_json(d.residual);
  return j;
}

}  // namespace kdec
