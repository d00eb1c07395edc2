#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgd/errors.hpp"
#include "qgd/linalg.hpp"
#include "qgd/qstate.hpp"
#include "qgd/search.hpp"

namespace qgd {

// Shortest decimal form that round-trips a double (17 significant digits).
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

inline double as_number(const nlohmann::json& j, const char* what) {
  if (!j.is_number())
    throw ParseError(std::string(what) + " must be a number");
  return j.get<double>();
}

inline Vec3 as_vec3(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 3)
    throw ParseError(std::string(what) + " must be an array of 3 numbers");
  Vec3 v{};
  for (int i = 0; i < 3; ++i) v[i] = as_number(j[i], what);
  return v;
}

inline cplx as_complex_entry(const nlohmann::json& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cplx(j[0].get<double>(), j[1].get<double>());
  throw ParseError("matrix entries must be numbers or [re, im] pairs");
}

}  // namespace detail

// A state spec is a JSON object with exactly one of the keys
// "matrix" | "x_state" | "bloch" | "named".
inline DensityMatrix parse_state_spec(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("state spec must be a JSON object");
  int keys = 0;
  for (const char* k : {"matrix", "x_state", "bloch", "named"})
    if (j.contains(k)) ++keys;
  if (keys != 1)
    throw ParseError(
        "state spec must contain exactly one of: matrix, x_state, bloch, "
        "named");

  if (j.contains("matrix")) {
    const auto& m = j["matrix"];
    if (!m.is_array() || m.size() != 4)
      throw ParseError("matrix must be a 4x4 array");
    Mat4c out{};
    for (int r = 0; r < 4; ++r) {
      if (!m[r].is_array() || m[r].size() != 4)
        throw ParseError("matrix must be a 4x4 array");
      for (int c = 0; c < 4; ++c)
        out[r][c] = detail::as_complex_entry(m[r][c]);
    }
    return DensityMatrix::from_matrix(out);
  }

  if (j.contains("x_state")) {
    const auto& x = j["x_state"];
    if (!x.is_object()) throw ParseError("x_state must be an object");
    for (const char* k : {"a", "b", "c", "d", "p", "q"})
      if (!x.contains(k))
        throw ParseError(std::string("x_state is missing field ") + k);
    XStateParams s{detail::as_number(x["a"], "x_state.a"),
                   detail::as_number(x["b"], "x_state.b"),
                   detail::as_number(x["c"], "x_state.c"),
                   detail::as_number(x["d"], "x_state.d"),
                   detail::as_number(x["p"], "x_state.p"),
                   detail::as_number(x["q"], "x_state.q")};
    return x_state(s);
  }

  if (j.contains("bloch")) {
    const auto& b = j["bloch"];
    if (!b.is_object() || !b.contains("x") || !b.contains("y") ||
        !b.contains("T"))
      throw ParseError("bloch must be an object with fields x, y, T");
    BlochForm f;
    f.x = detail::as_vec3(b["x"], "bloch.x");
    f.y = detail::as_vec3(b["y"], "bloch.y");
    const auto& t = b["T"];
    if (!t.is_array() || t.size() != 3)
      throw ParseError("bloch.T must be a 3x3 array");
    for (int r = 0; r < 3; ++r) {
      if (!t[r].is_array() || t[r].size() != 3)
        throw ParseError("bloch.T must be a 3x3 array");
      for (int c = 0; c < 3; ++c)
        f.T[r][c] = detail::as_number(t[r][c], "bloch.T");
    }
    return from_bloch(f);
  }

  const auto& n = j["named"];
  if (!n.is_object() || !n.contains("name") || !n["name"].is_string())
    throw ParseError("named must be an object with a string field name");
  const std::string name = n["name"].get<std::string>();
  const bool has_param = n.contains("param");

  if (name == "bell_phi_plus") return bell_phi_plus();
  if (name == "bell_psi_minus") return bell_psi_minus();
  if (name == "rho_star") return rho_star();
  if (name == "sigma_star") return sigma_star();
  if (name == "werner") {
    if (!has_param) throw ParseError("werner requires a numeric param");
    return werner(detail::as_number(n["param"], "werner param"));
  }
  if (name == "rho_epsilon") {
    if (!has_param) throw ParseError("rho_epsilon requires a numeric param");
    EntangledComponent comp = EntangledComponent::odd_parity;
    if (n.contains("component")) {
      const auto& c = n["component"];
      if (!c.is_string())
        throw ParseError("rho_epsilon component must be a string");
      const std::string cs = c.get<std::string>();
      if (cs == "odd_parity")
        comp = EntangledComponent::odd_parity;
      else if (cs == "even_parity")
        comp = EntangledComponent::even_parity;
      else
        throw ParseError(
            "rho_epsilon component must be odd_parity or even_parity");
    }
    return rho_epsilon(detail::as_number(n["param"], "rho_epsilon param"),
                       comp);
  }
  if (name == "product") {
    if (!has_param || !n["param"].is_array() || n["param"].size() != 6)
      throw ParseError(
          "product requires param = [ax, ay, az, bx, by, bz]");
    Vec3 a{}, b{};
    for (int i = 0; i < 3; ++i) {
      a[i] = detail::as_number(n["param"][i], "product param");
      b[i] = detail::as_number(n["param"][i + 3], "product param");
    }
    return product_state(a, b);
  }
  throw ParseError("unknown named state: " + name);
}

inline nlohmann::json matrix_to_json(const Mat4c& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < 4; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < 4; ++c)
      row.push_back({m[r][c].real(), m[r][c].imag()});
    rows.push_back(row);
  }
  return rows;
}

inline nlohmann::json state_to_json(const DensityMatrix& rho) {
  return nlohmann::json{{"matrix", matrix_to_json(rho.matrix())}};
}

inline nlohmann::json bloch_to_json(const BlochForm& b) {
  nlohmann::json t = nlohmann::json::array();
  for (int r = 0; r < 3; ++r)
    t.push_back({b.T[r][0], b.T[r][1], b.T[r][2]});
  return nlohmann::json{{"x", {b.x[0], b.x[1], b.x[2]}},
                        {"y", {b.y[0], b.y[1], b.y[2]}},
                        {"T", t}};
}

inline nlohmann::json ensemble_to_json(const ProductEnsemble& e) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : e.terms)
    terms.push_back({{"weight", t.weight},
                     {"a", {t.a[0], t.a[1], t.a[2]}},
                     {"b", {t.b[0], t.b[1], t.b[2]}}});
  return nlohmann::json{{"terms", terms}};
}

inline ProductEnsemble parse_ensemble(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw ParseError("ensemble must be an object with an array field terms");
  ProductEnsemble e;
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("weight") || !t.contains("a") ||
        !t.contains("b"))
      throw ParseError("ensemble terms need fields weight, a, b");
    ProductTerm term;
    term.weight = detail::as_number(t["weight"], "term weight");
    if (term.weight < 0.0) throw ParseError("term weights must be >= 0");
    term.a = detail::as_vec3(t["a"], "term a");
    term.b = detail::as_vec3(t["b"], "term b");
    e.terms.push_back(term);
  }
  if (e.terms.empty()) throw ParseError("ensemble needs at least one term");
  return e;
}

}  // namespace qgd
