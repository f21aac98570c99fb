#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mpcodes/classify.hpp"
#include "mpcodes/code.hpp"
#include "mpcodes/matrix.hpp"
#include "mpcodes/mpc.hpp"
#include "mpcodes/ring.hpp"

namespace mpcodes {

using Json = nlohmann::json;

inline Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("invalid JSON");
  return j;
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  Json j = Json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) throw ParseError("invalid JSON in " + path);
  return j;
}

namespace detail {

inline long long require_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer())
    throw ParseError(what + " must be an integer");
  return j.get<long long>();
}

inline unsigned require_uint(const Json& j, const std::string& what) {
  long long v = require_int(j, what);
  if (v < 0) throw ParseError(what + " must be nonnegative");
  return static_cast<unsigned>(v);
}

inline unsigned reduce_mod(long long v, unsigned n) {
  long long r = v % static_cast<long long>(n);
  if (r < 0) r += n;
  return static_cast<unsigned>(r);
}

inline std::uint64_t spec_order(const RingSpec& spec) {
  switch (spec.kind) {
    case RingSpec::Kind::ZMod:
      return spec.n;
    case RingSpec::Kind::PolyQuot: {
      std::uint64_t q = 1;
      for (std::size_t i = 1; i < spec.modulus.size(); ++i) q *= spec.p;
      return q;
    }
    case RingSpec::Kind::Product: {
      std::uint64_t q = 1;
      for (const auto& f : spec.factors) q *= spec_order(f);
      return q;
    }
  }
  return 0;
}

}  // namespace detail

inline RingSpec ring_spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError("ring spec needs a \"kind\" string");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "zmod") {
    if (!j.contains("n")) throw ParseError("zmod ring spec needs \"n\"");
    return RingSpec::zmod(detail::require_uint(j["n"], "zmod modulus"));
  }
  if (kind == "polyquot") {
    if (!j.contains("p") || !j.contains("modulus"))
      throw ParseError("polyquot ring spec needs \"p\" and \"modulus\"");
    unsigned p = detail::require_uint(j["p"], "polyquot characteristic");
    if (!j["modulus"].is_array())
      throw ParseError("polyquot modulus must be a coefficient array");
    std::vector<unsigned> mod;
    for (const auto& c : j["modulus"])
      mod.push_back(detail::require_uint(c, "modulus coefficient"));
    return RingSpec::polyquot(p, std::move(mod));
  }
  if (kind == "product") {
    if (!j.contains("factors") || !j["factors"].is_array())
      throw ParseError("product ring spec needs a \"factors\" array");
    std::vector<RingSpec> factors;
    for (const auto& f : j["factors"]) factors.push_back(ring_spec_from_json(f));
    return RingSpec::product(std::move(factors));
  }
  throw ParseError("unknown ring kind \"" + kind + "\"");
}

inline Json ring_spec_to_json(const RingSpec& spec) {
  Json j;
  switch (spec.kind) {
    case RingSpec::Kind::ZMod:
      j["kind"] = "zmod";
      j["n"] = spec.n;
      break;
    case RingSpec::Kind::PolyQuot:
      j["kind"] = "polyquot";
      j["p"] = spec.p;
      j["modulus"] = spec.modulus;
      break;
    case RingSpec::Kind::Product: {
      j["kind"] = "product";
      Json factors = Json::array();
      for (const auto& f : spec.factors) factors.push_back(ring_spec_to_json(f));
      j["factors"] = std::move(factors);
      break;
    }
  }
  return j;
}

// Element literals: integer for zmod (negatives reduced), coefficient array
// low-to-high for polyquot, array of factor literals for products (factor 0
// least significant). Conversion works on the normalized spec alone.
inline unsigned element_from_json(const RingSpec& spec, const Json& j) {
  switch (spec.kind) {
    case RingSpec::Kind::ZMod:
      return detail::reduce_mod(detail::require_int(j, "ring element"),
                                spec.n);
    case RingSpec::Kind::PolyQuot: {
      if (!j.is_array())
        throw ParseError("polyquot element literal must be a coefficient array");
      const std::size_t deg = spec.modulus.size() - 1;
      if (j.size() > deg)
        throw ParseError("polyquot element literal has more than " +
                         std::to_string(deg) + " coefficients");
      unsigned idx = 0, w = 1;
      for (const auto& c : j) {
        idx += detail::reduce_mod(detail::require_int(c, "coefficient"),
                                  spec.p) *
               w;
        w *= spec.p;
      }
      return idx;
    }
    case RingSpec::Kind::Product: {
      if (!j.is_array() || j.size() != spec.factors.size())
        throw ParseError("product element literal must list one literal per "
                         "factor");
      unsigned idx = 0, w = 1;
      for (std::size_t k = 0; k < spec.factors.size(); ++k) {
        idx += element_from_json(spec.factors[k], j[k]) * w;
        w *= static_cast<unsigned>(detail::spec_order(spec.factors[k]));
      }
      return idx;
    }
  }
  throw ParseError("unknown ring kind");
}

inline Json element_to_json(const RingSpec& spec, unsigned idx) {
  switch (spec.kind) {
    case RingSpec::Kind::ZMod:
      return Json(idx);
    case RingSpec::Kind::PolyQuot: {
      Json coeffs = Json::array();
      for (std::size_t i = 0; i + 1 < spec.modulus.size(); ++i) {
        coeffs.push_back(idx % spec.p);
        idx /= spec.p;
      }
      return coeffs;
    }
    case RingSpec::Kind::Product: {
      Json parts = Json::array();
      for (const auto& f : spec.factors) {
        unsigned qf = static_cast<unsigned>(detail::spec_order(f));
        parts.push_back(element_to_json(f, idx % qf));
        idx /= qf;
      }
      return parts;
    }
  }
  return Json();
}

inline unsigned element_from_json(const Ring& ring, const Json& j) {
  return element_from_json(ring.spec(), j);
}

inline Json element_to_json(const Ring& ring, unsigned idx) {
  return element_to_json(ring.spec(), idx);
}

namespace detail {

inline std::vector<std::vector<unsigned>> row_lists_from_json(
    const RingSpec& spec, const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty())
    throw ParseError(what + " must be a nonempty array of rows");
  std::vector<std::vector<unsigned>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw ParseError(what + " rows must be arrays");
    std::vector<unsigned> row;
    for (const auto& e : r) row.push_back(element_from_json(spec, e));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

inline RingMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ring") || !j.contains("rows"))
    throw ParseError("matrix JSON needs \"ring\" and \"rows\"");
  RingPtr ring = Ring::make(ring_spec_from_json(j["ring"]));
  auto rows = detail::row_lists_from_json(ring->spec(), j["rows"], "matrix");
  for (const auto& r : rows)
    if (r.size() != rows.front().size())
      throw ParseError("matrix rows must all have the same length");
  if (rows.front().empty()) throw ParseError("matrix rows must be nonempty");
  return RingMatrix::from_rows(std::move(ring), rows);
}

inline Json matrix_to_json(const RingMatrix& a) {
  Json rows = Json::array();
  const RingSpec& spec = a.ring()->spec();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < a.cols(); ++k)
      row.push_back(element_to_json(spec, a.at(i, k)));
    rows.push_back(std::move(row));
  }
  return Json{{"ring", ring_spec_to_json(spec)}, {"rows", std::move(rows)}};
}

inline Code code_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ring") || !j.contains("length"))
    throw ParseError("code JSON needs \"ring\" and \"length\"");
  RingPtr ring = Ring::make(ring_spec_from_json(j["ring"]));
  std::size_t n = detail::require_uint(j["length"], "code length");
  const bool has_gens = j.contains("generators");
  const bool has_words = j.contains("codewords");
  if (has_gens == has_words)
    throw ParseError("code JSON needs exactly one of \"generators\" or "
                     "\"codewords\"");
  auto rows = detail::row_lists_from_json(
      ring->spec(), j[has_gens ? "generators" : "codewords"],
      has_gens ? "generators" : "codewords");
  for (const auto& r : rows)
    if (r.size() != n)
      throw ParseError("code rows must have length " + std::to_string(n));
  return has_gens ? Code::span(std::move(ring), n, rows)
                  : Code::from_codewords(std::move(ring), n, rows);
}

inline Json code_to_json(const Code& c) {
  Json j{{"ring", ring_spec_to_json(c.ring()->spec())},
         {"length", c.length()}};
  const RingSpec& spec = c.ring()->spec();
  auto emit_rows = [&](const std::vector<std::vector<unsigned>>& rows) {
    Json out = Json::array();
    for (const auto& r : rows) {
      Json row = Json::array();
      for (unsigned e : r) row.push_back(element_to_json(spec, e));
      out.push_back(std::move(row));
    }
    return out;
  };
  if (c.is_linear()) {
    j["generators"] = emit_rows(c.spanning_generators());
  } else {
    std::vector<std::vector<unsigned>> rows;
    for (std::size_t i = 0; i < c.words().size(); ++i) {
      auto w = c.words()[i];
      rows.emplace_back(w.begin(), w.end());
    }
    j["codewords"] = emit_rows(rows);
  }
  return j;
}

inline WeightTable weight_from_json(const RingPtr& ring, const Json& j) {
  if (!j.is_object() || !j.contains("weights") || !j["weights"].is_array())
    throw ParseError("weight table JSON needs a \"weights\" array");
  std::vector<std::uint64_t> values;
  for (const auto& w : j["weights"]) {
    long long v = detail::require_int(w, "weight");
    if (v < 0) throw ParseError("weights must be nonnegative");
    values.push_back(static_cast<std::uint64_t>(v));
  }
  return WeightTable(ring, std::move(values));
}

inline Json weight_to_json(const WeightTable& w) {
  return Json{{"weights", w.values()}};
}

// Profiles are stored with both endpoints, which determine the row count.
inline SfrrProfile profile_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("direction") || !j.contains("indices"))
    throw ParseError("profile JSON needs \"direction\" and \"indices\"");
  if (!j["direction"].is_string() || !j["indices"].is_array())
    throw ParseError("profile direction must be a string, indices an array");
  const std::string dir = j["direction"].get<std::string>();
  SfrrProfile p;
  if (dir == "forward")
    p.direction = SfrrProfile::Direction::Forward;
  else if (dir == "reverse")
    p.direction = SfrrProfile::Direction::Reverse;
  else
    throw ParseError("profile direction must be \"forward\" or \"reverse\"");
  for (const auto& i : j["indices"])
    p.indices.push_back(detail::require_uint(i, "profile index"));
  if (p.indices.size() < 2)
    throw ParseError("profile indices must include both endpoints");
  unsigned m = p.direction == SfrrProfile::Direction::Forward
                   ? p.indices.back()
                   : p.indices.back() - 1;
  p.validate(m);
  return p;
}

inline Json profile_to_json(const SfrrProfile& p) {
  return Json{{"direction", p.direction == SfrrProfile::Direction::Forward
                                ? "forward"
                                : "reverse"},
              {"indices", p.indices}};
}

// {"codes": [<code JSON or file path>, ...], "matrix": <matrix JSON>}.
// String entries are read from base_dir when they are relative paths.
inline MpcSpec mpc_spec_from_json(const Json& j,
                                  const std::string& base_dir = "") {
  if (!j.is_object() || !j.contains("codes") || !j.contains("matrix"))
    throw ParseError("mpc spec JSON needs \"codes\" and \"matrix\"");
  if (!j["codes"].is_array())
    throw ParseError("mpc spec \"codes\" must be an array");
  std::vector<Code> codes;
  for (const auto& c : j["codes"]) {
    if (c.is_string()) {
      std::string path = c.get<std::string>();
      if (!base_dir.empty() && path.front() != '/')
        path = base_dir + "/" + path;
      codes.push_back(code_from_json(load_json_file(path)));
    } else {
      codes.push_back(code_from_json(c));
    }
  }
  return MpcSpec(std::move(codes), matrix_from_json(j["matrix"]));
}

inline Json mpc_spec_to_json(const MpcSpec& s) {
  Json codes = Json::array();
  for (const auto& c : s.codes()) codes.push_back(code_to_json(c));
  return Json{{"codes", std::move(codes)},
              {"matrix", matrix_to_json(s.matrix())}};
}

inline Json bound_report_to_json(const BoundReport& r) {
  Json j;
  auto put = [&](const char* key, const auto& opt) {
    if (opt)
      j[key] = *opt;
    else
      j[key] = nullptr;
  };
  put("thm31_U", r.thm31_U);
  put("thm31_L", r.thm31_L);
  put("thm45_U", r.thm45_U);
  put("thm45_L", r.thm45_L);
  put("thm45_U_equality", r.thm45_U_equality);
  put("thm45_L_equality", r.thm45_L_equality);
  put("thm47", r.thm47);
  put("thm47_equality", r.thm47_equality);
  put("cor48_primal", r.cor48_primal);
  put("cor48_dual", r.cor48_dual);
  put("thm51_lower_52", r.thm51_lower_52);
  put("thm51_lower_53", r.thm51_lower_53);
  put("thm51_upper_54", r.thm51_upper_54);
  put("thm51_lower_510", r.thm51_lower_510);
  put("m_prime", r.m_prime);
  j["forward_profile"] =
      r.forward_profile ? profile_to_json(*r.forward_profile) : Json();
  j["reverse_profile"] =
      r.reverse_profile ? profile_to_json(*r.reverse_profile) : Json();
  put("code_size", r.code_size);
  put("dual_size", r.dual_size);
  put("d_hamming", r.d_hamming);
  put("d_hamming_dual", r.d_hamming_dual);
  put("d_weight", r.d_weight);
  put("best_lower", r.best_lower);
  j["best_lower_source"] = r.best_lower_source;
  j["verified_sandwich"] = r.verified_sandwich;
  Json app = Json::object();
  for (const auto& [k, v] : r.applicability) app[k] = v;
  j["applicability"] = std::move(app);
  return j;
}

}  // namespace mpcodes
