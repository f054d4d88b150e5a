#include "fsig/cli/spec.hpp"

#include "fsig/error.hpp"
#include "fsig/poly/parser.hpp"
#include "fsig/poly/prime_field.hpp"
#include "fsig/toric/fsignature.hpp"

#include <set>

namespace fsig::cli {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw InvalidInput("field '" + field + "': " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) fail(path + key, "is required");
  return obj.at(key);
}

std::int64_t as_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<std::int64_t>();
}

std::uint32_t as_prime(const json& v, const std::string& field) {
  const auto p = as_int(v, field);
  if (p < 2 || p > 65521 || !poly::is_prime(static_cast<std::uint64_t>(p))) fail(field, "expected a prime below 65536");
  return static_cast<std::uint32_t>(p);
}

Rational as_rational(const json& v, const std::string& field) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (!v.is_string()) fail(field, "expected a \"num/den\" string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const Error& e) {
    fail(field, e.what());
  }
}

std::vector<std::int64_t> as_int_list(const json& v, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) fail(path + key, "unknown field");
  }
}

std::vector<std::string> names_of(const json& ring, std::size_t& nvars, const std::string& path) {
  std::vector<std::string> names;
  if (ring.contains("vars")) {
    const auto& v = ring.at("vars");
    if (!v.is_array() || v.empty()) fail(path + "vars", "expected a nonempty array of names");
    for (const auto& n : v) {
      if (!n.is_string()) fail(path + "vars", "names must be strings");
      names.push_back(n.get<std::string>());
    }
    nvars = names.size();
    if (ring.contains("nvars") && as_int(ring.at("nvars"), path + "nvars") != static_cast<std::int64_t>(nvars)) {
      fail(path + "nvars", "does not match the number of names");
    }
  } else {
    const auto n = as_int(require(ring, "nvars", path), path + "nvars");
    if (n < 1 || n > 64) fail(path + "nvars", "expected 1..64");
    nvars = static_cast<std::size_t>(n);
    names = poly::default_variable_names(nvars);
  }
  return names;
}

toric::TorusQDivisor parse_facet_divisor(const json& obj, const std::string& path) {
  const auto& c = require(obj, "facet_coeffs", path);
  if (!c.is_array()) fail(path + "facet_coeffs", "expected an array");
  toric::TorusQDivisor d;
  for (std::size_t i = 0; i < c.size(); ++i) d.coeffs.push_back(as_rational(c[i], path + "facet_coeffs[" + std::to_string(i) + "]"));
  return d;
}

std::variant<PolynomialRingSpec, ToricRingSpec> parse_ring(const json& ring) {
  const std::string path = "ring.";
  if (!ring.is_object()) fail("ring", "expected an object");
  const auto& type_field = require(ring, "type", path);
  if (!type_field.is_string()) fail("ring.type", "expected a string");
  const auto type = type_field.get<std::string>();
  const auto p = as_prime(require(ring, "p", path), path + "p");
  if (type == "regular") {
    reject_unknown(ring, {"type", "p", "nvars", "vars"}, path);
    std::size_t nvars = 0;
    auto names = names_of(ring, nvars, path);
    return PolynomialRingSpec{frobenius::RingPresentation::regular(nvars, p, std::move(names))};
  }
  if (type == "hypersurface") {
    reject_unknown(ring, {"type", "p", "nvars", "vars", "equation"}, path);
    std::size_t nvars = 0;
    auto names = names_of(ring, nvars, path);
    const auto& eq = require(ring, "equation", path);
    if (!eq.is_string()) fail(path + "equation", "expected a polynomial string");
    try {
      const auto f = poly::parse_polynomial(eq.get<std::string>(), names, p);
      return PolynomialRingSpec{frobenius::RingPresentation::hypersurface(f, names)};
    } catch (const ParseError& e) {
      fail(path + "equation", e.what());
    }
  }
  if (type == "toric") {
    reject_unknown(ring, {"type", "p", "rays"}, path);
    const auto& rays = require(ring, "rays", path);
    if (!rays.is_array() || rays.empty()) fail(path + "rays", "expected a nonempty array of integer vectors");
    toric::IntMat r;
    for (std::size_t i = 0; i < rays.size(); ++i) r.push_back(as_int_list(rays[i], path + "rays[" + std::to_string(i) + "]"));
    return ToricRingSpec{toric::ToricRing::from_rays(r, p), std::nullopt, std::nullopt};
  }
  if (type == "quotient") {
    reject_unknown(ring, {"type", "p", "n", "weights"}, path);
    const auto n = as_int(require(ring, "n", path), path + "n");
    const auto w = as_int_list(require(ring, "weights", path), path + "weights");
    auto q = toric::quotient_singularity(n, w, p);
    return ToricRingSpec{q.ring, std::make_pair(n, q.weights), std::nullopt};
  }
  if (type == "veronese") {
    reject_unknown(ring, {"type", "p", "d", "m"}, path);
    const auto d = as_int(require(ring, "d", path), path + "d");
    const auto m = as_int(require(ring, "m", path), path + "m");
    if (d < 1 || d > 6) fail(path + "d", "expected 1..6");
    auto v = toric::veronese(static_cast<std::size_t>(d), m, p);
    return ToricRingSpec{v.ring, std::make_pair(m, v.weights), std::make_pair(static_cast<std::size_t>(d), m)};
  }
  fail("ring.type", "unknown ring type '" + type + "'");
}

frobenius::PairDivisorSpec parse_polynomial_pair(const json& pair, const frobenius::RingPresentation& ring) {
  const std::string path = "pair.";
  reject_unknown(pair, {"components", "convention"}, path);
  frobenius::PairDivisorSpec spec;
  if (pair.contains("convention")) {
    const auto& c = pair.at("convention");
    if (c == "floor") {
      spec.convention = frobenius::Convention::floor_pe;
    } else if (c == "ceil") {
      spec.convention = frobenius::Convention::ceil_pe_minus_1;
    } else {
      fail(path + "convention", "expected \"floor\" or \"ceil\"");
    }
  }
  const auto& comps = require(pair, "components", path);
  if (!comps.is_array()) fail(path + "components", "expected an array");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string cp = path + "components[" + std::to_string(i) + "].";
    reject_unknown(comps[i], {"g", "t"}, cp);
    const auto& g = require(comps[i], "g", cp);
    if (!g.is_string()) fail(cp + "g", "expected a polynomial string");
    try {
      spec.components.push_back({poly::parse_polynomial(g.get<std::string>(), ring.variable_names(), ring.characteristic()),
                                 as_rational(require(comps[i], "t", cp), cp + "t")});
    } catch (const ParseError& e) {
      fail(cp + "g", e.what());
    }
  }
  try {
    spec.validate(ring);
  } catch (const InvalidInput& e) {
    fail("pair", e.what());
  }
  return spec;
}

CoverSpec parse_cover(const json& cover) {
  const std::string path = "cover.";
  if (!cover.is_object()) fail("cover", "expected an object");
  CoverSpec c;
  const auto& type = require(cover, "type", path);
  if (!type.is_string()) fail(path + "type", "expected a string");
  c.type = type.get<std::string>();
  c.p = as_prime(require(cover, "p", path), path + "p");
  c.n = as_int(require(cover, "n", path), path + "n");
  if (c.n < 1) fail(path + "n", "expected a positive integer");
  if (cover.contains("degree")) c.expected_degree = as_int(cover.at("degree"), path + "degree");
  if (c.type == "quotient_cover") {
    reject_unknown(cover, {"type", "p", "n", "weights", "m", "degree", "pair"}, path);
    c.weights = as_int_list(require(cover, "weights", path), path + "weights");
    c.m = as_int(require(cover, "m", path), path + "m");
    if (cover.contains("pair")) c.pair = parse_facet_divisor(cover.at("pair"), path + "pair.");
  } else if (c.type == "root_cover") {
    reject_unknown(cover, {"type", "p", "n", "along", "pair_t", "dim", "degree"}, path);
    if (cover.contains("dim")) {
      const auto d = as_int(cover.at("dim"), path + "dim");
      if (d < 1 || d > 6) fail(path + "dim", "expected 1..6");
      c.dim = static_cast<std::size_t>(d);
    }
    if (cover.contains("along")) {
      const auto& a = cover.at("along");
      if (!a.is_string() || a.get<std::string>().size() < 2 || a.get<std::string>()[0] != 'x') {
        fail(path + "along", "expected a variable name x0, x1, ...");
      }
      try {
        c.along = std::stoul(a.get<std::string>().substr(1));
      } catch (const std::exception&) {
        fail(path + "along", "expected a variable name x0, x1, ...");
      }
      if (c.along >= c.dim) fail(path + "along", "variable out of range");
    }
    if (cover.contains("pair_t")) c.pair_t = as_rational(cover.at("pair_t"), path + "pair_t");
  } else {
    fail(path + "type", "unknown cover type '" + c.type + "'");
  }
  return c;
}

}  // namespace

Backend parse_backend(const std::string& text) {
  if (text == "auto") return Backend::automatic;
  if (text == "toric") return Backend::toric;
  if (text == "sequence") return Backend::sequence;
  throw InvalidInput("backend must be auto, toric or sequence");
}

std::string to_string(Backend b) {
  switch (b) {
    case Backend::automatic:
      return "auto";
    case Backend::toric:
      return "toric";
    case Backend::sequence:
      return "sequence";
  }
  return "auto";
}

RingSpecDocument parse_document(const json& doc) {
  if (!doc.is_object()) throw InvalidInput("spec must be a JSON object");
  reject_unknown(doc, {"ring", "pair", "cover", "divisor", "options"}, "");
  RingSpecDocument out;
  out.source = doc;
  if (doc.contains("options")) {
    const auto& o = doc.at("options");
    if (!o.is_object()) fail("options", "expected an object");
    reject_unknown(o, {"e_max", "backend", "time_budget_secs"}, "options.");
    if (o.contains("e_max")) {
      const auto e = as_int(o.at("e_max"), "options.e_max");
      if (e < 1 || e > 12) fail("options.e_max", "expected 1..12");
      out.options.e_max = static_cast<unsigned>(e);
    }
    if (o.contains("backend")) {
      if (!o.at("backend").is_string()) fail("options.backend", "expected a string");
      try {
        out.options.backend = parse_backend(o.at("backend").get<std::string>());
      } catch (const InvalidInput& e) {
        fail("options.backend", e.what());
      }
    }
    if (o.contains("time_budget_secs")) {
      if (!o.at("time_budget_secs").is_number() || o.at("time_budget_secs").get<double>() < 0) {
        fail("options.time_budget_secs", "expected a nonnegative number");
      }
      out.options.time_budget_secs = o.at("time_budget_secs").get<double>();
    }
  }
  if (doc.contains("ring")) out.ring = parse_ring(doc.at("ring"));
  if (doc.contains("pair")) {
    if (!out.ring) fail("pair", "requires a ring");
    const auto& pair = doc.at("pair");
    if (!pair.is_object()) fail("pair", "expected an object");
    if (auto* poly_ring = std::get_if<PolynomialRingSpec>(&*out.ring)) {
      out.pair = parse_polynomial_pair(pair, poly_ring->ring);
    } else {
      const auto& tr = std::get<ToricRingSpec>(*out.ring).ring;
      reject_unknown(pair, {"facet_coeffs"}, "pair.");
      out.toric_pair = parse_facet_divisor(pair, "pair.");
      try {
        toric::validate_pair(tr, *out.toric_pair);
      } catch (const Error& e) {
        fail("pair.facet_coeffs", e.what());
      }
    }
  }
  if (doc.contains("divisor")) {
    if (!out.ring || !std::holds_alternative<ToricRingSpec>(*out.ring)) fail("divisor", "requires a toric ring");
    out.divisor = parse_facet_divisor(doc.at("divisor"), "divisor.");
  }
  if (doc.contains("cover")) out.cover = parse_cover(doc.at("cover"));
  return out;
}

RingSpecDocument parse_document_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  return parse_document(doc);
}

std::optional<std::pair<toric::ToricRing, toric::TorusQDivisor>> toric_model(const RingSpecDocument& doc) {
  if (!doc.ring) return std::nullopt;
  if (const auto* t = std::get_if<ToricRingSpec>(&*doc.ring)) {
    return std::make_pair(t->ring, doc.toric_pair.value_or(toric::TorusQDivisor::zero(t->ring.num_facets())));
  }
  const auto& ring = std::get<PolynomialRingSpec>(*doc.ring).ring;
  if (ring.kind() != frobenius::RingPresentation::Kind::regular) return std::nullopt;
  const std::size_t n = ring.nvars();
  toric::IntMat rays(n, toric::IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) rays[i][i] = 1;
  auto delta = toric::TorusQDivisor::zero(n);
  if (doc.pair) {
    // only pairs supported on coordinate hyperplanes, with the floor convention
    if (doc.pair->convention != frobenius::Convention::floor_pe) return std::nullopt;
    std::vector<bool> used(n, false);
    for (const auto& c : doc.pair->components) {
      if (c.g.terms().size() != 1 || c.g.terms().front().coeff != 1) return std::nullopt;
      const auto& exps = c.g.terms().front().monomial.exponents();
      std::size_t var = n, total = 0;
      for (std::size_t i = 0; i < n; ++i) {
        total += exps[i];
        if (exps[i] != 0) var = i;
      }
      if (total != 1 || used[var]) return std::nullopt;
      used[var] = true;
      delta.coeffs[var] = c.t;
    }
  }
  return std::make_pair(toric::ToricRing::from_rays(rays, ring.characteristic()), delta);
}

}  // namespace fsig::cli
