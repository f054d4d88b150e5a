#pragma once

#include "fsig/frobenius/splitting.hpp"
#include "fsig/toric/toric_ring.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fsig::cli {

using nlohmann::json;

enum class Backend { automatic, toric, sequence };

Backend parse_backend(const std::string& text);
std::string to_string(Backend b);

struct Options {
  unsigned e_max = frobenius::kDefaultEMax;
  Backend backend = Backend::automatic;
  double time_budget_secs = 0;  // 0 = unlimited
};

/// Polynomial-model ring: regular or hypersurface.
struct PolynomialRingSpec {
  frobenius::RingPresentation ring;
};

/// Toric model; `quotient` is set for 1/n(a) rings, `veronese_m` for Veronese rings.
struct ToricRingSpec {
  toric::ToricRing ring;
  std::optional<std::pair<std::int64_t, std::vector<std::int64_t>>> quotient;
  std::optional<std::pair<std::size_t, std::int64_t>> veronese;
};

struct CoverSpec {
  std::string type;  // "quotient_cover" or "root_cover"
  std::int64_t n = 1;
  std::vector<std::int64_t> weights;
  std::int64_t m = 1;
  std::uint32_t p = 2;
  std::size_t dim = 2;
  std::size_t along = 0;
  std::optional<Rational> pair_t;
  std::optional<toric::TorusQDivisor> pair;
  std::optional<std::int64_t> expected_degree;
};

struct RingSpecDocument {
  std::optional<std::variant<PolynomialRingSpec, ToricRingSpec>> ring;
  std::optional<frobenius::PairDivisorSpec> pair;       // polynomial model
  std::optional<toric::TorusQDivisor> toric_pair;       // toric model
  std::optional<toric::TorusQDivisor> divisor;          // index bound
  std::optional<CoverSpec> cover;
  Options options;
  json source;
};

/// Schema validation and construction; InvalidInput names the failing field.
RingSpecDocument parse_document(const json& doc);
RingSpecDocument parse_document_text(const std::string& text);

/// Toric model of a regular ring with a pair on coordinate hyperplanes, when one exists.
std::optional<std::pair<toric::ToricRing, toric::TorusQDivisor>> toric_model(const RingSpecDocument& doc);

}  // namespace fsig::cli
