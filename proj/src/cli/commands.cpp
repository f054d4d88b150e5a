#include "fsig/cli/commands.hpp"

#include "fsig/bounds/bounds.hpp"
#include "fsig/covers/cover.hpp"
#include "fsig/deadline.hpp"
#include "fsig/error.hpp"
#include "fsig/toric/fsignature.hpp"

#include <fmt/format.h>

namespace fsig::cli {

namespace {

std::string rat(const Rational& r) { return format_rational(r); }

json divisor_json(const toric::TorusQDivisor& d) {
  json out = json::array();
  for (const auto& c : d.coeffs) out.push_back(rat(c));
  return out;
}

json int_rows(const toric::IntMat& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back(r);
  return out;
}

Deadline deadline_of(const RingSpecDocument& doc) { return Deadline::after_seconds(doc.options.time_budget_secs); }

json sequence_json(const frobenius::SplittingSequence& seq) {
  json out;
  out["records"] = json::array();
  for (const auto& r : seq.records) {
    out["records"].push_back({{"e", r.e}, {"q", r.q}, {"a_e", r.a_e}, {"normalized", rat(r.normalized)}});
  }
  out["last_value"] = rat(seq.last_value);
  out["extrapolated"] = seq.extrapolated ? json(rat(*seq.extrapolated)) : json(nullptr);
  out["consistent_with_1_over_q"] = seq.consistent_with_1_over_q;
  out["estimate"] = rat(seq.estimate);
  out["diagnostic"] = seq.diagnostic;
  return out;
}

std::string sequence_table(const frobenius::SplittingSequence& seq, std::size_t dim) {
  std::string t = fmt::format("{:>3}  {:>8}  {:>14}  {:>10}  {}\n", "e", "q", "a_e", "a_e/q^d", "exact");
  for (const auto& r : seq.records) {
    t += fmt::format("{:>3}  {:>8}  {:>14}  {:>10}  {}\n", r.e, r.q, r.a_e, format_decimal(r.normalized, 6),
                     rat(r.normalized));
  }
  t += fmt::format("d = {}; last value {}", dim, format_decimal(seq.last_value, 6));
  if (seq.extrapolated) t += fmt::format("; 1/q extrapolation {}", format_decimal(*seq.extrapolated, 6));
  t += fmt::format("; estimate {} ({})\n", format_decimal(seq.estimate, 6), seq.diagnostic);
  return t;
}

json bound_json(const bounds::BoundReport& b) {
  json out{{"kind", b.kind},
           {"s", rat(b.s)},
           {"exact", b.exact},
           {"bound", b.bound},
           {"prime_to_p", b.prime_to_p},
           {"admissible_degrees", b.admissible_degrees},
           {"attained", b.attained},
           {"ok", b.ok}};
  if (!b.exact) out["label"] = "provisional";
  if (b.s_low) out["s_interval"] = {rat(*b.s_low), rat(*b.s_high)};
  if (b.bound_low) out["bound_low"] = *b.bound_low;
  if (b.bound_high) out["bound_high"] = *b.bound_high;
  if (b.order) out["order"] = *b.order;
  return out;
}

std::string bound_line(const bounds::BoundReport& b) {
  std::string line = fmt::format("[{}] s = {} ({}){}; bound floor(1/s) = {}; degrees prime to {}", b.kind, rat(b.s),
                                 format_decimal(b.s, 6), b.exact ? "" : ", provisional", b.bound, b.prime_to_p);
  if (b.order) line += fmt::format("; order {}", *b.order);
  if (!b.admissible_degrees.empty()) line += fmt::format("; cover degrees {}", fmt::join(b.admissible_degrees, ","));
  return line + (b.ok ? "  ok\n" : "  FAILED\n");
}

frobenius::SplittingSequence polynomial_sequence(const RingSpecDocument& doc) {
  const auto& ring = std::get<PolynomialRingSpec>(*doc.ring).ring;
  return frobenius::fsig_sequence(ring, doc.pair.value_or(frobenius::PairDivisorSpec{}), doc.options.e_max, false,
                                  deadline_of(doc));
}

frobenius::SplittingSequence toric_sequence(const toric::ToricRing& ring, const toric::TorusQDivisor& delta,
                                            const RingSpecDocument& doc) {
  std::vector<frobenius::SplittingRecord> recs;
  const auto deadline = deadline_of(doc);
  for (unsigned e = 1; e <= doc.options.e_max; ++e) {
    frobenius::SplittingRecord r;
    r.e = e;
    r.q = frobenius::checked_power(ring.characteristic(), e);
    r.a_e = toric::toric_splitting_number(ring, delta, e, toric::Rounding::floor, deadline);
    BigInt qd = 1;
    for (std::size_t i = 0; i < ring.dimension(); ++i) qd *= r.q;
    r.normalized = Rational(BigInt(r.a_e)) / Rational(qd);
    recs.push_back(std::move(r));
  }
  return frobenius::summarize_sequence(std::move(recs));
}

void require_ring(const RingSpecDocument& doc) {
  if (!doc.ring) throw InvalidInput("field 'ring': is required");
}

CommandResult compute(const RingSpecDocument& doc) {
  require_ring(doc);
  const auto model = toric_model(doc);
  Backend backend = doc.options.backend;
  if (backend == Backend::toric && !model) throw InvalidInput("backend toric: the ring has no toric model");
  const bool use_toric = backend == Backend::toric || (backend == Backend::automatic && model);
  CommandResult res;
  json& r = res.report;
  r["command"] = "compute";
  r["ring"] = doc.source.at("ring");
  r["pair"] = doc.source.contains("pair") ? doc.source.at("pair") : json(nullptr);
  if (use_toric) {
    const auto s = toric::toric_fsig_exact(model->first, model->second);
    r["backend"] = "toric";
    r["exact"] = true;
    r["s"] = rat(s);
    r["strongly_f_regular"] = s > 0;
    res.table = fmt::format("s = {} ({})  exact [toric]\n", rat(s), format_decimal(s, 6));
    return res;
  }
  frobenius::SplittingSequence seq;
  std::size_t dim = 0;
  if (model) {
    seq = toric_sequence(model->first, model->second, doc);
    dim = model->first.dimension();
  } else {
    seq = polynomial_sequence(doc);
    dim = std::get<PolynomialRingSpec>(*doc.ring).ring.dimension();
  }
  r["backend"] = "sequence";
  r["exact"] = false;
  r["dimension"] = dim;
  r["sequence"] = sequence_json(seq);
  r["s"] = rat(seq.estimate);
  res.table = sequence_table(seq, dim);
  return res;
}

covers::CoverDescriptor build_cover(const CoverSpec& c, toric::TorusQDivisor& delta_x, bool& has_pair) {
  if (c.type == "quotient_cover") {
    auto cover = covers::quotient_cover(c.n, c.weights, c.p, c.m);
    has_pair = c.pair.has_value();
    delta_x = c.pair.value_or(toric::TorusQDivisor::zero(cover.lower.num_facets()));
    return cover;
  }
  auto cover = covers::root_cover(c.dim, c.along, c.n, c.p);
  has_pair = true;
  delta_x = toric::TorusQDivisor::zero(c.dim);
  delta_x.coeffs[c.along] = c.pair_t.value_or(Rational(1) - Rational(1) / Rational(c.n));
  return cover;
}

json cover_json(const covers::CoverDescriptor& c) {
  return {{"label", c.label},
          {"degree", c.degree},
          {"residue_degree", c.residue_degree},
          {"ramification_indices", c.ramification_indices},
          {"ramification", divisor_json(c.ramification)},
          {"etale_in_codim1", c.etale_in_codim1},
          {"lower_hilbert_basis", int_rows(c.lower.hilbert_basis_ambient())},
          {"upper_hilbert_basis", int_rows(c.upper.hilbert_basis_ambient())}};
}

CommandResult verify(const RingSpecDocument& doc) {
  if (!doc.cover) throw InvalidInput("field 'cover': is required");
  CommandResult res;
  json& r = res.report;
  r["command"] = "verify";
  r["cover_spec"] = doc.source.at("cover");
  toric::TorusQDivisor delta_x;
  bool has_pair = false;
  const auto cover = build_cover(*doc.cover, delta_x, has_pair);
  r["cover"] = cover_json(cover);
  bool all_ok = true;
  std::string& t = res.table;
  t += fmt::format("cover {}: degree {}, residue degree {}, étale in codim 1: {}\n", cover.label, cover.degree,
                   cover.residue_degree, cover.etale_in_codim1 ? "yes" : "no");

  json checks = json::object();
  if (doc.cover->expected_degree) {
    const bool ok = *doc.cover->expected_degree == cover.degree;
    checks["degree"] = {{"expected", *doc.cover->expected_degree}, {"computed", cover.degree}, {"ok", ok}};
    all_ok = all_ok && ok;
    t += fmt::format("  degree            expected {} computed {}  {}\n", *doc.cover->expected_degree, cover.degree,
                     ok ? "ok" : "MISMATCH");
  }

  json tr;
  try {
    const auto rep = covers::verify_transformation(cover, has_pair ? std::optional(delta_x) : std::nullopt);
    tr = {{"f", rep.f},
          {"degree", rep.degree},
          {"residue_degree", rep.residue_degree},
          {"delta_x", divisor_json(rep.delta_x)},
          {"delta_y", divisor_json(rep.delta_y)},
          {"s_lower", rat(rep.s_lower)},
          {"s_upper", rat(rep.s_upper)},
          {"lhs", rat(rep.lhs)},
          {"rhs", rat(rep.rhs)},
          {"exact", rep.exact},
          {"ok", rep.holds}};
    all_ok = all_ok && rep.holds;
    t += fmt::format("  transformation    f*s(S,D_Y) = {} * {} = {}; [L:K]*s(R,D_X) = {} * {} = {}  {}\n", rep.f,
                     rat(rep.s_upper), rat(rep.lhs), rep.degree, rat(rep.s_lower), rat(rep.rhs),
                     rep.holds ? "ok" : "FAILED");
  } catch (const NonEffectiveDivisor& e) {
    tr = {{"ok", false}, {"error", e.what()}, {"facet", e.facet()}};
    all_ok = false;
    t += fmt::format("  transformation    {}  FAILED\n", e.what());
    res.exit_code = kExitVerification;
  } catch (const InvalidInput& e) {
    tr = {{"ok", false}, {"error", e.what()}};
    all_ok = false;
    t += fmt::format("  transformation    {}  FAILED\n", e.what());
  }
  checks["transformation"] = tr;

  const auto dbl = covers::doubling_check(cover);
  checks["doubling"] = {{"applicable", dbl.applicable}, {"s_lower", rat(dbl.s_lower)}, {"s_upper", rat(dbl.s_upper)},
                        {"equality", dbl.equality}, {"ok", dbl.holds}};
  all_ok = all_ok && dbl.holds;
  t += fmt::format("  doubling          {}\n", !dbl.applicable ? "not applicable" : dbl.holds ? "ok" : "FAILED");

  const auto note = covers::verify_note_trace(cover);
  json ev = json::array();
  for (const auto& e : note.evidence) {
    ev.push_back({{"generator", e.generator}, {"coefficient", e.coefficient}, {"in_lower", e.in_lower},
                  {"in_maximal_ideal", e.in_maximal_ideal}});
  }
  checks["trace_in_maximal_ideal"] = {{"evidence", ev}, {"ok", note.ok}};
  all_ok = all_ok && note.ok;
  t += fmt::format("  Tr(n) in m        {} generators  {}\n", note.evidence.size(), note.ok ? "ok" : "FAILED");

  const auto summands = covers::count_trace_summands(cover);
  const bool summands_ok = !cover.trace.surjective() || summands == cover.residue_degree;
  checks["trace_summands"] = {{"count", summands}, {"surjective", cover.trace.surjective()}, {"ok", summands_ok}};
  all_ok = all_ok && summands_ok;
  t += fmt::format("  Tr-summands       {}  {}\n", summands, summands_ok ? "ok" : "FAILED");

  r["checks"] = checks;
  r["ok"] = all_ok;
  if (!all_ok) res.exit_code = kExitVerification;
  return res;
}

CommandResult bounds_cmd(const RingSpecDocument& doc) {
  require_ring(doc);
  CommandResult res;
  json& r = res.report;
  r["command"] = "bounds";
  r["ring"] = doc.source.at("ring");
  r["reports"] = json::array();
  bool ok = true;
  auto add = [&](const bounds::BoundReport& b) {
    r["reports"].push_back(bound_json(b));
    res.table += bound_line(b);
    if (b.exact) ok = ok && b.ok;
  };
  const auto model = toric_model(doc);
  if (model && doc.options.backend != Backend::sequence) {
    add(bounds::pi1_order_bound(model->first,
                                doc.pair || doc.toric_pair ? std::optional(model->second) : std::nullopt));
    if (const auto* t = std::get_if<ToricRingSpec>(&*doc.ring)) {
      if (t->veronese) add(bounds::veronese_bound(t->veronese->first, t->veronese->second, t->ring.characteristic()));
    }
    if (doc.divisor) add(bounds::index_bound(model->first, *doc.divisor));
  } else {
    frobenius::SplittingSequence seq;
    std::uint32_t p = 0;
    if (model) {
      seq = toric_sequence(model->first, model->second, doc);
      p = model->first.characteristic();
    } else {
      seq = polynomial_sequence(doc);
      p = std::get<PolynomialRingSpec>(*doc.ring).ring.characteristic();
    }
    add(bounds::pi1_order_bound(seq, p));
  }
  r["ok"] = ok;
  if (!ok) res.exit_code = kExitVerification;
  return res;
}

CommandResult chain(const RingSpecDocument& doc) {
  require_ring(doc);
  const auto* t = std::get_if<ToricRingSpec>(&*doc.ring);
  if (!t || !t->quotient) throw InvalidInput("field 'ring': chain needs a quotient ring");
  const auto chains = covers::chain_simulation(t->quotient->first, t->quotient->second, t->ring.characteristic());
  CommandResult res;
  json& r = res.report;
  r["command"] = "chain";
  r["ring"] = doc.source.at("ring");
  r["chains"] = json::array();
  bool ok = true;
  for (const auto& c : chains) {
    json steps = json::array();
    res.table += fmt::format("{:>6}  {:>10}  {:>8}  {:>8}  {}\n", "order", "s", "codim1", "etale", "doubling");
    res.table += fmt::format("{:>6}  {:>10}  {:>8}  {:>8}  {}\n", c.orders[0], rat(c.s_values[0]), "-", "-", "-");
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
      const auto& s = c.steps[i];
      steps.push_back({{"from", c.orders[i]},
                       {"to", c.orders[i + 1]},
                       {"degree", s.cover.degree},
                       {"s_lower", rat(s.s_lower)},
                       {"s_upper", rat(s.s_upper)},
                       {"etale_in_codim1", s.etale_in_codim1},
                       {"etale", s.etale},
                       {"doubling_ok", s.doubling_ok}});
      res.table += fmt::format("{:>6}  {:>10}  {:>8}  {:>8}  {}\n", c.orders[i + 1], rat(s.s_upper),
                               s.etale_in_codim1 ? "yes" : "no", s.etale ? "yes" : "no", s.doubling_ok ? "ok" : "FAILED");
    }
    json sv = json::array();
    for (const auto& v : c.s_values) sv.push_back(rat(v));
    r["chains"].push_back({{"orders", c.orders},
                           {"s_values", sv},
                           {"steps", steps},
                           {"stabilization_index", c.stabilization_index},
                           {"ok", c.ok}});
    res.table += fmt::format("stabilization index {}  {}\n", c.stabilization_index, c.ok ? "ok" : "FAILED");
    ok = ok && c.ok;
  }
  r["ok"] = ok;
  if (!ok) res.exit_code = kExitVerification;
  return res;
}

CommandResult purity(const RingSpecDocument& doc) {
  require_ring(doc);
  const auto model = toric_model(doc);
  bounds::PurityVerdict v;
  if (model && doc.options.backend != Backend::sequence) {
    v = bounds::purity_check(model->first);
  } else {
    const auto seq = model ? toric_sequence(model->first, model->second, doc) : polynomial_sequence(doc);
    const std::uint32_t p = model ? model->first.characteristic()
                                  : std::get<PolynomialRingSpec>(*doc.ring).ring.characteristic();
    v = bounds::purity_check(seq.estimate, p, false);
  }
  CommandResult res;
  json& r = res.report;
  r["command"] = "purity";
  r["ring"] = doc.source.at("ring");
  r["kind"] = "purity";
  r["s"] = rat(v.s);
  r["exact"] = v.exact;
  r["forced"] = v.forced;
  r["threshold"] = rat(v.threshold);
  r["clause"] = v.clause;
  r["covers_found"] = v.covers_found ? json(*v.covers_found) : json(nullptr);
  r["ok"] = v.consistent;
  res.table = fmt::format("s = {} ({}){}; purity {} ({})", rat(v.s), format_decimal(v.s, 6),
                          v.exact ? "" : ", provisional", v.forced ? "forced" : "not forced", v.clause);
  if (v.covers_found) res.table += fmt::format("; étale-in-codim-1 covers found: {}", *v.covers_found);
  res.table += v.consistent ? "\n" : "  INCONSISTENT\n";
  if (!v.consistent) res.exit_code = kExitVerification;
  return res;
}

}  // namespace

CommandResult run_command(const std::string& command, const RingSpecDocument& doc) {
  if (command == "compute") return compute(doc);
  if (command == "verify") return verify(doc);
  if (command == "bounds") return bounds_cmd(doc);
  if (command == "chain") return chain(doc);
  if (command == "purity") return purity(doc);
  throw UsageError("unknown command '" + command + "'");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const BudgetExceeded*>(&e)) return kExitBudget;
  if (dynamic_cast<const NonEffectiveDivisor*>(&e)) return kExitVerification;
  if (dynamic_cast<const InvalidInput*>(&e) || dynamic_cast<const UsageError*>(&e)) return kExitInput;
  return 1;
}

json error_report(const std::string& command, const std::exception& e, int exit_code) {
  json r{{"command", command}, {"ok", false}, {"error", e.what()}, {"exit_code", exit_code}};
  if (const auto* ne = dynamic_cast<const NonEffectiveDivisor*>(&e)) r["facet"] = ne->facet();
  return r;
}

std::optional<std::string> report_difference(const json& expected, const json& actual, const std::string& path) {
  const std::string where = path.empty() ? "/" : path;
  if (expected.is_number_integer() && actual.is_number_integer()) {
    if (expected.get<long long>() == actual.get<long long>()) return std::nullopt;
    return where + ": expected " + expected.dump() + ", got " + actual.dump();
  }
  if (expected.type() != actual.type()) return where + ": type differs";
  if (expected.is_object()) {
    for (const auto& [k, v] : expected.items()) {
      if (!actual.contains(k)) return path + "/" + k + ": missing";
      if (auto d = report_difference(v, actual.at(k), path + "/" + k)) return d;
    }
    for (const auto& [k, v] : actual.items()) {
      if (!expected.contains(k)) return path + "/" + k + ": unexpected";
    }
    return std::nullopt;
  }
  if (expected.is_array()) {
    if (expected.size() != actual.size()) return where + ": length differs";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (auto d = report_difference(expected[i], actual[i], path + "/" + std::to_string(i))) return d;
    }
    return std::nullopt;
  }
  if (expected != actual) return where + ": expected " + expected.dump() + ", got " + actual.dump();
  return std::nullopt;
}

}  // namespace fsig::cli
