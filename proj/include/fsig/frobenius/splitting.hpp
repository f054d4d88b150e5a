#pragma once

#include "fsig/deadline.hpp"
#include "fsig/poly/ideal.hpp"
#include "fsig/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fsig::frobenius {

using poly::Ideal;
using poly::Polynomial;

constexpr unsigned kDefaultEMax = 4;

/// Regular ring F_p[x_1..x_n] or hypersurface F_p[x_1..x_n]/(f), localised
/// at the origin.
class RingPresentation {
 public:
  enum class Kind { regular, hypersurface };

  static RingPresentation regular(std::size_t nvars, std::uint32_t p, std::vector<std::string> names = {});
  /// f must be nonzero and vanish at the origin.
  static RingPresentation hypersurface(const Polynomial& f, std::vector<std::string> names = {});

  Kind kind() const { return kind_; }
  std::size_t nvars() const { return nvars_; }
  std::uint32_t characteristic() const { return p_; }
  std::size_t dimension() const { return kind_ == Kind::regular ? nvars_ : nvars_ - 1; }
  /// Requires kind() == hypersurface.
  const Polynomial& equation() const;
  const std::vector<std::string>& variable_names() const { return names_; }

 private:
  RingPresentation(Kind kind, std::size_t nvars, std::uint32_t p, std::optional<Polynomial> f,
                   std::vector<std::string> names);

  Kind kind_;
  std::size_t nvars_;
  std::uint32_t p_;
  std::optional<Polynomial> f_;
  std::vector<std::string> names_;
};

enum class Convention { floor_pe, ceil_pe_minus_1 };

std::string to_string(Convention c);

struct PairComponent {
  Polynomial g;
  Rational t;
};

/// Delta = sum t_j div(g_j) with 0 <= t_j < 1.
struct PairDivisorSpec {
  std::vector<PairComponent> components;
  Convention convention = Convention::floor_pe;

  bool empty() const { return components.empty(); }
  /// Throws InvalidInput for t outside [0,1), zero or unit g, or a ring mismatch.
  void validate(const RingPresentation& ring) const;
  /// Exponents r_j = floor(q t_j) or ceil((q-1) t_j).
  std::vector<std::uint64_t> exponents(std::uint64_t q) const;
};

struct SplittingRecord {
  unsigned e = 0;
  std::uint64_t q = 0;
  std::uint64_t a_e = 0;
  Rational normalized;
  std::optional<Ideal> ideal;
};

struct SplittingSequence {
  std::vector<SplittingRecord> records;
  /// a_e/q^d at the largest e.
  Rational last_value;
  /// (q_e v_e - q_{e-1} v_{e-1}) / (q_e - q_{e-1}); needs two records.
  std::optional<Rational> extrapolated;
  /// Whether the last three values fit s + c/q within the observed step.
  bool consistent_with_1_over_q = false;
  /// The reported estimate: the extrapolation when consistent, else the last value.
  Rational estimate;
  std::string diagnostic;
  static constexpr bool is_estimate = true;
};

/// p^e, throwing ExponentOverflow that names the failing power.
std::uint64_t checked_power(std::uint32_t p, unsigned e);

/// f^(q-1) * prod g_j^(r_j) (regular rings omit the f factor).
Polynomial splitting_multiplier(const RingPresentation& ring, const PairDivisorSpec& delta, unsigned e);

/// I_e = (m^[q] : multiplier) in the ambient polynomial ring.
Ideal splitting_ideal(const RingPresentation& ring, const PairDivisorSpec& delta, unsigned e,
                      const Deadline& deadline = {});

/// a_e = length of P/I_e.
std::uint64_t splitting_number(const RingPresentation& ring, const PairDivisorSpec& delta, unsigned e,
                               const Deadline& deadline = {});

/// Last value, extrapolation and estimate for records with increasing e.
SplittingSequence summarize_sequence(std::vector<SplittingRecord> records);

SplittingSequence fsig_sequence(const RingPresentation& ring, const PairDivisorSpec& delta,
                                unsigned e_max = kDefaultEMax, bool keep_ideals = false,
                                const Deadline& deadline = {});

struct RoundingEntry {
  Rational t;
  std::uint64_t floor_exponent;  // floor(q t)
  std::uint64_t ceil_exponent;   // ceil((q-1) t)
  bool integral;                 // (q-1) t is an integer
  bool ok;                       // floor <= ceil, with equality when integral
};

struct RoundingReport {
  std::uint64_t q;
  std::vector<RoundingEntry> entries;
  bool ok;
};

RoundingReport rounding_gap_check(const PairDivisorSpec& delta, std::uint64_t q);

/// lambda(J_e/I_e)/q^d with J_e = (I_e : c), e = 1..e_max.
std::vector<Rational> ctrick_gap_sequence(const RingPresentation& ring, const Polynomial& c,
                                          unsigned e_max = kDefaultEMax, const Deadline& deadline = {});

struct PerturbationReport {
  std::vector<Rational> base;       // a_e/q^d
  std::vector<Rational> perturbed;  // with the extra divisor
  std::vector<Rational> gaps;
  Rational threshold;               // 2/q at e_max
  bool ok;
};

/// Compares the splitting sequence with the one where the fixed integral
/// divisor D_extra (components with nonnegative integer t) is added.
PerturbationReport perturbed_limit_check(const RingPresentation& ring, const PairDivisorSpec& delta,
                                         const PairDivisorSpec& extra, unsigned e_max = kDefaultEMax,
                                         const Deadline& deadline = {});

/// lambda(R/I^[q] R)/q^d for e = 1..e_max.
std::vector<Rational> hk_length_sequence(const RingPresentation& ring, const Ideal& ideal,
                                         unsigned e_max = kDefaultEMax, const Deadline& deadline = {});

struct WitnessReport {
  std::optional<unsigned> e;
  unsigned e_max;
  /// No witness up to e_max; says nothing about strong F-regularity.
  bool inconclusive;
};

/// Least e <= e_max with c f^(q-1) outside m^[q] (c outside m^[q] when regular).
WitnessReport sfr_witness(const RingPresentation& ring, const Polynomial& c, unsigned e_max = kDefaultEMax);

}  // namespace fsig::frobenius
