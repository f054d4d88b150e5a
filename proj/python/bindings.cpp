#include "fsig/bounds/bounds.hpp"
#include "fsig/cli/commands.hpp"
#include "fsig/covers/cover.hpp"
#include "fsig/error.hpp"
#include "fsig/frobenius/splitting.hpp"
#include "fsig/poly/parser.hpp"
#include "fsig/toric/fsignature.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace fsig;

namespace {

using Pair = std::vector<std::pair<std::string, std::string>>;

toric::TorusQDivisor divisor_of(const toric::ToricRing& ring, const std::optional<std::vector<std::string>>& coeffs) {
  if (!coeffs) return toric::TorusQDivisor::zero(ring.num_facets());
  toric::TorusQDivisor d;
  for (const auto& c : *coeffs) d.coeffs.push_back(parse_rational(c));
  toric::validate_pair(ring, d);
  return d;
}

frobenius::RingPresentation presentation(const std::optional<std::string>& equation, std::size_t nvars,
                                         std::uint32_t p) {
  if (!equation) return frobenius::RingPresentation::regular(nvars, p);
  return frobenius::RingPresentation::hypersurface(poly::parse_polynomial(*equation, nvars, p));
}

py::dict transformation_dict(const covers::TransformationReport& r) {
  py::dict d;
  d["degree"] = r.degree;
  d["residue_degree"] = r.residue_degree;
  d["s_lower"] = format_rational(r.s_lower);
  d["s_upper"] = format_rational(r.s_upper);
  d["lhs"] = format_rational(r.lhs);
  d["rhs"] = format_rational(r.rhs);
  d["holds"] = r.holds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "F-signature of pairs and finite covers";

  static py::exception<Error> base(m, "FsigError", PyExc_RuntimeError);
  static py::exception<InvalidInput> invalid(m, "InvalidInput", base.ptr());
  static py::exception<BudgetExceeded> budget(m, "BudgetExceeded", base.ptr());
  static py::exception<NonEffectiveDivisor> non_effective(m, "NonEffectiveDivisor", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NonEffectiveDivisor& e) {
      py::set_error(non_effective, e.what());
    } catch (const BudgetExceeded& e) {
      py::set_error(budget, e.what());
    } catch (const InvalidInput& e) {
      py::set_error(invalid, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  m.def(
      "run",
      [](const std::string& command, const std::string& spec) {
        const auto doc = cli::parse_document_text(spec);
        const auto result = cli::run_command(command, doc);
        return std::make_tuple(result.report.dump(), result.exit_code);
      },
      py::arg("command"), py::arg("spec"));

  m.def(
      "toric_fsignature",
      [](const lattice::IntMat& rays, std::uint32_t p, const std::optional<std::vector<std::string>>& delta) {
        const auto ring = toric::ToricRing::from_rays(rays, p);
        return format_rational(toric::toric_fsig_exact(ring, divisor_of(ring, delta)));
      },
      py::arg("rays"), py::arg("p"), py::arg("delta") = py::none());

  m.def(
      "quotient_fsignature",
      [](std::int64_t n, const std::vector<std::int64_t>& weights, std::uint32_t p) {
        return format_rational(toric::toric_fsig_exact(toric::quotient_singularity(n, weights, p).ring));
      },
      py::arg("n"), py::arg("weights"), py::arg("p"));

  m.def(
      "toric_splitting_numbers",
      [](const lattice::IntMat& rays, std::uint32_t p, unsigned e_max,
         const std::optional<std::vector<std::string>>& delta) {
        const auto ring = toric::ToricRing::from_rays(rays, p);
        const auto d = divisor_of(ring, delta);
        std::vector<std::uint64_t> out;
        for (unsigned e = 1; e <= e_max; ++e) out.push_back(toric::toric_splitting_number(ring, d, e));
        return out;
      },
      py::arg("rays"), py::arg("p"), py::arg("e_max"), py::arg("delta") = py::none());

  m.def(
      "splitting_numbers",
      [](const std::optional<std::string>& equation, std::size_t nvars, std::uint32_t p, unsigned e_max,
         const Pair& pair, const std::string& convention) {
        const auto ring = presentation(equation, nvars, p);
        frobenius::PairDivisorSpec delta;
        if (convention == "ceil") {
          delta.convention = frobenius::Convention::ceil_pe_minus_1;
        } else if (convention != "floor") {
          throw InvalidInput("convention must be 'floor' or 'ceil'");
        }
        for (const auto& [g, t] : pair) delta.components.push_back({poly::parse_polynomial(g, nvars, p), parse_rational(t)});
        const auto seq = frobenius::fsig_sequence(ring, delta, e_max);
        std::vector<std::tuple<unsigned, std::uint64_t, std::uint64_t, std::string>> out;
        for (const auto& r : seq.records) out.emplace_back(r.e, r.q, r.a_e, format_rational(r.normalized));
        return out;
      },
      py::arg("equation"), py::arg("nvars"), py::arg("p"), py::arg("e_max"), py::arg("pair") = Pair{},
      py::arg("convention") = "floor");

  m.def(
      "quotient_cover_transformation",
      [](std::int64_t n, const std::vector<std::int64_t>& weights, std::uint32_t p, std::int64_t m,
         const std::optional<std::vector<std::string>>& delta) {
        const auto cover = covers::quotient_cover(n, weights, p, m);
        std::optional<toric::TorusQDivisor> dx;
        if (delta) dx = divisor_of(cover.lower, delta);
        return transformation_dict(covers::verify_transformation(cover, dx));
      },
      py::arg("n"), py::arg("weights"), py::arg("p"), py::arg("m"), py::arg("delta") = py::none());

  m.def(
      "pi1_order_bound",
      [](const lattice::IntMat& rays, std::uint32_t p) {
        const auto r = bounds::pi1_order_bound(toric::ToricRing::from_rays(rays, p));
        py::dict d;
        d["s"] = format_rational(r.s);
        d["bound"] = r.bound;
        d["admissible_degrees"] = r.admissible_degrees;
        d["ok"] = r.ok;
        return d;
      },
      py::arg("rays"), py::arg("p"));

  m.def(
      "inverse_floor", [](const std::string& s) { return bounds::inverse_floor(parse_rational(s)); }, py::arg("s"));
}
