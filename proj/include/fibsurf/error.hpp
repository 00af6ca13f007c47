#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fibsurf {

enum class Errc {
  unknown_class_id,
  invalid_lattice,
  non_integral_genus,
  negative_genus,
  parity_violation,
  negative_sibling_pairing,
  divisibility_failure,
  disconnected_fiber,
  missing_genus,
  invalid_argument,
  not_common_multiple,
  half_integer_sum,
  sweep_too_short,
  genus_too_small,
  inconsistent_input,
  zero_pairing_horizontal,
  degenerate_singularity,
  invalid_descriptor,
  validation_failure,
  parse_error,
  infeasible_spec,
};

constexpr std::string_view name(Errc code) {
  switch (code) {
    case Errc::unknown_class_id: return "unknown-class-id";
    case Errc::invalid_lattice: return "invalid-lattice";
    case Errc::non_integral_genus: return "non-integral-genus";
    case Errc::negative_genus: return "negative-genus";
    case Errc::parity_violation: return "parity-violation";
    case Errc::negative_sibling_pairing: return "negative-sibling-pairing";
    case Errc::divisibility_failure: return "divisibility-failure";
    case Errc::disconnected_fiber: return "disconnected-fiber";
    case Errc::missing_genus: return "missing-genus";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::not_common_multiple: return "not-common-multiple";
    case Errc::half_integer_sum: return "half-integer-sum";
    case Errc::sweep_too_short: return "sweep-too-short";
    case Errc::genus_too_small: return "genus-too-small";
    case Errc::inconsistent_input: return "inconsistent-input";
    case Errc::zero_pairing_horizontal: return "zero-pairing-horizontal";
    case Errc::degenerate_singularity: return "degenerate-singularity";
    case Errc::invalid_descriptor: return "invalid-descriptor";
    case Errc::validation_failure: return "validation-failure";
    case Errc::parse_error: return "parse-error";
    case Errc::infeasible_spec: return "infeasible-spec";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace fibsurf
