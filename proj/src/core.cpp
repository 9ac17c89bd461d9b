#include "rmt/core.hpp"

namespace rmt {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::pole_argument: return "pole_argument";
    case Errc::domain: return "domain";
    case Errc::order_too_high: return "order_too_high";
    case Errc::insufficient_jet_order: return "insufficient_jet_order";
    case Errc::mismatched_base: return "mismatched_base";
    case Errc::unknown_id: return "unknown_id";
    case Errc::invalid_parameter: return "invalid_parameter";
    case Errc::incompatible_domain: return "incompatible_domain";
    case Errc::radius_exceeded: return "radius_exceeded";
    case Errc::non_convergence: return "non_convergence";
    case Errc::singular_integrand: return "singular_integrand";
    case Errc::acceleration_failure: return "acceleration_failure";
    case Errc::seam_mismatch: return "seam_mismatch";
    case Errc::strip_violation: return "strip_violation";
    case Errc::kernel_zero: return "kernel_zero";
    case Errc::missing_closed_form: return "missing_closed_form";
    case Errc::parse_error: return "parse_error";
  }
  return "unknown";
}

}  // namespace rmt
