#include "errors.hpp"

namespace intreg {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ok: return "Ok";
    case Errc::invalid_endpoints: return "InvalidEndpoints";
    case Errc::no_hukuhara_difference: return "NoHukuharaDifference";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::empty_sample: return "EmptySample";
    case Errc::degenerate_regressor: return "DegenerateRegressor";
    case Errc::degenerate_response: return "DegenerateResponse";
    case Errc::arity_mismatch: return "ArityMismatch";
    case Errc::missing_column: return "MissingColumn";
    case Errc::parse_error: return "ParseError";
    case Errc::io_error: return "IoError";
    case Errc::qp_infeasible: return "Infeasible";
    case Errc::qp_max_iterations: return "MaxIterations";
    case Errc::qp_not_psd: return "NotPSD";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace intreg
