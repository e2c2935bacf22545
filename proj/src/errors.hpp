#ifndef INTREG_ERRORS_HPP
#define INTREG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace intreg {

enum class Errc {
  ok = 0,
  invalid_endpoints,
  no_hukuhara_difference,
  length_mismatch,
  empty_sample,
  degenerate_regressor,
  degenerate_response,
  arity_mismatch,
  missing_column,
  parse_error,
  io_error,
  qp_infeasible,
  qp_max_iterations,
  qp_not_psd,
  invalid_argument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace intreg

#endif
