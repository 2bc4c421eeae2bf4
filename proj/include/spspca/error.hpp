#pragma once

#include <stdexcept>
#include <string>

namespace spspca {

enum class Errc {
  non_finite,
  too_few_rows,
  not_centered,
  not_symmetric,
  decomposition_failure,
  too_indefinite,
  empty_domain,
  theta_out_of_domain,
  non_positive_entry,
  non_positive_k,
  negative_lambda,
  dimension_mismatch,
  singular_system,
  k_too_large,
  degenerate_b,
  invalid_config,
  invalid_spec,
  file_not_found,
  ragged_rows,
  non_numeric_cell,
  all_columns_dropped,
  non_positive_price,
  write_failure,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace spspca
