#ifndef INTREG_IO_HPP
#define INTREG_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "multiple_models.hpp"
#include "simple_models.hpp"

namespace intreg {

// Interval variables occupy two CSV columns, <name>_inf and <name>_sup.
IntervalDataset load_csv(const std::string& path, const std::string& response,
                         const std::vector<std::string>& predictors);

// Loader for prediction inputs: the response columns may be absent and the
// file may contain zero data rows.
IntervalDataset load_csv_flexible(const std::string& path,
                                  const std::string& response,
                                  const std::vector<std::string>& predictors,
                                  bool* response_present);

void write_dataset_csv(const IntervalDataset& ds, std::ostream& os);

// FNV-1a 64 over a canonical 17-digit serialization; drift detector, not
// a cryptographic hash.
std::string dataset_fingerprint(const IntervalDataset& ds);

// Machine-readable fit description, losslessly serializable to JSON.
struct FitReport {
  int schema = 1;
  std::string model;  // basic | m | mg | mblrm | mflrm | multiple-m
  double theta = 0.0;
  std::vector<std::pair<std::string, double>> coefficients;
  Interval delta;
  double r_squared = 0.0;
  double objective = 0.0;
  std::optional<double> kkt_residual;
  std::size_t n = 0, k = 0;
  std::string response;
  std::vector<std::string> predictors;
  std::string dataset_fingerprint;
};

FitReport make_report(const SimpleFit& fit, const IntervalDataset& ds);
FitReport make_report(const MultipleFit& fit, const IntervalDataset& ds);

std::string report_to_json(const FitReport& report);
FitReport report_from_json(const std::string& text);

// Evaluate the regression function described by a (possibly re-parsed)
// report on one predictor row.
Interval report_predict(const FitReport& report,
                        const std::vector<Interval>& row);

const char* model_name(SimpleKind kind);
const char* model_name(MultipleKind kind);

}  // namespace intreg

#endif
