// Command-line front end for the intreg shared library. Talks to the core
// exclusively through the C API in intreg/intreg.h.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "intreg/intreg.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

struct CString {
  char* ptr = nullptr;
  ~CString() { intreg_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

[[noreturn]] void fail(intreg_status st) {
  std::cerr << intreg_strerror(st) << ": " << intreg_last_error() << "\n";
  std::exit(kExitError);
}

void check(intreg_status st) {
  if (st != INTREG_OK) fail(st);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<const char*> c_names(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "IoError: cannot write '" << path << "'\n";
    std::exit(kExitError);
  }
  out << text;
}

intreg_model model_from_string(const std::string& s) {
  if (s == "basic") return INTREG_MODEL_BASIC;
  if (s == "m") return INTREG_MODEL_M;
  if (s == "mg") return INTREG_MODEL_MG;
  if (s == "mblrm") return INTREG_MODEL_MBLRM;
  if (s == "mflrm") return INTREG_MODEL_MFLRM;
  return INTREG_MODEL_MULTIPLE_M;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Least-squares linear regression for interval-valued data"};
  app.require_subcommand(1);
  const double default_theta = 1.0 / 3.0;

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "Fit a model and print a JSON report");
  std::string model = "mg", response, predictors_arg, data_path;
  std::string out_path, residuals_path;
  double theta = default_theta;
  fit_cmd->add_option("--model", model, "basic|m|mg|mblrm|mflrm|multiple-m")
      ->check(CLI::IsMember({"basic", "m", "mg", "mblrm", "mflrm", "multiple-m"}));
  fit_cmd->add_option("--theta", theta, "spread weight of the metric")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--response", response, "response variable name")->required();
  fit_cmd->add_option("--predictors", predictors_arg, "comma-separated predictor names")
      ->required();
  fit_cmd->add_option("--data", data_path, "CSV file")->required();
  fit_cmd->add_option("--out", out_path, "also write the report here");
  fit_cmd->add_option("--residuals", residuals_path, "write residual CSV here");

  // region
  auto* region_cmd =
      app.add_subcommand("region", "Emit the spread-coefficient feasible region");
  std::string r_response, r_predictor, r_data, r_out;
  region_cmd->add_option("--response", r_response)->required();
  region_cmd->add_option("--predictors", r_predictor, "exactly one predictor")
      ->required();
  region_cmd->add_option("--data", r_data)->required();
  region_cmd->add_option("--out", r_out);

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Run a sampling study");
  std::string study = "m1", sim_out, boxplot_path;
  std::size_t sim_n = 100;
  int reps = 1000;
  std::uint64_t seed = 1;
  double sim_theta = default_theta;
  bool parallel = false;
  sim_cmd->add_option("--study", study)->check(CLI::IsMember({"m1", "m2", "m3"}));
  sim_cmd->add_option("--n", sim_n, "sample size")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--reps", reps, "replications")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", seed);
  sim_cmd->add_option("--theta", sim_theta)->check(CLI::PositiveNumber);
  sim_cmd->add_flag("--parallel", parallel, "run replicates on all cores");
  sim_cmd->add_option("--out", sim_out);
  sim_cmd->add_option("--boxplot", boxplot_path, "write box-plot CSV here");

  // predict
  auto* pred_cmd = app.add_subcommand("predict", "Predict from a stored report");
  std::string fit_path, p_data, p_out;
  pred_cmd->add_option("--fit", fit_path, "JSON fit report")->required();
  pred_cmd->add_option("--data", p_data)->required();
  pred_cmd->add_option("--out", p_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  if (fit_cmd->parsed()) {
    const auto preds = split_list(predictors_arg);
    const auto cpreds = c_names(preds);
    intreg_dataset* ds = nullptr;
    check(intreg_dataset_load_csv(data_path.c_str(), response.c_str(),
                                  cpreds.data(), cpreds.size(), &ds));
    intreg_fit* fit = nullptr;
    intreg_status st =
        intreg_fit_model(ds, model_from_string(model), theta, &fit);
    if (st != INTREG_OK) {
      intreg_dataset_free(ds);
      fail(st);
    }
    CString json;
    check(intreg_fit_to_json(fit, &json.ptr));
    std::cout << json.str();
    if (!out_path.empty()) write_output(json.str(), out_path);
    if (!residuals_path.empty()) {
      CString csv;
      check(intreg_residuals_csv(fit, ds, &csv.ptr));
      write_output(csv.str(), residuals_path);
    }
    intreg_fit_free(fit);
    intreg_dataset_free(ds);
    return kExitOk;
  }

  if (region_cmd->parsed()) {
    const auto preds = split_list(r_predictor);
    if (preds.size() != 1) {
      std::cerr << "region needs exactly one predictor\n";
      return kExitUsage;
    }
    const auto cpreds = c_names(preds);
    intreg_dataset* ds = nullptr;
    check(intreg_dataset_load_csv(r_data.c_str(), r_response.c_str(),
                                  cpreds.data(), cpreds.size(), &ds));
    intreg_region* region = nullptr;
    intreg_status st = intreg_region_compute(ds, &region);
    if (st != INTREG_OK) {
      intreg_dataset_free(ds);
      fail(st);
    }
    CString csv;
    check(intreg_region_csv(region, &csv.ptr));
    write_output(csv.str(), r_out);
    intreg_region_free(region);
    intreg_dataset_free(ds);
    return kExitOk;
  }

  if (sim_cmd->parsed()) {
    intreg_study* s = nullptr;
    check(intreg_study_run(study.c_str(), sim_n, reps, seed, sim_theta,
                           parallel ? 1 : 0, &s));
    CString table;
    check(intreg_study_table_csv(s, &table.ptr));
    write_output(table.str(), sim_out);
    if (!boxplot_path.empty()) {
      CString box;
      check(intreg_study_boxplot_csv(s, &box.ptr));
      write_output(box.str(), boxplot_path);
    }
    intreg_study_free(s);
    return kExitOk;
  }

  if (pred_cmd->parsed()) {
    std::ifstream in(fit_path);
    if (!in) {
      std::cerr << "IoError: cannot open '" << fit_path << "'\n";
      return kExitError;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    intreg_fit* fit = nullptr;
    check(intreg_fit_from_json(buf.str().c_str(), &fit));
    CString csv;
    intreg_status st = intreg_predict_csv(fit, p_data.c_str(), &csv.ptr);
    if (st != INTREG_OK) {
      intreg_fit_free(fit);
      fail(st);
    }
    write_output(csv.str(), p_out);
    intreg_fit_free(fit);
    return kExitOk;
  }

  return kExitUsage;
}
