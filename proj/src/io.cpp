#include "io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace intreg {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

double parse_double(const std::string& s, std::size_t row,
                    const std::string& col) {
  const std::string t = trim(s);
  if (!t.empty()) {
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() + t.size() && std::isfinite(v)) return v;
  }
  throw Error(Errc::parse_error, "row " + std::to_string(row) + ", column '" +
                                     col + "': cannot parse '" + s + "'");
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct ColumnPair {
  std::size_t inf = 0, sup = 0;
  bool present = false;
};

IntervalDataset load_csv_impl(const std::string& path,
                              const std::string& response,
                              const std::vector<std::string>& predictors,
                              bool response_required, bool allow_empty,
                              bool* response_present) {
  std::ifstream in(path);
  if (!in)
    throw Error(Errc::io_error, "cannot open '" + path + "'");

  std::string header;
  if (!std::getline(in, header)) {
    if (allow_empty && !response_required) {
      if (response_present) *response_present = false;
      IntervalDataset ds;
      ds.response.name = response;
      for (const auto& p : predictors) ds.predictors.push_back({{}, p});
      return ds;
    }
    throw Error(Errc::io_error, "'" + path + "' is empty (no header row)");
  }
  if (!header.empty() && header.back() == '\r') header.pop_back();

  const std::vector<std::string> cols = split_csv_line(header);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < cols.size(); ++i) index[cols[i]] = i;

  auto find_pair = [&](const std::string& name, bool required) {
    ColumnPair cp;
    const auto lo = index.find(name + "_inf");
    const auto hi = index.find(name + "_sup");
    if (lo == index.end() || hi == index.end()) {
      if (required)
        throw Error(Errc::missing_column, "columns '" + name + "_inf'/'" +
                                              name + "_sup' not found in '" +
                                              path + "'");
      return cp;
    }
    cp.inf = lo->second;
    cp.sup = hi->second;
    cp.present = true;
    return cp;
  };

  const ColumnPair ycols = find_pair(response, response_required);
  std::vector<ColumnPair> xcols;
  for (const auto& p : predictors) xcols.push_back(find_pair(p, true));
  if (response_present) *response_present = ycols.present;

  IntervalDataset ds;
  ds.response.name = response;
  for (const auto& p : predictors) ds.predictors.push_back({{}, p});

  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    ++row;
    const std::vector<std::string> cells = split_csv_line(line);
    auto cell = [&](std::size_t i, const std::string& col) -> const std::string& {
      if (i >= cells.size())
        throw Error(Errc::parse_error,
                    "row " + std::to_string(row) + ": missing column '" + col +
                        "'");
      return cells[i];
    };
    auto read_interval = [&](const ColumnPair& cp, const std::string& name) {
      const double lo = parse_double(cell(cp.inf, name + "_inf"), row, name + "_inf");
      const double hi = parse_double(cell(cp.sup, name + "_sup"), row, name + "_sup");
      if (lo > hi)
        throw Error(Errc::invalid_endpoints,
                    "row " + std::to_string(row) + ", variable '" + name +
                        "': inf " + fmt17(lo) + " > sup " + fmt17(hi));
      return interval_from_endpoints(lo, hi);
    };
    if (ycols.present)
      ds.response.values.push_back(read_interval(ycols, response));
    for (std::size_t i = 0; i < predictors.size(); ++i)
      ds.predictors[i].values.push_back(read_interval(xcols[i], predictors[i]));
  }

  if (row == 0 && !allow_empty)
    throw Error(Errc::io_error, "'" + path + "' has no data rows");
  return ds;
}

}  // namespace

IntervalDataset load_csv(const std::string& path, const std::string& response,
                         const std::vector<std::string>& predictors) {
  return load_csv_impl(path, response, predictors, true, false, nullptr);
}

IntervalDataset load_csv_flexible(const std::string& path,
                                  const std::string& response,
                                  const std::vector<std::string>& predictors,
                                  bool* response_present) {
  return load_csv_impl(path, response, predictors, false, true,
                       response_present);
}

void write_dataset_csv(const IntervalDataset& ds, std::ostream& os) {
  os << ds.response.name << "_inf," << ds.response.name << "_sup";
  for (const auto& p : ds.predictors)
    os << ',' << p.name << "_inf," << p.name << "_sup";
  os << '\n';
  for (std::size_t j = 0; j < ds.n(); ++j) {
    const Interval& y = ds.response.values[j];
    os << fmt17(y.inf()) << ',' << fmt17(y.sup());
    for (const auto& p : ds.predictors)
      os << ',' << fmt17(p.values[j].inf()) << ',' << fmt17(p.values[j].sup());
    os << '\n';
  }
}

std::string dataset_fingerprint(const IntervalDataset& ds) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001B3ULL;
    }
    h ^= 0xFF;
    h *= 0x100000001B3ULL;
  };
  auto mix_sample = [&](const IntervalSample& s) {
    mix(s.name);
    for (const Interval& v : s.values) {
      mix(fmt17(v.inf()));
      mix(fmt17(v.sup()));
    }
  };
  mix_sample(ds.response);
  for (const auto& p : ds.predictors) mix_sample(p);
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

const char* model_name(SimpleKind kind) {
  switch (kind) {
    case SimpleKind::basic: return "basic";
    case SimpleKind::model_m: return "m";
    case SimpleKind::model_mg: return "mg";
  }
  return "?";
}

const char* model_name(MultipleKind kind) {
  switch (kind) {
    case MultipleKind::mblrm: return "mblrm";
    case MultipleKind::mflrm: return "mflrm";
    case MultipleKind::multiple_m: return "multiple-m";
  }
  return "?";
}

FitReport make_report(const SimpleFit& fit, const IntervalDataset& ds) {
  FitReport r;
  r.model = model_name(fit.kind);
  r.theta = fit.theta;
  r.delta = fit.delta;
  r.r_squared = fit.r_squared;
  r.objective = fit.objective;
  r.n = ds.n();
  r.k = ds.k();
  r.response = ds.response.name;
  for (const auto& p : ds.predictors) r.predictors.push_back(p.name);
  switch (fit.kind) {
    case SimpleKind::basic:
      r.coefficients = {{"b", fit.b1}};
      break;
    case SimpleKind::model_m:
      r.coefficients = {{"b1", fit.b1}, {"b2", fit.b2}};
      break;
    case SimpleKind::model_mg:
      r.coefficients = {
          {"b1", fit.b1}, {"b2", fit.b2}, {"b3", fit.b3}, {"b4", fit.b4}};
      break;
  }
  r.dataset_fingerprint = dataset_fingerprint(ds);
  return r;
}

FitReport make_report(const MultipleFit& fit, const IntervalDataset& ds) {
  FitReport r;
  r.model = model_name(fit.kind);
  r.theta = fit.theta;
  r.delta = fit.delta;
  r.r_squared = fit.r_squared;
  r.objective = fit.objective;
  r.kkt_residual = fit.kkt_residual;
  r.n = ds.n();
  r.k = ds.k();
  r.response = ds.response.name;
  for (const auto& p : ds.predictors) r.predictors.push_back(p.name);
  auto push_block = [&](const char* tag, const Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
      r.coefficients.emplace_back(
          std::string(tag) + "[" + ds.predictors[static_cast<std::size_t>(i)].name + "]",
          v(i));
  };
  if (fit.kind == MultipleKind::mblrm) {
    push_block("b", fit.b1);
  } else {
    push_block("b1", fit.b1);
    push_block("b2", fit.b2);
    if (fit.kind == MultipleKind::mflrm) {
      push_block("b3", fit.b3);
      push_block("b4", fit.b4);
    }
  }
  r.dataset_fingerprint = dataset_fingerprint(ds);
  return r;
}

std::string report_to_json(const FitReport& r) {
  ordered_json j;
  j["schema"] = r.schema;
  j["model"] = r.model;
  j["theta"] = r.theta;
  j["n"] = r.n;
  j["k"] = r.k;
  j["response"] = r.response;
  j["predictors"] = r.predictors;
  ordered_json coeffs;
  for (const auto& [name, value] : r.coefficients) coeffs[name] = value;
  j["coefficients"] = coeffs;
  j["delta"] = {r.delta.inf(), r.delta.sup()};
  j["r_squared"] = r.r_squared;
  j["objective"] = r.objective;
  if (r.kkt_residual) j["kkt_residual"] = *r.kkt_residual;
  j["dataset_fingerprint"] = r.dataset_fingerprint;
  return j.dump(2) + "\n";
}

FitReport report_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Errc::parse_error, std::string("bad fit report: ") + e.what());
  }
  try {
    FitReport r;
    r.schema = j.at("schema").get<int>();
    if (r.schema != 1)
      throw Error(Errc::parse_error,
                  "unsupported report schema " + std::to_string(r.schema));
    r.model = j.at("model").get<std::string>();
    r.theta = j.at("theta").get<double>();
    r.n = j.at("n").get<std::size_t>();
    r.k = j.at("k").get<std::size_t>();
    r.response = j.at("response").get<std::string>();
    r.predictors = j.at("predictors").get<std::vector<std::string>>();
    for (const auto& [name, value] : j.at("coefficients").items())
      r.coefficients.emplace_back(name, value.get<double>());
    const auto d = j.at("delta");
    r.delta = interval_from_endpoints(d.at(0).get<double>(),
                                      d.at(1).get<double>());
    r.r_squared = j.at("r_squared").get<double>();
    r.objective = j.at("objective").get<double>();
    if (j.contains("kkt_residual"))
      r.kkt_residual = j.at("kkt_residual").get<double>();
    r.dataset_fingerprint =
        j.value("dataset_fingerprint", std::string{});
    return r;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(Errc::parse_error, std::string("bad fit report: ") + e.what());
  }
}

Interval report_predict(const FitReport& r, const std::vector<Interval>& row) {
  if (row.size() != r.k)
    throw Error(Errc::length_mismatch,
                "report expects k = " + std::to_string(r.k) + ", row has " +
                    std::to_string(row.size()));
  auto coef = [&](const std::string& name) {
    for (const auto& [n, v] : r.coefficients)
      if (n == name) return v;
    throw Error(Errc::parse_error, "report lacks coefficient '" + name + "'");
  };
  auto coef_or0 = [&](const std::string& name) {
    for (const auto& [n, v] : r.coefficients)
      if (n == name) return v;
    return 0.0;
  };

  if (r.model == "basic") {
    return add_scaled(r.delta, coef("b"), row.at(0));
  }
  if (r.model == "m" || r.model == "mg") {
    const Interval& x = row.at(0);
    const double b1 = coef("b1"), b2 = coef("b2");
    const double b3 = coef_or0("b3"), b4 = coef_or0("b4");
    return Interval{b1 * x.mid + b4 * x.spr + r.delta.mid,
                    b2 * x.spr + b3 * std::abs(x.mid) + r.delta.spr};
  }
  if (r.model == "mblrm") {
    double mid = r.delta.mid, spr = r.delta.spr;
    for (std::size_t i = 0; i < r.k; ++i) {
      const double b = coef("b[" + r.predictors[i] + "]");
      mid += b * row[i].mid;
      spr += std::abs(b) * row[i].spr;
    }
    return Interval{mid, spr};
  }
  if (r.model == "mflrm" || r.model == "multiple-m") {
    double mid = r.delta.mid, spr = r.delta.spr;
    for (std::size_t i = 0; i < r.k; ++i) {
      const std::string tag = "[" + r.predictors[i] + "]";
      mid += coef("b1" + tag) * row[i].mid + coef_or0("b4" + tag) * row[i].spr;
      spr += coef("b2" + tag) * row[i].spr +
             coef_or0("b3" + tag) * std::abs(row[i].mid);
    }
    return Interval{mid, spr};
  }
  throw Error(Errc::parse_error, "unknown model '" + r.model + "' in report");
}

}  // namespace intreg
