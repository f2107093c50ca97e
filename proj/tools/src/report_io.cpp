#include "report_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace kforest::cli {
namespace {

std::string fmt(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// CSV field quoting for text that may hold commas.
std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

Json named(const verify::Named& xs) {
  Json o = Json::object();
  for (const auto& [k, v] : xs) o[k] = number(v);
  return o;
}

Json numbers(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

}  // namespace

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json to_json(const verify::GridReport& r, bool timing) {
  Json j;
  j["region"] = r.region;
  j["quantity"] = r.quantity;
  j["extremum"] = r.maximize ? "max" : "min";
  j["spacing"] = number(r.spacing);
  j["worst_value"] = number(r.worst_value);
  j["worst_point"] = named(r.worst_point);
  j["lipschitz_budget"] = number(r.lipschitz_budget);
  j["certified_bound"] = number(r.certified_bound);
  j["target"] = number(r.target);
  j["pass"] = r.pass;
  j["points"] = r.points;
  j["violations"] = r.violations;
  j["extras"] = named(r.extras);
  if (!r.note.empty()) j["note"] = r.note;
  if (timing) j["seconds"] = r.seconds;
  return j;
}

Json to_json(const experiments::TrialSummary& s, bool timing) {
  Json j;
  j["experiment"] = s.experiment;
  j["n"] = s.n;
  j["k"] = s.k;
  if (s.c > 0.0) j["c"] = s.c;
  j["trials"] = s.trials;
  j["skipped"] = s.skipped;
  j["mean"] = number(s.mean);
  j["stderr"] = number(s.std_error);
  j["prediction"] = number(s.prediction);
  j["seed"] = s.seed;
  j["values"] = numbers(s.values);
  j[s.secondary_name.empty() ? "secondary" : s.secondary_name] = numbers(s.secondary);
  if (timing) j["seconds"] = s.seconds;
  return j;
}

std::string reports_csv(const std::vector<verify::GridReport>& reports, bool timing) {
  std::ostringstream os;
  os << "region,extremum,worst_value,certified_bound,target,lipschitz_budget,spacing,pass,points,violations";
  if (timing) os << ",seconds";
  os << '\n';
  for (const auto& r : reports) {
    os << quote(r.region) << ',' << (r.maximize ? "max" : "min") << ',' << fmt(r.worst_value) << ','
       << fmt(r.certified_bound) << ',' << fmt(r.target) << ',' << fmt(r.lipschitz_budget) << ','
       << fmt(r.spacing) << ',' << (r.pass ? 1 : 0) << ',' << r.points << ',' << r.violations;
    if (timing) os << ',' << fmt(r.seconds);
    os << '\n';
  }
  return os.str();
}

std::string dump_csv(const std::vector<verify::GridReport>& reports) {
  std::ostringstream os;
  bool header = false;
  for (const auto& r : reports) {
    if (r.dump_columns.empty()) continue;
    if (!header) {
      os << "region";
      for (const auto& c : r.dump_columns) os << ',' << c;
      os << '\n';
      header = true;
    }
    const std::size_t w = r.dump_columns.size();
    for (std::size_t i = 0; i + w <= r.dump.size(); i += w) {
      os << quote(r.region);
      for (std::size_t c = 0; c < w; ++c) os << ',' << fmt(r.dump[i + c]);
      os << '\n';
    }
  }
  return os.str();
}

std::string trials_csv(const experiments::TrialSummary& s) {
  std::ostringstream os;
  os << "experiment,n,k,c,seed,trial,value," << (s.secondary_name.empty() ? "secondary" : s.secondary_name) << '\n';
  // values skip empty-core trials in the orientation run; align by secondary
  const bool aligned = s.values.size() == s.secondary.size();
  std::size_t next = 0;
  for (std::size_t t = 0; t < s.secondary.size(); ++t) {
    std::string value;
    if (aligned) value = fmt(s.values[t]);
    else if (s.secondary[t] > 0.0 && next < s.values.size()) value = fmt(s.values[next++]);
    os << s.experiment << ',' << s.n << ',' << s.k << ',' << fmt(s.c) << ',' << s.seed << ',' << t << ',' << value
       << ',' << fmt(s.secondary[t]) << '\n';
  }
  return os.str();
}

std::string key_value_csv(const Json& flat) {
  std::ostringstream os;
  os << "key,value\n";
  for (auto it = flat.begin(); it != flat.end(); ++it) {
    const auto& v = it.value();
    std::string text;
    if (v.is_number_float()) text = fmt(v.get<double>());
    else if (v.is_string()) text = v.get<std::string>();
    else text = v.dump();
    os << quote(it.key()) << ',' << quote(text) << '\n';
  }
  return os.str();
}

}  // namespace kforest::cli
