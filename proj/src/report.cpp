#include "catsum/report.hpp"

#include <ostream>
#include <sstream>

#include <json.hpp>

namespace catsum {

std::optional<OutFormat> parse_format(const std::string& s) {
  if (s == "jsonl") return OutFormat::jsonl;
  if (s == "csv") return OutFormat::csv;
  return std::nullopt;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string params_string(const std::vector<std::pair<std::string, std::string>>& params) {
  std::string s;
  for (size_t i = 0; i < params.size(); ++i) {
    if (i) s += ";";
    s += params[i].first + "=" + params[i].second;
  }
  return s;
}

std::string ms_string(double ms) {
  std::ostringstream os;
  os << ms;
  return os.str();
}

}  // namespace

void write_header(std::ostream& os, OutFormat format) {
  if (format == OutFormat::csv)
    os << "theorem,p,a,params,target,predicted,fast,oracle,match_pf,match_po,applicable,reason,"
          "ms_predict,ms_fast,ms_oracle\n";
}

void write_record(std::ostream& os, const CongruenceRecord& rec, OutFormat format) {
  if (format == OutFormat::jsonl) {
    nlohmann::json j;
    j["theorem"] = rec.theorem;
    j["p"] = rec.p;
    j["a"] = rec.a;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : rec.params) params[k] = v;
    j["params"] = params;
    j["target"] = rec.target;
    j["predicted"] = rec.predicted ? nlohmann::json(*rec.predicted) : nlohmann::json();
    j["fast"] = rec.fast ? nlohmann::json(*rec.fast) : nlohmann::json();
    j["oracle"] = rec.oracle ? nlohmann::json(*rec.oracle) : nlohmann::json();
    j["match_pf"] = rec.match_pf ? nlohmann::json(*rec.match_pf) : nlohmann::json();
    j["match_po"] = rec.match_po ? nlohmann::json(*rec.match_po) : nlohmann::json();
    j["applicable"] = rec.applicable;
    j["reason"] = rec.reason;
    j["elapsed_ms"] = {{"predict", rec.ms_predict}, {"fast", rec.ms_fast}, {"oracle", rec.ms_oracle}};
    os << j.dump() << "\n";
    return;
  }
  auto opt = [](const std::optional<std::string>& v) { return v ? *v : std::string(); };
  auto optb = [](const std::optional<bool>& v) {
    return v ? std::string(*v ? "true" : "false") : std::string();
  };
  os << csv_escape(rec.theorem) << ',' << rec.p << ',' << rec.a << ','
     << csv_escape(params_string(rec.params)) << ',' << csv_escape(rec.target) << ','
     << opt(rec.predicted) << ',' << opt(rec.fast) << ',' << opt(rec.oracle) << ','
     << optb(rec.match_pf) << ',' << optb(rec.match_po) << ','
     << (rec.applicable ? "true" : "false") << ',' << csv_escape(rec.reason) << ','
     << ms_string(rec.ms_predict) << ',' << ms_string(rec.ms_fast) << ',' << ms_string(rec.ms_oracle)
     << "\n";
}

}  // namespace catsum
