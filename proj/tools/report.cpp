#include "report.hpp"

#include <sstream>

namespace rforest::cli {

namespace {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

RunReport::RunReport(std::string command) {
  doc_["command"] = std::move(command);
  doc_["parameters"] = nlohmann::json::object();
  doc_["instances"] = nlohmann::json::array();
  doc_["verdicts"] = nlohmann::json::array();
  doc_["polynomials"] = nlohmann::json::object();
  doc_["timings"] = nlohmann::json::object();
}

void RunReport::set_parameter(const std::string& key, nlohmann::json value) {
  doc_["parameters"][key] = std::move(value);
}

int RunReport::add_instance(nlohmann::json instance) {
  const int index = static_cast<int>(doc_["instances"].size());
  instance["index"] = index;
  doc_["instances"].push_back(std::move(instance));
  return index;
}

void RunReport::add_verdict(int instance, const std::string& check,
                            const std::string& result) {
  if (result == "disagree" || result == "fail") failed_ = true;
  doc_["verdicts"].push_back(
      {{"instance", instance}, {"check", check}, {"result", result}});
}

void RunReport::add_polynomial(int instance, const std::string& name,
                               const MPoly& poly,
                               std::span<const std::string> variable_names) {
  nlohmann::json entry;
  entry["text"] = poly.str(variable_names);
  auto terms = nlohmann::json::object();
  for (const auto& [mono, coeff] : poly.term_strings(variable_names)) {
    terms[mono] = coeff;
  }
  entry["terms"] = std::move(terms);
  doc_["polynomials"][std::to_string(instance) + ":" + name] =
      std::move(entry);
}

void RunReport::add_timing(const std::string& key, double milliseconds) {
  doc_["timings"][key] = milliseconds;
}

void RunReport::add_csv_row(const std::string& sizes, const std::string& n,
                            const std::string& formula,
                            const std::string& oracle,
                            const std::string& agree) {
  csv_rows_.push_back({sizes, n, formula, oracle, agree});
}

std::string RunReport::json_text() const {
  nlohmann::json doc = doc_;
  doc["capacity_hits"] = capacity_hits_;
  doc["all_pass"] = !failed_;
  return doc.dump(2) + "\n";
}

std::string RunReport::csv_text() const {
  std::ostringstream out;
  out << "sizes,n,formula,oracle,agree\n";
  for (const auto& row : csv_rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << csv_quote(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

std::string RunReport::human_text(bool color) const {
  const char* green = color ? "\033[32m" : "";
  const char* red = color ? "\033[31m" : "";
  const char* dim = color ? "\033[2m" : "";
  const char* reset = color ? "\033[0m" : "";

  std::ostringstream out;
  out << doc_["command"].get<std::string>() << "\n";
  for (const auto& verdict : doc_["verdicts"]) {
    const int index = verdict["instance"].get<int>();
    const auto result = verdict["result"].get<std::string>();
    const auto& instance = doc_["instances"][index];
    const bool bad = result == "disagree" || result == "fail";
    out << "  [" << index << "] " << verdict["check"].get<std::string>()
        << ": " << (bad ? red : (result == "skipped" ? dim : green)) << result
        << reset;
    if (instance.contains("label")) {
      out << "  (" << instance["label"].get<std::string>() << ")";
    }
    out << "\n";
  }
  for (const auto& [key, entry] : doc_["polynomials"].items()) {
    out << "  " << key << " = " << entry["text"].get<std::string>() << "\n";
  }
  if (doc_["verdicts"].empty()) {
    out << "  (no checks ran)\n";
  }
  out << (failed_ ? std::string(red) + "FAIL" : std::string(green) + "PASS")
      << reset;
  if (capacity_hits_) out << " (capacity guard hit; some oracles skipped)";
  out << "\n";
  return out.str();
}

}  // namespace rforest::cli
