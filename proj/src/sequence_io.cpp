#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rmt/interp.hpp"

namespace rmt {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, int line) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) {
    fail(Errc::parse_error, "sequence csv line " + std::to_string(line) + ": '" + t + "' is not a number");
  }
  return v;
}

}  // namespace

SequenceData read_sequence_csv(std::istream& in, Normalization normalization, const std::string& closed_form_id) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "k,c_k") {
    fail(Errc::parse_error, "sequence csv: expected header 'k,c_k'");
  }
  std::vector<double> values;
  int n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (trim(line).empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) fail(Errc::parse_error, "sequence csv line " + std::to_string(n) + ": expected k,c_k");
    const double k = parse_number(line.substr(0, comma), n);
    if (k != static_cast<double>(values.size())) {
      fail(Errc::parse_error, "sequence csv line " + std::to_string(n) + ": k must run 0, 1, 2, ... in order");
    }
    values.push_back(parse_number(line.substr(comma + 1), n));
  }
  return make_sequence(std::move(values), normalization, closed_form_id);
}

SequenceData read_sequence_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, std::string("sequence json: ") + e.what());
  }
  if (!doc.is_object()) fail(Errc::parse_error, "sequence json: expected an object");
  if (!doc.contains("values") || !doc["values"].is_array()) fail(Errc::parse_error, "sequence json: missing 'values' array");
  if (!doc.contains("normalization") || !doc["normalization"].is_string()) {
    fail(Errc::parse_error, "sequence json: 'normalization' (raw or factorial) is required");
  }
  std::vector<double> values;
  for (const auto& v : doc["values"]) {
    if (!v.is_number()) fail(Errc::parse_error, "sequence json: values must be numbers");
    values.push_back(v.get<double>());
  }
  std::string closed;
  if (doc.contains("closed_form")) {
    if (!doc["closed_form"].is_string()) fail(Errc::parse_error, "sequence json: 'closed_form' must be a string id");
    closed = doc["closed_form"].get<std::string>();
  }
  return make_sequence(std::move(values), parse_normalization(doc["normalization"].get<std::string>()), closed);
}

SequenceData read_sequence_file(const std::string& path, std::optional<Normalization> normalization,
                                const std::string& closed_form_id) {
  std::ifstream in(path);
  if (!in) fail(Errc::invalid_parameter, "cannot open " + path);
  const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  if (json) {
    SequenceData seq = read_sequence_json(in);
    if (normalization && *normalization != seq.normalization) {
      fail(Errc::invalid_parameter, "normalization flag disagrees with the one declared in " + path);
    }
    if (!closed_form_id.empty()) {
      seq.closed_form_id = closed_form_id;
      seq.closed_form = sequence_closed_form(closed_form_id);
    }
    return seq;
  }
  if (!normalization) fail(Errc::invalid_parameter, "csv input needs --normalization raw|factorial");
  return read_sequence_csv(in, *normalization, closed_form_id);
}

}  // namespace rmt
