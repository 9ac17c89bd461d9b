#pragma once

// Versioned report documents. Field order is fixed and doubles carry 17
// significant digits, so equal inputs give byte-identical output.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rmt/harness.hpp"
#include "rmt/interp.hpp"

namespace rmt {

inline constexpr int report_schema_version = 1;

struct ResultEntry {
  std::string label;
  Complex s;
  Complex value;
  std::optional<Complex> reference;
  double err_abs = 0.0;
  long n_evals = 0;
  bool converged = false;
  /// Extra key/value strings, emitted in order.
  std::vector<std::pair<std::string, std::string>> info;
};

struct Aggregate {
  int gating = 0;
  int passed = 0;
  bool pass = false;
};

struct ReportDocument {
  std::string command;
  std::vector<IdentityReport> cases;
  std::vector<ResultEntry> results;
  std::vector<PropertyReport> checks;
  std::vector<WeightReport> weights;
  std::vector<IdentityInfo> identities;
  std::optional<Aggregate> aggregate;
};

std::string to_json(const ReportDocument& doc);
std::string to_text(const ReportDocument& doc);

}  // namespace rmt
