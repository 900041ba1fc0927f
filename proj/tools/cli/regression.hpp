#pragma once

// Built-in worked examples 1 to 10 with their expected values and tolerances.

#include <iosfwd>
#include <string>
#include <vector>

namespace cotc::cli {

struct RegressionRow {
  int example = 0;
  std::string quantity;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;  // absolute
  bool pass = false;
};

std::vector<RegressionRow> run_examples();

/// Aligned pass/fail table, one line per checked quantity.
void print_regression(std::ostream& out, const std::vector<RegressionRow>& rows);

}  // namespace cotc::cli
