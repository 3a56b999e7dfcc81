#ifndef THIRRING_VERIFY_HPP
#define THIRRING_VERIFY_HPP

#include <string>
#include <vector>

namespace thirring {

struct SuiteResult {
  std::string suite;
  bool passed = false;
  double max_residual = 0.0;
  int checks = 0;
  std::string details_json;  // suite-specific witness values
};

std::vector<std::string> verify_suite_names();

// Runs one named suite, or all of them when `suite` is empty.
std::vector<SuiteResult> run_verify(const std::string& suite = "");

std::string verify_report_json(const std::vector<SuiteResult>& results);

}  // namespace thirring

#endif
