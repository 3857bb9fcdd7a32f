#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdbf/traces.hpp"

namespace hdbf {

enum class Method { TCQ, TNP, FNP };
const char* method_name(Method m);

// Raised when a statistic is undefined on the given data (zero denominator,
// negative plug-in variance estimate, ...). The message carries the raw
// trace diagnostics.
struct DegenerateStatistic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TestReport {
  Method method = Method::TCQ;
  double statistic = 0.0;     // raw scale
  double standardized = 0.0;  // mean-0 / variance-1 scale
  double p_value = 1.0;       // one-sided, upper tail
  double d1_hat = std::numeric_limits<double>::quiet_NaN();
  double d2_hat = std::numeric_limits<double>::quiet_NaN();
  double beta1_hat = std::numeric_limits<double>::quiet_NaN();
  double beta2_hat = std::numeric_limits<double>::quiet_NaN();
};

// Approximation degrees of freedom and scales, plugged in from the trace
// estimates. beta2_hat is chosen so beta2_hat * d2_hat = beta1_hat * d1_hat.
struct DfEstimates {
  double d1_hat;
  double d2_hat;
  double beta1_hat;
  double beta2_hat;
};
DfEstimates estimate_df(const TraceSummary& ts);

TestReport t_cq(const TwoSampleData& data, const TraceSummary& ts);
TestReport t_np(const TwoSampleData& data, const TraceSummary& ts);
TestReport f_np(const TwoSampleData& data, const TraceSummary& ts);

struct MethodOutcome {
  Method method = Method::TCQ;
  std::optional<TestReport> report;  // empty on failure
  std::string error;                 // diagnostic when report is empty
  bool reject = false;               // p_value < alpha, when defined
};

struct RunAllResult {
  double alpha = 0.05;
  std::vector<MethodOutcome> outcomes;
  bool any_rejection() const;
  bool any_failure() const;
};

// Runs the requested methods off one shared TraceSummary; a failure in one
// method does not abort the others.
RunAllResult run_all(const TwoSampleData& data, double alpha);
RunAllResult run_all(const TwoSampleData& data, double alpha,
                     const std::vector<Method>& methods);

}  // namespace hdbf
