#include <sstream>

#include "doctest.h"
#include "onsager/verify.hpp"

using namespace onsager;

TEST_CASE("the property suite passes at default tolerances") {
  const auto results = run_verification();
  CHECK(results.size() >= 10);
  std::ostringstream os;
  CHECK(print_report(os, results));
  CHECK(os.str().find("12.4453") != std::string::npos);
}

TEST_CASE("a sign flip in H fails the suite") {
  VerifyOptions options;
  options.fault = FaultInjection::HSign;
  std::ostringstream os;
  CHECK_FALSE(print_report(os, run_verification(options)));
  CHECK(os.str().find("FAIL H") != std::string::npos);
}

TEST_CASE("overrides only loosen thresholds") {
  VerifyOptions options;
  options.rel_tol = 1e-1;
  for (const CheckResult& r : run_verification(options)) CHECK(r.threshold >= 0.0);
  std::ostringstream os;
  CHECK(print_report(os, run_verification(options)));
  options.rel_tol = -1.0;
  CHECK_THROWS_AS(run_verification(options), Error);
}
