// One PASS/FAIL line per acceptance criterion, full genus ranges.
#include <cstdio>
#include <cstdlib>

#include "hypjac/verify.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 1;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  int failures = 0;
  for (const auto& spec : hypjac::criteria()) {
    const auto r = hypjac::run_criterion(spec.id, spec.genera, seed);
    std::string genera;
    for (int g : r.genera) genera += (genera.empty() ? "" : ",") + std::to_string(g);
    const bool ok = r.verdict == hypjac::Verdict::Pass;
    failures += !ok;
    std::printf("%s criterion %d: %s [g=%s] %.2fs (limit %.0fs)%s%s\n", ok ? "PASS" : "FAIL", r.id,
                r.title.c_str(), genera.c_str(), r.seconds, r.limit_seconds,
                r.detail.empty() ? "" : " -- ", r.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
