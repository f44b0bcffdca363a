// Acceptance suite: runs every criterion at its pinned tolerance and
// prints one pass/fail line per criterion.

#include <cstdio>
#include <cstring>

#include "stratlab/acceptance.hpp"

int main(int argc, char** argv) {
  stratlab::AcceptanceOptions opt;
  for (int i = 1; i < argc; ++i) {
    if (std::strncmp(argv[i], "--criterion=", 12) == 0)
      opt.criteria.push_back(std::atoi(argv[i] + 12));
    else if (std::strncmp(argv[i], "--seed=", 7) == 0)
      opt.seed = static_cast<std::uint64_t>(std::atoll(argv[i] + 7));
  }
  const auto results = stratlab::run_acceptance(opt);
  bool all = true;
  for (const auto& r : results) {
    std::printf("%s criterion %d — %s (%.1fs)\n", r.pass ? "[PASS]" : "[FAIL]", r.index,
                r.name.c_str(), r.seconds);
    if (!r.details.empty()) std::printf("       %s\n", r.details.c_str());
    all = all && r.pass;
  }
  std::printf("%s\n", all ? "ACCEPTANCE: all criteria pass" : "ACCEPTANCE: FAILURES present");
  return all ? 0 : 1;
}
