// Acceptance suite: runs every verification criterion at its stated
// tolerance and prints one pass/fail line per criterion. Exit status 0 only
// if all criteria pass.

#include <cstring>
#include <iostream>

#include "critpt/verify.hpp"

int main(int argc, char** argv) {
  critpt::VerifyOptions opt;
  opt.workers = 4;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) opt.quick = true;
    if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc) opt.workers = std::atoi(argv[i + 1]);
  }
  auto results = critpt::run_verification(opt, std::cout);
  for (const auto& r : results)
    if (!r.passed) return 1;
  return 0;
}
