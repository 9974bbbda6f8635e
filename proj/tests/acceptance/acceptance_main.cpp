// Runs every acceptance criterion and prints one line per criterion.

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "wvn/reproduce.hpp"

int main(int argc, char** argv) {
  wvn::reproduce::Options options;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc) options.jobs = static_cast<unsigned>(std::atoi(argv[++i]));
  }
  const auto results = wvn::reproduce::run(options);
  std::cout << wvn::reproduce::summary_lines(results);
  const auto timings = wvn::reproduce::timings(results);
  int failed = 0;
  for (const auto& r : results) {
    if (!r.pass) {
      ++failed;
      std::cout << "  criterion " << r.id << " measured: " << r.measured.dump() << '\n';
    }
  }
  std::cout << "timings: " << timings.dump() << '\n';
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
