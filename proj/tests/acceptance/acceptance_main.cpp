#include <chrono>
#include <fstream>
#include <iostream>

#include "thincascade/acceptance.hpp"

int main(int argc, char** argv) {
  using namespace thincascade;
  const auto t0 = std::chrono::steady_clock::now();
  std::ofstream log(argc > 1 ? argv[1] : "acceptance_log.txt");
  const auto result = run_acceptance({}, &log);
  print_acceptance(std::cout, result);
  std::cout << "runtime " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
  return exit_code(result.overall());
}
