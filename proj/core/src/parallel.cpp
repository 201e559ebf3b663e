#include "hvf/parallel.hpp"

#include <cstdlib>
#include <string>

namespace hvf {

int thread_count() {
  if (const char* env = std::getenv("HVF_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

double ordered_sum(const std::vector<double>& values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

}  // namespace hvf
