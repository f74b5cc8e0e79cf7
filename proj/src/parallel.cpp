#include "mono/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace mono {

namespace {
int g_threads = 1;
}

void set_threads(int n) { g_threads = std::max(1, n); }
int threads() { return g_threads; }

void parallel_for(int n, const std::function<void(int, int)>& body) {
  const int nw = std::min(g_threads, n);
  if (nw <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nw);
  const int chunk = (n + nw - 1) / nw;
  for (int w = 0; w < nw; ++w) {
    int b = w * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back(body, b, e);
  }
  for (auto& t : pool) t.join();
}

} // namespace mono
