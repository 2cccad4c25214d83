#include "tow/common.hpp"

#include <algorithm>
#include <thread>

namespace tow {

void parallel_for_chunks(std::size_t n, int threads,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 4;
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : hw;
  workers = std::min<std::size_t>(workers, n);
  if (workers <= 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t b = w * chunk;
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace tow
