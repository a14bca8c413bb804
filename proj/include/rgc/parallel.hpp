#pragma once

#include <future>
#include <thread>
#include <vector>

namespace rgc {

// Runs fn(i) for i in [0, n) on a fixed worker count with strided scheduling.
// fn must only write to per-index state; results are merged by the caller in
// index order, so output never depends on the thread count.
template <typename Fn>
void parallel_for(long n, const Fn& fn, int jobs = 0) {
  if (jobs <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    jobs = hw ? static_cast<int>(hw) : 4;
  }
  if (jobs == 1 || n <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> futs;
  for (int w = 0; w < jobs; ++w)
    futs.push_back(std::async(std::launch::async, [&, w]() {
      for (long i = w; i < n; i += jobs) fn(i);
    }));
  for (auto& f : futs) f.get();
}

}  // namespace rgc
