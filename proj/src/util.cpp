#include "pluripot/util.hpp"

#include <atomic>
#include <cstdlib>

namespace pluripot {

namespace {

int initial_thread_count() {
  if (const char* env = std::getenv("PLURIPOT_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

std::atomic<int> g_threads{0};

}  // namespace

int thread_count() {
  int n = g_threads.load(std::memory_order_relaxed);
  if (n == 0) {
    n = initial_thread_count();
    g_threads.store(n, std::memory_order_relaxed);
  }
  return n;
}

void set_thread_count(int n) {
  if (n < 1) throw ValidationError("util.set_thread_count: thread count must be >= 1");
  g_threads.store(n, std::memory_order_relaxed);
}

void parallel_for(size_t begin, size_t end, const std::function<void(size_t)>& fn) {
  if (end <= begin) return;
  const size_t n = end - begin;
  const int workers = std::min<size_t>(thread_count(), n);
  if (workers <= 1) {
    for (size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  // Fixed contiguous blocks: block boundaries depend only on n and workers.
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const size_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const size_t lo = begin + chunk * static_cast<size_t>(w);
    const size_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

size_t parallel_argmax(size_t n, const std::function<double(size_t)>& score,
                       double* best_value) {
  if (n == 0) throw ValidationError("util.parallel_argmax: empty range");
  const int workers = static_cast<int>(std::min<size_t>(thread_count(), n));
  std::vector<size_t> arg(workers, 0);
  std::vector<double> val(workers, neg_inf());
  const size_t chunk = (n + workers - 1) / workers;
  parallel_for(0, static_cast<size_t>(workers), [&](size_t w) {
    const size_t lo = chunk * w;
    const size_t hi = std::min(n, lo + chunk);
    size_t a = lo;
    double v = neg_inf();
    for (size_t i = lo; i < hi; ++i) {
      const double s = score(i);
      if (s > v) {  // strict: lowest index wins ties within a block
        v = s;
        a = i;
      }
    }
    arg[w] = a;
    val[w] = v;
  });
  size_t best = arg[0];
  double bv = val[0];
  for (int w = 1; w < workers; ++w) {
    if (val[w] > bv) {  // strict: earlier block (lower indices) wins ties
      bv = val[w];
      best = arg[w];
    }
  }
  if (best_value) *best_value = bv;
  return best;
}

}  // namespace pluripot
