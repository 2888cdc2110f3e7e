#include "infotopo/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace infotopo {

namespace {

std::size_t from_environment() {
  std::size_t workers = 0;
  if (const char *env = std::getenv("INFOTOPO_THREADS")) {
    try {
      workers = static_cast<std::size_t>(std::stoul(env));
    } catch (const std::exception &) {
      workers = 0;
    }
  }
  if (workers == 0)
    workers = std::max(1u, std::thread::hardware_concurrency());
  return workers;
}

std::atomic<std::size_t> &configured() {
  static std::atomic<std::size_t> value{from_environment()};
  return value;
}

} // namespace

std::size_t worker_count() { return configured().load(); }

void set_worker_count(std::size_t workers) {
  configured().store(workers == 0 ? from_environment() : workers);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body) {
  const std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t w = 1; w < workers; ++w)
    threads.emplace_back(run);
  run();
  for (auto &t : threads)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
}

} // namespace infotopo
