#include "unclon/games/common.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <mutex>

#include "unclon/errors.hpp"

namespace unclon::games {

std::vector<gf2::F2Vector> theta_list(int n) {
  if (n < 2 || n % 2 != 0) throw ParameterError("theta_list: n must be even (Theta_n needs |theta| = n/2)");
  std::vector<gf2::F2Vector> out;
  for (uint64_t w = 0; w < (1ULL << n); ++w) {
    if (__builtin_popcountll(w) == n / 2) out.emplace_back(w, n);
  }
  return out;
}

gf2::F2Vector sample_theta(int n, Rng& rng) {
  if (n < 2 || n % 2 != 0) throw ParameterError("sample_theta: n must be even (Theta_n needs |theta| = n/2)");
  std::vector<int> bits(static_cast<size_t>(n), 0);
  for (int i = 0; i < n / 2; ++i) bits[static_cast<size_t>(i)] = 1;
  rng.shuffle(bits);
  gf2::F2Vector theta = gf2::F2Vector::zero(n);
  for (int i = 0; i < n; ++i) theta.set_bit(i, bits[static_cast<size_t>(i)]);
  return theta;
}

gf2::F2Vector restrict_to(const gf2::F2Vector& x, const gf2::F2Vector& theta, int b) {
  if (x.n != theta.n) throw ParameterError("restrict_to: length mismatch");
  int count = 0;
  uint64_t bits = 0;
  for (int i = 0; i < x.n; ++i) {
    if (theta.bit(i) == b) {
      bits = (bits << 1) | static_cast<uint64_t>(x.bit(i));
      ++count;
    }
  }
  if (count == 0) throw ParameterError("restrict_to: empty restriction");
  return gf2::F2Vector(bits, count);
}

namespace {

int worker_count() {
  if (const char* env = std::getenv("UNCLON_WORKERS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

uint64_t run_trials(uint64_t trials, uint64_t seed,
                    const std::function<bool(uint64_t, Rng&)>& trial) {
  if (trials == 0) throw ParameterError("run_trials: zero trials");
  int workers = worker_count();
  if (workers == 1 || trials < 512) {
    uint64_t wins = 0;
    for (uint64_t t = 0; t < trials; ++t) {
      Rng rng = Rng::stream(seed, t);
      if (trial(t, rng)) ++wins;
    }
    return wins;
  }

  std::atomic<uint64_t> next{0};
  std::atomic<uint64_t> wins{0};
  std::exception_ptr error;
  std::mutex error_mu;
  const uint64_t kChunk = 1024;
  auto work = [&]() {
    uint64_t local = 0;
    try {
      for (;;) {
        uint64_t begin = next.fetch_add(kChunk);
        if (begin >= trials) break;
        uint64_t end = std::min(trials, begin + kChunk);
        for (uint64_t t = begin; t < end; ++t) {
          Rng rng = Rng::stream(seed, t);
          if (trial(t, rng)) ++local;
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
    }
    wins.fetch_add(local);
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < workers; ++i) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return wins.load();
}

}  // namespace unclon::games
