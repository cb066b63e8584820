#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hypmetrics/domain.hpp"
#include "hypmetrics/point.hpp"
#include "hypmetrics/sampling.hpp"

namespace hypmetrics {

struct CheckOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
  // Assert the reverse of every inequality. Used to self-test the harness:
  // a flipped check on a strictly-true instance must fail.
  bool flipped = false;
  // Drop evaluator error bounds from allowances, leaving only the fixed slack.
  bool strict = false;
  // 0 = hardware concurrency. Results do not depend on this.
  std::size_t workers = 0;
};

struct Witness {
  Point x;
  Point y;
  std::optional<Domain> domain;
};

struct VerificationReport {
  std::string check_name;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool passed = false;
  double worst_margin = 0.0;  // most negative slack (or best find, for searches)
  double tolerance = 0.0;
  std::optional<Witness> witness;
  std::string detail;
};

namespace detail {

struct Candidate {
  double margin = std::numeric_limits<double>::infinity();
  std::size_t order = std::numeric_limits<std::size_t>::max();
  std::optional<Witness> witness;
};

}  // namespace detail

/// Collects assertions for one sample. margin = lhs - rhs + allowance for an
/// assertion of lhs >= rhs (rhs - lhs + allowance when flipped).
class SampleSink {
 public:
  SampleSink(bool flipped, bool search, std::size_t base_order)
      : flipped_(flipped), search_(search), order_(base_order) {}

  void assert_ge(double lhs, double rhs, double allowance, const Point& x, const Point& y,
                 const std::optional<Domain>& domain = std::nullopt) {
    const double margin = flipped_ ? (rhs - lhs + allowance) : (lhs - rhs + allowance);
    record(margin, x, y, domain);
  }

  // |value - expected| <= tol
  void assert_close(double value, double expected, double tol, const Point& x, const Point& y,
                    const std::optional<Domain>& domain = std::nullopt) {
    assert_ge(tol, std::abs(value - expected), 0.0, x, y, domain);
  }

  // Search mode: offer a candidate with score lhs - rhs; the sweep keeps the largest.
  void offer(double lhs, double rhs, const Point& x, const Point& y,
             const std::optional<Domain>& domain = std::nullopt) {
    record(lhs - rhs, x, y, domain);
  }

  const detail::Candidate& best() const { return best_; }
  std::size_t count() const { return count_; }

 private:
  void record(double margin, const Point& x, const Point& y, const std::optional<Domain>& domain) {
    ++count_;
    // a NaN slack is a failed assertion, never a successful find
    if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
    const bool better = search_ ? (!best_.witness || margin > best_.margin)
                                : (!best_.witness || margin < best_.margin);
    if (better) {
      best_.margin = margin;
      best_.order = order_ + count_;
      best_.witness = Witness{x, y, domain};
    }
  }

  bool flipped_;
  bool search_;
  std::size_t order_;
  std::size_t count_ = 0;
  detail::Candidate best_;
};

inline constexpr std::size_t kSweepChunk = 256;

/// Runs per_sample(rng, index, sink) for index in [0, samples). Samples are
/// grouped in fixed chunks, each with its own stream (seed, chunk), so the
/// outcome is identical for any worker count.
///
/// Universal mode: passed iff the smallest margin >= -tolerance.
/// Search mode: passed iff the largest score > tolerance (inverted when flipped).
template <typename PerSample>
VerificationReport run_sweep(const std::string& name, const CheckOptions& opts, double tolerance,
                             const std::optional<Domain>& domain, PerSample&& per_sample,
                             bool search = false) {
  const std::size_t chunks = (opts.samples + kSweepChunk - 1) / kSweepChunk;
  std::vector<detail::Candidate> per_chunk(chunks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto work = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        Rng rng = make_stream(opts.seed, c);
        const std::size_t begin = c * kSweepChunk;
        const std::size_t end = std::min(opts.samples, begin + kSweepChunk);
        SampleSink sink(search ? false : opts.flipped, search, begin * 64);
        for (std::size_t i = begin; i < end; ++i) per_sample(rng, i, sink);
        per_chunk[c] = sink.best();
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = chunks;
        return;
      }
    }
  };

  std::size_t workers = opts.workers ? opts.workers : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, chunks));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  detail::Candidate best;
  bool any = false;
  for (const auto& cand : per_chunk) {
    if (!cand.witness) continue;
    const bool better = !any || (search ? cand.margin > best.margin : cand.margin < best.margin);
    if (better) {
      best = cand;
      any = true;
    }
  }

  VerificationReport r;
  r.check_name = name;
  r.samples = opts.samples;
  r.seed = opts.seed;
  r.tolerance = tolerance;
  if (!any) {
    r.worst_margin = search ? -std::numeric_limits<double>::infinity() : 0.0;
    r.passed = search ? opts.flipped : true;
    return r;
  }
  r.worst_margin = best.margin;
  if (search) {
    const bool found = best.margin > tolerance;
    r.passed = opts.flipped ? !found : found;
  } else {
    r.passed = best.margin >= -tolerance;
  }
  r.witness = best.witness;
  if (r.witness && !r.witness->domain) r.witness->domain = domain;
  return r;
}

}  // namespace hypmetrics
