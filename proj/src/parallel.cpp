#include "lopt/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

namespace lopt {

std::vector<ChunkResult> map_chunks_parallel(
    const std::vector<Chunk>& chunks,
    const std::function<std::vector<TokenSpan>(const Chunk&)>& fn, const WorkerPoolConfig& pool) {
  if (pool.pool_size == 0) throw std::invalid_argument("worker pool: pool_size must be >= 1");
  std::vector<ChunkResult> results(chunks.size());
  if (chunks.empty()) return results;

  std::atomic<std::size_t> next{0};  // FIFO dispatch by position
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::string error;

  const auto worker = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= chunks.size()) return;
      try {
        ChunkResult r;
        r.chunk_index = chunks[i].index;
        r.chunk_len = chunks[i].text.size();
        r.tokens = fn(chunks[i]);
        results[i] = std::move(r);
      } catch (const std::exception& e) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) error = "chunk " + std::to_string(chunks[i].index) + ": " + e.what();
        return;
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true))
          error = "chunk " + std::to_string(chunks[i].index) + ": unknown error";
        return;
      }
    }
  };

  const std::size_t workers = std::min(pool.pool_size, chunks.size());
  if (workers == 1) {
    worker();  // no thread spawn for the degenerate pool
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (failed.load()) throw std::runtime_error("parallel tokenization aborted: " + error);

  std::stable_sort(results.begin(), results.end(),
                   [](const ChunkResult& a, const ChunkResult& b) {
                     return a.chunk_index < b.chunk_index;
                   });
  return results;
}

std::vector<ChunkResult> tokenize_chunks_parallel(const std::vector<Chunk>& chunks,
                                                  const Tokenizer& tokenizer,
                                                  const WorkerPoolConfig& pool) {
  return map_chunks_parallel(
      chunks, [&tokenizer](const Chunk& c) { return tokenizer.tokenize(c.text); }, pool);
}

}  // namespace lopt
