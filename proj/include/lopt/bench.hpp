#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "lopt/merge.hpp"
#include "lopt/tokenizer.hpp"

namespace lopt {

struct Doc {
  std::string id;
  std::u32string text;
};

struct Corpus {
  std::vector<Doc> docs;  // unique ids, load order preserved
};

enum class CorpusFormat { plain_dir, jsonl };

// plain_dir: every *.txt file in the directory, id = filename, sorted.
// jsonl: one JSON object per line with a required "text" field and an
// optional "id" (default "line-<n>"). Errors name the file and line.
Corpus load_corpus(const std::string& path, CorpusFormat format);

enum class CorpusKind { repetition, delimiter_dense, no_delimiter, mixed_unicode };
CorpusKind corpus_kind_from_name(const std::string& name);  // "repetition", "delimiter-dense", ...
std::string corpus_kind_name(CorpusKind kind);

// Deterministic synthetic corpus: total_chars of text split into documents of
// doc_chars each (the last one takes the remainder). Same (kind, total,
// seed, doc_chars), same corpus, on every platform.
Corpus gen_corpus(CorpusKind kind, std::size_t total_chars, unsigned seed,
                  std::size_t doc_chars = 10'000);

enum class Method { seq, lopt, delim_space, delim_comma, delim_period, lcs };
std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct BenchParams {
  std::size_t workers = 32;
  std::size_t chunk_len = 0;    // 0 = default_chunk_len per document
  std::size_t overlap_len = 0;  // 0 = default_overlap_len for the tokenizer
  std::size_t min_overlap_tokens = 2;
  bool strict_chars = false;
  std::size_t max_doublings = 4;
  std::size_t lcs_window = 0;  // 0 = auto
  std::size_t repeats = 5;     // timed runs per row; one extra warm-up run is discarded
  std::size_t batch = 1;       // documents tokenized back-to-back inside one timed run
};

struct BenchRow {
  std::string doc_id;
  std::string method;
  std::string config;  // parameter fingerprint, stable field order
  double latency_ms = 0.0;  // median of the timed runs
  std::size_t token_count = 0;
  bool exact_match = false;  // token-id sequence equals the sequential oracle
};

struct Aggregate {
  std::string method;
  std::string config;
  double mean_latency_ms = 0.0;
  double accuracy = 0.0;  // fraction of rows with exact_match
  std::size_t rows = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<Aggregate> aggregates;  // always derivable from rows
};

void recompute_aggregates(BenchReport& report);

// One row per (document, method). The oracle tokenization is computed once
// per document; accuracy comparison happens outside every timed region.
BenchReport run_benchmark(const Corpus& corpus, const std::vector<Method>& methods,
                          const Tokenizer& tokenizer, const BenchParams& params);

enum class SweepAxis { chunk_len, workers, batch, seq_len, overlap_len };
SweepAxis sweep_axis_from_name(const std::string& name);

// Re-runs the benchmark once per value, varying only that axis; rows carry
// the per-value config fingerprint and concatenate into one report.
BenchReport sweep(SweepAxis axis, const std::vector<std::size_t>& values, const Corpus& corpus,
                  const std::vector<Method>& methods, const Tokenizer& tokenizer,
                  const BenchParams& base);

enum class ReportFormat { csv, json };

// CSV columns, in order: doc_id,method,config,latency_ms,token_count,exact_match.
// JSON mirrors rows plus aggregates. Output is byte-stable for a given report.
void emit_report(const BenchReport& report, ReportFormat format, std::ostream& out);
void emit_report_file(const BenchReport& report, ReportFormat format, const std::string& path);

}  // namespace lopt
