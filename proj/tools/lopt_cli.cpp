// Command-line front end: `lopt bench` runs the benchmark harness over a
// corpus (on-disk or generated) and `lopt tokenize` tokenizes one input.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lopt/bench.hpp"
#include "lopt/tokenizer.hpp"
#include "lopt/unicode.hpp"

namespace {

// "bpe:VOCAB_JSON:MERGES_TXT" or "wp:VOCAB_TXT", with optional ",lowercase"
// and (wp) ",fragment-unk" / (bpe) ",byte-fallback" flags appended.
lopt::Tokenizer load_tokenizer_spec(const std::string& spec) {
  std::string body = spec;
  bool lowercase = false, fragment_unk = false, byte_fallback = false;
  std::size_t comma;
  while ((comma = body.rfind(',')) != std::string::npos) {
    const std::string flag = body.substr(comma + 1);
    if (flag == "lowercase")
      lowercase = true;
    else if (flag == "fragment-unk")
      fragment_unk = true;
    else if (flag == "byte-fallback")
      byte_fallback = true;
    else
      throw std::runtime_error("unknown tokenizer flag \"" + flag + "\"");
    body = body.substr(0, comma);
  }

  if (body.rfind("bpe:", 0) == 0) {
    const std::string rest = body.substr(4);
    const std::size_t colon = rest.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("--tokenizer bpe wants bpe:VOCAB_JSON:MERGES_TXT");
    lopt::TokenizerConfig cfg = lopt::TokenizerConfig::bpe_defaults();
    cfg.lowercase = lowercase;
    cfg.byte_fallback = byte_fallback;
    if (fragment_unk) throw std::runtime_error("fragment-unk applies to WordPiece only");
    return lopt::load_bpe(rest.substr(0, colon), rest.substr(colon + 1), cfg);
  }
  if (body.rfind("wp:", 0) == 0) {
    lopt::TokenizerConfig cfg = lopt::TokenizerConfig::wordpiece_defaults();
    cfg.lowercase = lowercase;
    cfg.fragment_unk = fragment_unk;
    if (byte_fallback) throw std::runtime_error("byte-fallback applies to BPE only");
    return lopt::load_wordpiece(body.substr(3), cfg);
  }
  throw std::runtime_error("--tokenizer wants bpe:VOCAB_JSON:MERGES_TXT or wp:VOCAB_TXT");
}

std::size_t parse_size(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const std::size_t v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(std::string(what) + ": \"" + text + "\" is not a number");
  }
}

// "KIND:SIZE:SEED" with an optional ":DOC_CHARS".
lopt::Corpus gen_corpus_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() < 3 || parts.size() > 4)
    throw std::runtime_error("--gen wants KIND:SIZE:SEED[:DOC_CHARS]");
  const lopt::CorpusKind kind = lopt::corpus_kind_from_name(parts[0]);
  const std::size_t size = parse_size(parts[1], "--gen size");
  const unsigned seed = static_cast<unsigned>(parse_size(parts[2], "--gen seed"));
  const std::size_t doc_chars = parts.size() == 4 ? parse_size(parts[3], "--gen doc_chars") : 10'000;
  return lopt::gen_corpus(kind, size, seed, doc_chars);
}

int run_bench(const std::string& corpus_path, const std::string& gen_spec,
              const std::string& tokenizer_spec, const std::vector<std::string>& method_names,
              const lopt::BenchParams& params, const std::string& sweep_spec,
              const std::string& out_path, const std::string& format_name) {
  const lopt::Tokenizer tokenizer = load_tokenizer_spec(tokenizer_spec);

  lopt::Corpus corpus;
  if (!gen_spec.empty()) {
    corpus = gen_corpus_spec(gen_spec);
  } else if (!corpus_path.empty()) {
    const auto format = std::filesystem::is_directory(corpus_path)
                            ? lopt::CorpusFormat::plain_dir
                            : lopt::CorpusFormat::jsonl;
    corpus = lopt::load_corpus(corpus_path, format);
  } else {
    throw std::runtime_error("bench wants --corpus or --gen");
  }

  std::vector<lopt::Method> methods;
  for (const std::string& name : method_names) methods.push_back(lopt::method_from_name(name));

  lopt::ReportFormat format;
  if (format_name == "csv")
    format = lopt::ReportFormat::csv;
  else if (format_name == "json")
    format = lopt::ReportFormat::json;
  else
    throw std::runtime_error("--format wants csv or json");

  // A malformed --sweep is a usage error: parse it once, up front.
  bool do_sweep = false;
  lopt::SweepAxis axis{};
  std::vector<std::size_t> values;
  if (!sweep_spec.empty()) {
    const std::size_t eq = sweep_spec.find('=');
    if (eq == std::string::npos) throw std::runtime_error("--sweep wants AXIS=V1,V2,...");
    axis = lopt::sweep_axis_from_name(sweep_spec.substr(0, eq));
    std::stringstream vs(sweep_spec.substr(eq + 1));
    std::string v;
    while (std::getline(vs, v, ',')) values.push_back(parse_size(v, "--sweep value"));
    if (values.empty()) throw std::runtime_error("--sweep wants at least one value");
    do_sweep = true;
  }

  // Each method runs independently so one failing method still lets the
  // others report; any failure turns into a nonzero exit.
  lopt::BenchReport report;
  std::size_t errors = 0;
  for (const lopt::Method m : methods) {
    try {
      lopt::BenchReport r = do_sweep ? lopt::sweep(axis, values, corpus, {m}, tokenizer, params)
                                     : lopt::run_benchmark(corpus, {m}, tokenizer, params);
      report.rows.insert(report.rows.end(), std::make_move_iterator(r.rows.begin()),
                         std::make_move_iterator(r.rows.end()));
    } catch (const std::exception& e) {
      std::cerr << "method " << lopt::method_name(m) << " failed: " << e.what() << "\n";
      ++errors;
    }
  }
  lopt::recompute_aggregates(report);

  if (out_path.empty()) {
    lopt::emit_report(report, format, std::cout);
  } else {
    lopt::emit_report_file(report, format, out_path);
    std::cerr << report.rows.size() << " rows -> " << out_path << "\n";
  }
  return errors == 0 ? 0 : 1;
}

int run_tokenize(const std::string& tokenizer_spec, const std::string& text_arg,
                 const std::string& file_arg, bool spans) {
  const lopt::Tokenizer tokenizer = load_tokenizer_spec(tokenizer_spec);

  std::string utf8;
  if (!text_arg.empty()) {
    utf8 = text_arg;
  } else if (!file_arg.empty()) {
    std::ifstream in(file_arg, std::ios::binary);
    if (!in) throw std::runtime_error(file_arg + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    utf8 = ss.str();
  } else {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    utf8 = ss.str();
  }

  const std::vector<lopt::TokenSpan> tokens = tokenizer.tokenize_utf8(utf8);
  if (spans) {
    for (const lopt::TokenSpan& t : tokens)
      std::cout << t.id << '\t' << t.start << '\t' << t.end << '\n';
  } else {
    for (std::size_t i = 0; i < tokens.size(); ++i)
      std::cout << tokens[i].id << (i + 1 < tokens.size() ? ' ' : '\n');
    if (tokens.empty()) std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lossless parallel tokenization toolkit"};
  app.require_subcommand(1);

  // bench
  auto* bench = app.add_subcommand("bench", "benchmark tokenization methods over a corpus");
  std::string corpus_path, gen_spec, tokenizer_spec, sweep_spec, out_path;
  std::string format_name = "csv";
  std::vector<std::string> method_names = {"lopt", "seq"};
  lopt::BenchParams params;
  bench->add_option("--corpus", corpus_path,
                    "corpus path: a directory of *.txt files or a .jsonl file");
  bench->add_option("--gen", gen_spec,
                    "synthetic corpus KIND:SIZE:SEED[:DOC_CHARS]; kinds: repetition, "
                    "delimiter-dense, no-delimiter, mixed-unicode");
  bench->add_option("--tokenizer", tokenizer_spec, "bpe:VOCAB_JSON:MERGES_TXT or wp:VOCAB_TXT")
      ->required();
  bench->add_option("--method", method_names,
                    "methods: seq, lopt, delim-space, delim-comma, delim-period, lcs")
      ->delimiter(',');
  bench->add_option("--workers", params.workers, "worker pool size");
  bench->add_option("--chunk-len", params.chunk_len, "chunk length in characters (0 = auto)");
  bench->add_option("--overlap-len", params.overlap_len, "overlap length in characters (0 = auto)");
  bench->add_option("--min-overlap-tokens", params.min_overlap_tokens,
                    "minimum overlap-run length in tokens");
  bench->add_flag("--strict-chars", params.strict_chars,
                  "require overlap runs longer than the longest vocabulary token");
  bench->add_option("--max-doublings", params.max_doublings,
                    "chunk-doubling retries before sequential fallback");
  bench->add_option("--lcs-window", params.lcs_window, "lcs merge window in tokens (0 = auto)");
  bench->add_option("--repeats", params.repeats, "timed runs per row (median reported)");
  bench->add_option("--batch", params.batch, "documents per timed run");
  bench->add_option("--sweep", sweep_spec,
                    "AXIS=V1,V2,...; axes: chunk_len, workers, batch, seq_len, overlap_len");
  bench->add_option("--out", out_path, "output file (default: stdout)");
  bench->add_option("--format", format_name, "csv or json");

  // tokenize
  auto* tokenize = app.add_subcommand("tokenize", "tokenize UTF-8 text and print token ids");
  std::string tok_spec2, text_arg, file_arg;
  bool spans = false;
  tokenize->add_option("--tokenizer", tok_spec2, "bpe:VOCAB_JSON:MERGES_TXT or wp:VOCAB_TXT")
      ->required();
  tokenize->add_option("--text", text_arg, "text argument (UTF-8)");
  tokenize->add_option("--file", file_arg, "read text from a file (default: stdin)");
  tokenize->add_flag("--spans", spans, "print id<TAB>start<TAB>end per token");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bench->parsed())
      return run_bench(corpus_path, gen_spec, tokenizer_spec, method_names, params, sweep_spec,
                       out_path, format_name);
    return run_tokenize(tok_spec2, text_arg, file_arg, spans);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
