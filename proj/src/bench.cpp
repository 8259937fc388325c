#include "lopt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include <json.hpp>

#include "lopt/baselines.hpp"
#include "lopt/chunking.hpp"
#include "lopt/unicode.hpp"

namespace lopt {

namespace fs = std::filesystem;

namespace {

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Corpus load_corpus(const std::string& path, CorpusFormat format) {
  Corpus corpus;
  if (format == CorpusFormat::plain_dir) {
    if (!fs::is_directory(path)) throw std::runtime_error(path + ": not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_regular_file() && entry.path().extension() == ".txt")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error(path + ": no *.txt documents");
    for (const fs::path& f : files)
      corpus.docs.push_back({f.filename().string(), decode_utf8(read_text_file(f))});
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
      }
      if (!j.is_object() || !j.contains("text") || !j["text"].is_string())
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": row has no \"text\" string field");
      std::string id;
      if (j.contains("id"))
        id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
      else
        id = "line-" + std::to_string(line_no);
      corpus.docs.push_back({std::move(id), decode_utf8(j["text"].get<std::string>())});
    }
    if (corpus.docs.empty()) throw std::runtime_error(path + ": no documents");
  }

  std::unordered_set<std::string> seen;
  for (const Doc& d : corpus.docs)
    if (!seen.insert(d.id).second)
      throw std::runtime_error(path + ": duplicate document id \"" + d.id + "\"");
  return corpus;
}

CorpusKind corpus_kind_from_name(const std::string& name) {
  if (name == "repetition") return CorpusKind::repetition;
  if (name == "delimiter-dense") return CorpusKind::delimiter_dense;
  if (name == "no-delimiter") return CorpusKind::no_delimiter;
  if (name == "mixed-unicode") return CorpusKind::mixed_unicode;
  throw std::invalid_argument("unknown corpus kind \"" + name + "\"");
}

std::string corpus_kind_name(CorpusKind kind) {
  switch (kind) {
    case CorpusKind::repetition:
      return "repetition";
    case CorpusKind::delimiter_dense:
      return "delimiter-dense";
    case CorpusKind::no_delimiter:
      return "no-delimiter";
    case CorpusKind::mixed_unicode:
      return "mixed-unicode";
  }
  throw std::logic_error("corpus_kind_name: bad enum value");
}

namespace {

std::size_t pick(std::mt19937& rng, std::size_t n) { return n == 0 ? 0 : rng() % n; }

void gen_text(CorpusKind kind, std::mt19937& rng, std::size_t chars, std::u32string& out) {
  out.clear();
  out.reserve(chars + 16);
  switch (kind) {
    case CorpusKind::repetition: {
      // Long runs of short motifs: tokenizations are periodic id streams, the
      // regime where id-only overlap matching goes wrong.
      static const std::u32string motifs[] = {U"abc", U"ab", U"de", U"abcde", U"aab"};
      while (out.size() < chars) {
        const std::u32string& m = motifs[pick(rng, 5)];
        const std::size_t reps = 40 + pick(rng, 160);
        for (std::size_t r = 0; r < reps && out.size() < chars; ++r) out += m;
        if (out.size() < chars && pick(rng, 4) == 0) out += U' ';
      }
      break;
    }
    case CorpusKind::delimiter_dense: {
      // Space-separated words with commas and periods attached to the word
      // before them; words before punctuation end in "abc" so that merged
      // tokens ("abc," / "abc.") straddle the punctuation character.
      static const std::u32string plain[] = {U"de",   U"fg", U"hij", U"ab",
                                             U"fgde", U"hi", U"jj",  U"ddee"};
      static const std::u32string before_punct[] = {U"abc", U"deabc", U"ababc", U"fgabc"};
      std::size_t since_punct = 0;
      while (out.size() < chars) {
        if (since_punct >= 3 + pick(rng, 6)) {
          out += before_punct[pick(rng, 4)];
          out += (pick(rng, 3) == 0) ? U'.' : U',';
          since_punct = 0;
        } else {
          out += plain[pick(rng, 8)];
          ++since_punct;
        }
        if (out.size() < chars) out += U' ';
      }
      break;
    }
    case CorpusKind::no_delimiter: {
      // One unbroken stream: no space, comma or period anywhere.
      static const std::u32string pool = U"abcdefghij";
      while (out.size() < chars) {
        if (pick(rng, 3) == 0)
          out += U"abc";
        else
          out += pool[pick(rng, pool.size())];
      }
      break;
    }
    case CorpusKind::mixed_unicode: {
      // ASCII words mixed with CJK runs, accented letters and ideographic
      // punctuation; multi-byte UTF-8 everywhere.
      while (out.size() < chars) {
        switch (pick(rng, 5)) {
          case 0:
            out += U"abc";
            break;
          case 1: {
            const std::size_t run = 2 + pick(rng, 3);
            for (std::size_t k = 0; k < run; ++k) out += char32_t(0x4E00 + pick(rng, 64));
            break;
          }
          case 2:
            out += U"héj";
            break;
          case 3:
            out += U"de";
            break;
          case 4:
            out += char32_t(0x3001 + pick(rng, 2));  // ideographic comma / full stop
            break;
        }
        if (pick(rng, 3) != 0) out += U' ';
      }
      break;
    }
  }
  if (out.size() > chars) out.resize(chars);
}

}  // namespace

Corpus gen_corpus(CorpusKind kind, std::size_t total_chars, unsigned seed, std::size_t doc_chars) {
  if (doc_chars == 0) throw std::invalid_argument("gen_corpus: doc_chars must be >= 1");
  Corpus corpus;
  std::mt19937 rng(seed);
  std::size_t remaining = total_chars;
  std::size_t n = 0;
  while (remaining > 0) {
    const std::size_t len = std::min(doc_chars, remaining);
    Doc d;
    d.id = corpus_kind_name(kind) + "-" + std::to_string(n++);
    gen_text(kind, rng, len, d.text);
    remaining -= len;
    corpus.docs.push_back(std::move(d));
  }
  return corpus;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::seq:
      return "seq";
    case Method::lopt:
      return "lopt";
    case Method::delim_space:
      return "delim-space";
    case Method::delim_comma:
      return "delim-comma";
    case Method::delim_period:
      return "delim-period";
    case Method::lcs:
      return "lcs";
  }
  throw std::logic_error("method_name: bad enum value");
}

Method method_from_name(const std::string& name) {
  if (name == "seq") return Method::seq;
  if (name == "lopt") return Method::lopt;
  if (name == "delim-space") return Method::delim_space;
  if (name == "delim-comma") return Method::delim_comma;
  if (name == "delim-period") return Method::delim_period;
  if (name == "lcs") return Method::lcs;
  throw std::invalid_argument("unknown method \"" + name + "\"");
}

namespace {

std::vector<TokenId> ids_of(const std::vector<TokenSpan>& tokens) {
  std::vector<TokenId> ids;
  ids.reserve(tokens.size());
  for (const TokenSpan& t : tokens) ids.push_back(t.id);
  return ids;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return (n % 2 == 1) ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

std::string fingerprint(const BenchParams& p) {
  std::ostringstream ss;
  ss << "workers=" << p.workers << ";chunk_len=" << p.chunk_len
     << ";overlap_len=" << p.overlap_len << ";min_overlap_tokens=" << p.min_overlap_tokens
     << ";strict_chars=" << (p.strict_chars ? 1 : 0) << ";max_doublings=" << p.max_doublings
     << ";lcs_window=" << p.lcs_window << ";batch=" << p.batch;
  return ss.str();
}

// One method applied to one document. Everything here is inside the timed
// region: u32 text in, tokens out.
std::vector<TokenId> run_method(Method m, const Doc& doc, const Tokenizer& tokenizer,
                                const BenchParams& p) {
  const WorkerPoolConfig pool{p.workers};
  switch (m) {
    case Method::seq:
      return ids_of(tokenizer.tokenize(doc.text));
    case Method::lopt: {
      const LoptParams lp{p.chunk_len, p.overlap_len};
      MergeConfig mc;
      mc.min_overlap_tokens = p.min_overlap_tokens;
      mc.strict_min_chars = p.strict_chars;
      mc.max_doublings = p.max_doublings;
      return ids_of(lopt_tokenize(doc.text, tokenizer, lp, pool, mc).tokens);
    }
    case Method::delim_space:
    case Method::delim_comma:
    case Method::delim_period: {
      DelimiterConfig dc;
      dc.delimiter = m == Method::delim_space    ? Delimiter::whitespace
                     : m == Method::delim_comma ? Delimiter::comma
                                                : Delimiter::period;
      dc.target_chunk_len =
          p.chunk_len ? p.chunk_len : default_chunk_len(doc.text.size(), p.workers);
      return ids_of(delimiter_tokenize_parallel(doc.text, tokenizer, dc, pool));
    }
    case Method::lcs: {
      LcsConfig lc;
      lc.overlap_len = p.overlap_len
                           ? p.overlap_len
                           : default_overlap_len(tokenizer.vocab().max_token_char_len());
      lc.window = p.lcs_window;
      const std::size_t chunk_len =
          p.chunk_len ? p.chunk_len : default_chunk_len(doc.text.size(), p.workers);
      return lcs_tokenize_parallel(doc.text, tokenizer, chunk_len, lc, pool);
    }
  }
  throw std::logic_error("run_method: bad enum value");
}

}  // namespace

void recompute_aggregates(BenchReport& report) {
  std::map<std::pair<std::string, std::string>, Aggregate> groups;
  for (const BenchRow& row : report.rows) {
    Aggregate& g = groups[{row.method, row.config}];
    g.method = row.method;
    g.config = row.config;
    g.mean_latency_ms += row.latency_ms;
    g.accuracy += row.exact_match ? 1.0 : 0.0;
    g.rows += 1;
  }
  report.aggregates.clear();
  report.aggregates.reserve(groups.size());
  for (auto& [key, g] : groups) {
    g.mean_latency_ms /= static_cast<double>(g.rows);
    g.accuracy /= static_cast<double>(g.rows);
    report.aggregates.push_back(std::move(g));
  }
}

BenchReport run_benchmark(const Corpus& corpus, const std::vector<Method>& methods,
                          const Tokenizer& tokenizer, const BenchParams& params) {
  if (params.repeats == 0) throw std::invalid_argument("run_benchmark: repeats must be >= 1");
  using clock = std::chrono::steady_clock;

  BenchReport report;
  const std::string fp = fingerprint(params);
  const std::size_t batch = std::max<std::size_t>(1, params.batch);

  for (std::size_t lo = 0; lo < corpus.docs.size(); lo += batch) {
    const std::size_t hi = std::min(lo + batch, corpus.docs.size());
    const std::size_t group = hi - lo;

    // Oracle per document: once, outside every timed region.
    std::vector<std::vector<TokenId>> oracle;
    oracle.reserve(group);
    for (std::size_t d = lo; d < hi; ++d)
      oracle.push_back(ids_of(tokenizer.tokenize(corpus.docs[d].text)));

    std::string row_id = corpus.docs[lo].id;
    if (group > 1) row_id += "+" + std::to_string(group - 1);

    for (const Method m : methods) {
      std::vector<std::vector<TokenId>> got(group);
      for (std::size_t d = lo; d < hi; ++d)  // warm-up run, discarded
        got[d - lo] = run_method(m, corpus.docs[d], tokenizer, params);

      std::vector<double> times;
      times.reserve(params.repeats);
      for (std::size_t rep = 0; rep < params.repeats; ++rep) {
        const auto t0 = clock::now();
        for (std::size_t d = lo; d < hi; ++d)
          got[d - lo] = run_method(m, corpus.docs[d], tokenizer, params);
        const auto t1 = clock::now();
        times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
      }

      BenchRow row;
      row.doc_id = row_id;
      row.method = method_name(m);
      row.config = fp;
      row.latency_ms = median_of(std::move(times));
      row.exact_match = true;
      for (std::size_t g = 0; g < group; ++g) {
        row.token_count += got[g].size();
        if (got[g] != oracle[g]) row.exact_match = false;
      }
      report.rows.push_back(std::move(row));
    }
  }

  recompute_aggregates(report);
  return report;
}

SweepAxis sweep_axis_from_name(const std::string& name) {
  if (name == "chunk_len") return SweepAxis::chunk_len;
  if (name == "workers") return SweepAxis::workers;
  if (name == "batch") return SweepAxis::batch;
  if (name == "seq_len") return SweepAxis::seq_len;
  if (name == "overlap_len") return SweepAxis::overlap_len;
  throw std::invalid_argument("unknown sweep axis \"" + name + "\"");
}

namespace {

// Synthetic document of exactly `len` characters: corpus text cycled.
Doc cycled_doc(const Corpus& corpus, std::size_t len) {
  if (corpus.docs.empty()) throw std::invalid_argument("sweep: empty corpus");
  Doc d;
  d.id = "seqlen-" + std::to_string(len);
  d.text.reserve(len);
  std::size_t i = 0;
  std::size_t empty_streak = 0;
  while (d.text.size() < len) {
    const std::u32string& src = corpus.docs[i % corpus.docs.size()].text;
    ++i;
    if (src.empty()) {
      if (++empty_streak == corpus.docs.size())
        throw std::invalid_argument("sweep: corpus has no text");
      continue;
    }
    empty_streak = 0;
    d.text.append(src, 0, std::min(src.size(), len - d.text.size()));
  }
  return d;
}

}  // namespace

BenchReport sweep(SweepAxis axis, const std::vector<std::size_t>& values, const Corpus& corpus,
                  const std::vector<Method>& methods, const Tokenizer& tokenizer,
                  const BenchParams& base) {
  BenchReport all;
  for (const std::size_t v : values) {
    BenchParams p = base;
    Corpus derived;
    const Corpus* use = &corpus;
    switch (axis) {
      case SweepAxis::chunk_len:
        p.chunk_len = v;
        break;
      case SweepAxis::workers:
        p.workers = v;
        break;
      case SweepAxis::batch:
        p.batch = v;
        break;
      case SweepAxis::overlap_len:
        p.overlap_len = v;
        break;
      case SweepAxis::seq_len:
        derived.docs.push_back(cycled_doc(corpus, v));
        use = &derived;
        break;
    }
    BenchReport r = run_benchmark(*use, methods, tokenizer, p);
    all.rows.insert(all.rows.end(), std::make_move_iterator(r.rows.begin()),
                    std::make_move_iterator(r.rows.end()));
  }
  recompute_aggregates(all);
  return all;
}

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string format_ms(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", ms);
  return buf;
}

double round_ms(double ms) { return std::round(ms * 1000.0) / 1000.0; }

}  // namespace

void emit_report(const BenchReport& report, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::csv) {
    out << "doc_id,method,config,latency_ms,token_count,exact_match\n";
    for (const BenchRow& r : report.rows)
      out << csv_escape(r.doc_id) << ',' << csv_escape(r.method) << ',' << csv_escape(r.config)
          << ',' << format_ms(r.latency_ms) << ',' << r.token_count << ','
          << (r.exact_match ? "true" : "false") << '\n';
    return;
  }
  nlohmann::ordered_json j;
  j["rows"] = nlohmann::ordered_json::array();
  for (const BenchRow& r : report.rows)
    j["rows"].push_back({{"doc_id", r.doc_id},
                         {"method", r.method},
                         {"config", r.config},
                         {"latency_ms", round_ms(r.latency_ms)},
                         {"token_count", r.token_count},
                         {"exact_match", r.exact_match}});
  j["aggregates"] = nlohmann::ordered_json::array();
  for (const Aggregate& a : report.aggregates)
    j["aggregates"].push_back({{"method", a.method},
                               {"config", a.config},
                               {"mean_latency_ms", round_ms(a.mean_latency_ms)},
                               {"accuracy", a.accuracy},
                               {"rows", a.rows}});
  out << j.dump(2) << '\n';
}

void emit_report_file(const BenchReport& report, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  emit_report(report, format, out);
  if (!out.flush()) throw std::runtime_error(path + ": write failed");
}

}  // namespace lopt
