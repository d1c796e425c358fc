// selkey: selectivity-based keyword extraction over a corpus directory.
//
//   selkey build   --corpus DIR --out DIR
//   selkey metrics --corpus DIR --out DIR
//   selkey extract --corpus DIR --out DIR [--stopwords F] [--lemmas F] [--set 1|2|both]
//   selkey eval    --corpus DIR --gold F --out DIR [...]
//
// Options may also come from a key=value file passed with --config; flags on
// the command line win.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "selkey/corpus_run.hpp"

namespace {

void report(const selkey::RunSummary& s) {
  for (const auto& line : s.lines) std::cout << line << '\n';
  for (const auto& w : s.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& e : s.errors) std::cerr << "error: " << e << '\n';
}

void print_macro(const char* label, const selkey::EvalReport& r) {
  const auto& m = r.macro;
  std::cout << label << " macro over " << m.documents << " docs: P=" << m.precision
            << " R=" << m.recall << " F1=" << m.f1 << " F2=" << m.f2 << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selectivity-based keyword extraction from word co-occurrence networks"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file");

  selkey::RunConfig cfg;
  std::string corpus, out = ".", stopwords, lemmas, gold, sets = "both";
  std::size_t max_candidates = 0;
  bool no_set1_filter = false, no_in = false, no_out = false, no_title = false;

  app.add_option("--corpus", corpus, "directory of UTF-8 text files, one document each");
  app.add_option("--out", out, "output directory")->capture_default_str();
  app.add_option("--stopwords", stopwords, "stopword list, one word per line");
  app.add_option("--lemmas", lemmas, "lemma table, surface<TAB>lemma per line");
  app.add_option("--gold", gold, "gold keywords JSON {doc_id: {annotator: [phrases]}}");
  app.add_option("--threshold", cfg.extraction.threshold, "selectivity threshold (inclusive)")
      ->capture_default_str();
  app.add_option("--set", sets, "candidate sets to emit")
      ->check(CLI::IsMember({"1", "2", "both"}))
      ->capture_default_str();
  app.add_option("--workers", cfg.workers, "documents processed concurrently")->capture_default_str();
  app.add_option("--max-candidates", max_candidates, "cap per set and document (0 = none)");
  app.add_flag("--no-set1-stopword-filter", no_set1_filter,
               "keep stopwords in SET1; only SET2 tuples are filtered");
  app.add_flag("--restrict-gold-by-length", cfg.restrict_gold_by_length,
               "score SET1 against 1-word and SET2 against 2-word gold keyphrases only");
  app.add_flag("--no-in", no_in, "ignore in-selectivity");
  app.add_flag("--no-out", no_out, "ignore out-selectivity");
  app.add_flag("--no-title-sentence", no_title,
               "do not treat the first line of each file as a separate sentence");

  auto* build = app.add_subcommand("build", "write the co-occurrence edge list of each document");
  auto* metrics = app.add_subcommand("metrics", "write node measures of each document");
  auto* extract = app.add_subcommand("extract", "write SET1/SET2 keyword candidates");
  auto* eval = app.add_subcommand("eval", "score candidates against gold keywords");
  for (auto* sub : {build, metrics, extract, eval}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : selkey::kExitUsage;
  }

  cfg.corpus_dir = corpus;
  cfg.output_dir = out;
  if (!stopwords.empty()) cfg.stopwords_path = stopwords;
  if (!lemmas.empty()) cfg.lemma_table_path = lemmas;
  if (!gold.empty()) cfg.gold_path = gold;
  cfg.sets = sets == "1"   ? selkey::SetSelection::Set1
             : sets == "2" ? selkey::SetSelection::Set2
                           : selkey::SetSelection::Both;
  if (max_candidates > 0) cfg.extraction.max_candidates = max_candidates;
  cfg.extraction.filter_set1_stopwords = !no_set1_filter;
  cfg.extraction.include_in = !no_in;
  cfg.extraction.include_out = !no_out;
  cfg.title_sentence = !no_title;

  try {
    if (*eval) {
      const auto run = selkey::run_eval(cfg);
      report(run.summary);
      if (run.set1) print_macro("SET1", *run.set1);
      if (run.set2) print_macro("SET2", *run.set2);
      return run.summary.exit_code();
    }
    const auto summary = *build     ? selkey::run_build(cfg)
                         : *metrics ? selkey::run_metrics(cfg)
                                    : selkey::run_extract(cfg);
    report(summary);
    return summary.exit_code();
  } catch (const selkey::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return selkey::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return selkey::kExitData;
  }
}
