#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "io_util.hpp"
#include "nlgm/corpus.hpp"
#include "nlgm/dialogue.hpp"
#include "nlgm/rng.hpp"

namespace nlgm::cli {

int run_baseline(const BaselineOptions& opts) {
  auto train_in = open_input(opts.train);
  const Corpus train = load_corpus_jsonl(train_in);
  auto test_in = open_input(opts.test);
  const Corpus test = load_corpus_jsonl(test_in);

  const BaselineIndex index = BaselineIndex::build(train);
  if (index.skipped_instances() > 0) {
    std::cerr << "warning: skipped " << index.skipped_instances()
              << " training instance(s) without dialogue acts\n";
  }
  if (index.empty()) {
    throw DataError("no training instance carries dialogue acts");
  }

  std::mt19937_64 rng = make_rng(opts.seed, "baseline");
  Corpus generated;
  generated.instances.reserve(test.size());
  for (const EvalInstance& inst : test.instances) {
    if (!inst.acts || inst.acts->empty()) {
      throw DataError("test instance \"" + inst.id +
                      "\" lacks dialogue acts");
    }
    EvalInstance out = inst;
    out.hypothesis = baseline_generate(*inst.acts, index, rng);
    generated.instances.push_back(std::move(out));
  }

  std::ostringstream buffer;
  save_corpus_jsonl(generated, buffer);
  emit(opts.out, buffer.str());
  return 0;
}

}  // namespace nlgm::cli
