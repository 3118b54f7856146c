#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "setexpand/errors.hpp"
#include "setexpand/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"generate a synthetic benchmark with planted semantic classes"};

  std::string out_dir = "synthetic";
  setexpand::SyntheticSpec spec;
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--classes", spec.classes, "number of semantic classes");
  app.add_option("--entities-per-class", spec.entities_per_class, "entities per class");
  app.add_option("--ctx-words-per-class", spec.ctx_words_per_class, "context words per class");
  app.add_option("--sentences-per-entity", spec.sentences_per_entity, "corpus sentences per entity");
  app.add_option("--queries-per-class", spec.queries_per_class, "queries per class");
  app.add_option("--seeds-per-query", spec.seeds_per_query, "seed entities per query");
  app.add_option("--seed", spec.seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const auto data = setexpand::generate_synthetic(spec);
    setexpand::write_synthetic(data, out_dir);
    std::cout << "wrote " << data.entity_words.size() << " entities in " << spec.classes
              << " classes, " << data.corpus_lines.size() << " sentences, "
              << data.queries.size() << " queries to " << out_dir << '\n';
  } catch (const setexpand::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
