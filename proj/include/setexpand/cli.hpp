#pragma once

#include <iosfwd>

#include "setexpand/config.hpp"

namespace setexpand::cli {

// Exit codes: 0 success, 1 runtime/validation failure. Usage errors (exit 2)
// are handled by the flag parser in the binary.

// Loads and validates the raw corpus and entity vocabulary, then writes the
// normalized corpus and its token-reversed twin into the workspace.
int run_ingest(const RunConfig& config, std::ostream& out, std::ostream& err);

// Trains the forward model on corpus.fwd and the reverse model on corpus.rev
// and persists both. Requires a prior ingest.
int run_train_lm(const RunConfig& config, std::ostream& out, std::ostream& err);

// Generates the full pattern cache for every vocabulary entity.
int run_gen_patterns(const RunConfig& config, std::ostream& out, std::ostream& err);

// Expands one query (config.query) and writes ranked/<query>.tsv.
int run_expand(const RunConfig& config, std::ostream& out, std::ostream& err);

// Evaluates the whole benchmark; writes report.json plus per-query ranked
// lists, and one report per value when threshold sweeps are configured.
int run_eval(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace setexpand::cli
