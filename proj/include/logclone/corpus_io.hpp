#pragma once

#include <filesystem>
#include <iosfwd>

#include "logclone/corpus.hpp"

namespace logclone {

inline constexpr const char* kCorpusSchema = "logclone-corpus/1";

// JSON Lines: one header record (`"record": "header"`) carrying the file table
// and skip records, then one record per method. Method tokens are not stored
// separately; they are recovered by re-lexing raw_text and checked against the
// stored tokens_full.
void write_corpus(std::ostream& out, const Corpus& corpus);
Corpus read_corpus(std::istream& in);

void save_corpus(const std::filesystem::path& path, const Corpus& corpus);
Corpus load_corpus(const std::filesystem::path& path);

}  // namespace logclone
