#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pwcn/instance.hpp"

namespace pwcn::corpus {

// Dependency structure of one sentence. heads[i] is the 0-based index of
// token i's head or kRoot. More than one root makes it a forest.
struct DepForest {
  static constexpr int kRoot = -1;

  std::vector<int> heads;
  // tree_id[i] is the index of the root that token i hangs from.
  std::vector<int> tree_id;
  std::vector<std::string> forms;  // FORM column; may be empty
  std::string sent_id;             // from a "# sent_id = ..." comment

  std::size_t size() const { return heads.size(); }
};

// Validates `heads` (range, no self-loops, no cycles) and builds a forest
// with tree ids. Throws StructureError.
DepForest make_forest(std::vector<int> heads,
                      std::vector<std::string> forms = {});

// Parses CoNLL-U text. Comment lines are skipped (except sent_id),
// multiword ranges (ID "a-b") and empty nodes (ID "a.b") are ignored.
// Throws ParseError with a line number on malformed rows, StructureError
// on cyclic or self-headed blocks.
std::vector<DepForest> parse_conllu(std::string_view text);

// Writes forests back as 10-column CoNLL-U. Columns other than ID, FORM
// and HEAD are "_"; FORM falls back to "_" when forms are absent.
std::string serialize_conllu(std::span<const DepForest> forests);

// Pairs each instance with the forest of its source sentence
// (Instance::sentence_index). Returns one forest per instance.
// Throws AlignmentError naming the sentence id when counts or token forms
// disagree, or when a forest is missing.
std::vector<DepForest> align_forests(std::span<const Instance> instances,
                                     std::span<const DepForest> forests);

}  // namespace pwcn::corpus
