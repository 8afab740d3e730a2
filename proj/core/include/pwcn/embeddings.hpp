#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>

#include <Eigen/Core>

#include "pwcn/vocabulary.hpp"

namespace pwcn::corpus {

using EmbeddingMatrix =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// |V| x d_e lookup table; row Vocabulary::kPad is all zeros.
struct EmbeddingTable {
  EmbeddingMatrix matrix;
  std::size_t found = 0;  // vocabulary rows copied from the file

  Eigen::Index rows() const { return matrix.rows(); }
  Eigen::Index dim() const { return matrix.cols(); }
};

struct EmbeddingOptions {
  float oov_range = 0.25f;   // OOV rows ~ U(-oov_range, oov_range)
  std::uint64_t seed = 1;
  // Skip lines with a wrong value count instead of failing. Some
  // published GloVe files contain multi-word keys.
  bool skip_malformed = false;
};

// Reads "word v1 ... v_d" lines. File words are matched lower-cased; an
// exactly lower-case entry wins over a cased variant.
// Throws FormatError with the line number on a wrong value count.
EmbeddingTable load_embeddings(std::istream& in, const Vocabulary& vocab,
                               int dim, const EmbeddingOptions& options = {});
EmbeddingTable load_embeddings(std::string_view text, const Vocabulary& vocab,
                               int dim, const EmbeddingOptions& options = {});

// Every row except padding drawn from U(-range, range).
EmbeddingTable random_embeddings(const Vocabulary& vocab, int dim,
                                 const EmbeddingOptions& options = {});

}  // namespace pwcn::corpus
