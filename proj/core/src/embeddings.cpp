#include "pwcn/embeddings.hpp"

#include <charconv>
#include <istream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pwcn/error.hpp"
#include "pwcn/tokenizer.hpp"

namespace pwcn::corpus {

namespace {

// Parses exactly `dim` floats after the first field. Returns false on a
// wrong count.
bool parse_values(std::string_view rest, int dim, float* out) {
  int count = 0;
  std::size_t pos = 0;
  while (pos < rest.size()) {
    while (pos < rest.size() && rest[pos] == ' ') ++pos;
    if (pos >= rest.size()) break;
    if (count == dim) return false;
    const char* begin = rest.data() + pos;
    const char* end = rest.data() + rest.size();
    auto [ptr, ec] = std::from_chars(begin, end, out[count]);
    if (ec != std::errc() || (ptr != end && *ptr != ' ')) return false;
    pos = static_cast<std::size_t>(ptr - rest.data());
    ++count;
  }
  return count == dim;
}

int count_fields(std::string_view rest) {
  int count = 0;
  bool in_field = false;
  for (char c : rest) {
    if (c == ' ') {
      in_field = false;
    } else if (!in_field) {
      in_field = true;
      ++count;
    }
  }
  return count;
}

}  // namespace

EmbeddingTable random_embeddings(const Vocabulary& vocab, int dim,
                                 const EmbeddingOptions& options) {
  if (dim < 1) throw ArgumentError("embedding dimension must be >= 1");
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<float> dist(-options.oov_range,
                                             options.oov_range);
  EmbeddingTable table;
  table.matrix.resize(static_cast<Eigen::Index>(vocab.size()), dim);
  for (Eigen::Index r = 0; r < table.matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) table.matrix(r, c) = dist(rng);
  }
  table.matrix.row(Vocabulary::kPad).setZero();
  return table;
}

EmbeddingTable load_embeddings(std::istream& in, const Vocabulary& vocab,
                               int dim, const EmbeddingOptions& options) {
  EmbeddingTable table = random_embeddings(vocab, dim, options);
  // 0 = untouched, 1 = filled from a cased variant, 2 = exact lower-case.
  std::vector<char> state(vocab.size(), 0);
  std::vector<float> values(static_cast<std::size_t>(dim));

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t space = line.find(' ');
    const std::string_view word = std::string_view(line).substr(0, space);
    const std::string_view rest = space == std::string::npos
                                      ? std::string_view()
                                      : std::string_view(line).substr(space + 1);

    const std::string key = to_lower(word);
    const int id = vocab.index(key);
    const bool wanted = id != Vocabulary::kUnknown || key == "<unk>";
    const bool exact = key == word;
    if (!wanted || id == Vocabulary::kPad ||
        state[id] == 2 || (state[id] == 1 && !exact)) {
      if (count_fields(rest) != dim) {
        if (options.skip_malformed) continue;
        throw FormatError("expected " + std::to_string(dim) + " values, found " +
                              std::to_string(count_fields(rest)),
                          line_no);
      }
      continue;
    }
    if (!parse_values(rest, dim, values.data())) {
      if (options.skip_malformed) continue;
      throw FormatError("expected " + std::to_string(dim) +
                            " numeric values, found " +
                            std::to_string(count_fields(rest)) + " fields",
                        line_no);
    }
    if (state[id] == 0) ++table.found;
    state[id] = exact ? 2 : 1;
    for (int c = 0; c < dim; ++c) table.matrix(id, c) = values[c];
  }
  return table;
}

EmbeddingTable load_embeddings(std::string_view text, const Vocabulary& vocab,
                               int dim, const EmbeddingOptions& options) {
  std::istringstream in{std::string(text)};
  return load_embeddings(in, vocab, dim, options);
}

}  // namespace pwcn::corpus
