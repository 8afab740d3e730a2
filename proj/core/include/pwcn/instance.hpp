#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pwcn {

// Three-way sentiment polarity. "conflict" aspects are dropped at load time.
enum class Polarity : int { kNegative = 0, kNeutral = 1, kPositive = 2 };

inline constexpr int kNumPolarities = 3;

std::string_view polarity_name(Polarity p);
std::optional<Polarity> parse_polarity(std::string_view name);

// Byte range [begin, end) of a token inside its raw sentence.
struct TokenOffset {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// One labeled example: a tokenized sentence and the token range
// [aspect_start, aspect_start + aspect_len) of its aspect term.
struct Instance {
  std::vector<std::string> tokens;
  std::vector<TokenOffset> offsets;  // parallel to tokens; may be empty
  std::size_t aspect_start = 0;
  std::size_t aspect_len = 1;
  Polarity label = Polarity::kNeutral;
  std::string sentence_id;
  // Index of the source sentence in its XML file; joins against CoNLL-U.
  std::size_t sentence_index = 0;

  std::size_t size() const { return tokens.size(); }
  std::size_t aspect_end() const { return aspect_start + aspect_len; }
  bool in_aspect(std::size_t i) const {
    return i >= aspect_start && i < aspect_end();
  }
};

// Throws ArgumentError when the instance breaks its invariants
// (empty sentence, empty aspect, span out of range, blank tokens).
void validate(const Instance& instance);

}  // namespace pwcn
