#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pwcn/instance.hpp"

namespace pwcn::corpus {

// Character span [from, to) in Unicode code points, as used by the
// SemEval-2014 XML `from`/`to` attributes.
struct CharSpan {
  std::size_t from = 0;
  std::size_t to = 0;
};

struct Token {
  std::string text;
  TokenOffset offset;  // byte offsets into the source string
};

// Splits on whitespace; every ASCII punctuation character becomes its own
// token. Non-ASCII bytes are word characters.
std::vector<Token> tokenize(std::string_view text);

// Converts a code-point index into a byte index of `text`. An index equal
// to the code-point length maps to text.size(). Throws ArgumentError when
// the index is past the end.
std::size_t codepoint_to_byte(std::string_view text, std::size_t codepoint);

// Tokenizes `raw_sentence` and locates the smallest token range covering
// `aspect`. The label and ids are left at their defaults.
// Throws AlignmentError if the span covers no token, ArgumentError if it
// lies outside the sentence.
Instance tokenize_and_align(std::string_view raw_sentence, CharSpan aspect);

std::string to_lower(std::string_view s);

}  // namespace pwcn::corpus
