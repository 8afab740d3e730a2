#include "pwcn/tokenizer.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "pwcn/error.hpp"

namespace pwcn::corpus {

namespace {

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_punct(unsigned char c) { return c < 0x80 && std::ispunct(c); }

bool is_continuation(unsigned char c) { return (c & 0xC0) == 0x80; }

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (is_space(c)) {
      ++i;
    } else if (is_punct(c)) {
      tokens.push_back({std::string(1, text[i]), {i, i + 1}});
      ++i;
    } else {
      const std::size_t begin = i;
      while (i < text.size()) {
        const auto d = static_cast<unsigned char>(text[i]);
        if (is_space(d) || is_punct(d)) break;
        ++i;
      }
      tokens.push_back({std::string(text.substr(begin, i - begin)), {begin, i}});
    }
  }
  return tokens;
}

std::size_t codepoint_to_byte(std::string_view text, std::size_t codepoint) {
  std::size_t seen = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (is_continuation(static_cast<unsigned char>(text[i]))) continue;
    if (seen == codepoint) return i;
    ++seen;
  }
  if (seen == codepoint) return text.size();
  throw ArgumentError("character offset " + std::to_string(codepoint) +
                      " is past the end of a " + std::to_string(seen) +
                      "-character sentence");
}

Instance tokenize_and_align(std::string_view raw_sentence, CharSpan aspect) {
  if (aspect.from > aspect.to) {
    throw ArgumentError("aspect span has from > to");
  }
  if (aspect.from == aspect.to) {
    throw AlignmentError("empty aspect span at " + std::to_string(aspect.from) +
                         " in \"" + std::string(raw_sentence) + "\"");
  }
  const std::size_t from = codepoint_to_byte(raw_sentence, aspect.from);
  const std::size_t to = codepoint_to_byte(raw_sentence, aspect.to);

  Instance inst;
  std::size_t first = 0;
  std::size_t last = 0;
  bool found = false;
  for (Token& tok : tokenize(raw_sentence)) {
    const std::size_t i = inst.tokens.size();
    if (tok.offset.begin < to && tok.offset.end > from) {
      if (!found) first = i;
      last = i;
      found = true;
    }
    inst.offsets.push_back(tok.offset);
    inst.tokens.push_back(std::move(tok.text));
  }
  if (!found) {
    throw AlignmentError("aspect span [" + std::to_string(aspect.from) + ", " +
                         std::to_string(aspect.to) + ") covers no token in \"" +
                         std::string(raw_sentence) + "\"");
  }
  inst.aspect_start = first;
  inst.aspect_len = last - first + 1;
  return inst;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c);
  });
  return out;
}

}  // namespace pwcn::corpus
