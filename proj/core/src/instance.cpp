#include "pwcn/instance.hpp"

#include <string>

#include "pwcn/error.hpp"

namespace pwcn {

std::string_view polarity_name(Polarity p) {
  switch (p) {
    case Polarity::kNegative:
      return "negative";
    case Polarity::kNeutral:
      return "neutral";
    case Polarity::kPositive:
      return "positive";
  }
  return "unknown";
}

std::optional<Polarity> parse_polarity(std::string_view name) {
  if (name == "negative") return Polarity::kNegative;
  if (name == "neutral") return Polarity::kNeutral;
  if (name == "positive") return Polarity::kPositive;
  return std::nullopt;
}

void validate(const Instance& instance) {
  const std::size_t n = instance.size();
  if (n == 0) throw ArgumentError("instance has no tokens");
  if (instance.aspect_len == 0) throw ArgumentError("empty aspect span");
  if (instance.aspect_end() > n) {
    throw ArgumentError("aspect span [" + std::to_string(instance.aspect_start) +
                        ", " + std::to_string(instance.aspect_end()) +
                        ") exceeds sentence length " + std::to_string(n));
  }
  for (const std::string& tok : instance.tokens) {
    if (tok.empty()) throw ArgumentError("empty token");
    for (char c : tok) {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        throw ArgumentError("token contains whitespace: '" + tok + "'");
      }
    }
  }
}

}  // namespace pwcn
