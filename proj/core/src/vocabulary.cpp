#include "pwcn/vocabulary.hpp"

#include <string>

#include "pwcn/error.hpp"
#include "pwcn/tokenizer.hpp"

namespace pwcn::corpus {

Vocabulary::Vocabulary() : tokens_{"<pad>", "<unk>"} {}

int Vocabulary::add(std::string_view token) {
  std::string key = to_lower(token);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  const int id = static_cast<int>(tokens_.size());
  index_.emplace(key, id);
  tokens_.push_back(std::move(key));
  return id;
}

int Vocabulary::index(std::string_view token) const {
  auto it = index_.find(to_lower(token));
  return it == index_.end() ? kUnknown : it->second;
}

bool Vocabulary::contains(std::string_view token) const {
  return index_.contains(to_lower(token));
}

const std::string& Vocabulary::token(int index) const {
  return tokens_.at(static_cast<std::size_t>(index));
}

std::vector<int> Vocabulary::encode(std::span<const std::string> tokens) const {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const std::string& t : tokens) ids.push_back(index(t));
  return ids;
}

std::uint64_t Vocabulary::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const std::string& t : tokens_) {
    for (unsigned char c : t) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;  // separator
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string Vocabulary::serialize() const {
  std::string out;
  for (std::size_t i = 2; i < tokens_.size(); ++i) {
    out += tokens_[i];
    out += '\n';
  }
  return out;
}

Vocabulary Vocabulary::deserialize(std::string_view text) {
  Vocabulary vocab;
  std::size_t pos = 0;
  std::size_t line = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line;
    const std::string_view tok = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (tok.empty()) continue;
    const std::size_t before = vocab.size();
    vocab.add(tok);
    if (vocab.size() == before) {
      throw FormatError("duplicate vocabulary entry \"" + std::string(tok) + "\"",
                        line);
    }
  }
  return vocab;
}

Vocabulary Vocabulary::build(std::span<const Instance> instances) {
  Vocabulary vocab;
  for (const Instance& inst : instances) {
    for (const std::string& t : inst.tokens) vocab.add(t);
  }
  return vocab;
}

}  // namespace pwcn::corpus
