#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pwcn/instance.hpp"

namespace pwcn::corpus {

// Lower-cased token <-> index map. Index 0 is padding, index 1 unknown.
class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnknown = 1;

  Vocabulary();

  // Adds the lower-cased token if absent; returns its index.
  int add(std::string_view token);
  // Never fails: out-of-vocabulary tokens map to kUnknown.
  int index(std::string_view token) const;
  bool contains(std::string_view token) const;
  const std::string& token(int index) const;

  std::size_t size() const { return tokens_.size(); }

  std::vector<int> encode(std::span<const std::string> tokens) const;

  // Stable 64-bit FNV-1a digest over the index order.
  std::uint64_t hash() const;

  // One token per line, in index order, reserved entries excluded.
  std::string serialize() const;
  static Vocabulary deserialize(std::string_view text);

  static Vocabulary build(std::span<const Instance> instances);

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace pwcn::corpus
