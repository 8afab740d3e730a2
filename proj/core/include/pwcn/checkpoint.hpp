#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "pwcn/nn.hpp"
#include "pwcn/proximity.hpp"

namespace pwcn {

// Layout:
//   "PWCN1"
//   u32 length + UTF-8 metadata ("key=value" lines)
//   per tensor, in BasicParams::tensors() order:
//     u32 rows, u32 cols, rows*cols float32, logical row-major
// All integers and floats little-endian.
struct CheckpointMeta {
  nn::HyperParams hyper;
  std::uint64_t vocab_hash = 0;
  std::size_t vocab_size = 0;
  proximity::Mode mode = proximity::Mode::kPosition;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> extra;
};

struct Checkpoint {
  CheckpointMeta meta;
  nn::Params params;
};

void save_checkpoint(std::ostream& out, const Checkpoint& checkpoint);
void save_checkpoint(const std::string& path, const Checkpoint& checkpoint);

// Throws FormatError on a bad magic, truncation, or shape disagreement
// with the metadata.
Checkpoint load_checkpoint(std::istream& in);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace pwcn
