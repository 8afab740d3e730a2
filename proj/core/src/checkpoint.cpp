#include "pwcn/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "pwcn/error.hpp"

namespace pwcn {

namespace {

constexpr char kMagic[] = "PWCN1";
constexpr std::size_t kMagicSize = 5;

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in, const char* what) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) {
    throw FormatError(std::string("checkpoint truncated while reading ") + what,
                      0);
  }
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

void put_f32(std::ostream& out, float f) {
  put_u32(out, std::bit_cast<std::uint32_t>(f));
}

std::string encode_meta(const CheckpointMeta& m) {
  std::ostringstream s;
  s << "embed_dim=" << m.hyper.embed_dim << '\n'
    << "hidden_dim=" << m.hyper.hidden_dim << '\n'
    << "num_classes=" << m.hyper.num_classes << '\n'
    << "kernel=" << m.hyper.kernel << '\n'
    << "vocab_size=" << m.vocab_size << '\n'
    << "vocab_hash=" << m.vocab_hash << '\n'
    << "mode=" << proximity::mode_name(m.mode) << '\n'
    << "seed=" << m.seed << '\n';
  for (const auto& [k, v] : m.extra) s << k << '=' << v << '\n';
  return s.str();
}

CheckpointMeta decode_meta(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError("checkpoint metadata line without '=': " + line, 0);
    }
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto take = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end()) {
      throw FormatError(std::string("checkpoint metadata lacks ") + key, 0);
    }
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto take_u64 = [&](const char* key) {
    const std::string v = take(key);
    try {
      std::size_t used = 0;
      const auto out = std::stoull(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return static_cast<std::uint64_t>(out);
    } catch (const std::exception&) {
      throw FormatError(std::string("bad checkpoint metadata value for ") + key,
                        0);
    }
  };

  CheckpointMeta m;
  m.hyper.embed_dim = static_cast<int>(take_u64("embed_dim"));
  m.hyper.hidden_dim = static_cast<int>(take_u64("hidden_dim"));
  m.hyper.num_classes = static_cast<int>(take_u64("num_classes"));
  m.hyper.kernel = static_cast<int>(take_u64("kernel"));
  m.vocab_size = take_u64("vocab_size");
  m.vocab_hash = take_u64("vocab_hash");
  const auto mode = proximity::parse_mode(take("mode"));
  if (!mode) throw FormatError("bad proximity mode in checkpoint", 0);
  m.mode = *mode;
  m.seed = take_u64("seed");
  m.extra = std::move(kv);
  return m;
}

}  // namespace

void save_checkpoint(std::ostream& out, const Checkpoint& ckpt) {
  out.write(kMagic, kMagicSize);
  const std::string meta = encode_meta(ckpt.meta);
  put_u32(out, static_cast<std::uint32_t>(meta.size()));
  out.write(meta.data(), static_cast<std::streamsize>(meta.size()));
  for (const auto& t : ckpt.params.tensors()) {
    put_u32(out, static_cast<std::uint32_t>(t.rows));
    put_u32(out, static_cast<std::uint32_t>(t.cols));
    for (nn::Index r = 0; r < t.rows; ++r) {
      for (nn::Index c = 0; c < t.cols; ++c) {
        put_f32(out, t.row_major ? t.data[r * t.cols + c] : t.data[c * t.rows + r]);
      }
    }
  }
  if (!out) throw Error("failed to write checkpoint");
}

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  save_checkpoint(out, ckpt);
}

Checkpoint load_checkpoint(std::istream& in) {
  char magic[kMagicSize];
  if (!in.read(magic, kMagicSize) || std::memcmp(magic, kMagic, kMagicSize) != 0) {
    throw FormatError("not a PWCN1 checkpoint", 0);
  }
  const std::uint32_t meta_len = get_u32(in, "metadata length");
  if (meta_len > (1u << 24)) throw FormatError("implausible metadata length", 0);
  std::string meta_text(meta_len, '\0');
  if (!in.read(meta_text.data(), meta_len)) {
    throw FormatError("checkpoint truncated in metadata", 0);
  }

  Checkpoint ckpt;
  ckpt.meta = decode_meta(meta_text);
  try {
    nn::validate(ckpt.meta.hyper);
  } catch (const ArgumentError& e) {
    throw FormatError(std::string("checkpoint hyperparameters: ") + e.what(), 0);
  }
  ckpt.params = nn::Params::zeros(ckpt.meta.hyper,
                                  static_cast<nn::Index>(ckpt.meta.vocab_size));

  std::vector<unsigned char> buf;
  for (auto& t : ckpt.params.tensors()) {
    const std::uint32_t rows = get_u32(in, "tensor shape");
    const std::uint32_t cols = get_u32(in, "tensor shape");
    if (rows != t.rows || cols != t.cols) {
      throw FormatError("tensor " + std::string(t.name) + " is " +
                            std::to_string(rows) + "x" + std::to_string(cols) +
                            ", expected " + std::to_string(t.rows) + "x" +
                            std::to_string(t.cols),
                        0);
    }
    buf.resize(static_cast<std::size_t>(t.size()) * 4);
    if (!in.read(reinterpret_cast<char*>(buf.data()),
                 static_cast<std::streamsize>(buf.size()))) {
      throw FormatError("checkpoint truncated in tensor " + std::string(t.name),
                        0);
    }
    std::size_t k = 0;
    for (nn::Index r = 0; r < t.rows; ++r) {
      for (nn::Index c = 0; c < t.cols; ++c, k += 4) {
        std::uint32_t bits = 0;
        for (int i = 0; i < 4; ++i) {
          bits |= static_cast<std::uint32_t>(buf[k + i]) << (8 * i);
        }
        const float v = std::bit_cast<float>(bits);
        (t.row_major ? t.data[r * t.cols + c] : t.data[c * t.rows + r]) = v;
      }
    }
  }
  return ckpt;
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint " + path);
  return load_checkpoint(in);
}

}  // namespace pwcn
