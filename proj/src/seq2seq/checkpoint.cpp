// Copyright 2026 The FFR Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ffr/seq2seq/checkpoint.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <json.hpp>

#include "ffr/common/error.hpp"

namespace ffr::seq2seq {
namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kHeaderBytes = sizeof(kCheckpointMagic) + 8;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

json config_to_json(const ModelConfig& c) {
  return json{{"embed_dim", c.embed_dim},     {"hidden_dim", c.hidden_dim},
              {"attn_dim", c.attn_dim},       {"src_vocab", c.src_vocab},
              {"tgt_vocab", c.tgt_vocab},     {"max_src_len", c.max_src_len},
              {"max_tgt_len", c.max_tgt_len}, {"num_layers", c.num_layers},
              {"seed", c.seed}};
}

ModelConfig config_from_json(const json& j) {
  ModelConfig c;
  c.embed_dim = j.at("embed_dim").get<std::size_t>();
  c.hidden_dim = j.at("hidden_dim").get<std::size_t>();
  c.attn_dim = j.at("attn_dim").get<std::size_t>();
  c.src_vocab = j.at("src_vocab").get<std::size_t>();
  c.tgt_vocab = j.at("tgt_vocab").get<std::size_t>();
  c.max_src_len = j.at("max_src_len").get<std::size_t>();
  c.max_tgt_len = j.at("max_tgt_len").get<std::size_t>();
  c.num_layers = j.value("num_layers", std::size_t{1});
  c.seed = j.value("seed", std::uint64_t{0});
  return c;
}

std::vector<std::size_t> shape_of(const Tensor& t) {
  return t.rank() == 1 ? std::vector<std::size_t>{t.size()}
                       : std::vector<std::size_t>{t.rows(), t.cols()};
}

[[noreturn]] void mismatch(const std::string& what) { throw Error(Errc::ShapeManifestMismatch, what); }

}  // namespace

std::vector<std::uint8_t> serialize_checkpoint(const ModelParams& params, const ModelConfig& cfg) {
  json tensors = json::array();
  std::size_t offset = 0;
  params.for_each([&](const std::string& name, const Tensor& t) {
    tensors.push_back({{"name", name}, {"shape", shape_of(t)}, {"offset", offset}, {"len", t.size()}});
    offset += t.size() * sizeof(float);
  });
  const json manifest{{"version", kCheckpointVersion}, {"config", config_to_json(cfg)}, {"tensors", tensors}};
  const std::string text = manifest.dump();

  std::vector<std::uint8_t> out(std::begin(kCheckpointMagic), std::end(kCheckpointMagic));
  const auto len = static_cast<std::uint64_t>(text.size());
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
  out.insert(out.end(), text.begin(), text.end());
  out.reserve(out.size() + offset);
  params.for_each([&](const std::string&, const Tensor& t) {
    for (double v : t.values()) put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  });
  return out;
}

Checkpoint deserialize_checkpoint(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < sizeof(kCheckpointMagic) ||
      std::memcmp(bytes.data(), kCheckpointMagic, sizeof(kCheckpointMagic)) != 0) {
    throw Error(Errc::BadMagic, "not a checkpoint (expected magic FFRCKPT1)");
  }
  if (bytes.size() < kHeaderBytes) throw Error(Errc::TruncatedFile, "checkpoint header is truncated");
  std::uint64_t len = 0;
  for (int i = 0; i < 8; ++i) len |= static_cast<std::uint64_t>(bytes[8 + i]) << (8 * i);
  if (len > bytes.size() - kHeaderBytes) throw Error(Errc::TruncatedFile, "checkpoint manifest is truncated");

  json manifest;
  try {
    manifest = json::parse(bytes.begin() + kHeaderBytes,
                           bytes.begin() + static_cast<std::ptrdiff_t>(kHeaderBytes + len));
  } catch (const json::exception& e) {
    mismatch(std::string("manifest is not valid JSON: ") + e.what());
  }

  Checkpoint ck;
  try {
    if (manifest.at("version").get<int>() != kCheckpointVersion) {
      mismatch("unsupported checkpoint version " + manifest.at("version").dump());
    }
    ck.config = config_from_json(manifest.at("config"));
    ck.config.validate();
  } catch (const json::exception& e) {
    mismatch(std::string("bad manifest config: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::ShapeManifestMismatch) throw;
    mismatch(std::string("bad manifest config: ") + e.what());
  }
  ck.params = ModelParams::zeros(ck.config);

  const json& tensors = manifest.contains("tensors") ? manifest["tensors"] : json::array();
  const std::size_t payload_start = kHeaderBytes + static_cast<std::size_t>(len);
  const std::size_t payload_size = bytes.size() - payload_start;
  std::size_t index = 0;
  std::size_t expected_offset = 0;
  ck.params.for_each([&](const std::string& name, Tensor& t) {
    if (index >= tensors.size()) mismatch("manifest lists no entry for " + name);
    const json& entry = tensors[index++];
    try {
      if (entry.at("name").get<std::string>() != name) {
        mismatch("manifest entry " + std::to_string(index - 1) + " is " + entry.at("name").dump() +
                 ", expected \"" + name + "\"");
      }
      if (entry.at("shape").get<std::vector<std::size_t>>() != shape_of(t)) {
        mismatch(name + ": manifest shape " + entry.at("shape").dump() + " does not match config");
      }
      if (entry.at("len").get<std::size_t>() != t.size()) {
        mismatch(name + ": manifest len " + entry.at("len").dump() + ", expected " + std::to_string(t.size()));
      }
      if (entry.at("offset").get<std::size_t>() != expected_offset) {
        mismatch(name + ": manifest offset " + entry.at("offset").dump() + ", expected " +
                 std::to_string(expected_offset));
      }
    } catch (const json::exception& e) {
      mismatch(name + ": " + e.what());
    }
    const std::size_t need = t.size() * sizeof(float);
    if (expected_offset + need > payload_size) {
      throw Error(Errc::TruncatedFile, name + ": payload ends at byte " + std::to_string(payload_size) +
                                           ", tensor needs " + std::to_string(expected_offset + need));
    }
    const std::uint8_t* p = bytes.data() + payload_start + expected_offset;
    auto values = t.values();
    for (std::size_t k = 0; k < values.size(); ++k) {
      values[k] = static_cast<double>(std::bit_cast<float>(get_u32(p + 4 * k)));
    }
    expected_offset += need;
  });
  if (index != tensors.size()) mismatch("manifest lists " + std::to_string(tensors.size()) +
                                        " tensors, config implies " + std::to_string(index));
  if (expected_offset != payload_size) {
    mismatch("payload has " + std::to_string(payload_size - expected_offset) + " trailing bytes");
  }
  return ck;
}

void save_checkpoint(const ModelParams& params, const ModelConfig& cfg,
                     const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = serialize_checkpoint(params, cfg);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::Io, "failed writing " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_checkpoint(bytes);
}

ModelParams round_to_float(const ModelParams& params) {
  ModelParams out = params;
  out.for_each([](const std::string&, Tensor& t) {
    for (double& v : t.values()) v = static_cast<double>(static_cast<float>(v));
  });
  return out;
}

}  // namespace ffr::seq2seq
