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

// Binary checkpoints:
//
//   "FFRCKPT1" | u64 LE manifest length | JSON manifest | f32 LE payload
//
// The manifest is {version, config, tensors: [{name, shape, offset, len}]}
// where offset is the byte offset of the tensor inside the payload and len
// its element count. Tensors appear in ModelParams::for_each order.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ffr/seq2seq/model.hpp"

namespace ffr::seq2seq {

inline constexpr char kCheckpointMagic[8] = {'F', 'F', 'R', 'C', 'K', 'P', 'T', '1'};
inline constexpr int kCheckpointVersion = 1;

struct Checkpoint {
  ModelConfig config;
  ModelParams params;
};

/// Parameters are stored as 32-bit floats, so values round to float.
std::vector<std::uint8_t> serialize_checkpoint(const ModelParams& params, const ModelConfig& cfg);

/// Throws BadMagic, TruncatedFile, or ShapeManifestMismatch when the manifest
/// disagrees with the configuration or the payload size.
Checkpoint deserialize_checkpoint(const std::vector<std::uint8_t>& bytes);

void save_checkpoint(const ModelParams& params, const ModelConfig& cfg,
                     const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// Copy of `params` with every value rounded through float, i.e. exactly
/// what a save/load cycle yields.
ModelParams round_to_float(const ModelParams& params);

}  // namespace ffr::seq2seq
