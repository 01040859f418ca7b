/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/datagen/streams.hpp
 *
 * Copyright 2026 The ief3dmm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#ifndef IEF3DMM_DATAGEN_STREAMS_HPP_
#define IEF3DMM_DATAGEN_STREAMS_HPP_

#include <cstdint>
#include <random>

namespace ief3dmm::datagen {

using Rng = std::mt19937_64;

/// Independent generator for item `index` of a run seeded with `master_seed`.
/// Depends only on the pair, never on which worker draws it or when.
inline Rng derive_stream(std::uint64_t master_seed, std::uint64_t index)
{
	std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
	                  static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
	                  0x1EF3D11u};
	return Rng(seq);
}

} // namespace ief3dmm::datagen

#endif /* IEF3DMM_DATAGEN_STREAMS_HPP_ */
