/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/io/digest.hpp
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

#ifndef IEF3DMM_IO_DIGEST_HPP_
#define IEF3DMM_IO_DIGEST_HPP_

#include "ief3dmm/io/binary.hpp"

#include <openssl/evp.h>

#include <array>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ief3dmm::io {

/// Lower-case hex SHA-256 of a byte range.
inline std::string sha256_hex(std::string_view bytes)
{
	std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
	std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
	unsigned int length = 0;
	if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1
	    || EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1
	    || EVP_DigestFinal_ex(ctx.get(), digest.data(), &length) != 1) {
		throw std::runtime_error("SHA-256 computation failed");
	}
	static constexpr char hex[] = "0123456789abcdef";
	std::string out;
	out.reserve(2 * length);
	for (unsigned int i = 0; i < length; ++i) {
		out.push_back(hex[digest[i] >> 4]);
		out.push_back(hex[digest[i] & 0xF]);
	}
	return out;
}

inline std::string sha256_file(const std::filesystem::path& path)
{
	const auto data = read_file(path);
	return sha256_hex(std::string_view(data.data(), data.size()));
}

} // namespace ief3dmm::io

#endif /* IEF3DMM_IO_DIGEST_HPP_ */
