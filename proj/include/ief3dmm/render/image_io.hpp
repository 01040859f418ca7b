/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/render/image_io.hpp
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

#ifndef IEF3DMM_RENDER_IMAGE_IO_HPP_
#define IEF3DMM_RENDER_IMAGE_IO_HPP_

#include "ief3dmm/io/binary.hpp"
#include "ief3dmm/render/Image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

namespace ief3dmm::render {

/// Binary PGM (1 channel) or PPM (3 channels), 8 bit, value round(255 v).
inline void write_pnm(const Image& image, const std::filesystem::path& path)
{
	io::BinaryWriter w;
	const std::string header = std::string(image.channels() == 1 ? "P5" : "P6") + "\n"
	                           + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
	w.write_bytes(header);
	std::string pixels(image.data().size(), '\0');
	for (std::size_t i = 0; i < pixels.size(); ++i) {
		const double v = std::clamp(image.data()[i], 0.0, 1.0);
		pixels[i] = static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * v)));
	}
	w.write_bytes(pixels);
	w.save(path);
}

/// Reads P5/P6 files with maxval 255; pixels map to byte / 255.
inline Image read_pnm(const std::filesystem::path& path)
{
	const auto data = io::read_file(path);
	std::size_t pos = 0;
	auto fail = [&path](const std::string& what) -> void {
		throw io::IoError("'" + path.string() + "': " + what);
	};
	auto skip_space = [&]() {
		while (pos < data.size()) {
			if (data[pos] == '#') {
				while (pos < data.size() && data[pos] != '\n') {
					++pos;
				}
			} else if (std::isspace(static_cast<unsigned char>(data[pos]))) {
				++pos;
			} else {
				break;
			}
		}
	};
	auto read_int = [&]() {
		skip_space();
		long value = 0;
		std::size_t digits = 0;
		while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) {
			value = value * 10 + (data[pos] - '0');
			++pos;
			if (++digits > 9) {
				fail("header value too large");
			}
		}
		if (digits == 0) {
			fail("malformed header");
		}
		return static_cast<int>(value);
	};

	if (data.size() < 2 || data[0] != 'P' || (data[1] != '5' && data[1] != '6')) {
		fail("not a binary PGM/PPM file");
	}
	const int channels = data[1] == '5' ? 1 : 3;
	pos = 2;
	const int width = read_int();
	const int height = read_int();
	const int maxval = read_int();
	if (maxval != 255) {
		fail("only 8-bit images are supported");
	}
	if (pos >= data.size() || !std::isspace(static_cast<unsigned char>(data[pos]))) {
		fail("malformed header");
	}
	++pos;
	if (width <= 0 || height <= 0) {
		fail("image dimensions must be positive");
	}
	Image image(width, height, channels);
	if (data.size() - pos != image.data().size()) {
		fail("pixel data size does not match header");
	}
	for (std::size_t i = 0; i < image.data().size(); ++i) {
		image.data()[i] = static_cast<unsigned char>(data[pos + i]) / 255.0;
	}
	return image;
}

/// Coverage mask as P5 with values {0, 255}.
inline void write_mask(const Mask& mask, int width, int height, const std::filesystem::path& path)
{
	Image image(width, height, 1);
	for (std::size_t i = 0; i < mask.size(); ++i) {
		image.data()[i] = mask[i] ? 1.0 : 0.0;
	}
	write_pnm(image, path);
}

inline Mask read_mask(const std::filesystem::path& path)
{
	const Image image = read_pnm(path);
	Mask mask(image.num_pixels());
	for (std::size_t i = 0; i < mask.size(); ++i) {
		mask[i] = image.data()[i] > 0.5 ? 1 : 0;
	}
	return mask;
}

/// Depth buffer as u32 width, u32 height, then float32 values, little-endian.
inline void write_depth(const std::vector<double>& depth, int width, int height, const std::filesystem::path& path)
{
	io::BinaryWriter w;
	w.write_u32(static_cast<std::uint32_t>(width));
	w.write_u32(static_cast<std::uint32_t>(height));
	for (double d : depth) {
		w.write_f32(static_cast<float>(d));
	}
	w.save(path);
}

struct DepthBuffer
{
	int width = 0;
	int height = 0;
	std::vector<float> values;
};

inline DepthBuffer read_depth(const std::filesystem::path& path)
{
	auto r = io::BinaryReader::from_file(path);
	DepthBuffer out;
	out.width = static_cast<int>(r.read_u32());
	out.height = static_cast<int>(r.read_u32());
	out.values.resize(static_cast<std::size_t>(out.width) * out.height);
	for (auto& v : out.values) {
		v = r.read_f32();
	}
	if (!r.at_end()) {
		r.fail("trailing bytes after depth data");
	}
	return out;
}

} // namespace ief3dmm::render

#endif /* IEF3DMM_RENDER_IMAGE_IO_HPP_ */
