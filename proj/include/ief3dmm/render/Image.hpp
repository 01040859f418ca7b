/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/render/Image.hpp
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

#ifndef IEF3DMM_RENDER_IMAGE_HPP_
#define IEF3DMM_RENDER_IMAGE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ief3dmm::render {

/**
 * Row-major floating point image with origin at the top-left, interleaved
 * channels. Values are nominally in [0, 1].
 */
class Image
{
public:
	Image() = default;

	Image(int width, int height, int channels, double fill = 0.0)
	    : width_(width), height_(height), channels_(channels)
	{
		if (width <= 0 || height <= 0) {
			throw std::invalid_argument("image dimensions must be positive");
		}
		if (channels != 1 && channels != 3) {
			throw std::invalid_argument("images have 1 or 3 channels");
		}
		data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
	}

	int width() const { return width_; }
	int height() const { return height_; }
	int channels() const { return channels_; }
	std::size_t num_pixels() const { return static_cast<std::size_t>(width_) * height_; }

	double& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }
	double at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }

	std::vector<double>& data() { return data_; }
	const std::vector<double>& data() const { return data_; }

	bool same_shape(const Image& other) const
	{
		return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
	}

	friend bool operator==(const Image&, const Image&) = default;

private:
	std::size_t index(int x, int y, int c) const
	{
		return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
	}

	int width_ = 0;
	int height_ = 0;
	int channels_ = 1;
	std::vector<double> data_;
};

/// Per-pixel coverage, row-major; 1 where at least one fragment was written.
using Mask = std::vector<std::uint8_t>;

struct RasterOutput
{
	Image image;
	Mask mask;
	/// Rotated z of the winning fragment; -infinity where nothing was drawn.
	std::vector<double> depth;

	std::size_t covered() const
	{
		std::size_t n = 0;
		for (auto m : mask) {
			n += m != 0;
		}
		return n;
	}
};

/// Luminance 0.299 R + 0.587 G + 0.114 B of an RGB image.
inline Image to_grayscale(const Image& rgb)
{
	if (rgb.channels() == 1) {
		return rgb;
	}
	Image out(rgb.width(), rgb.height(), 1);
	for (int y = 0; y < rgb.height(); ++y) {
		for (int x = 0; x < rgb.width(); ++x) {
			out.at(x, y) = 0.299 * rgb.at(x, y, 0) + 0.587 * rgb.at(x, y, 1) + 0.114 * rgb.at(x, y, 2);
		}
	}
	return out;
}

/// Zeroes every pixel outside the mask.
inline Image apply_mask(const Image& image, const Mask& mask)
{
	if (mask.size() != image.num_pixels()) {
		throw std::invalid_argument("mask size does not match image");
	}
	Image out = image;
	auto& data = out.data();
	const auto c = static_cast<std::size_t>(image.channels());
	for (std::size_t p = 0; p < mask.size(); ++p) {
		if (!mask[p]) {
			for (std::size_t k = 0; k < c; ++k) {
				data[p * c + k] = 0.0;
			}
		}
	}
	return out;
}

/// Snaps values to the 8-bit grid used by the PGM/PPM writers, so that images
/// survive a file round trip unchanged.
inline Image quantize_8bit(const Image& image)
{
	Image out = image;
	for (double& v : out.data()) {
		const double clamped = std::min(1.0, std::max(0.0, v));
		v = std::round(255.0 * clamped) / 255.0;
	}
	return out;
}

} // namespace ief3dmm::render

#endif /* IEF3DMM_RENDER_IMAGE_HPP_ */
