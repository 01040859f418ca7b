/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/reconstruct/features.hpp
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

#ifndef IEF3DMM_RECONSTRUCT_FEATURES_HPP_
#define IEF3DMM_RECONSTRUCT_FEATURES_HPP_

#include "ief3dmm/defaults.hpp"
#include "ief3dmm/render/Image.hpp"

#include "Eigen/Core"

#include <stdexcept>
#include <string>

namespace ief3dmm::reconstruct {

struct IEFConfig
{
	int iterations = defaults::ief_iterations;
	int width = defaults::image_width;
	int height = defaults::image_height;
	int feature_downsample = defaults::feature_downsample;

	int pooled_width() const { return width / feature_downsample; }
	int pooled_height() const { return height / feature_downsample; }

	/// Length of extract_features output: two pooled planes plus a constant.
	Eigen::Index feature_dim() const
	{
		return 2 * static_cast<Eigen::Index>(pooled_width()) * pooled_height() + 1;
	}
};

inline void validate(const IEFConfig& config)
{
	if (config.iterations < 1) {
		throw std::invalid_argument("IEF needs at least one iteration");
	}
	if (config.width <= 0 || config.height <= 0 || config.feature_downsample <= 0) {
		throw std::invalid_argument("image dimensions and downsample factor must be positive");
	}
	if (config.width % config.feature_downsample != 0 || config.height % config.feature_downsample != 0) {
		throw std::invalid_argument("image dimensions " + std::to_string(config.width) + "x"
		                            + std::to_string(config.height) + " are not divisible by downsample factor "
		                            + std::to_string(config.feature_downsample));
	}
}

/**
 * Block-averages the face and shading planes by the downsample factor and
 * concatenates them (face first, each row-major), followed by a constant 1.
 */
inline Eigen::VectorXd extract_features(const render::Image& face, const render::Image& shading,
                                        const IEFConfig& config)
{
	validate(config);
	for (const auto* image : {&face, &shading}) {
		if (image->width() != config.width || image->height() != config.height || image->channels() != 1) {
			throw std::invalid_argument("feature input is " + std::to_string(image->width()) + "x"
			                            + std::to_string(image->height()) + "x" + std::to_string(image->channels())
			                            + ", expected " + std::to_string(config.width) + "x"
			                            + std::to_string(config.height) + "x1");
		}
	}
	const int d = config.feature_downsample;
	const int pw = config.pooled_width();
	const int ph = config.pooled_height();
	const double norm = 1.0 / (static_cast<double>(d) * d);
	Eigen::VectorXd out(config.feature_dim());
	Eigen::Index k = 0;
	for (const auto* image : {&face, &shading}) {
		for (int by = 0; by < ph; ++by) {
			for (int bx = 0; bx < pw; ++bx) {
				double sum = 0.0;
				for (int y = by * d; y < (by + 1) * d; ++y) {
					for (int x = bx * d; x < (bx + 1) * d; ++x) {
						sum += image->at(x, y);
					}
				}
				out(k++) = sum * norm;
			}
		}
	}
	out(k) = 1.0;
	return out;
}

} // namespace ief3dmm::reconstruct

#endif /* IEF3DMM_RECONSTRUCT_FEATURES_HPP_ */
