/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/datagen/sample.hpp
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

#ifndef IEF3DMM_DATAGEN_SAMPLE_HPP_
#define IEF3DMM_DATAGEN_SAMPLE_HPP_

#include "ief3dmm/defaults.hpp"
#include "ief3dmm/morphablemodel/MorphableModel.hpp"
#include "ief3dmm/morphablemodel/sampling.hpp"
#include "ief3dmm/render/Image.hpp"
#include "ief3dmm/render/Pose.hpp"
#include "ief3dmm/render/sampling.hpp"
#include "ief3dmm/render/shading.hpp"

#include "Eigen/Core"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

namespace ief3dmm::datagen {

/**
 * One training example: a face rendered from alpha_gt, and an intermediate
 * estimate alpha_t fed back as a shading image. The face image is masked by
 * the coverage of alpha_t's shading image, both under the same pose.
 */
struct TrainingSample
{
	std::uint64_t sample_id = 0;
	render::Image face_image;     ///< grey, masked by shading_mask
	render::Image shading_image;  ///< grey, frontal-light render of alpha_t
	render::Mask shading_mask;
	render::Image full_face_image; ///< grey render of alpha_gt before masking
	morphablemodel::GeometryCoefficients alpha_t;
	morphablemodel::GeometryCoefficients alpha_gt;
	morphablemodel::TextureCoefficients texture;
	render::PoseParams pose;
	render::LightingParams lighting;
};

struct SampleOptions
{
	int width = defaults::image_width;
	int height = defaults::image_height;
	render::PoseDistribution pose;
	render::LightingDistribution lighting;
	int max_pose_attempts = defaults::empty_mask_retries;
	/// Test hook: fixes the interpolation weight of alpha_t instead of drawing it.
	std::optional<double> forced_interpolation;
};

inline SampleOptions default_sample_options(const morphablemodel::MorphableModel& model,
                                            int width = defaults::image_width, int height = defaults::image_height)
{
	SampleOptions out;
	out.width = width;
	out.height = height;
	out.pose = render::pose_distribution_for(model, height);
	return out;
}

/**
 * Draws alpha_t = u * alpha_gt + (1 - u) * alpha_rand with alpha_rand ~ N(0, I)
 * and u ~ U[0, 1], so the corpus holds estimates at all distances from the
 * ground truth.
 */
template <std::uniform_random_bit_generator Engine>
morphablemodel::GeometryCoefficients sample_intermediate(Engine& rng,
                                                         const morphablemodel::GeometryCoefficients& alpha_gt,
                                                         std::optional<double> forced_u = std::nullopt)
{
	const Eigen::VectorXd random_id = morphablemodel::sample_normal_vector(rng, alpha_gt.identity.size());
	const Eigen::VectorXd random_exp = morphablemodel::sample_normal_vector(rng, alpha_gt.expression.size());
	const double drawn = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
	const double u = forced_u.value_or(drawn);
	return {u * alpha_gt.identity + (1.0 - u) * random_id, u * alpha_gt.expression + (1.0 - u) * random_exp};
}

/// Grey-level Phong render of a textured geometry, snapped to 8 bit.
inline render::RasterOutput render_face(const morphablemodel::MorphableModel& model,
                                        const morphablemodel::GeometryCoefficients& geometry,
                                        const morphablemodel::TextureCoefficients& texture,
                                        const render::PoseParams& pose, const render::LightingParams& lighting,
                                        int width, int height)
{
	auto raster = render::render_phong(morphablemodel::synthesize_geometry(model, geometry),
	                                   morphablemodel::synthesize_texture(model, texture), pose, lighting, width,
	                                   height);
	raster.image = render::quantize_8bit(render::to_grayscale(raster.image));
	return raster;
}

/// Shading image of a geometry, snapped to 8 bit.
inline render::RasterOutput render_shading(const morphablemodel::MorphableModel& model,
                                           const morphablemodel::GeometryCoefficients& geometry,
                                           const render::PoseParams& pose, int width, int height)
{
	auto raster = render::render_shading_image(morphablemodel::synthesize_geometry(model, geometry), pose, width,
	                                           height);
	raster.image = render::quantize_8bit(raster.image);
	return raster;
}

/**
 * Generates one training sample. Draw order from the stream: alpha_gt,
 * texture, alpha_t, lighting, then poses until both the ground-truth render and
 * the alpha_t shading image cover at least one pixel.
 */
template <std::uniform_random_bit_generator Engine>
TrainingSample generate_sample(Engine& rng, const morphablemodel::MorphableModel& model, const SampleOptions& options)
{
	TrainingSample s;
	s.alpha_gt = morphablemodel::sample_geometry_coefficients(rng, model);
	s.texture = morphablemodel::sample_texture_coefficients(rng, model);
	s.alpha_t = sample_intermediate(rng, s.alpha_gt, options.forced_interpolation);
	s.lighting = render::sample_lighting(rng, options.lighting);

	for (int attempt = 0; attempt < options.max_pose_attempts; ++attempt) {
		s.pose = render::sample_pose(rng, options.pose);
		auto face = render_face(model, s.alpha_gt, s.texture, s.pose, s.lighting, options.width, options.height);
		if (face.covered() == 0) {
			continue;
		}
		auto shading = render_shading(model, s.alpha_t, s.pose, options.width, options.height);
		if (shading.covered() == 0) {
			continue;
		}
		s.full_face_image = std::move(face.image);
		s.face_image = render::apply_mask(s.full_face_image, shading.mask);
		s.shading_image = std::move(shading.image);
		s.shading_mask = std::move(shading.mask);
		return s;
	}
	throw std::runtime_error("no pose with a visible face after " + std::to_string(options.max_pose_attempts)
	                         + " attempts");
}

} // namespace ief3dmm::datagen

#endif /* IEF3DMM_DATAGEN_SAMPLE_HPP_ */
