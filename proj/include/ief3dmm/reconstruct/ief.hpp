/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/reconstruct/ief.hpp
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

#ifndef IEF3DMM_RECONSTRUCT_IEF_HPP_
#define IEF3DMM_RECONSTRUCT_IEF_HPP_

#include "ief3dmm/datagen/sample.hpp"
#include "ief3dmm/morphablemodel/MorphableModel.hpp"
#include "ief3dmm/reconstruct/LinearPredictor.hpp"
#include "ief3dmm/reconstruct/features.hpp"
#include "ief3dmm/render/Image.hpp"
#include "ief3dmm/render/Pose.hpp"

#include "Eigen/Core"

#include <stdexcept>
#include <string>
#include <vector>

namespace ief3dmm::reconstruct {

struct ReconstructionResult
{
	/// alpha_0 = 0 followed by one entry per iteration.
	std::vector<morphablemodel::GeometryCoefficients> iterates;
	morphablemodel::Mesh mesh;
	render::Image shading_image; ///< shading image of the final estimate
	render::PoseParams pose;

	const morphablemodel::GeometryCoefficients& final_coefficients() const { return iterates.back(); }
};

/**
 * Masks an image by the silhouette of the mean face under the given pose. Used
 * before any shape estimate exists.
 */
inline render::Image mask_by_generic_projection(const render::Image& face_image, const render::PoseParams& pose,
                                                const morphablemodel::MorphableModel& model)
{
	const auto raster = render::render_shading_image(model.mean_mesh(), pose, face_image.width(), face_image.height());
	if (raster.covered() == 0) {
		throw std::invalid_argument("mean face does not cover any pixel under the given pose");
	}
	return render::apply_mask(face_image, raster.mask);
}

/**
 * Iterative error feedback reconstruction.
 *
 * Starting from the mean shape (alpha_0 = 0), each iteration renders the
 * current estimate as a shading image under the known pose, masks the input
 * face by that render's silhouette, and asks the predictor for the next
 * estimate. If an estimate projects to nothing, the previous mask is reused.
 */
template <CoefficientPredictor Predictor>
ReconstructionResult ief_reconstruct(const render::Image& face_image, const render::PoseParams& pose,
                                     const Predictor& predictor, const morphablemodel::MorphableModel& model,
                                     const IEFConfig& config)
{
	validate(config);
	render::validate(pose);
	if (face_image.width() != config.width || face_image.height() != config.height || face_image.channels() != 1) {
		throw std::invalid_argument("input image is " + std::to_string(face_image.width()) + "x"
		                            + std::to_string(face_image.height()) + "x"
		                            + std::to_string(face_image.channels()) + ", expected "
		                            + std::to_string(config.width) + "x" + std::to_string(config.height) + "x1");
	}

	ReconstructionResult result;
	result.pose = pose;
	result.iterates.push_back(morphablemodel::GeometryCoefficients::zeros(model.num_identity(), model.num_expression()));
	render::Mask mask;
	for (int t = 1; t <= config.iterations; ++t) {
		const auto& current = result.iterates.back();
		auto shading = datagen::render_shading(model, current, pose, config.width, config.height);
		if (shading.covered() > 0) {
			mask = std::move(shading.mask);
		} else if (mask.empty()) {
			throw std::invalid_argument("initial estimate does not cover any pixel under the given pose");
		}
		const render::Image masked = render::apply_mask(face_image, mask);
		const Eigen::VectorXd next = predictor.predict(masked, shading.image, current.stacked());
		if (next.size() != model.num_shape()) {
			throw std::invalid_argument("predictor returned " + std::to_string(next.size())
			                            + " coefficients, model has " + std::to_string(model.num_shape()));
		}
		result.iterates.push_back(morphablemodel::GeometryCoefficients::from_stacked(next, model.num_identity()));
	}
	result.mesh = morphablemodel::synthesize_geometry(model, result.final_coefficients());
	result.shading_image = datagen::render_shading(model, result.final_coefficients(), pose, config.width,
	                                               config.height)
	                           .image;
	return result;
}

} // namespace ief3dmm::reconstruct

#endif /* IEF3DMM_RECONSTRUCT_IEF_HPP_ */
