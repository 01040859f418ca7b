/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/reconstruct/selection.hpp
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

#ifndef IEF3DMM_RECONSTRUCT_SELECTION_HPP_
#define IEF3DMM_RECONSTRUCT_SELECTION_HPP_

#include "ief3dmm/datagen/sample.hpp"
#include "ief3dmm/morphablemodel/geometry_loss.hpp"
#include "ief3dmm/reconstruct/ief.hpp"
#include "ief3dmm/reconstruct/training.hpp"

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace ief3dmm::reconstruct {

/// Mean geometry loss of the final IEF iterate over a set of faces.
template <CoefficientPredictor Predictor>
double mean_final_loss(std::span<const datagen::TrainingSample> faces, const Predictor& predictor,
                       const morphablemodel::MorphableModel& model, const IEFConfig& config)
{
	if (faces.empty()) {
		throw std::invalid_argument("validation set is empty");
	}
	double total = 0.0;
	for (const auto& face : faces) {
		const auto result = ief_reconstruct(face.full_face_image, face.pose, predictor, model, config);
		total += morphablemodel::geometry_loss(model, result.final_coefficients(), face.alpha_gt);
	}
	return total / static_cast<double>(faces.size());
}

struct RidgeSelection
{
	LinearPredictor predictor;
	double lambda = 0.0;
	std::vector<double> validation_loss; ///< one per candidate, in input order
};

/**
 * Solves for every candidate lambda and keeps the one whose predictor gives
 * the lowest mean final IEF loss on the validation faces. Ties go to the
 * earlier candidate.
 */
inline RidgeSelection select_ridge(const LinearPredictorTrainer& trainer, std::span<const double> lambdas,
                                   std::span<const datagen::TrainingSample> validation,
                                   const morphablemodel::MorphableModel& model, const IEFConfig& config)
{
	if (lambdas.empty()) {
		throw std::invalid_argument("no ridge candidates given");
	}
	auto predictors = trainer.solve(lambdas);
	RidgeSelection out;
	double best = std::numeric_limits<double>::infinity();
	std::size_t best_index = 0;
	for (std::size_t k = 0; k < predictors.size(); ++k) {
		const double loss = mean_final_loss(validation, predictors[k], model, config);
		out.validation_loss.push_back(loss);
		if (loss < best) {
			best = loss;
			best_index = k;
		}
	}
	out.predictor = std::move(predictors[best_index]);
	out.lambda = lambdas[best_index];
	return out;
}

} // namespace ief3dmm::reconstruct

#endif /* IEF3DMM_RECONSTRUCT_SELECTION_HPP_ */
