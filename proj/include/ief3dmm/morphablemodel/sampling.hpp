/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/morphablemodel/sampling.hpp
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

#ifndef IEF3DMM_SAMPLING_HPP_
#define IEF3DMM_SAMPLING_HPP_

#include "ief3dmm/morphablemodel/MorphableModel.hpp"

#include "Eigen/Core"

#include <random>
#include <stdexcept>

namespace ief3dmm::morphablemodel {

/// Fills a vector with i.i.d. N(0, sigma^2) draws from the caller's engine.
template <std::uniform_random_bit_generator Engine>
Eigen::VectorXd sample_normal_vector(Engine& rng, Eigen::Index n, double sigma = 1.0)
{
	if (!(sigma > 0.0)) {
		throw std::invalid_argument("sigma must be positive");
	}
	std::normal_distribution<double> normal(0.0, sigma);
	Eigen::VectorXd out(n);
	for (Eigen::Index i = 0; i < n; ++i) {
		out(i) = normal(rng);
	}
	return out;
}

/// Random face geometry with i.i.d. N(0, sigma^2) coefficients, identity block
/// drawn first.
template <std::uniform_random_bit_generator Engine>
GeometryCoefficients sample_geometry_coefficients(Engine& rng, const MorphableModel& model, double sigma = 1.0)
{
	GeometryCoefficients out;
	out.identity = sample_normal_vector(rng, model.num_identity(), sigma);
	out.expression = sample_normal_vector(rng, model.num_expression(), sigma);
	return out;
}

template <std::uniform_random_bit_generator Engine>
TextureCoefficients sample_texture_coefficients(Engine& rng, const MorphableModel& model, double sigma = 1.0)
{
	return {sample_normal_vector(rng, model.num_texture(), sigma)};
}

} // namespace ief3dmm::morphablemodel

#endif /* IEF3DMM_SAMPLING_HPP_ */
