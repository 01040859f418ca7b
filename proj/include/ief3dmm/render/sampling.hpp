/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/render/sampling.hpp
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

#ifndef IEF3DMM_RENDER_SAMPLING_HPP_
#define IEF3DMM_RENDER_SAMPLING_HPP_

#include "ief3dmm/defaults.hpp"
#include "ief3dmm/morphablemodel/MorphableModel.hpp"
#include "ief3dmm/render/Pose.hpp"

#include "Eigen/Core"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace ief3dmm::render {

struct LightingDistribution
{
	double ambient_mean = defaults::ambient_mean;
	double diffuse_mean = defaults::diffuse_mean;
	double specular_mean = defaults::specular_mean;
	double ambient_sigma = defaults::ambient_sigma;
	double diffuse_sigma = defaults::diffuse_sigma;
	double specular_sigma = defaults::specular_sigma;
	double shininess = defaults::shininess;
};

/**
 * Random Phong parameters: normally distributed reflectance constants clamped
 * at zero, fixed shininess, and a light direction uniform over the frontal
 * (z > 0) hemisphere.
 */
template <std::uniform_random_bit_generator Engine>
LightingParams sample_lighting(Engine& rng, const LightingDistribution& dist = {})
{
	LightingParams out;
	out.ambient = std::max(0.0, std::normal_distribution<double>(dist.ambient_mean, dist.ambient_sigma)(rng));
	out.diffuse = std::max(0.0, std::normal_distribution<double>(dist.diffuse_mean, dist.diffuse_sigma)(rng));
	out.specular = std::max(0.0, std::normal_distribution<double>(dist.specular_mean, dist.specular_sigma)(rng));
	out.shininess = dist.shininess;
	// Uniform area measure on the hemisphere: z is uniform on (0, 1].
	std::uniform_real_distribution<double> unit(0.0, 1.0);
	const double z = 1.0 - unit(rng);
	const double phi = 2.0 * std::numbers::pi * unit(rng);
	const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
	out.light_dir = Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), z).normalized();
	return out;
}

struct PoseDistribution
{
	double mean_scale = 1.0; ///< pixels per model unit at the mean pose
	double face_width = 1.0; ///< model units, sets the translation spread
	double angle_sigma_deg = defaults::pose_angle_sigma_deg;
	double translation_fraction = defaults::pose_translation_fraction;
	double scale_fraction = defaults::pose_scale_fraction;
};

/// Pose distribution centred on a frontal face whose mean shape covers
/// `face_height_fraction` of the image height.
inline PoseDistribution pose_distribution_for(const morphablemodel::MorphableModel& model, int height,
                                              double face_height_fraction = defaults::face_height_fraction)
{
	const auto mean = model.mean_mesh();
	const double face_height = mean.vertices.col(1).maxCoeff() - mean.vertices.col(1).minCoeff();
	PoseDistribution out;
	out.mean_scale = face_height_fraction * height / face_height;
	out.face_width = mean.vertices.col(0).maxCoeff() - mean.vertices.col(0).minCoeff();
	return out;
}

/**
 * Random weak-perspective pose. Yaw, pitch and roll are N(0, sigma^2); the
 * in-plane translation is N(0, (fraction * face width)^2); the scale is
 * N(mean, (fraction * mean)^2), kept strictly positive.
 */
template <std::uniform_random_bit_generator Engine>
PoseParams sample_pose(Engine& rng, const PoseDistribution& dist)
{
	const double sigma = dist.angle_sigma_deg * std::numbers::pi / 180.0;
	std::normal_distribution<double> angle(0.0, sigma);
	const double yaw = angle(rng);
	const double pitch = angle(rng);
	const double roll = angle(rng);
	std::normal_distribution<double> shift(0.0, dist.translation_fraction * dist.face_width);
	const double tx = shift(rng);
	const double ty = shift(rng);
	const double scale = std::normal_distribution<double>(dist.mean_scale, dist.scale_fraction * dist.mean_scale)(rng);

	PoseParams out;
	out.rotation = rotation_from_euler(yaw, pitch, roll);
	out.translation = Eigen::Vector3d(tx, ty, 0.0);
	out.scale = std::max(scale, 1e-3 * dist.mean_scale);
	return out;
}

/// The mean of the pose distribution: frontal, centred, mean scale.
inline PoseParams frontal_pose(const PoseDistribution& dist)
{
	PoseParams out;
	out.scale = dist.mean_scale;
	return out;
}

} // namespace ief3dmm::render

#endif /* IEF3DMM_RENDER_SAMPLING_HPP_ */
