/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/render/Pose.hpp
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

#ifndef IEF3DMM_RENDER_POSE_HPP_
#define IEF3DMM_RENDER_POSE_HPP_

#include "ief3dmm/defaults.hpp"

#include "Eigen/Core"
#include "Eigen/Geometry"

#include <cmath>
#include <stdexcept>

namespace ief3dmm::render {

/**
 * Weak-perspective camera: a model point P maps to f * [I2 | 0] (R P + t),
 * offset to the image centre with y pointing down. The third component of
 * R P + t is kept as depth for occlusion only.
 */
struct PoseParams
{
	double scale = 1.0;
	Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
	Eigen::Vector3d translation = Eigen::Vector3d::Zero();
};

inline void validate(const PoseParams& pose)
{
	if (!(pose.scale > 0.0) || !std::isfinite(pose.scale)) {
		throw std::invalid_argument("pose scale must be positive and finite");
	}
	if (!pose.rotation.allFinite() || !pose.translation.allFinite()) {
		throw std::invalid_argument("pose contains non-finite values");
	}
	const double ortho = (pose.rotation.transpose() * pose.rotation - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
	if (ortho > 1e-10 || std::abs(pose.rotation.determinant() - 1.0) > 1e-10) {
		throw std::invalid_argument("pose rotation is not a proper rotation matrix");
	}
}

/// Rotation from yaw (about y), pitch (about x) and roll (about z), in
/// radians, applied as R = Rz(roll) * Ry(yaw) * Rx(pitch).
inline Eigen::Matrix3d rotation_from_euler(double yaw, double pitch, double roll)
{
	const Eigen::Matrix3d r = (Eigen::AngleAxisd(roll, Eigen::Vector3d::UnitZ())
	                           * Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitY())
	                           * Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitX()))
	                              .toRotationMatrix();
	return r;
}

/// Phong material and light. View direction is fixed at +z.
struct LightingParams
{
	double ambient = defaults::ambient_mean;
	double diffuse = defaults::diffuse_mean;
	double specular = defaults::specular_mean;
	double shininess = defaults::shininess;
	Eigen::Vector3d light_dir = Eigen::Vector3d::UnitZ();
};

inline void validate(const LightingParams& lighting)
{
	if (!(lighting.ambient >= 0.0) || !(lighting.diffuse >= 0.0) || !(lighting.specular >= 0.0)) {
		throw std::invalid_argument("reflectance constants must be non-negative");
	}
	if (!(lighting.shininess > 0.0)) {
		throw std::invalid_argument("shininess must be positive");
	}
	if (std::abs(lighting.light_dir.norm() - 1.0) > 1e-10) {
		throw std::invalid_argument("light direction must be a unit vector");
	}
}

} // namespace ief3dmm::render

#endif /* IEF3DMM_RENDER_POSE_HPP_ */
