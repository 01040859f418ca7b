/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/render/phong.hpp
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

#ifndef IEF3DMM_RENDER_PHONG_HPP_
#define IEF3DMM_RENDER_PHONG_HPP_

#include "ief3dmm/render/Pose.hpp"

#include "Eigen/Core"

#include <algorithm>
#include <cmath>

namespace ief3dmm::render {

/// Phong intensity factor k_a + k_d max(L.N, 0) + k_s max(R.V, 0)^shininess,
/// before multiplying by the albedo and clamping.
inline double phong_factor(const Eigen::Vector3d& normal, const LightingParams& lighting,
                           const Eigen::Vector3d& view_dir)
{
	const double n_dot_l = normal.dot(lighting.light_dir);
	const Eigen::Vector3d reflected = 2.0 * n_dot_l * normal - lighting.light_dir;
	const double r_dot_v = std::max(reflected.dot(view_dir), 0.0);
	return lighting.ambient + lighting.diffuse * std::max(n_dot_l, 0.0)
	       + lighting.specular * std::pow(r_dot_v, lighting.shininess);
}

/// Phong-shaded colour of a surface point, clamped to [0, 1] per channel.
inline Eigen::Vector3d phong_shade(const Eigen::Vector3d& albedo, const Eigen::Vector3d& normal,
                                   const LightingParams& lighting,
                                   const Eigen::Vector3d& view_dir = Eigen::Vector3d::UnitZ())
{
	return (phong_factor(normal, lighting, view_dir) * albedo).cwiseMax(0.0).cwiseMin(1.0);
}

} // namespace ief3dmm::render

#endif /* IEF3DMM_RENDER_PHONG_HPP_ */
