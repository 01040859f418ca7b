/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/render/projection.hpp
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

#ifndef IEF3DMM_RENDER_PROJECTION_HPP_
#define IEF3DMM_RENDER_PROJECTION_HPP_

#include "ief3dmm/morphablemodel/MorphableModel.hpp"
#include "ief3dmm/render/Pose.hpp"

#include "Eigen/Core"

namespace ief3dmm::render {

struct ProjectedVertices
{
	Eigen::MatrixX2d points; ///< pixel coordinates, x right, y down
	Eigen::VectorXd depth;   ///< third component of R P + t
};

/// Image position of a single camera-space point.
inline Eigen::Vector2d to_pixel(const Eigen::Vector3d& camera_point, double scale, int width, int height)
{
	return {0.5 * width + scale * camera_point.x(), 0.5 * height - scale * camera_point.y()};
}

/// Weak-perspective projection of every mesh vertex.
inline ProjectedVertices project_vertices(const morphablemodel::Mesh& mesh, const PoseParams& pose, int width,
                                          int height)
{
	const Eigen::Index n = mesh.num_vertices();
	ProjectedVertices out{Eigen::MatrixX2d(n, 2), Eigen::VectorXd(n)};
	for (Eigen::Index i = 0; i < n; ++i) {
		const Eigen::Vector3d cam = pose.rotation * mesh.vertices.row(i).transpose() + pose.translation;
		out.points.row(i) = to_pixel(cam, pose.scale, width, height).transpose();
		out.depth(i) = cam.z();
	}
	return out;
}

} // namespace ief3dmm::render

#endif /* IEF3DMM_RENDER_PROJECTION_HPP_ */
