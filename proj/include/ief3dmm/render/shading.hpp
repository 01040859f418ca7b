/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/render/shading.hpp
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

#ifndef IEF3DMM_RENDER_SHADING_HPP_
#define IEF3DMM_RENDER_SHADING_HPP_

#include "ief3dmm/morphablemodel/MorphableModel.hpp"
#include "ief3dmm/render/Image.hpp"
#include "ief3dmm/render/Pose.hpp"
#include "ief3dmm/render/normals.hpp"
#include "ief3dmm/render/phong.hpp"
#include "ief3dmm/render/rasterizer.hpp"

#include "Eigen/Core"

#include <algorithm>
#include <stdexcept>

namespace ief3dmm::render {

/**
 * Grey-level render of a geometry lit by a frontal light with unit albedo and
 * no ambient or specular term: each vertex gets max(N . z, 0) for its rotated
 * normal N. Background pixels are 0.
 *
 * This is the image through which the current shape estimate is fed back into
 * the predictor.
 */
inline RasterOutput render_shading_image(const morphablemodel::Mesh& mesh, const PoseParams& pose, int width,
                                         int height)
{
	const auto normals = compute_vertex_normals(mesh);
	Eigen::MatrixXd gray(mesh.num_vertices(), 1);
	for (Eigen::Index i = 0; i < mesh.num_vertices(); ++i) {
		const Eigen::Vector3d n = pose.rotation * normals.row(i).transpose();
		gray(i, 0) = std::max(n.z(), 0.0);
	}
	return rasterize(mesh, gray, pose, width, height);
}

/**
 * Phong-shaded colour render of a textured mesh, evaluated per vertex and
 * interpolated across faces. Albedo is the texture clamped to [0, 1].
 */
inline RasterOutput render_phong(const morphablemodel::Mesh& mesh, const morphablemodel::Texture& texture,
                                 const PoseParams& pose, const LightingParams& lighting, int width, int height)
{
	if (texture.colors.rows() != mesh.num_vertices()) {
		throw std::invalid_argument("texture must have one colour per vertex");
	}
	const auto normals = compute_vertex_normals(mesh);
	const Eigen::Vector3d view = Eigen::Vector3d::UnitZ();
	Eigen::MatrixXd colors(mesh.num_vertices(), 3);
	for (Eigen::Index i = 0; i < mesh.num_vertices(); ++i) {
		const Eigen::Vector3d n = pose.rotation * normals.row(i).transpose();
		const Eigen::Vector3d albedo = texture.colors.row(i).transpose().cwiseMax(0.0).cwiseMin(1.0);
		colors.row(i) = phong_shade(albedo, n, lighting, view).transpose();
	}
	return rasterize(mesh, colors, pose, width, height);
}

} // namespace ief3dmm::render

#endif /* IEF3DMM_RENDER_SHADING_HPP_ */
