/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/render/normals.hpp
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

#ifndef IEF3DMM_RENDER_NORMALS_HPP_
#define IEF3DMM_RENDER_NORMALS_HPP_

#include "ief3dmm/morphablemodel/MorphableModel.hpp"

#include "Eigen/Core"
#include "Eigen/Geometry"

namespace ief3dmm::render {

/**
 * Area-weighted vertex normals. Each face contributes its unnormalised cross
 * product (twice its area) to its three corners, so degenerate faces add
 * nothing. Vertices whose incident faces all have zero area get +z.
 */
inline morphablemodel::Vertices compute_vertex_normals(const morphablemodel::Mesh& mesh)
{
	const Eigen::Index n = mesh.num_vertices();
	morphablemodel::Vertices normals = morphablemodel::Vertices::Zero(n, 3);
	for (const auto& tri : *mesh.triangles) {
		const Eigen::Vector3d a = mesh.vertices.row(tri[0]);
		const Eigen::Vector3d b = mesh.vertices.row(tri[1]);
		const Eigen::Vector3d c = mesh.vertices.row(tri[2]);
		const Eigen::Vector3d face = (b - a).cross(c - a);
		for (auto idx : tri) {
			normals.row(idx) += face.transpose();
		}
	}
	for (Eigen::Index i = 0; i < n; ++i) {
		const double len = normals.row(i).norm();
		if (len > 0.0) {
			normals.row(i) /= len;
		} else {
			normals.row(i) << 0.0, 0.0, 1.0;
		}
	}
	return normals;
}

} // namespace ief3dmm::render

#endif /* IEF3DMM_RENDER_NORMALS_HPP_ */
