/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/evaluate/alignment.hpp
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

#ifndef IEF3DMM_EVALUATE_ALIGNMENT_HPP_
#define IEF3DMM_EVALUATE_ALIGNMENT_HPP_

#include "ief3dmm/morphablemodel/MorphableModel.hpp"

#include "Eigen/Core"
#include "Eigen/Geometry"
#include "Eigen/SVD"

#include <stdexcept>
#include <string>

namespace ief3dmm::evaluate {

/// x -> scale * rotation * x + translation.
struct SimilarityTransform
{
	double scale = 1.0;
	Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
	Eigen::Vector3d translation = Eigen::Vector3d::Zero();

	Eigen::Vector3d apply(const Eigen::Vector3d& x) const { return scale * rotation * x + translation; }
};

inline morphablemodel::Vertices transform_vertices(const SimilarityTransform& transform,
                                                   const morphablemodel::Vertices& vertices)
{
	morphablemodel::Vertices out(vertices.rows(), 3);
	for (Eigen::Index i = 0; i < vertices.rows(); ++i) {
		out.row(i) = transform.apply(vertices.row(i).transpose()).transpose();
	}
	return out;
}

struct AlignmentResult
{
	SimilarityTransform transform;
	morphablemodel::Mesh aligned;
};

/**
 * Least-squares similarity transform taking source onto target (Umeyama's
 * closed form, with the determinant correction that keeps the rotation
 * proper). Vertices correspond by index.
 */
inline AlignmentResult optimal_similarity_align(const morphablemodel::Mesh& source, const morphablemodel::Mesh& target)
{
	if (source.num_vertices() != target.num_vertices()) {
		throw std::invalid_argument("cannot align meshes with " + std::to_string(source.num_vertices()) + " and "
		                            + std::to_string(target.num_vertices()) + " vertices");
	}
	if (source.num_vertices() < 3) {
		throw std::invalid_argument("alignment needs at least 3 points");
	}
	const Eigen::Matrix3Xd src = source.vertices.transpose();
	const Eigen::Matrix3Xd dst = target.vertices.transpose();
	const Eigen::Matrix3Xd centred = src.colwise() - src.rowwise().mean();
	const Eigen::Vector3d spread = Eigen::JacobiSVD<Eigen::Matrix3Xd>(centred).singularValues();
	if (!(spread(1) > 1e-12 * spread(0))) {
		throw std::invalid_argument("alignment needs at least 3 non-collinear points");
	}
	const Eigen::Matrix4d h = Eigen::umeyama(src, dst, true);
	SimilarityTransform t;
	t.scale = h.block<3, 1>(0, 0).norm();
	t.rotation = h.block<3, 3>(0, 0) / t.scale;
	t.translation = h.block<3, 1>(0, 3);
	return {t, {transform_vertices(t, source.vertices), source.triangles}};
}

} // namespace ief3dmm::evaluate

#endif /* IEF3DMM_EVALUATE_ALIGNMENT_HPP_ */
