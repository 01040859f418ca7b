/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/evaluate/landmarks.hpp
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

#ifndef IEF3DMM_EVALUATE_LANDMARKS_HPP_
#define IEF3DMM_EVALUATE_LANDMARKS_HPP_

#include "ief3dmm/io/binary.hpp"
#include "ief3dmm/io/text.hpp"
#include "ief3dmm/morphablemodel/MorphableModel.hpp"
#include "ief3dmm/render/Pose.hpp"
#include "ief3dmm/render/projection.hpp"

#include "Eigen/Cholesky"
#include "Eigen/Core"

#include <cstdint>
#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ief3dmm::evaluate {

/// 2D observations of model vertices, in pixel coordinates.
struct LandmarkSet
{
	std::vector<std::uint32_t> vertex_indices;
	Eigen::MatrixX2d image_points;

	Eigen::Index size() const { return static_cast<Eigen::Index>(vertex_indices.size()); }
};

inline void validate(const LandmarkSet& landmarks, const morphablemodel::MorphableModel& model)
{
	if (landmarks.image_points.rows() != landmarks.size()) {
		throw std::invalid_argument("landmark set has " + std::to_string(landmarks.size()) + " indices but "
		                            + std::to_string(landmarks.image_points.rows()) + " image points");
	}
	if (landmarks.size() < 3) {
		throw std::invalid_argument("landmark set needs at least 3 points");
	}
	for (auto idx : landmarks.vertex_indices) {
		if (idx >= static_cast<std::uint64_t>(model.num_vertices())) {
			throw std::invalid_argument("landmark vertex " + std::to_string(idx) + " out of range for a model with "
			                            + std::to_string(model.num_vertices()) + " vertices");
		}
	}
	if (!landmarks.image_points.allFinite()) {
		throw std::invalid_argument("landmark image points must be finite");
	}
}

/// Projects the given vertices of a mesh, giving a noiseless landmark set.
inline LandmarkSet project_landmarks(const morphablemodel::Mesh& mesh, const std::vector<std::uint32_t>& indices,
                                     const render::PoseParams& pose, int width, int height)
{
	LandmarkSet out{indices, Eigen::MatrixX2d(static_cast<Eigen::Index>(indices.size()), 2)};
	for (std::size_t k = 0; k < indices.size(); ++k) {
		if (indices[k] >= static_cast<std::uint64_t>(mesh.num_vertices())) {
			throw std::invalid_argument("landmark vertex " + std::to_string(indices[k]) + " out of range");
		}
		const Eigen::Vector3d cam = pose.rotation * mesh.vertices.row(indices[k]).transpose() + pose.translation;
		out.image_points.row(static_cast<Eigen::Index>(k)) = render::to_pixel(cam, pose.scale, width, height).transpose();
	}
	return out;
}

/**
 * Landmark fitting baseline. Minimises
 *
 *   sum_k || proj(S_k(alpha)) - p_k ||^2 + lambda ||alpha||^2
 *
 * over the stacked shape coefficients, with the pose fixed. S_k is affine in
 * alpha and the projection is linear, so this is a ridge problem solved via
 * its normal equations.
 */
inline morphablemodel::GeometryCoefficients landmark_fit(const LandmarkSet& landmarks, const render::PoseParams& pose,
                                                         const morphablemodel::MorphableModel& model,
                                                         double lambda_reg, int width, int height)
{
	validate(landmarks, model);
	render::validate(pose);
	if (!(lambda_reg > 0.0)) {
		throw std::invalid_argument("landmark regulariser must be positive");
	}
	const Eigen::Index m = model.num_shape();
	const Eigen::Index k_count = landmarks.size();
	Eigen::MatrixXd jac(2 * k_count, m);
	Eigen::VectorXd rhs(2 * k_count);
	const double f = pose.scale;
	for (Eigen::Index k = 0; k < k_count; ++k) {
		const Eigen::Index v = landmarks.vertex_indices[static_cast<std::size_t>(k)];
		const auto basis = model.shape_basis().middleRows(3 * v, 3);
		const Eigen::Vector3d mean = model.mean_shape().segment<3>(3 * v);
		const Eigen::Vector3d cam = pose.rotation * mean + pose.translation;
		jac.row(2 * k) = f * pose.rotation.row(0) * basis;
		jac.row(2 * k + 1) = -f * pose.rotation.row(1) * basis;
		rhs(2 * k) = landmarks.image_points(k, 0) - (0.5 * width + f * cam.x());
		rhs(2 * k + 1) = landmarks.image_points(k, 1) - (0.5 * height - f * cam.y());
	}
	Eigen::MatrixXd normal = jac.transpose() * jac;
	normal.diagonal().array() += lambda_reg;
	const Eigen::VectorXd alpha = normal.ldlt().solve(jac.transpose() * rhs);
	return morphablemodel::GeometryCoefficients::from_stacked(alpha, model.num_identity());
}

/// Objective minimised by landmark_fit, for checking fits.
inline double landmark_objective(const LandmarkSet& landmarks, const render::PoseParams& pose,
                                 const morphablemodel::MorphableModel& model,
                                 const morphablemodel::GeometryCoefficients& coeffs, double lambda_reg, int width,
                                 int height)
{
	const auto mesh = morphablemodel::synthesize_geometry(model, coeffs);
	const auto projected = project_landmarks(mesh, landmarks.vertex_indices, pose, width, height);
	return (projected.image_points - landmarks.image_points).squaredNorm()
	       + lambda_reg * coeffs.stacked().squaredNorm();
}

/// One "index x y" line per landmark.
inline void write_landmarks(const LandmarkSet& landmarks, const std::filesystem::path& path)
{
	std::string text;
	for (Eigen::Index k = 0; k < landmarks.size(); ++k) {
		text += std::to_string(landmarks.vertex_indices[static_cast<std::size_t>(k)]) + " "
		        + io::format_double(landmarks.image_points(k, 0)) + " "
		        + io::format_double(landmarks.image_points(k, 1)) + "\n";
	}
	io::write_text(text, path);
}

inline LandmarkSet read_landmarks(const std::filesystem::path& path)
{
	std::vector<std::uint32_t> indices;
	std::vector<Eigen::Vector2d> points;
	for (const auto& line : io::read_lines(path)) {
		std::istringstream in(line);
		long long index = -1;
		double x = 0.0, y = 0.0;
		std::string extra;
		if (!(in >> index >> x >> y) || (in >> extra) || index < 0 || index > 0xffffffffLL) {
			throw io::IoError("'" + path.string() + "': malformed landmark line '" + line + "'");
		}
		indices.push_back(static_cast<std::uint32_t>(index));
		points.emplace_back(x, y);
	}
	LandmarkSet out{std::move(indices), Eigen::MatrixX2d(static_cast<Eigen::Index>(points.size()), 2)};
	for (std::size_t k = 0; k < points.size(); ++k) {
		out.image_points.row(static_cast<Eigen::Index>(k)) = points[k].transpose();
	}
	return out;
}

} // namespace ief3dmm::evaluate

#endif /* IEF3DMM_EVALUATE_LANDMARKS_HPP_ */
