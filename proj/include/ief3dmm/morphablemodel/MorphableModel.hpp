/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/morphablemodel/MorphableModel.hpp
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

#ifndef IEF3DMM_MORPHABLEMODEL_HPP_
#define IEF3DMM_MORPHABLEMODEL_HPP_

#include "Eigen/Core"

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ief3dmm::morphablemodel {

/// N x 3 matrix, one xyz (or rgb) row per vertex. Row-major so that the
/// storage matches the interleaved 3N model vectors.
using Vertices = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;

using Triangle = std::array<std::uint32_t, 3>;
using Topology = std::vector<Triangle>;

/// Identity and expression coefficients of a face geometry.
struct GeometryCoefficients
{
	Eigen::VectorXd identity;
	Eigen::VectorXd expression;

	static GeometryCoefficients zeros(Eigen::Index n_id, Eigen::Index n_exp)
	{
		return {Eigen::VectorXd::Zero(n_id), Eigen::VectorXd::Zero(n_exp)};
	}

	/// Splits a stacked [identity; expression] vector.
	static GeometryCoefficients from_stacked(const Eigen::VectorXd& stacked, Eigen::Index n_id)
	{
		if (n_id < 0 || n_id > stacked.size()) {
			throw std::invalid_argument("stacked coefficient vector shorter than the identity block");
		}
		return {stacked.head(n_id), stacked.tail(stacked.size() - n_id)};
	}

	Eigen::VectorXd stacked() const
	{
		Eigen::VectorXd out(size());
		out << identity, expression;
		return out;
	}

	Eigen::Index size() const { return identity.size() + expression.size(); }
};

struct TextureCoefficients
{
	Eigen::VectorXd values;
};

struct Mesh
{
	Vertices vertices;
	std::shared_ptr<const Topology> triangles;

	Eigen::Index num_vertices() const { return vertices.rows(); }
};

/// Per-vertex RGB albedo. Values are kept unclamped; clamping to [0, 1] happens
/// only when rendering.
struct Texture
{
	Vertices colors;
};

/**
 * A linear face model with separate identity and expression shape bases and a
 * texture basis:
 *
 *   S = mu_S + A_id * alpha_id + A_exp * alpha_exp
 *   T = mu_T + A_T * alpha_T
 *
 * All 3N vectors are interleaved xyz (or rgb) per vertex. The model is
 * immutable after construction and can be shared between threads.
 */
class MorphableModel
{
public:
	MorphableModel(Eigen::VectorXd mean_shape, const Eigen::MatrixXd& identity_basis,
	               const Eigen::MatrixXd& expression_basis, Eigen::VectorXd mean_texture,
	               Eigen::MatrixXd texture_basis, Topology triangles,
	               std::vector<std::uint32_t> landmark_vertices = {})
	    : mean_shape_(std::move(mean_shape)), mean_texture_(std::move(mean_texture)),
	      texture_basis_(std::move(texture_basis)),
	      triangles_(std::make_shared<const Topology>(std::move(triangles))),
	      landmark_vertices_(std::move(landmark_vertices)), num_identity_(identity_basis.cols())
	{
		const Eigen::Index dim = mean_shape_.size();
		if (dim == 0 || dim % 3 != 0) {
			throw std::invalid_argument("mean shape length must be a positive multiple of 3");
		}
		if (identity_basis.rows() != dim || expression_basis.rows() != dim || mean_texture_.size() != dim
		    || texture_basis_.rows() != dim) {
			throw std::invalid_argument("model bases must all have 3N rows");
		}
		if (identity_basis.cols() < 1 || expression_basis.cols() < 1 || texture_basis_.cols() < 1) {
			throw std::invalid_argument("model bases must have at least one column");
		}
		shape_basis_.resize(dim, identity_basis.cols() + expression_basis.cols());
		shape_basis_ << identity_basis, expression_basis;
		if (!mean_shape_.allFinite() || !shape_basis_.allFinite() || !mean_texture_.allFinite()
		    || !texture_basis_.allFinite()) {
			throw std::invalid_argument("model contains non-finite values");
		}

		const auto n = static_cast<std::uint64_t>(num_vertices());
		std::vector<bool> referenced(n, false);
		for (const auto& tri : *triangles_) {
			for (auto idx : tri) {
				if (idx >= n) {
					throw std::invalid_argument("triangle index " + std::to_string(idx) + " out of range");
				}
				referenced[idx] = true;
			}
		}
		for (std::uint64_t i = 0; i < n; ++i) {
			if (!referenced[i]) {
				throw std::invalid_argument("vertex " + std::to_string(i) + " is not referenced by any triangle");
			}
		}
		for (auto idx : landmark_vertices_) {
			if (idx >= n) {
				throw std::invalid_argument("landmark vertex " + std::to_string(idx) + " out of range");
			}
		}
		shape_gram_ = shape_basis_.transpose() * shape_basis_;
	}

	Eigen::Index num_vertices() const { return mean_shape_.size() / 3; }
	Eigen::Index num_identity() const { return num_identity_; }
	Eigen::Index num_expression() const { return shape_basis_.cols() - num_identity_; }
	Eigen::Index num_shape() const { return shape_basis_.cols(); }
	Eigen::Index num_texture() const { return texture_basis_.cols(); }

	const Eigen::VectorXd& mean_shape() const { return mean_shape_; }
	const Eigen::VectorXd& mean_texture() const { return mean_texture_; }
	const Eigen::MatrixXd& texture_basis() const { return texture_basis_; }

	/// The concatenated shape basis [A_id | A_exp].
	const Eigen::MatrixXd& shape_basis() const { return shape_basis_; }

	auto identity_basis() const { return shape_basis_.leftCols(num_identity_); }
	auto expression_basis() const { return shape_basis_.rightCols(num_expression()); }

	/// Gram matrix [A_id | A_exp]^T [A_id | A_exp], cached at construction.
	const Eigen::MatrixXd& shape_gram() const { return shape_gram_; }

	const std::shared_ptr<const Topology>& triangles() const { return triangles_; }

	/// Model vertices used as 2D landmarks. May be empty for loaded models
	/// without a landmark trailer.
	const std::vector<std::uint32_t>& landmark_vertices() const { return landmark_vertices_; }

	Mesh mean_mesh() const
	{
		return {Eigen::Map<const Vertices>(mean_shape_.data(), num_vertices(), 3), triangles_};
	}

private:
	Eigen::VectorXd mean_shape_;
	Eigen::MatrixXd shape_basis_;
	Eigen::VectorXd mean_texture_;
	Eigen::MatrixXd texture_basis_;
	std::shared_ptr<const Topology> triangles_;
	std::vector<std::uint32_t> landmark_vertices_;
	Eigen::Index num_identity_;
	Eigen::MatrixXd shape_gram_;
};

inline void check_dims(const MorphableModel& model, const GeometryCoefficients& coeffs)
{
	if (coeffs.identity.size() != model.num_identity() || coeffs.expression.size() != model.num_expression()) {
		throw std::invalid_argument("geometry coefficients have " + std::to_string(coeffs.identity.size()) + "+"
		                            + std::to_string(coeffs.expression.size()) + " entries, model expects "
		                            + std::to_string(model.num_identity()) + "+"
		                            + std::to_string(model.num_expression()));
	}
}

/// Shape vector mu_S + A_id * alpha_id + A_exp * alpha_exp as a 3N vector.
inline Eigen::VectorXd synthesize_shape_vector(const MorphableModel& model, const GeometryCoefficients& coeffs)
{
	check_dims(model, coeffs);
	return model.mean_shape() + model.identity_basis() * coeffs.identity
	       + model.expression_basis() * coeffs.expression;
}

inline Mesh synthesize_geometry(const MorphableModel& model, const GeometryCoefficients& coeffs)
{
	const Eigen::VectorXd shape = synthesize_shape_vector(model, coeffs);
	return {Eigen::Map<const Vertices>(shape.data(), model.num_vertices(), 3), model.triangles()};
}

inline Texture synthesize_texture(const MorphableModel& model, const TextureCoefficients& coeffs)
{
	if (coeffs.values.size() != model.num_texture()) {
		throw std::invalid_argument("texture coefficients have " + std::to_string(coeffs.values.size())
		                            + " entries, model expects " + std::to_string(model.num_texture()));
	}
	const Eigen::VectorXd colors = model.mean_texture() + model.texture_basis() * coeffs.values;
	return {Eigen::Map<const Vertices>(colors.data(), model.num_vertices(), 3)};
}

} // namespace ief3dmm::morphablemodel

#endif /* IEF3DMM_MORPHABLEMODEL_HPP_ */
