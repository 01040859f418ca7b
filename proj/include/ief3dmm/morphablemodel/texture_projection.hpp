/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/morphablemodel/texture_projection.hpp
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

#ifndef IEF3DMM_TEXTURE_PROJECTION_HPP_
#define IEF3DMM_TEXTURE_PROJECTION_HPP_

#include "ief3dmm/morphablemodel/MorphableModel.hpp"

#include "Eigen/Cholesky"
#include "Eigen/Core"

#include <stdexcept>
#include <vector>

namespace ief3dmm::morphablemodel {

/// How observed and model colours are merged in the combined texture.
enum class TextureBlend {
	hard,     ///< visible vertices keep the observation, occluded ones take the model
	feathered ///< like hard, but visible vertices touching an occluded one get a 50/50 mix
};

struct TextureProjection
{
	TextureCoefficients coefficients;
	Texture reconstructed; ///< mu_T + A_T * alpha_T
	Texture combined;
};

/**
 * Fits texture coefficients to the visible part of an observed per-vertex
 * texture by Tikhonov-regularised least squares,
 *
 *   min_a || W (mu_T + A_T a - observed) ||^2 + lambda ||a||^2,
 *
 * where W keeps the rows of visible vertices. Occluded vertices are filled in
 * from the model reconstruction.
 */
inline TextureProjection project_texture(const MorphableModel& model, const Texture& observed,
                                         const std::vector<bool>& visible, double lambda = 1e-6,
                                         TextureBlend blend = TextureBlend::hard)
{
	const Eigen::Index n = model.num_vertices();
	if (observed.colors.rows() != n || static_cast<Eigen::Index>(visible.size()) != n) {
		throw std::invalid_argument("observed texture and visibility mask must have one entry per model vertex");
	}
	if (!(lambda >= 0.0)) {
		throw std::invalid_argument("texture regularisation must be non-negative");
	}

	std::vector<Eigen::Index> rows;
	rows.reserve(3 * n);
	for (Eigen::Index v = 0; v < n; ++v) {
		if (visible[v]) {
			rows.push_back(3 * v);
			rows.push_back(3 * v + 1);
			rows.push_back(3 * v + 2);
		}
	}
	if (rows.empty()) {
		throw std::invalid_argument("visibility mask has no visible vertices");
	}

	const Eigen::MatrixXd& basis = model.texture_basis();
	const Eigen::Index k = basis.cols();
	Eigen::MatrixXd visible_basis(static_cast<Eigen::Index>(rows.size()), k);
	Eigen::VectorXd residual(static_cast<Eigen::Index>(rows.size()));
	const Eigen::Map<const Eigen::VectorXd> obs(observed.colors.data(), 3 * n);
	for (std::size_t r = 0; r < rows.size(); ++r) {
		const auto i = static_cast<Eigen::Index>(r);
		visible_basis.row(i) = basis.row(rows[r]);
		residual(i) = obs(rows[r]) - model.mean_texture()(rows[r]);
	}

	Eigen::MatrixXd normal = visible_basis.transpose() * visible_basis;
	normal.diagonal().array() += lambda;
	const Eigen::VectorXd rhs = visible_basis.transpose() * residual;
	Eigen::VectorXd coeffs = normal.ldlt().solve(rhs);

	TextureProjection out;
	out.coefficients.values = std::move(coeffs);
	out.reconstructed = synthesize_texture(model, out.coefficients);
	out.combined.colors.resize(n, 3);
	for (Eigen::Index v = 0; v < n; ++v) {
		if (visible[v]) {
			out.combined.colors.row(v) = observed.colors.row(v);
		} else {
			out.combined.colors.row(v) = out.reconstructed.colors.row(v);
		}
	}

	if (blend == TextureBlend::feathered) {
		std::vector<bool> border(static_cast<std::size_t>(n), false);
		for (const auto& tri : *model.triangles()) {
			bool any_hidden = false;
			for (auto idx : tri) {
				any_hidden = any_hidden || !visible[idx];
			}
			if (any_hidden) {
				for (auto idx : tri) {
					border[idx] = visible[idx];
				}
			}
		}
		for (Eigen::Index v = 0; v < n; ++v) {
			if (border[v]) {
				out.combined.colors.row(v) = 0.5 * (observed.colors.row(v) + out.reconstructed.colors.row(v));
			}
		}
	}
	return out;
}

} // namespace ief3dmm::morphablemodel

#endif /* IEF3DMM_TEXTURE_PROJECTION_HPP_ */
