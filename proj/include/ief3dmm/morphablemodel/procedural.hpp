/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/morphablemodel/procedural.hpp
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

#ifndef IEF3DMM_PROCEDURAL_HPP_
#define IEF3DMM_PROCEDURAL_HPP_

#include "ief3dmm/defaults.hpp"
#include "ief3dmm/morphablemodel/MorphableModel.hpp"

#include "Eigen/Core"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ief3dmm::morphablemodel {

/**
 * Parameters of the procedural model builder. The bases are random smooth
 * fields, so the model has the algebraic structure of a scanned 3DMM without
 * needing licensed data.
 */
struct ProceduralModelConfig
{
	std::uint64_t seed = 1;
	Eigen::Index num_identity = defaults::num_identity;
	Eigen::Index num_expression = defaults::num_expression;
	Eigen::Index num_texture = defaults::num_texture;
	int grid_resolution = defaults::grid_resolution;
};

namespace detail {

/// Fixed 2D positions of the 68 landmarks in normalised face coordinates
/// (unit disk, +y up), in the usual jaw / brows / nose / eyes / mouth order.
inline std::vector<std::array<double, 2>> landmark_layout()
{
	std::vector<std::array<double, 2>> pts;
	pts.reserve(68);
	const double pi = std::numbers::pi;
	for (int k = 0; k < 17; ++k) { // jaw, left ear to right ear through the chin
		const double theta = (170.0 + 200.0 * k / 16.0) * pi / 180.0;
		pts.push_back({0.93 * std::cos(theta), 0.93 * std::sin(theta)});
	}
	for (int side = -1; side <= 1; side += 2) { // brows
		for (int k = 0; k < 5; ++k) {
			const double s = k / 4.0;
			const double x = side < 0 ? -0.72 + 0.55 * s : 0.17 + 0.55 * s;
			const double y = 0.42 + 0.08 * std::sin(pi * s);
			pts.push_back({x, y});
		}
	}
	for (int k = 0; k < 4; ++k) { // nose bridge
		pts.push_back({0.0, 0.32 - 0.13 * k});
	}
	for (int k = 0; k < 5; ++k) { // nostrils
		pts.push_back({-0.16 + 0.08 * k, -0.16 - 0.03 * std::sin(pi * k / 4.0)});
	}
	for (int side = -1; side <= 1; side += 2) { // eyes
		const double cx = 0.38 * side;
		for (int k = 0; k < 6; ++k) {
			const double theta = pi - 2.0 * pi * k / 6.0;
			pts.push_back({cx + 0.15 * std::cos(theta), 0.22 + 0.06 * std::sin(theta)});
		}
	}
	for (int k = 0; k < 12; ++k) { // outer lips
		const double theta = pi - 2.0 * pi * k / 12.0;
		pts.push_back({0.30 * std::cos(theta), -0.52 + 0.13 * std::sin(theta)});
	}
	for (int k = 0; k < 8; ++k) { // inner lips
		const double theta = pi - 2.0 * pi * k / 8.0;
		pts.push_back({0.19 * std::cos(theta), -0.52 + 0.05 * std::sin(theta)});
	}
	return pts;
}

struct Blob
{
	double x, y, sigma, height;
};

/// Gaussian bumps that shape the mean heightfield: nose, brow ridge, cheeks,
/// eye sockets, lips and chin.
inline std::vector<Blob> face_blobs()
{
	return {
	    {0.0, -0.02, 0.13, 0.30},   // nose
	    {0.0, 0.18, 0.08, 0.10},    // bridge
	    {-0.36, 0.40, 0.16, 0.08},  // brows
	    {0.36, 0.40, 0.16, 0.08},
	    {-0.38, 0.22, 0.11, -0.10}, // eye sockets
	    {0.38, 0.22, 0.11, -0.10},
	    {-0.45, -0.18, 0.20, 0.06}, // cheeks
	    {0.45, -0.18, 0.20, 0.06},
	    {0.0, -0.50, 0.12, 0.06},   // lips
	    {0.0, -0.82, 0.14, 0.05},   // chin
	};
}

/// Modified Gram-Schmidt of `candidate` against the first `count` columns of
/// `basis`, run twice for numerical orthogonality. Returns the residual norm
/// before normalisation.
inline double orthonormalize_against(const Eigen::MatrixXd& basis, Eigen::Index count, Eigen::VectorXd& candidate)
{
	const double initial = candidate.norm();
	for (int pass = 0; pass < 2; ++pass) {
		for (Eigen::Index c = 0; c < count; ++c) {
			candidate -= basis.col(c).dot(candidate) * basis.col(c);
		}
	}
	const double norm = candidate.norm();
	if (norm > 0.0) {
		candidate /= norm;
	}
	return initial > 0.0 ? norm / initial : 0.0;
}

} // namespace detail

/**
 * Builds a face-like morphable model over a grid_resolution^2 vertex grid.
 *
 * The grid is mapped onto an elliptical face outline with a smooth heightfield
 * (dome plus fixed Gaussian features) as the mean shape, facing +z. Shape
 * bases are sums of random Gaussian displacement fields; [A_id | A_exp] is
 * orthonormalised jointly and A_T separately. Output is a pure function of the
 * configuration.
 *
 * Geometry is in normalised units: the mean face spans roughly 4 units
 * vertically, so that unit-variance coefficients on orthonormal columns move
 * the surface visibly.
 */
inline MorphableModel build_procedural_model(const ProceduralModelConfig& config)
{
	const int g = config.grid_resolution;
	if (g < 2) {
		throw std::invalid_argument("grid resolution must be at least 2");
	}
	if (config.num_identity < 1 || config.num_expression < 1 || config.num_texture < 1) {
		throw std::invalid_argument("model dimensions must be at least 1");
	}
	const Eigen::Index n = static_cast<Eigen::Index>(g) * g;
	const Eigen::Index dim = 3 * n;
	if (config.num_identity + config.num_expression > dim) {
		throw std::invalid_argument("n_id + n_exp = " + std::to_string(config.num_identity + config.num_expression)
		                            + " exceeds 3N = " + std::to_string(dim));
	}
	if (config.num_texture > dim) {
		throw std::invalid_argument("n_T = " + std::to_string(config.num_texture) + " exceeds 3N = "
		                            + std::to_string(dim));
	}

	const double half_height = 2.0;
	const double half_width = 0.78 * half_height;
	const double dome_depth = 0.45 * half_height;

	// Disk coordinates of every vertex, used both for the surface and as the
	// domain of the random fields.
	Eigen::MatrixX2d disk(n, 2);
	for (int i = 0; i < g; ++i) {
		for (int j = 0; j < g; ++j) {
			const double u = 2.0 * j / (g - 1) - 1.0;
			const double v = 1.0 - 2.0 * i / (g - 1);
			const Eigen::Index idx = static_cast<Eigen::Index>(i) * g + j;
			disk(idx, 0) = u * std::sqrt(1.0 - 0.5 * v * v);
			disk(idx, 1) = v * std::sqrt(1.0 - 0.5 * u * u);
		}
	}

	Eigen::VectorXd mean_shape(dim);
	const auto blobs = detail::face_blobs();
	for (Eigen::Index idx = 0; idx < n; ++idx) {
		const double x = disk(idx, 0);
		const double y = disk(idx, 1);
		double z = dome_depth * std::sqrt(std::max(0.0, 1.0 - 0.85 * (x * x + y * y)));
		for (const auto& b : blobs) {
			const double dx = x - b.x;
			const double dy = y - b.y;
			z += half_height * b.height * std::exp(-(dx * dx + dy * dy) / (2.0 * b.sigma * b.sigma));
		}
		mean_shape(3 * idx) = half_width * x;
		mean_shape(3 * idx + 1) = half_height * y;
		mean_shape(3 * idx + 2) = z;
	}
	for (int c = 0; c < 3; ++c) {
		double sum = 0.0;
		for (Eigen::Index idx = 0; idx < n; ++idx) {
			sum += mean_shape(3 * idx + c);
		}
		const double centroid = sum / static_cast<double>(n);
		for (Eigen::Index idx = 0; idx < n; ++idx) {
			mean_shape(3 * idx + c) -= centroid;
		}
	}

	Topology triangles;
	triangles.reserve(2 * static_cast<std::size_t>(g - 1) * (g - 1));
	for (int i = 0; i + 1 < g; ++i) {
		for (int j = 0; j + 1 < g; ++j) {
			const auto a = static_cast<std::uint32_t>(i * g + j);
			const auto b = static_cast<std::uint32_t>((i + 1) * g + j);
			const auto c = static_cast<std::uint32_t>(i * g + j + 1);
			const auto d = static_cast<std::uint32_t>((i + 1) * g + j + 1);
			triangles.push_back({a, b, c});
			triangles.push_back({c, b, d});
		}
	}

	std::mt19937_64 rng(config.seed);
	std::uniform_real_distribution<double> unit(0.0, 1.0);
	std::normal_distribution<double> normal(0.0, 1.0);

	// Sum of a few Gaussian bumps with random centres, widths and xyz (or rgb)
	// amplitudes. `region` concentrates expression fields around eyes and mouth.
	enum class Region { whole, expressive };
	auto random_field = [&](Region region) {
		Eigen::VectorXd field = Eigen::VectorXd::Zero(dim);
		for (int k = 0; k < 3; ++k) {
			double cx, cy;
			if (region == Region::expressive) {
				const bool mouth = unit(rng) < 0.6;
				const bool left = unit(rng) < 0.5;
				const double jx = unit(rng) - 0.5;
				const double jy = unit(rng) - 0.5;
				cx = mouth ? 0.5 * jx : (left ? -0.38 : 0.38) + 0.3 * jx;
				cy = mouth ? -0.52 + 0.3 * jy : 0.3 + 0.3 * jy;
			} else {
				const double r = std::sqrt(unit(rng));
				const double phi = 2.0 * std::numbers::pi * unit(rng);
				cx = r * std::cos(phi);
				cy = r * std::sin(phi);
			}
			const double sigma = 0.15 + 0.3 * unit(rng);
			const double ax = normal(rng);
			const double ay = normal(rng);
			const double az = normal(rng);
			for (Eigen::Index idx = 0; idx < n; ++idx) {
				const double dx = disk(idx, 0) - cx;
				const double dy = disk(idx, 1) - cy;
				const double w = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
				field(3 * idx) += ax * w;
				field(3 * idx + 1) += ay * w;
				field(3 * idx + 2) += az * w;
			}
		}
		return field;
	};

	auto fill_orthonormal = [&](Eigen::MatrixXd& basis, Eigen::Index first, Eigen::Index count, Region region) {
		for (Eigen::Index c = first; c < first + count; ++c) {
			for (int attempt = 0;; ++attempt) {
				Eigen::VectorXd candidate = random_field(region);
				if (detail::orthonormalize_against(basis, c, candidate) > 1e-6) {
					basis.col(c) = candidate;
					break;
				}
				if (attempt > 64) {
					// The smooth field family is exhausted; fall back to white
					// noise, which is almost surely independent.
					for (Eigen::Index r = 0; r < dim; ++r) {
						candidate(r) = normal(rng);
					}
					detail::orthonormalize_against(basis, c, candidate);
					basis.col(c) = candidate;
					break;
				}
			}
		}
	};

	Eigen::MatrixXd shape_basis(dim, config.num_identity + config.num_expression);
	fill_orthonormal(shape_basis, 0, config.num_identity, Region::whole);
	fill_orthonormal(shape_basis, config.num_identity, config.num_expression, Region::expressive);

	Eigen::MatrixXd texture_basis(dim, config.num_texture);
	fill_orthonormal(texture_basis, 0, config.num_texture, Region::whole);

	Eigen::VectorXd mean_texture(dim);
	for (Eigen::Index idx = 0; idx < n; ++idx) {
		const double x = disk(idx, 0);
		const double y = disk(idx, 1);
		const double lips = std::exp(-(x * x / 0.06 + (y + 0.52) * (y + 0.52) / 0.012));
		mean_texture(3 * idx) = 0.80 + 0.05 * lips;
		mean_texture(3 * idx + 1) = 0.60 - 0.15 * lips;
		mean_texture(3 * idx + 2) = 0.50 - 0.10 * lips;
	}

	std::vector<std::uint32_t> landmarks;
	for (const auto& p : detail::landmark_layout()) {
		Eigen::Index best = 0;
		double best_d = std::numeric_limits<double>::infinity();
		for (Eigen::Index idx = 0; idx < n; ++idx) {
			const double dx = disk(idx, 0) - p[0];
			const double dy = disk(idx, 1) - p[1];
			const double d = dx * dx + dy * dy;
			if (d < best_d) {
				best_d = d;
				best = idx;
			}
		}
		landmarks.push_back(static_cast<std::uint32_t>(best));
	}

	return MorphableModel(std::move(mean_shape), shape_basis.leftCols(config.num_identity),
	                      shape_basis.rightCols(config.num_expression), std::move(mean_texture),
	                      std::move(texture_basis), std::move(triangles), std::move(landmarks));
}

/// Convenience overload with the builder's positional parameters.
inline MorphableModel build_procedural_model(std::uint64_t seed, Eigen::Index n_id, Eigen::Index n_exp,
                                             Eigen::Index n_tex, int grid_resolution)
{
	return build_procedural_model(ProceduralModelConfig{seed, n_id, n_exp, n_tex, grid_resolution});
}

/**
 * Picks `count` of the model's landmarks, evenly spread over its landmark
 * list (so a small subset still covers jaw, brows, nose, eyes and mouth).
 */
inline std::vector<std::size_t> landmark_subset(std::size_t available, std::size_t count)
{
	if (count == 0 || count > available) {
		throw std::invalid_argument("cannot pick " + std::to_string(count) + " of " + std::to_string(available)
		                            + " landmarks");
	}
	std::vector<std::size_t> out;
	out.reserve(count);
	for (std::size_t k = 0; k < count; ++k) {
		out.push_back(k * available / count);
	}
	return out;
}

} // namespace ief3dmm::morphablemodel

#endif /* IEF3DMM_PROCEDURAL_HPP_ */
