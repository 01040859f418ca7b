/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/render/rasterizer.hpp
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

#ifndef IEF3DMM_RENDER_RASTERIZER_HPP_
#define IEF3DMM_RENDER_RASTERIZER_HPP_

#include "ief3dmm/morphablemodel/MorphableModel.hpp"
#include "ief3dmm/render/Image.hpp"
#include "ief3dmm/render/Pose.hpp"
#include "ief3dmm/render/projection.hpp"

#include "Eigen/Core"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace ief3dmm::render {

namespace detail {

/// Edge function of the directed edge a -> b evaluated at p (y down).
inline double edge_function(const Eigen::Vector2d& a, const Eigen::Vector2d& b, double px, double py)
{
	return (b.x() - a.x()) * (py - a.y()) - (b.y() - a.y()) * (px - a.x());
}

/// Top-left rule for triangles with positive edge_function area (clockwise on
/// screen): a top edge is horizontal running right, a left edge runs upwards.
inline bool is_top_left(const Eigen::Vector2d& a, const Eigen::Vector2d& b)
{
	return (a.y() == b.y() && b.x() > a.x()) || b.y() < a.y();
}

inline bool edge_covers(double w, bool top_left)
{
	return w > 0.0 || (w == 0.0 && top_left);
}

} // namespace detail

/**
 * Z-buffered rasterisation of already projected vertices.
 *
 * Pixels are sampled at their centres (x + 0.5, y + 0.5); shared edges follow
 * the top-left fill rule so adjacent triangles never double-cover a pixel.
 * Depth and colour are interpolated barycentrically. A fragment wins when its
 * depth is strictly larger than the stored one (larger rotated z is nearer
 * the viewer), so among equal depths the earlier triangle is kept.
 *
 * @param points N x 2 pixel coordinates.
 * @param depth Per-vertex rotated z.
 * @param colors N x C vertex attributes, C in {1, 3}.
 */
inline RasterOutput rasterize_projected(const Eigen::MatrixX2d& points, const Eigen::VectorXd& depth,
                                        const morphablemodel::Topology& triangles, const Eigen::MatrixXd& colors,
                                        int width, int height)
{
	const auto channels = static_cast<int>(colors.cols());
	if (colors.rows() != points.rows() || depth.size() != points.rows()) {
		throw std::invalid_argument("rasterizer needs one colour and depth per vertex");
	}
	RasterOutput out{Image(width, height, channels), Mask(static_cast<std::size_t>(width) * height, 0),
	                 std::vector<double>(static_cast<std::size_t>(width) * height,
	                                     -std::numeric_limits<double>::infinity())};

	for (const auto& tri : triangles) {
		std::array<Eigen::Index, 3> v{tri[0], tri[1], tri[2]};
		Eigen::Vector2d p0 = points.row(v[0]);
		Eigen::Vector2d p1 = points.row(v[1]);
		Eigen::Vector2d p2 = points.row(v[2]);
		double area = detail::edge_function(p0, p1, p2.x(), p2.y());
		if (area == 0.0 || !std::isfinite(area)) {
			continue;
		}
		if (area < 0.0) {
			std::swap(p1, p2);
			std::swap(v[1], v[2]);
			area = -area;
		}
		const bool tl0 = detail::is_top_left(p1, p2);
		const bool tl1 = detail::is_top_left(p2, p0);
		const bool tl2 = detail::is_top_left(p0, p1);

		const double min_x = std::min({p0.x(), p1.x(), p2.x()});
		const double max_x = std::max({p0.x(), p1.x(), p2.x()});
		const double min_y = std::min({p0.y(), p1.y(), p2.y()});
		const double max_y = std::max({p0.y(), p1.y(), p2.y()});
		// Clamp in floating point before converting so far-off vertices cannot
		// overflow the integer range.
		auto first_center = [](double lo, int size) {
			return static_cast<int>(std::clamp(std::ceil(lo - 0.5), 0.0, static_cast<double>(size)));
		};
		auto last_center = [](double hi, int size) {
			return static_cast<int>(std::clamp(std::floor(hi - 0.5), -1.0, static_cast<double>(size - 1)));
		};
		const int x_begin = first_center(min_x, width);
		const int x_end = last_center(max_x, width);
		const int y_begin = first_center(min_y, height);
		const int y_end = last_center(max_y, height);

		for (int y = y_begin; y <= y_end; ++y) {
			const double py = y + 0.5;
			for (int x = x_begin; x <= x_end; ++x) {
				const double px = x + 0.5;
				const double w0 = detail::edge_function(p1, p2, px, py);
				const double w1 = detail::edge_function(p2, p0, px, py);
				const double w2 = detail::edge_function(p0, p1, px, py);
				if (!detail::edge_covers(w0, tl0) || !detail::edge_covers(w1, tl1) || !detail::edge_covers(w2, tl2)) {
					continue;
				}
				const double l0 = w0 / area;
				const double l1 = w1 / area;
				const double l2 = w2 / area;
				const double z = l0 * depth(v[0]) + l1 * depth(v[1]) + l2 * depth(v[2]);
				const auto pixel = static_cast<std::size_t>(y) * width + x;
				if (out.mask[pixel] && !(z > out.depth[pixel])) {
					continue;
				}
				out.mask[pixel] = 1;
				out.depth[pixel] = z;
				for (int c = 0; c < channels; ++c) {
					out.image.at(x, y, c) = l0 * colors(v[0], c) + l1 * colors(v[1], c) + l2 * colors(v[2], c);
				}
			}
		}
	}
	return out;
}

/// Projects the mesh with the given pose and rasterises it with per-vertex
/// colours (N x 1 or N x 3).
inline RasterOutput rasterize(const morphablemodel::Mesh& mesh, const Eigen::MatrixXd& colors, const PoseParams& pose,
                              int width, int height)
{
	const auto projected = project_vertices(mesh, pose, width, height);
	return rasterize_projected(projected.points, projected.depth, *mesh.triangles, colors, width, height);
}

} // namespace ief3dmm::render

#endif /* IEF3DMM_RENDER_RASTERIZER_HPP_ */
