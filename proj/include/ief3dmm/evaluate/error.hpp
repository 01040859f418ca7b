/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/evaluate/error.hpp
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

#ifndef IEF3DMM_EVALUATE_ERROR_HPP_
#define IEF3DMM_EVALUATE_ERROR_HPP_

#include "ief3dmm/io/binary.hpp"
#include "ief3dmm/io/text.hpp"
#include "ief3dmm/morphablemodel/MorphableModel.hpp"
#include "ief3dmm/render/Image.hpp"
#include "ief3dmm/render/Pose.hpp"
#include "ief3dmm/render/rasterizer.hpp"

#include "Eigen/Core"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace ief3dmm::evaluate {

/// Per-vertex Euclidean distances with summary statistics.
struct ErrorReport
{
	Eigen::VectorXd distances;
	double mean = 0.0;
	double median = 0.0;
	double max = 0.0;
	double rms = 0.0;
};

inline ErrorReport make_report(Eigen::VectorXd distances)
{
	if (distances.size() == 0) {
		throw std::invalid_argument("error report needs at least one distance");
	}
	ErrorReport r;
	r.distances = std::move(distances);
	const auto n = r.distances.size();
	r.mean = r.distances.mean();
	r.max = r.distances.maxCoeff();
	r.rms = std::sqrt(r.distances.squaredNorm() / static_cast<double>(n));
	std::vector<double> sorted(r.distances.data(), r.distances.data() + n);
	std::sort(sorted.begin(), sorted.end());
	const auto half = static_cast<std::size_t>(n / 2);
	r.median = n % 2 == 1 ? sorted[half] : 0.5 * (sorted[half - 1] + sorted[half]);
	return r;
}

inline ErrorReport pointwise_error(const morphablemodel::Mesh& aligned, const morphablemodel::Mesh& ground_truth)
{
	if (aligned.num_vertices() != ground_truth.num_vertices()) {
		throw std::invalid_argument("cannot compare meshes with " + std::to_string(aligned.num_vertices()) + " and "
		                            + std::to_string(ground_truth.num_vertices()) + " vertices");
	}
	return make_report((aligned.vertices - ground_truth.vertices).rowwise().norm());
}

/// Linear blue-to-red map of value / max_value; a zero range maps to blue.
inline Eigen::Vector3d heat_color(double value, double max_value)
{
	const double u = max_value > 0.0 ? std::clamp(value / max_value, 0.0, 1.0) : 0.0;
	return {u, 0.0, 1.0 - u};
}

/// Renders the mesh coloured by per-vertex error over [0, max error].
inline render::Image error_heatmap(const morphablemodel::Mesh& mesh, const ErrorReport& report,
                                   const render::PoseParams& pose, int width, int height)
{
	if (report.distances.size() != mesh.num_vertices()) {
		throw std::invalid_argument("error report does not match the mesh's vertex count");
	}
	Eigen::MatrixXd colors(mesh.num_vertices(), 3);
	for (Eigen::Index i = 0; i < colors.rows(); ++i) {
		colors.row(i) = heat_color(report.distances(i), report.max).transpose();
	}
	return render::rasterize(mesh, colors, pose, width, height).image;
}

inline std::string format_report(const ErrorReport& report)
{
	return "vertices " + std::to_string(report.distances.size()) + "\nmean " + io::format_double(report.mean)
	       + "\nmedian " + io::format_double(report.median) + "\nmax " + io::format_double(report.max) + "\nrms "
	       + io::format_double(report.rms) + "\n";
}

/// Summary block as text; optionally the raw distances as u32 count + f64 values.
inline void write_report(const ErrorReport& report, const std::filesystem::path& path,
                         const std::filesystem::path& raw_path = {})
{
	io::write_text(format_report(report), path);
	if (!raw_path.empty()) {
		io::BinaryWriter w;
		w.write_u32(static_cast<std::uint32_t>(report.distances.size()));
		w.write_f64_array({report.distances.data(), static_cast<std::size_t>(report.distances.size())});
		w.save(raw_path);
	}
}

inline Eigen::VectorXd read_raw_distances(const std::filesystem::path& path)
{
	auto r = io::BinaryReader::from_file(path);
	const auto n = r.read_u32();
	if (r.remaining() != static_cast<std::size_t>(n) * 8) {
		r.fail("size does not match header");
	}
	Eigen::VectorXd out(n);
	r.read_f64_array({out.data(), static_cast<std::size_t>(n)});
	return out;
}

} // namespace ief3dmm::evaluate

#endif /* IEF3DMM_EVALUATE_ERROR_HPP_ */
