/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/morphablemodel/io.hpp
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

#ifndef IEF3DMM_MORPHABLEMODEL_IO_HPP_
#define IEF3DMM_MORPHABLEMODEL_IO_HPP_

#include "ief3dmm/io/binary.hpp"
#include "ief3dmm/morphablemodel/MorphableModel.hpp"

#include "Eigen/Core"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace ief3dmm::morphablemodel {

/*
 * MFM1 layout, all little-endian:
 *
 *   "MFM1"
 *   u32 N, M, n_id, n_exp, n_T
 *   f64 mu_S[3N], A_id[3N * n_id], A_exp[3N * n_exp], mu_T[3N], A_T[3N * n_T]
 *       (matrices column-major)
 *   u32 triangles[3M]
 *   optional trailer: "LMK1", u32 K, u32 landmark_vertices[K]
 */
inline constexpr std::string_view mfm1_magic = "MFM1";
inline constexpr std::string_view landmark_trailer_magic = "LMK1";

inline std::vector<char> serialize_model(const MorphableModel& model)
{
	io::BinaryWriter w;
	w.write_bytes(mfm1_magic);
	w.write_u32(static_cast<std::uint32_t>(model.num_vertices()));
	w.write_u32(static_cast<std::uint32_t>(model.triangles()->size()));
	w.write_u32(static_cast<std::uint32_t>(model.num_identity()));
	w.write_u32(static_cast<std::uint32_t>(model.num_expression()));
	w.write_u32(static_cast<std::uint32_t>(model.num_texture()));
	auto write_matrix = [&w](const auto& m) {
		for (Eigen::Index c = 0; c < m.cols(); ++c) {
			for (Eigen::Index r = 0; r < m.rows(); ++r) {
				w.write_f64(m(r, c));
			}
		}
	};
	w.write_f64_array(std::span(model.mean_shape().data(), static_cast<std::size_t>(model.mean_shape().size())));
	write_matrix(model.identity_basis());
	write_matrix(model.expression_basis());
	w.write_f64_array(std::span(model.mean_texture().data(), static_cast<std::size_t>(model.mean_texture().size())));
	write_matrix(model.texture_basis());
	for (const auto& tri : *model.triangles()) {
		for (auto idx : tri) {
			w.write_u32(idx);
		}
	}
	if (!model.landmark_vertices().empty()) {
		w.write_bytes(landmark_trailer_magic);
		w.write_u32(static_cast<std::uint32_t>(model.landmark_vertices().size()));
		for (auto idx : model.landmark_vertices()) {
			w.write_u32(idx);
		}
	}
	return w.buffer();
}

inline void save_model(const MorphableModel& model, const std::filesystem::path& path)
{
	io::BinaryWriter w;
	const auto bytes = serialize_model(model);
	w.write_bytes(std::string_view(bytes.data(), bytes.size()));
	w.save(path);
}

inline MorphableModel parse_model(io::BinaryReader& r)
{
	if (r.read_bytes(4) != mfm1_magic) {
		r.fail("not an MFM1 model file (bad magic)");
	}
	const Eigen::Index n = r.read_u32();
	const std::uint32_t m = r.read_u32();
	const Eigen::Index n_id = r.read_u32();
	const Eigen::Index n_exp = r.read_u32();
	const Eigen::Index n_tex = r.read_u32();
	const Eigen::Index dim = 3 * n;
	const auto needed = static_cast<std::size_t>(dim) * (2 + n_id + n_exp + n_tex) * 8 + std::size_t{m} * 12;
	if (r.remaining() < needed) {
		r.fail("truncated model file (header announces more data than present)");
	}

	auto read_matrix = [&r, dim](Eigen::Index cols) {
		Eigen::MatrixXd out(dim, cols);
		r.read_f64_array(std::span(out.data(), static_cast<std::size_t>(out.size())));
		return out;
	};
	Eigen::VectorXd mean_shape(dim);
	r.read_f64_array(std::span(mean_shape.data(), static_cast<std::size_t>(dim)));
	Eigen::MatrixXd identity = read_matrix(n_id);
	Eigen::MatrixXd expression = read_matrix(n_exp);
	Eigen::VectorXd mean_texture(dim);
	r.read_f64_array(std::span(mean_texture.data(), static_cast<std::size_t>(dim)));
	Eigen::MatrixXd texture = read_matrix(n_tex);
	Topology triangles(m);
	for (auto& tri : triangles) {
		for (auto& idx : tri) {
			idx = r.read_u32();
		}
	}
	std::vector<std::uint32_t> landmarks;
	if (!r.at_end()) {
		if (r.read_bytes(4) != landmark_trailer_magic) {
			r.fail("unrecognised trailer after triangle list");
		}
		landmarks.resize(r.read_u32());
		for (auto& idx : landmarks) {
			idx = r.read_u32();
		}
		if (!r.at_end()) {
			r.fail("trailing bytes after landmark trailer");
		}
	}
	try {
		return MorphableModel(std::move(mean_shape), identity, expression, std::move(mean_texture),
		                      std::move(texture), std::move(triangles), std::move(landmarks));
	} catch (const std::invalid_argument& e) {
		r.fail(std::string("invalid model: ") + e.what());
	}
}

inline MorphableModel load_model(const std::filesystem::path& path)
{
	auto reader = io::BinaryReader::from_file(path);
	return parse_model(reader);
}

} // namespace ief3dmm::morphablemodel

#endif /* IEF3DMM_MORPHABLEMODEL_IO_HPP_ */
