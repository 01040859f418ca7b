/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/io/off.hpp
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

#ifndef IEF3DMM_IO_OFF_HPP_
#define IEF3DMM_IO_OFF_HPP_

#include "ief3dmm/io/text.hpp"
#include "ief3dmm/morphablemodel/MorphableModel.hpp"

#include <filesystem>
#include <string>

namespace ief3dmm::io {

/// Mesh as OFF text: header, vertex lines, then triangle lines.
inline std::string format_off(const morphablemodel::Mesh& mesh)
{
	std::string out = "OFF\n" + std::to_string(mesh.num_vertices()) + " " + std::to_string(mesh.triangles->size())
	                  + " 0\n";
	for (Eigen::Index i = 0; i < mesh.num_vertices(); ++i) {
		out += format_double(mesh.vertices(i, 0)) + " " + format_double(mesh.vertices(i, 1)) + " "
		       + format_double(mesh.vertices(i, 2)) + "\n";
	}
	for (const auto& t : *mesh.triangles) {
		out += "3 " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]) + "\n";
	}
	return out;
}

inline void write_off(const morphablemodel::Mesh& mesh, const std::filesystem::path& path)
{
	write_text(format_off(mesh), path);
}

} // namespace ief3dmm::io

#endif /* IEF3DMM_IO_OFF_HPP_ */
