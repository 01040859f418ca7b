/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/render/pose_io.hpp
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

#ifndef IEF3DMM_RENDER_POSE_IO_HPP_
#define IEF3DMM_RENDER_POSE_IO_HPP_

#include "ief3dmm/io/text.hpp"
#include "ief3dmm/render/Pose.hpp"

#include <filesystem>
#include <sstream>
#include <string>

namespace ief3dmm::render {

// Pose files are three lines of text:
//
//   scale <f>
//   rotation <r00> <r01> <r02> <r10> <r11> <r12> <r20> <r21> <r22>
//   translation <tx> <ty> <tz>
//
// Numbers are written in shortest round-trip form.

inline std::string format_pose(const PoseParams& pose)
{
	std::string out = "scale " + io::format_double(pose.scale) + "\nrotation";
	for (int r = 0; r < 3; ++r) {
		for (int c = 0; c < 3; ++c) {
			out += " " + io::format_double(pose.rotation(r, c));
		}
	}
	out += "\ntranslation";
	for (int i = 0; i < 3; ++i) {
		out += " " + io::format_double(pose.translation(i));
	}
	out += "\n";
	return out;
}

inline void write_pose(const PoseParams& pose, const std::filesystem::path& path)
{
	io::write_text(format_pose(pose), path);
}

inline PoseParams read_pose(const std::filesystem::path& path)
{
	PoseParams pose;
	bool seen_scale = false, seen_rotation = false, seen_translation = false;
	auto fail = [&path](const std::string& what) { return io::IoError("'" + path.string() + "': " + what); };
	for (const auto& line : io::read_lines(path)) {
		std::istringstream in(line);
		std::string key;
		in >> key;
		if (key == "scale") {
			in >> pose.scale;
			seen_scale = true;
		} else if (key == "rotation") {
			for (int r = 0; r < 3; ++r) {
				for (int c = 0; c < 3; ++c) {
					in >> pose.rotation(r, c);
				}
			}
			seen_rotation = true;
		} else if (key == "translation") {
			in >> pose.translation(0) >> pose.translation(1) >> pose.translation(2);
			seen_translation = true;
		} else {
			throw fail("unknown pose key '" + key + "'");
		}
		if (in.fail()) {
			throw fail("malformed line '" + line + "'");
		}
	}
	if (!seen_scale || !seen_rotation || !seen_translation) {
		throw fail("pose file needs scale, rotation and translation lines");
	}
	try {
		validate(pose);
	} catch (const std::invalid_argument& e) {
		throw fail(e.what());
	}
	return pose;
}

} // namespace ief3dmm::render

#endif /* IEF3DMM_RENDER_POSE_IO_HPP_ */
