/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/io/text.hpp
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

#ifndef IEF3DMM_IO_TEXT_HPP_
#define IEF3DMM_IO_TEXT_HPP_

#include "ief3dmm/io/binary.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace ief3dmm::io {

/// Shortest decimal form that parses back to the identical double.
inline std::string format_double(double value)
{
	return fmt::format("{}", value);
}

inline void write_text(const std::string& text, const std::filesystem::path& path)
{
	BinaryWriter w;
	w.write_bytes(text);
	w.save(path);
}

/// Splits a text file into lines, dropping blank lines and '#' comments.
inline std::vector<std::string> read_lines(const std::filesystem::path& path)
{
	std::ifstream in(path);
	if (!in) {
		throw IoError("cannot open '" + path.string() + "' for reading");
	}
	std::vector<std::string> out;
	std::string line;
	while (std::getline(in, line)) {
		if (!line.empty() && line.back() == '\r') {
			line.pop_back();
		}
		const auto first = line.find_first_not_of(" \t");
		if (first == std::string::npos || line[first] == '#') {
			continue;
		}
		out.push_back(line);
	}
	return out;
}

} // namespace ief3dmm::io

#endif /* IEF3DMM_IO_TEXT_HPP_ */
