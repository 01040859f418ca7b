/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: tests/temp_dir.hpp
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

#include "gtest/gtest.h"

#include <filesystem>
#include <string>

namespace ief3dmm::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir
{
public:
	TempDir()
	{
		const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
		std::string name = "ief3dmm_test";
		if (info != nullptr) {
			name += std::string("_") + info->test_suite_name() + "_" + info->name();
		}
		static int counter = 0;
		name += "_" + std::to_string(counter++);
		path_ = std::filesystem::temp_directory_path() / name;
		std::filesystem::remove_all(path_);
		std::filesystem::create_directories(path_);
	}
	~TempDir()
	{
		std::error_code ec;
		std::filesystem::remove_all(path_, ec);
	}
	TempDir(const TempDir&) = delete;
	TempDir& operator=(const TempDir&) = delete;

	const std::filesystem::path& path() const { return path_; }
	std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
	std::filesystem::path path_;
};

} // namespace ief3dmm::testing
