/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: tests/cli_runner.hpp
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

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

namespace ief3dmm::testing {

struct RunResult
{
	int status = -1;
	std::string output; ///< stdout and stderr, interleaved
};

/// Runs the ief3dmm executable with a shell-quoted argument string.
inline RunResult run_cli(const std::string& args)
{
	const std::string command = std::string(IEF3DMM_CLI_PATH) + " " + args + " 2>&1";
	RunResult r;
	FILE* pipe = popen(command.c_str(), "r");
	if (pipe == nullptr) {
		return r;
	}
	std::array<char, 4096> buffer{};
	while (std::fgets(buffer.data(), static_cast<int>(buffer.size()), pipe) != nullptr) {
		r.output += buffer.data();
	}
	const int raw = pclose(pipe);
	r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
	return r;
}

inline std::string quote(const std::filesystem::path& p)
{
	return "'" + p.string() + "'";
}

} // namespace ief3dmm::testing
