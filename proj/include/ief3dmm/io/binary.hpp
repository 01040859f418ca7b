/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/io/binary.hpp
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

#ifndef IEF3DMM_IO_BINARY_HPP_
#define IEF3DMM_IO_BINARY_HPP_

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ief3dmm::io {

/**
 * Raised for any failure while reading or writing a file. The message always
 * names the offending path.
 */
class IoError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

namespace detail {

template <typename T>
inline T byteswap_if_big(T value)
{
	if constexpr (std::endian::native == std::endian::big) {
		std::array<unsigned char, sizeof(T)> bytes;
		std::memcpy(bytes.data(), &value, sizeof(T));
		std::reverse(bytes.begin(), bytes.end());
		std::memcpy(&value, bytes.data(), sizeof(T));
	}
	return value;
}

} // namespace detail

/**
 * Little-endian writer over an in-memory byte buffer. Files are assembled in
 * memory and flushed in one go so that a failed write never leaves a partially
 * valid file behind silently.
 */
class BinaryWriter
{
public:
	void write_bytes(std::string_view bytes)
	{
		buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
	}

	void write_u32(std::uint32_t value) { write_pod(value); }

	void write_f64(double value) { write_pod(value); }

	void write_f32(float value) { write_pod(value); }

	void write_f64_array(std::span<const double> values)
	{
		for (double v : values) {
			write_f64(v);
		}
	}

	const std::vector<char>& buffer() const { return buffer_; }

	void save(const std::filesystem::path& path) const
	{
		std::ofstream out(path, std::ios::binary | std::ios::trunc);
		if (!out) {
			throw IoError("cannot open '" + path.string() + "' for writing");
		}
		out.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
		if (!out) {
			throw IoError("write failed for '" + path.string() + "'");
		}
	}

private:
	template <typename T>
	void write_pod(T value)
	{
		value = detail::byteswap_if_big(value);
		const auto* p = reinterpret_cast<const char*>(&value);
		buffer_.insert(buffer_.end(), p, p + sizeof(T));
	}

	std::vector<char> buffer_;
};

/// Reads an entire file into memory.
inline std::vector<char> read_file(const std::filesystem::path& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw IoError("cannot open '" + path.string() + "' for reading");
	}
	in.seekg(0, std::ios::end);
	const auto size = in.tellg();
	in.seekg(0, std::ios::beg);
	std::vector<char> data(static_cast<std::size_t>(size));
	in.read(data.data(), size);
	if (!in) {
		throw IoError("read failed for '" + path.string() + "'");
	}
	return data;
}

/**
 * Little-endian cursor over a byte buffer. Every read is bounds-checked; a
 * truncated file raises an IoError carrying the source name.
 */
class BinaryReader
{
public:
	BinaryReader(std::vector<char> data, std::string source) : data_(std::move(data)), source_(std::move(source)) {}

	static BinaryReader from_file(const std::filesystem::path& path)
	{
		return BinaryReader(read_file(path), path.string());
	}

	std::string read_bytes(std::size_t n)
	{
		require(n);
		std::string out(data_.data() + pos_, n);
		pos_ += n;
		return out;
	}

	std::uint32_t read_u32() { return read_pod<std::uint32_t>(); }

	double read_f64() { return read_pod<double>(); }

	float read_f32() { return read_pod<float>(); }

	void read_f64_array(std::span<double> out)
	{
		for (double& v : out) {
			v = read_f64();
		}
	}

	bool at_end() const { return pos_ == data_.size(); }

	std::size_t remaining() const { return data_.size() - pos_; }

	const std::string& source() const { return source_; }

	[[noreturn]] void fail(const std::string& what) const
	{
		throw IoError("'" + source_ + "': " + what);
	}

private:
	void require(std::size_t n) const
	{
		if (data_.size() - pos_ < n) {
			fail("unexpected end of file");
		}
	}

	template <typename T>
	T read_pod()
	{
		require(sizeof(T));
		T value;
		std::memcpy(&value, data_.data() + pos_, sizeof(T));
		pos_ += sizeof(T);
		return detail::byteswap_if_big(value);
	}

	std::vector<char> data_;
	std::string source_;
	std::size_t pos_ = 0;
};

} // namespace ief3dmm::io

#endif /* IEF3DMM_IO_BINARY_HPP_ */
