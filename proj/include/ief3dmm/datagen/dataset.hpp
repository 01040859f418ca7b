/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/datagen/dataset.hpp
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

#ifndef IEF3DMM_DATAGEN_DATASET_HPP_
#define IEF3DMM_DATAGEN_DATASET_HPP_

#include "ief3dmm/datagen/sample.hpp"
#include "ief3dmm/datagen/streams.hpp"
#include "ief3dmm/io/binary.hpp"
#include "ief3dmm/io/digest.hpp"
#include "ief3dmm/io/text.hpp"
#include "ief3dmm/morphablemodel/io.hpp"
#include "ief3dmm/render/image_io.hpp"
#include "ief3dmm/render/pose_io.hpp"

#include "fmt/format.h"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace ief3dmm::datagen {

/// Files belonging to one sample, relative to the dataset directory.
struct SampleFiles
{
	std::uint64_t sample_id = 0;
	std::string face;     ///< masked face image, P5
	std::string shading;  ///< shading image of alpha_t, P5
	std::string coeffs;   ///< alpha_t, alpha_gt, texture, pose, lighting blocks
	std::string mask;     ///< alpha_t coverage, P5 {0, 255}
	std::string full;     ///< unmasked face image, P5
	std::string pose;     ///< pose text file, as read by the reconstruct command
};

struct DatasetManifest
{
	std::string model_hash;
	std::uint64_t master_seed = 0;
	int width = 0;
	int height = 0;
	std::vector<SampleFiles> samples;

	std::size_t count() const { return samples.size(); }
};

inline SampleFiles sample_file_names(std::uint64_t id)
{
	const std::string stem = fmt::format("sample_{:06d}", id);
	return {id, stem + "_face.pgm", stem + "_shading.pgm", stem + "_coeffs.bin",
	        stem + "_mask.pgm", stem + "_full.pgm", stem + "_pose.txt"};
}

/// SHA-256 of the model's MFM1 serialisation.
inline std::string model_digest(const morphablemodel::MorphableModel& model)
{
	const auto bytes = morphablemodel::serialize_model(model);
	return io::sha256_hex(std::string_view(bytes.data(), bytes.size()));
}

/*
 * Coefficient file: five blocks, each a u32 length followed by that many f64:
 *
 *   alpha_t (stacked), alpha_gt (stacked), texture,
 *   pose (scale, rotation row-major, translation),
 *   lighting (ambient, diffuse, specular, shininess, light_dir)
 */
inline void write_coefficients(const TrainingSample& s, const std::filesystem::path& path)
{
	io::BinaryWriter w;
	auto block = [&w](const Eigen::VectorXd& v) {
		w.write_u32(static_cast<std::uint32_t>(v.size()));
		w.write_f64_array({v.data(), static_cast<std::size_t>(v.size())});
	};
	block(s.alpha_t.stacked());
	block(s.alpha_gt.stacked());
	block(s.texture.values);
	Eigen::VectorXd pose(13);
	pose(0) = s.pose.scale;
	for (int r = 0; r < 3; ++r) {
		for (int c = 0; c < 3; ++c) {
			pose(1 + 3 * r + c) = s.pose.rotation(r, c);
		}
	}
	pose.tail<3>() = s.pose.translation;
	block(pose);
	Eigen::VectorXd light(7);
	light << s.lighting.ambient, s.lighting.diffuse, s.lighting.specular, s.lighting.shininess, s.lighting.light_dir;
	block(light);
	w.save(path);
}

/// Reads a coefficient file back into `s`; n_id splits the stacked vectors.
inline void read_coefficients(const std::filesystem::path& path, Eigen::Index n_id, TrainingSample& s)
{
	auto r = io::BinaryReader::from_file(path);
	auto block = [&r](Eigen::Index expected, const char* what) {
		const Eigen::Index n = r.read_u32();
		if (expected >= 0 && n != expected) {
			r.fail(std::string(what) + " block has " + std::to_string(n) + " values, expected "
			       + std::to_string(expected));
		}
		Eigen::VectorXd v(n);
		r.read_f64_array({v.data(), static_cast<std::size_t>(n)});
		return v;
	};
	const Eigen::VectorXd alpha_t = block(-1, "alpha_t");
	const Eigen::VectorXd alpha_gt = block(alpha_t.size(), "alpha_gt");
	if (n_id > alpha_t.size()) {
		r.fail("coefficient blocks are shorter than the model's identity dimension");
	}
	s.alpha_t = morphablemodel::GeometryCoefficients::from_stacked(alpha_t, n_id);
	s.alpha_gt = morphablemodel::GeometryCoefficients::from_stacked(alpha_gt, n_id);
	s.texture.values = block(-1, "texture");
	const Eigen::VectorXd pose = block(13, "pose");
	s.pose.scale = pose(0);
	for (int row = 0; row < 3; ++row) {
		for (int c = 0; c < 3; ++c) {
			s.pose.rotation(row, c) = pose(1 + 3 * row + c);
		}
	}
	s.pose.translation = pose.tail<3>();
	const Eigen::VectorXd light = block(7, "lighting");
	s.lighting.ambient = light(0);
	s.lighting.diffuse = light(1);
	s.lighting.specular = light(2);
	s.lighting.shininess = light(3);
	s.lighting.light_dir = light.tail<3>();
	if (!r.at_end()) {
		r.fail("trailing bytes after coefficient blocks");
	}
}

inline void write_sample(const TrainingSample& s, const SampleFiles& files, const std::filesystem::path& dir)
{
	render::write_pnm(s.face_image, dir / files.face);
	render::write_pnm(s.shading_image, dir / files.shading);
	write_coefficients(s, dir / files.coeffs);
	render::write_mask(s.shading_mask, s.shading_image.width(), s.shading_image.height(), dir / files.mask);
	render::write_pnm(s.full_face_image, dir / files.full);
	render::write_pose(s.pose, dir / files.pose);
}

inline std::string format_manifest(const DatasetManifest& m)
{
	std::string out = "format=ief3dmm-dataset-1\n";
	out += "model_hash=" + m.model_hash + "\n";
	out += "count=" + std::to_string(m.count()) + "\n";
	out += "width=" + std::to_string(m.width) + "\n";
	out += "height=" + std::to_string(m.height) + "\n";
	out += "master_seed=" + std::to_string(m.master_seed) + "\n";
	out += "# id face shading coeffs mask full pose\n";
	for (const auto& f : m.samples) {
		out += fmt::format("{} {} {} {} {} {} {}\n", f.sample_id, f.face, f.shading, f.coeffs, f.mask, f.full,
		                   f.pose);
	}
	return out;
}

/**
 * Generates `count` samples into `out_dir` and writes manifest.txt. Sample i
 * draws from derive_stream(master_seed, i), so the bytes on disk do not depend
 * on the number of workers.
 */
inline DatasetManifest generate_dataset(std::uint64_t master_seed, const morphablemodel::MorphableModel& model,
                                        std::size_t count, const std::filesystem::path& out_dir,
                                        const SampleOptions& options, unsigned workers = 1)
{
	if (count < 1) {
		throw std::invalid_argument("dataset count must be at least 1");
	}
	std::error_code ec;
	std::filesystem::create_directories(out_dir, ec);
	if (ec) {
		throw io::IoError("cannot create '" + out_dir.string() + "': " + ec.message());
	}

	DatasetManifest manifest;
	manifest.model_hash = model_digest(model);
	manifest.master_seed = master_seed;
	manifest.width = options.width;
	manifest.height = options.height;
	manifest.samples.resize(count);

	std::atomic<std::size_t> next{0};
	std::exception_ptr error;
	std::mutex error_mutex;
	auto work = [&] {
		for (std::size_t i = next++; i < count; i = next++) {
			try {
				auto rng = derive_stream(master_seed, i);
				TrainingSample s = generate_sample(rng, model, options);
				s.sample_id = i;
				manifest.samples[i] = sample_file_names(i);
				write_sample(s, manifest.samples[i], out_dir);
			} catch (...) {
				const std::lock_guard lock(error_mutex);
				if (!error) {
					error = std::current_exception();
				}
				next = count;
			}
		}
	};
	const unsigned n_threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
	std::vector<std::jthread> threads;
	for (unsigned t = 1; t < n_threads; ++t) {
		threads.emplace_back(work);
	}
	work();
	threads.clear();
	if (error) {
		std::rethrow_exception(error);
	}
	io::write_text(format_manifest(manifest), out_dir / "manifest.txt");
	return manifest;
}

inline DatasetManifest read_manifest(const std::filesystem::path& dir)
{
	const auto path = dir / "manifest.txt";
	auto fail = [&path](const std::string& what) { return io::IoError("'" + path.string() + "': " + what); };
	DatasetManifest m;
	std::map<std::string, std::string> header;
	for (const auto& line : io::read_lines(path)) {
		const auto eq = line.find('=');
		if (eq != std::string::npos && line.find(' ') == std::string::npos) {
			header[line.substr(0, eq)] = line.substr(eq + 1);
			continue;
		}
		std::istringstream in(line);
		SampleFiles f;
		if (!(in >> f.sample_id >> f.face >> f.shading >> f.coeffs >> f.mask >> f.full >> f.pose)) {
			throw fail("malformed sample line '" + line + "'");
		}
		m.samples.push_back(std::move(f));
	}
	for (const char* key : {"format", "model_hash", "count", "width", "height", "master_seed"}) {
		if (!header.contains(key)) {
			throw fail(std::string("missing header key '") + key + "'");
		}
	}
	if (header["format"] != "ief3dmm-dataset-1") {
		throw fail("unsupported format '" + header["format"] + "'");
	}
	try {
		m.model_hash = header["model_hash"];
		m.width = std::stoi(header["width"]);
		m.height = std::stoi(header["height"]);
		m.master_seed = std::stoull(header["master_seed"]);
		if (std::stoull(header["count"]) != m.samples.size() || m.samples.empty()) {
			throw fail("count " + header["count"] + " does not match " + std::to_string(m.samples.size())
			           + " sample lines");
		}
	} catch (const std::logic_error&) {
		throw fail("malformed header value");
	}
	for (const auto& f : m.samples) {
		for (const auto* name : {&f.face, &f.shading, &f.coeffs, &f.mask, &f.full, &f.pose}) {
			if (!std::filesystem::exists(dir / *name)) {
				throw io::IoError("'" + (dir / *name).string() + "': referenced by manifest but missing");
			}
		}
	}
	return m;
}

/// Loads one sample back, bit-identical to what generate_sample returned.
inline TrainingSample load_sample(const std::filesystem::path& dir, const SampleFiles& files,
                                  const morphablemodel::MorphableModel& model)
{
	TrainingSample s;
	s.sample_id = files.sample_id;
	s.face_image = render::read_pnm(dir / files.face);
	s.shading_image = render::read_pnm(dir / files.shading);
	s.shading_mask = render::read_mask(dir / files.mask);
	s.full_face_image = render::read_pnm(dir / files.full);
	read_coefficients(dir / files.coeffs, model.num_identity(), s);
	if (s.alpha_gt.size() != model.num_shape()) {
		throw io::IoError("'" + (dir / files.coeffs).string() + "': " + std::to_string(s.alpha_gt.size())
		                  + " shape coefficients, model has " + std::to_string(model.num_shape()));
	}
	return s;
}

} // namespace ief3dmm::datagen

#endif /* IEF3DMM_DATAGEN_DATASET_HPP_ */
