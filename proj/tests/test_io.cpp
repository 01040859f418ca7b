/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: tests/test_io.cpp
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
#include "temp_dir.hpp"

#include "ief3dmm/io/binary.hpp"
#include "ief3dmm/io/digest.hpp"
#include "ief3dmm/io/off.hpp"
#include "ief3dmm/io/text.hpp"
#include "ief3dmm/morphablemodel/io.hpp"
#include "ief3dmm/morphablemodel/procedural.hpp"
#include "ief3dmm/render/image_io.hpp"
#include "ief3dmm/render/pose_io.hpp"
#include "ief3dmm/render/sampling.hpp"

#include "gtest/gtest.h"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

using namespace ief3dmm;
using ief3dmm::testing::TempDir;

namespace {

std::string error_of(const auto& fn)
{
	try {
		fn();
	} catch (const std::exception& e) {
		return e.what();
	}
	return {};
}

} // namespace

TEST(Digest, KnownVectors)
{
	EXPECT_EQ(io::sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
	EXPECT_EQ(io::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
	TempDir dir;
	io::write_text("abc", dir / "abc.txt");
	EXPECT_EQ(io::sha256_file(dir / "abc.txt"), io::sha256_hex("abc"));
}

TEST(Binary, LittleEndianLayout)
{
	io::BinaryWriter w;
	w.write_u32(0x01020304u);
	w.write_f64(1.0);
	const auto& b = w.buffer();
	ASSERT_EQ(b.size(), 12u);
	EXPECT_EQ(static_cast<unsigned char>(b[0]), 0x04);
	EXPECT_EQ(static_cast<unsigned char>(b[3]), 0x01);
	EXPECT_EQ(static_cast<unsigned char>(b[11]), 0x3f);
	EXPECT_EQ(static_cast<unsigned char>(b[10]), 0xf0);
}

TEST(ModelFile, RoundTripIsBitExact)
{
	TempDir dir;
	const auto model = morphablemodel::build_procedural_model(1, 6, 3, 4, 12);
	morphablemodel::save_model(model, dir / "m.mfm");
	const auto back = morphablemodel::load_model(dir / "m.mfm");
	EXPECT_EQ(back.mean_shape(), model.mean_shape());
	EXPECT_EQ(back.identity_basis(), model.identity_basis());
	EXPECT_EQ(back.expression_basis(), model.expression_basis());
	EXPECT_EQ(back.mean_texture(), model.mean_texture());
	EXPECT_EQ(back.texture_basis(), model.texture_basis());
	EXPECT_EQ(*back.triangles(), *model.triangles());
	EXPECT_EQ(back.landmark_vertices(), model.landmark_vertices());
	morphablemodel::save_model(back, dir / "again.mfm");
	EXPECT_EQ(io::sha256_file(dir / "m.mfm"), io::sha256_file(dir / "again.mfm"));
}

TEST(ModelFile, ErrorsNameTheFile)
{
	TempDir dir;
	io::write_text("XXXX0000000000000000", dir / "bad_magic.mfm");
	const auto msg = error_of([&] { morphablemodel::load_model(dir / "bad_magic.mfm"); });
	EXPECT_NE(msg.find("bad_magic.mfm"), std::string::npos) << msg;
	EXPECT_NE(msg.find("magic"), std::string::npos) << msg;

	const auto model = morphablemodel::build_procedural_model(1, 2, 1, 1, 6);
	morphablemodel::save_model(model, dir / "short.mfm");
	std::filesystem::resize_file(dir / "short.mfm", 200);
	EXPECT_THROW(morphablemodel::load_model(dir / "short.mfm"), io::IoError);
	EXPECT_THROW(morphablemodel::load_model(dir / "absent.mfm"), io::IoError);

	// Out-of-range triangle index is reported as an invalid model.
	auto bytes = morphablemodel::serialize_model(model);
	const auto tri_offset = 24 + static_cast<std::size_t>(model.mean_shape().size()) * 8 * (2 + 2 + 1 + 1);
	bytes[tri_offset] = static_cast<char>(0xff);
	bytes[tri_offset + 1] = static_cast<char>(0xff);
	io::BinaryWriter w;
	w.write_bytes(std::string_view(bytes.data(), bytes.size()));
	w.save(dir / "bad_tri.mfm");
	EXPECT_NE(error_of([&] { morphablemodel::load_model(dir / "bad_tri.mfm"); }).find("invalid model"),
	          std::string::npos);
}

TEST(ImageFile, PgmAndPpmRoundTrip)
{
	TempDir dir;
	std::mt19937_64 rng(3);
	for (int channels : {1, 3}) {
		render::Image image(7, 5, channels);
		for (auto& v : image.data()) {
			v = static_cast<double>(rng() % 256) / 255.0;
		}
		render::write_pnm(image, dir / "img.pnm");
		const auto back = render::read_pnm(dir / "img.pnm");
		EXPECT_EQ(back.width(), 7);
		EXPECT_EQ(back.height(), 5);
		EXPECT_EQ(back.channels(), channels);
		EXPECT_EQ(back.data(), image.data());
	}
	const auto bytes = io::read_file(dir / "img.pnm");
	EXPECT_EQ(std::string(bytes.data(), 11), "P6\n7 5\n255\n");
}

TEST(ImageFile, RejectsMalformed)
{
	TempDir dir;
	io::write_text("P2\n1 1\n255\n0\n", dir / "ascii.pgm");
	EXPECT_THROW(render::read_pnm(dir / "ascii.pgm"), io::IoError);
	io::write_text("P5\n2 2\n255\nabc", dir / "short.pgm");
	EXPECT_NE(error_of([&] { render::read_pnm(dir / "short.pgm"); }).find("short.pgm"), std::string::npos);
	io::write_text("P5\n1 1\n65535\nab", dir / "deep.pgm");
	EXPECT_THROW(render::read_pnm(dir / "deep.pgm"), io::IoError);
	io::write_text("P5\n# comment\n1 1\n255\nA", dir / "comment.pgm");
	EXPECT_EQ(render::read_pnm(dir / "comment.pgm").at(0, 0), 65.0 / 255.0);
}

TEST(MaskAndDepth, RoundTrip)
{
	TempDir dir;
	const render::Mask mask{1, 0, 0, 1, 1, 0};
	render::write_mask(mask, 3, 2, dir / "mask.pgm");
	EXPECT_EQ(render::read_mask(dir / "mask.pgm"), mask);
	const std::vector<double> depth{0.5, -std::numeric_limits<double>::infinity(), 2.25, -1.0, 0.0, 3.0};
	render::write_depth(depth, 3, 2, dir / "depth.bin");
	const auto back = render::read_depth(dir / "depth.bin");
	EXPECT_EQ(back.width, 3);
	EXPECT_EQ(back.height, 2);
	for (std::size_t i = 0; i < depth.size(); ++i) {
		EXPECT_EQ(back.values[i], static_cast<float>(depth[i]));
	}
}

TEST(PoseFile, RoundTripAndValidation)
{
	TempDir dir;
	const auto model = morphablemodel::build_procedural_model(1, 2, 1, 1, 8);
	std::mt19937_64 rng(12);
	const auto pose = render::sample_pose(rng, render::pose_distribution_for(model, 200));
	render::write_pose(pose, dir / "pose.txt");
	const auto back = render::read_pose(dir / "pose.txt");
	EXPECT_EQ(back.scale, pose.scale);
	EXPECT_EQ(back.rotation, pose.rotation);
	EXPECT_EQ(back.translation, pose.translation);

	io::write_text("scale 1\nrotation 1 0 0 0 1 0 0 0 1\n", dir / "partial.txt");
	EXPECT_THROW(render::read_pose(dir / "partial.txt"), io::IoError);
	io::write_text("scale 1\nrotation 2 0 0 0 1 0 0 0 1\ntranslation 0 0 0\n", dir / "scaled.txt");
	EXPECT_THROW(render::read_pose(dir / "scaled.txt"), io::IoError);
	io::write_text("scale 1\nrotation 1 0 0 0 1 0 0 0\ntranslation 0 0 0\n", dir / "short.txt");
	EXPECT_THROW(render::read_pose(dir / "short.txt"), io::IoError);
	io::write_text("zoom 1\n", dir / "unknown.txt");
	EXPECT_NE(error_of([&] { render::read_pose(dir / "unknown.txt"); }).find("zoom"), std::string::npos);
}

TEST(OffFile, Layout)
{
	morphablemodel::Vertices v(3, 3);
	v << 0, 0, 0, 1, 0, 0.5, 0, 1, -0.25;
	const morphablemodel::Mesh mesh{v, std::make_shared<const morphablemodel::Topology>(
	                                       morphablemodel::Topology{{0, 1, 2}})};
	EXPECT_EQ(io::format_off(mesh), "OFF\n3 1 0\n0 0 0\n1 0 0.5\n0 1 -0.25\n3 0 1 2\n");
}

TEST(Text, ShortestRoundTripDoubles)
{
	std::mt19937_64 rng(4);
	std::normal_distribution<double> g;
	for (int i = 0; i < 1000; ++i) {
		const double x = g(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
		EXPECT_EQ(std::stod(io::format_double(x)), x);
	}
	EXPECT_EQ(io::format_double(0.1), "0.1");
}
