/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: tests/test_datagen.cpp
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

#include "ief3dmm/datagen/dataset.hpp"
#include "ief3dmm/datagen/sample.hpp"
#include "ief3dmm/datagen/streams.hpp"
#include "ief3dmm/io/digest.hpp"
#include "ief3dmm/morphablemodel/geometry_loss.hpp"
#include "ief3dmm/morphablemodel/procedural.hpp"

#include "gtest/gtest.h"

#include <filesystem>
#include <set>

using namespace ief3dmm;
using ief3dmm::testing::TempDir;

namespace {

const morphablemodel::MorphableModel& small_model()
{
	static const auto model = morphablemodel::build_procedural_model(3, 8, 4, 6, 16);
	return model;
}

datagen::SampleOptions small_options(int size = 48)
{
	return datagen::default_sample_options(small_model(), size, size);
}

std::string directory_digest(const std::filesystem::path& dir)
{
	std::set<std::filesystem::path> files;
	for (const auto& entry : std::filesystem::directory_iterator(dir)) {
		files.insert(entry.path().filename());
	}
	std::string all;
	for (const auto& f : files) {
		all += f.string() + " " + io::sha256_file(dir / f) + "\n";
	}
	return io::sha256_hex(all);
}

} // namespace

TEST(Streams, DependOnlyOnSeedAndIndex)
{
	auto a = datagen::derive_stream(42, 7);
	auto b = datagen::derive_stream(42, 7);
	EXPECT_EQ(a(), b());
	EXPECT_NE(datagen::derive_stream(42, 7)(), datagen::derive_stream(42, 8)());
	EXPECT_NE(datagen::derive_stream(42, 7)(), datagen::derive_stream(43, 7)());
	EXPECT_NE(datagen::derive_stream(1ULL << 32, 0)(), datagen::derive_stream(0, 0)());
}

TEST(SampleIntermediate, Endpoints)
{
	std::mt19937_64 rng(1);
	const auto gt = morphablemodel::sample_geometry_coefficients(rng, small_model());
	std::mt19937_64 r1(5), r0(5), rr(5);
	const auto at_one = datagen::sample_intermediate(r1, gt, 1.0);
	EXPECT_EQ(at_one.identity, gt.identity);
	EXPECT_EQ(at_one.expression, gt.expression);
	const auto at_zero = datagen::sample_intermediate(r0, gt, 0.0);
	const Eigen::VectorXd rand_id = morphablemodel::sample_normal_vector(rr, gt.identity.size());
	const Eigen::VectorXd rand_exp = morphablemodel::sample_normal_vector(rr, gt.expression.size());
	EXPECT_EQ(at_zero.identity, rand_id);
	EXPECT_EQ(at_zero.expression, rand_exp);
}

TEST(SampleIntermediate, VarianceAtZeroGroundTruth)
{
	std::mt19937_64 rng(77);
	const auto zero = morphablemodel::GeometryCoefficients::zeros(3, 2);
	const int draws = 100000;
	Eigen::VectorXd sum = Eigen::VectorXd::Zero(5), sq = Eigen::VectorXd::Zero(5);
	for (int i = 0; i < draws; ++i) {
		const Eigen::VectorXd a = datagen::sample_intermediate(rng, zero).stacked();
		sum += a;
		sq += a.cwiseAbs2();
	}
	// Oracle: Var[(1 - u) z] = E[(1 - u)^2] E[z^2] = integral_0^1 (1 - u)^2 du.
	const double expected = 1.0 / 3.0;
	for (int c = 0; c < 5; ++c) {
		const double mean = sum(c) / draws;
		EXPECT_NEAR(sq(c) / draws - mean * mean, expected, 0.05 * expected) << "component " << c;
	}
}

TEST(SampleIntermediate, CorpusSpansDistances)
{
	std::mt19937_64 rng(8);
	const auto& model = small_model();
	double all = 0.0, high = 0.0;
	int n_high = 0;
	const int draws = 10000;
	for (int i = 0; i < draws; ++i) {
		const auto gt = morphablemodel::sample_geometry_coefficients(rng, model);
		const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
		const double loss = morphablemodel::geometry_loss(model, datagen::sample_intermediate(rng, gt, u), gt);
		all += loss;
		if (u > 0.8) {
			high += loss;
			++n_high;
		}
	}
	EXPECT_GT(all / draws, 0.0);
	EXPECT_LT(high / n_high, all / draws);
}

TEST(GenerateSample, Deterministic)
{
	auto r1 = datagen::derive_stream(9, 0);
	auto r2 = datagen::derive_stream(9, 0);
	const auto a = datagen::generate_sample(r1, small_model(), small_options());
	const auto b = datagen::generate_sample(r2, small_model(), small_options());
	EXPECT_EQ(a.face_image.data(), b.face_image.data());
	EXPECT_EQ(a.shading_image.data(), b.shading_image.data());
	EXPECT_EQ(a.shading_mask, b.shading_mask);
	EXPECT_EQ(a.alpha_t.stacked(), b.alpha_t.stacked());
	EXPECT_EQ(a.alpha_gt.stacked(), b.alpha_gt.stacked());
	EXPECT_EQ(a.pose.rotation, b.pose.rotation);
}

TEST(GenerateSample, FaceImageIsMaskedByShading)
{
	for (std::uint64_t i = 0; i < 10; ++i) {
		auto rng = datagen::derive_stream(3, i);
		const auto s = datagen::generate_sample(rng, small_model(), small_options());
		ASSERT_EQ(s.face_image.width(), 48);
		ASSERT_EQ(s.face_image.channels(), 1);
		std::size_t shaded = 0;
		for (std::size_t p = 0; p < s.shading_mask.size(); ++p) {
			if (!s.shading_mask[p]) {
				EXPECT_EQ(s.face_image.data()[p], 0.0);
				EXPECT_EQ(s.shading_image.data()[p], 0.0);
			} else {
				EXPECT_EQ(s.face_image.data()[p], s.full_face_image.data()[p]);
				++shaded;
			}
		}
		EXPECT_GT(shaded, 0u);
	}
}

TEST(GenerateSample, ForcedGroundTruthGivesIdenticalMasks)
{
	auto options = small_options();
	options.forced_interpolation = 1.0;
	for (std::uint64_t i = 0; i < 5; ++i) {
		auto rng = datagen::derive_stream(4, i);
		const auto s = datagen::generate_sample(rng, small_model(), options);
		EXPECT_EQ(s.alpha_t.stacked(), s.alpha_gt.stacked());
		const auto face = datagen::render_face(small_model(), s.alpha_gt, s.texture, s.pose, s.lighting, 48, 48);
		EXPECT_EQ(face.mask, s.shading_mask);
		EXPECT_EQ(face.image.data(), s.face_image.data());
	}
}

TEST(GenerateSample, RegenerationConsistency)
{
	for (std::uint64_t i = 0; i < 5; ++i) {
		auto rng = datagen::derive_stream(5, i);
		const auto s = datagen::generate_sample(rng, small_model(), small_options());
		const auto face = datagen::render_face(small_model(), s.alpha_gt, s.texture, s.pose, s.lighting, 48, 48);
		for (std::size_t p = 0; p < face.mask.size(); ++p) {
			if (face.mask[p] && s.shading_mask[p]) {
				EXPECT_NEAR(face.image.data()[p], s.face_image.data()[p], 1e-9);
			}
		}
		const auto shading = datagen::render_shading(small_model(), s.alpha_t, s.pose, 48, 48);
		EXPECT_EQ(shading.image.data(), s.shading_image.data());
	}
}

TEST(GenerateSample, ExhaustedRetriesThrow)
{
	auto options = small_options();
	options.max_pose_attempts = 0;
	auto rng = datagen::derive_stream(1, 1);
	EXPECT_THROW(datagen::generate_sample(rng, small_model(), options), std::runtime_error);
}

TEST(Dataset, WorkerCountDoesNotChangeBytes)
{
	TempDir one, four;
	datagen::generate_dataset(11, small_model(), 6, one.path(), small_options(), 1);
	datagen::generate_dataset(11, small_model(), 6, four.path(), small_options(), 4);
	EXPECT_EQ(directory_digest(one.path()), directory_digest(four.path()));
	EXPECT_EQ(io::sha256_file(one / "manifest.txt"), io::sha256_file(four / "manifest.txt"));
}

TEST(Dataset, ReadBackIsBitIdentical)
{
	TempDir dir;
	const auto options = small_options();
	const auto manifest = datagen::generate_dataset(12, small_model(), 3, dir.path(), options, 2);
	const auto read = datagen::read_manifest(dir.path());
	EXPECT_EQ(read.model_hash, datagen::model_digest(small_model()));
	EXPECT_EQ(read.master_seed, 12u);
	EXPECT_EQ(read.width, 48);
	ASSERT_EQ(read.count(), 3u);
	for (std::size_t i = 0; i < read.count(); ++i) {
		auto rng = datagen::derive_stream(12, i);
		const auto expected = datagen::generate_sample(rng, small_model(), options);
		const auto got = datagen::load_sample(dir.path(), read.samples[i], small_model());
		EXPECT_EQ(got.sample_id, i);
		EXPECT_EQ(got.face_image.data(), expected.face_image.data());
		EXPECT_EQ(got.shading_image.data(), expected.shading_image.data());
		EXPECT_EQ(got.full_face_image.data(), expected.full_face_image.data());
		EXPECT_EQ(got.shading_mask, expected.shading_mask);
		EXPECT_EQ(got.alpha_t.stacked(), expected.alpha_t.stacked());
		EXPECT_EQ(got.alpha_gt.stacked(), expected.alpha_gt.stacked());
		EXPECT_EQ(got.texture.values, expected.texture.values);
		EXPECT_EQ(got.pose.rotation, expected.pose.rotation);
		EXPECT_EQ(got.pose.translation, expected.pose.translation);
		EXPECT_EQ(got.pose.scale, expected.pose.scale);
		EXPECT_EQ(got.lighting.light_dir, expected.lighting.light_dir);
		EXPECT_EQ(got.lighting.ambient, expected.lighting.ambient);
		EXPECT_EQ(got.lighting.specular, expected.lighting.specular);
	}
}

TEST(Dataset, RegenerationGivesSameManifestHash)
{
	TempDir a, b;
	datagen::generate_dataset(13, small_model(), 2, a.path(), small_options(), 1);
	datagen::generate_dataset(13, small_model(), 2, b.path(), small_options(), 2);
	EXPECT_EQ(io::sha256_file(a / "manifest.txt"), io::sha256_file(b / "manifest.txt"));
}

TEST(Dataset, DifferentSeedsGiveDistinctGroundTruth)
{
	TempDir a, b;
	const auto ma = datagen::generate_dataset(1, small_model(), 4, a.path(), small_options(), 2);
	const auto mb = datagen::generate_dataset(2, small_model(), 4, b.path(), small_options(), 2);
	std::set<std::vector<double>> seen;
	for (const auto* m : {&ma, &mb}) {
		const auto& dir = m == &ma ? a.path() : b.path();
		for (const auto& files : m->samples) {
			const auto s = datagen::load_sample(dir, files, small_model());
			const Eigen::VectorXd v = s.alpha_gt.stacked();
			seen.insert(std::vector<double>(v.data(), v.data() + v.size()));
		}
	}
	EXPECT_EQ(seen.size(), 8u);
}

TEST(Dataset, Errors)
{
	TempDir dir;
	EXPECT_THROW(datagen::generate_dataset(1, small_model(), 0, dir.path(), small_options()), std::invalid_argument);
	datagen::generate_dataset(1, small_model(), 2, dir.path(), small_options());
	std::filesystem::remove(dir / "sample_000001_coeffs.bin");
	try {
		datagen::read_manifest(dir.path());
		FAIL() << "missing file not reported";
	} catch (const io::IoError& e) {
		EXPECT_NE(std::string(e.what()).find("sample_000001_coeffs.bin"), std::string::npos);
	}
	EXPECT_THROW(datagen::read_manifest(dir / "nowhere"), io::IoError);

	// A file that is in the way of the output directory names the path.
	io::write_text("x", dir / "blocker");
	try {
		datagen::generate_dataset(1, small_model(), 1, dir / "blocker" / "sub", small_options());
		FAIL() << "unwritable output not reported";
	} catch (const io::IoError& e) {
		EXPECT_NE(std::string(e.what()).find("blocker"), std::string::npos);
	}
}

TEST(Dataset, TruncatedCoefficientFileIsRejected)
{
	TempDir dir;
	const auto m = datagen::generate_dataset(1, small_model(), 1, dir.path(), small_options());
	const auto path = dir / m.samples[0].coeffs;
	std::filesystem::resize_file(path, std::filesystem::file_size(path) - 4);
	EXPECT_THROW(datagen::load_sample(dir.path(), m.samples[0], small_model()), io::IoError);
	const auto other = morphablemodel::build_procedural_model(3, 9, 4, 6, 16);
	datagen::generate_dataset(1, small_model(), 1, dir.path(), small_options());
	EXPECT_THROW(datagen::load_sample(dir.path(), m.samples[0], other), io::IoError);
}
