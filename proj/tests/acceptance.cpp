/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: tests/acceptance.cpp
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
// Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include "cli_runner.hpp"
#include "oracles.hpp"

#include "ief3dmm/ief3dmm.hpp"

#include "fmt/format.h"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace ief3dmm;
using morphablemodel::GeometryCoefficients;
using morphablemodel::MorphableModel;
using ief3dmm::testing::quote;
using ief3dmm::testing::run_cli;
namespace fs = std::filesystem;

namespace {

struct Outcome
{
	bool pass = false;
	std::string detail;
};

class Stopwatch
{
public:
	double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

private:
	std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

MorphableModel reduced_model()
{
	morphablemodel::ProceduralModelConfig config;
	config.seed = 1;
	config.num_identity = 30;
	config.num_expression = 10;
	return morphablemodel::build_procedural_model(config);
}

fs::path scratch(const std::string& name)
{
	const auto dir = fs::temp_directory_path() / ("ief3dmm_acceptance_" + name);
	fs::remove_all(dir);
	fs::create_directories(dir);
	return dir;
}

std::string directory_digest(const fs::path& dir)
{
	std::set<fs::path> files;
	for (const auto& entry : fs::directory_iterator(dir)) {
		files.insert(entry.path().filename());
	}
	std::string listing;
	for (const auto& f : files) {
		listing += f.string() + " " + io::sha256_file(dir / f) + "\n";
	}
	return io::sha256_hex(listing);
}

// Runs a CLI command; a nonzero exit becomes an exception carrying its output.
std::string must_run(const std::string& args)
{
	const auto r = run_cli(args);
	if (r.status != 0) {
		throw std::runtime_error("'ief3dmm " + args + "' exited with " + std::to_string(r.status) + ": " + r.output);
	}
	return r.output;
}

Outcome default_constants()
{
	const auto output = must_run("defaults");
	const auto j = nlohmann::json::parse(output);
	std::vector<std::string> wrong;
	auto expect = [&](const char* key, const nlohmann::json& value) {
		if (!j.contains(key) || j[key] != value) {
			wrong.push_back(fmt::format("{}={}", key, j.contains(key) ? j[key].dump() : "missing"));
		}
	};
	expect("n_id", 200);
	expect("n_exp", 84);
	expect("n_shape", 284);
	expect("n_tex", 200);
	expect("image_width", 200);
	expect("image_height", 200);
	expect("input_channels", 2);
	expect("iterations", 3);
	expect("shininess", 10.0);
	expect("phong_means", nlohmann::json::array({0.5, 0.7, 0.05}));
	if (!wrong.empty()) {
		std::string list;
		for (const auto& w : wrong) {
			list += " " + w;
		}
		return {false, "unexpected defaults:" + list};
	}
	return {true, "n_id 200, n_exp 84 (284), n_tex 200, 200x200x2, 3 iterations, shininess 10, Phong (0.5, 0.7, 0.05)"};
}

Outcome loss_oracle()
{
	const auto model = reduced_model();
	Stopwatch clock;
	std::mt19937_64 rng(2);
	double worst_loss = 0.0, worst_grad = 0.0;
	const double h = 1e-6;
	for (int pair = 0; pair < 100; ++pair) {
		const auto x = morphablemodel::sample_geometry_coefficients(rng, model);
		const auto y = morphablemodel::sample_geometry_coefficients(rng, model);
		const double loss = morphablemodel::geometry_loss(model, x, y);
		const double brute = oracle::vertexwise_loss(model, x, y);
		worst_loss = std::max(worst_loss, std::abs(loss - brute) / brute);

		const Eigen::VectorXd grad = morphablemodel::geometry_loss_gradient(model, x, y);
		Eigen::VectorXd fd(grad.size());
		for (Eigen::Index k = 0; k < grad.size(); ++k) {
			Eigen::VectorXd plus = x.stacked(), minus = x.stacked();
			plus(k) += h;
			minus(k) -= h;
			fd(k) = (morphablemodel::geometry_loss(model, GeometryCoefficients::from_stacked(plus, 30), y)
			         - morphablemodel::geometry_loss(model, GeometryCoefficients::from_stacked(minus, 30), y))
			        / (2.0 * h);
		}
		worst_grad = std::max(worst_grad, (grad - fd).norm() / grad.norm());
	}
	const double t = clock.seconds();
	return {worst_loss < 1e-10 && worst_grad < 1e-5 && t < 10.0,
	        fmt::format("100 pairs: max loss rel. error {:.2e} (< 1e-10), max gradient rel. error {:.2e} (< 1e-5), "
	                    "{:.2f} s (< 10 s)",
	                    worst_loss, worst_grad, t)};
}

Outcome rasterizer_oracle()
{
	Stopwatch clock;
	std::mt19937_64 rng(3);
	std::uniform_int_distribution<int> triangle_count(1, 500);
	std::size_t mask_mismatch = 0, winner_mismatch = 0, covered = 0;
	double worst_color = 0.0;
	for (int mesh = 0; mesh < 50; ++mesh) {
		const auto m = oracle::random_screen_mesh(rng, triangle_count(rng), 64, 64);
		const auto slow = oracle::brute_force_raster(m.points, m.depth, m.triangles, m.colors, 64, 64);
		const auto fast = render::rasterize_projected(m.points, m.depth, m.triangles, m.colors, 64, 64);
		// Each triangle owns its three vertices, so a constant per-triangle
		// attribute identifies the depth winner.
		Eigen::MatrixXd ids(m.points.rows(), 1);
		for (std::size_t t = 0; t < m.triangles.size(); ++t) {
			for (auto v : m.triangles[t]) {
				ids(v, 0) = static_cast<double>(t);
			}
		}
		const auto winners = render::rasterize_projected(m.points, m.depth, m.triangles, ids, 64, 64);
		for (std::size_t p = 0; p < slow.mask.size(); ++p) {
			mask_mismatch += fast.mask[p] != slow.mask[p];
			if (!slow.mask[p]) {
				continue;
			}
			++covered;
			if (std::lround(winners.image.data()[p]) != slow.winner[p]) {
				++winner_mismatch;
			}
			for (int c = 0; c < 3; ++c) {
				worst_color = std::max(worst_color, std::abs(fast.image.data()[3 * p + c] - slow.image.data()[3 * p + c]));
			}
		}
	}
	const double t = clock.seconds();
	return {mask_mismatch == 0 && winner_mismatch == 0 && worst_color < 1e-9 && t < 60.0,
	        fmt::format("50 meshes, {} covered pixels: {} mask and {} winner mismatches, max colour error {:.2e} "
	                    "(< 1e-9), {:.2f} s (< 60 s)",
	                    covered, mask_mismatch, winner_mismatch, worst_color, t)};
}

Outcome landmark_round_trip()
{
	const auto model = reduced_model();
	Stopwatch clock;
	const auto dist = render::pose_distribution_for(model, defaults::image_height);
	std::mt19937_64 rng(4);
	double worst = 0.0;
	for (int face = 0; face < 20; ++face) {
		const auto alpha = morphablemodel::sample_geometry_coefficients(rng, model);
		const auto pose = render::sample_pose(rng, dist);
		const auto observed =
		    evaluate::project_landmarks(morphablemodel::synthesize_geometry(model, alpha), model.landmark_vertices(),
		                                pose, defaults::image_width, defaults::image_height);
		const auto fitted =
		    evaluate::landmark_fit(observed, pose, model, 1e-9, defaults::image_width, defaults::image_height);
		worst = std::max(worst, (fitted.stacked() - alpha.stacked()).cwiseAbs().maxCoeff());
	}
	const double t = clock.seconds();
	return {worst < 1e-5 && t < 10.0 && model.landmark_vertices().size() == 68,
	        fmt::format("20 faces, {} landmarks, 40 coefficients: max abs error {:.2e} (< 1e-5), {:.2f} s (< 10 s)",
	                    model.landmark_vertices().size(), worst, t)};
}

Outcome procrustes_exactness()
{
	const auto model = reduced_model();
	std::mt19937_64 rng(5);
	std::normal_distribution<double> g;
	std::uniform_real_distribution<double> scale(0.5, 2.0);
	double worst_rms = 0.0, worst_param = 0.0;
	for (int mesh = 0; mesh < 20; ++mesh) {
		const auto source =
		    morphablemodel::synthesize_geometry(model, morphablemodel::sample_geometry_coefficients(rng, model));
		const Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
		const evaluate::SimilarityTransform truth{scale(rng), q.normalized().toRotationMatrix(),
		                                          Eigen::Vector3d(g(rng), g(rng), g(rng))};
		const morphablemodel::Mesh target{evaluate::transform_vertices(truth, source.vertices), source.triangles};
		const auto result = evaluate::optimal_similarity_align(source, target);
		worst_rms = std::max(worst_rms, std::sqrt((result.aligned.vertices - target.vertices).squaredNorm()
		                                          / static_cast<double>(source.num_vertices())));
		worst_param = std::max({worst_param, std::abs(result.transform.scale - truth.scale),
		                        (result.transform.rotation - truth.rotation).cwiseAbs().maxCoeff(),
		                        (result.transform.translation - truth.translation).cwiseAbs().maxCoeff()});
	}
	return {worst_rms < 1e-9 && worst_param < 1e-9,
	        fmt::format("20 meshes: max residual RMS {:.2e} (< 1e-9), max parameter error {:.2e} (< 1e-9)", worst_rms,
	                    worst_param)};
}

Outcome ief_experiment()
{
	Stopwatch clock;
	const auto model = reduced_model();
	const auto options = datagen::default_sample_options(model);
	const reconstruct::IEFConfig config;
	const std::uint64_t train_seed = 101, validation_seed = 102, heldout_seed = 103;

	reconstruct::LinearPredictorTrainer trainer(model, config);
	for (std::uint64_t i = 0; i < 5000; ++i) {
		auto rng = datagen::derive_stream(train_seed, i);
		trainer.add(datagen::generate_sample(rng, model, options));
	}
	std::vector<datagen::TrainingSample> validation;
	for (std::uint64_t i = 0; i < 500; ++i) {
		auto rng = datagen::derive_stream(validation_seed, i);
		auto s = datagen::generate_sample(rng, model, options);
		// Reconstruction only reads the unmasked image, pose and ground truth.
		s.face_image = {};
		s.shading_image = {};
		s.shading_mask = {};
		validation.push_back(std::move(s));
	}
	const std::vector<double> lambdas{1e-2, 1e-1, 1.0};
	const auto selection = reconstruct::select_ridge(trainer, lambdas, validation, model, config);
	validation.clear();

	evaluate::MethodComparison comparison(model, selection.predictor, config, 10, defaults::landmark_lambda);
	for (std::uint64_t i = 0; i < 500; ++i) {
		auto rng = datagen::derive_stream(heldout_seed, i);
		comparison.add(datagen::generate_sample(rng, model, options));
	}
	const auto table = comparison.table();
	const double t = clock.seconds();

	const auto& loss = table.iterate_loss;
	bool monotone = true;
	for (std::size_t k = 1; k < loss.size(); ++k) {
		monotone = monotone && loss[k] <= loss[k - 1];
	}
	const bool halved = loss.back() < 0.5 * loss.front();
	const bool beats_landmarks = table.ief.mean <= table.landmark.mean;
	std::string iterates;
	for (double l : loss) {
		iterates += fmt::format(" {:.3f}", l);
	}
	return {monotone && halved && beats_landmarks && t < 600.0,
	        fmt::format("ridge {} (validation {:.3f} / {:.3f} / {:.3f}); held-out loss by iterate{}: (a) non-increasing "
	                    "{}, (b) final < 0.5 x baseline {:.3f}: {}, (c) pointwise error {:.4f} vs K=10 landmarks {:.4f}: "
	                    "{}; {:.0f} s (< 600 s)",
	                    selection.lambda, selection.validation_loss[0], selection.validation_loss[1],
	                    selection.validation_loss[2], iterates, monotone ? "yes" : "no", 0.5 * loss.front(),
	                    halved ? "yes" : "no", table.ief.mean, table.landmark.mean, beats_landmarks ? "yes" : "no", t)};
}

Outcome texture_round_trip()
{
	const auto model = morphablemodel::build_procedural_model(morphablemodel::ProceduralModelConfig{});
	std::mt19937_64 rng(7);
	double worst = 0.0;
	for (int trial = 0; trial < 5; ++trial) {
		const auto beta = morphablemodel::sample_texture_coefficients(rng, model);
		std::vector<std::size_t> order(static_cast<std::size_t>(model.num_vertices()));
		std::iota(order.begin(), order.end(), std::size_t{0});
		std::shuffle(order.begin(), order.end(), rng);
		std::vector<bool> visible(order.size(), false);
		for (std::size_t k = 0; k < order.size() / 2; ++k) {
			visible[order[k]] = true;
		}
		const auto result =
		    morphablemodel::project_texture(model, morphablemodel::synthesize_texture(model, beta), visible);
		worst = std::max(worst, (result.coefficients.values - beta.values).cwiseAbs().maxCoeff());
	}
	return {worst < 1e-4, fmt::format("5 trials, {} texture coefficients, 50% of {} vertices hidden: max error {:.2e} "
	                                  "(< 1e-4)",
	                                  model.num_texture(), model.num_vertices(), worst)};
}

Outcome determinism()
{
	const auto dir = scratch("determinism");
	const std::string model_args = "--seed 1 --n-id 30 --n-exp 10 --grid 32";
	must_run("model-gen " + model_args + " --out " + quote(dir / "a.mfm"));
	must_run("model-gen " + model_args + " --out " + quote(dir / "b.mfm"));
	const auto m = quote(dir / "a.mfm");
	must_run("datagen --model " + m + " --out " + quote(dir / "w1") + " --seed 9 --count 200 --workers 1");
	must_run("datagen --model " + m + " --out " + quote(dir / "w8") + " --seed 9 --count 200 --workers 8");
	const std::string data = quote(dir / "w1");
	for (const char* run : {"1", "2"}) {
		must_run("train --model " + m + " --data " + data + " --out " + quote(dir / (std::string("p") + run + ".prd")));
		must_run("reconstruct --model " + m + " --predictor " + quote(dir / "p1.prd") + " --image "
		         + quote(dir / "w1" / "sample_000199_full.pgm") + " --pose-file "
		         + quote(dir / "w1" / "sample_000199_pose.txt") + " --out " + quote(dir / (std::string("r") + run)));
		must_run("eval --model " + m + " --predictor " + quote(dir / "p1.prd") + " --data " + data + " --out "
		         + quote(dir / (std::string("e") + run)));
	}
	std::vector<std::string> differing;
	auto same = [&](const std::string& what, const std::string& a, const std::string& b) {
		if (a != b) {
			differing.push_back(what);
		}
	};
	same("model-gen", io::sha256_file(dir / "a.mfm"), io::sha256_file(dir / "b.mfm"));
	const auto w1 = directory_digest(dir / "w1");
	same("datagen workers 1 vs 8", w1, directory_digest(dir / "w8"));
	same("train", io::sha256_file(dir / "p1.prd"), io::sha256_file(dir / "p2.prd"));
	same("reconstruct", directory_digest(dir / "r1"), directory_digest(dir / "r2"));
	same("eval", directory_digest(dir / "e1"), directory_digest(dir / "e2"));
	const bool ok = differing.empty();
	std::string detail = fmt::format("datagen --count 200 digest {} for --workers 1 and 8", w1.substr(0, 16));
	detail += ok ? "; model-gen, train, reconstruct and eval reruns byte-identical" : "; differs:";
	for (const auto& d : differing) {
		detail += " " + d;
	}
	fs::remove_all(dir);
	return {ok, detail};
}

Outcome walkthrough()
{
	const auto dir = scratch("walkthrough");
	Stopwatch clock;
	const auto m = quote(dir / "model.mfm");
	const auto p = quote(dir / "predictor.prd");
	must_run("model-gen --seed 1 --n-id 30 --n-exp 10 --out " + m);
	must_run("datagen --model " + m + " --out " + quote(dir / "data") + " --seed 7 --count 2000 --workers 4");
	must_run("train --model " + m + " --data " + quote(dir / "data") + " --out " + p);
	must_run("reconstruct --model " + m + " --predictor " + p + " --image "
	         + quote(dir / "data" / "sample_001999_full.pgm") + " --pose-file "
	         + quote(dir / "data" / "sample_001999_pose.txt") + " --out " + quote(dir / "recon"));
	must_run("eval --model " + m + " --predictor " + p + " --data " + quote(dir / "data") + " --out "
	         + quote(dir / "eval"));
	std::vector<std::string> missing;
	for (const auto& f : {dir / "predictor.prd", dir / "recon" / "mesh.off", dir / "recon" / "shading.pgm",
	                      dir / "recon" / "coefficients.txt", dir / "eval" / "comparison.txt",
	                      dir / "eval" / "ief_heatmap.ppm", dir / "eval" / "landmark_heatmap.ppm"}) {
		if (!fs::exists(f) || fs::file_size(f) == 0) {
			missing.push_back(f.filename().string());
		}
	}
	const double t = clock.seconds();
	std::string detail = fmt::format("model-gen, datagen (2000), train, reconstruct, eval exited 0 in {:.0f} s", t);
	for (const auto& f : missing) {
		detail += "; missing " + f;
	}
	fs::remove_all(dir);
	return {missing.empty(), detail};
}

} // namespace

int main()
{
	const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
	    {"default constants", default_constants},
	    {"loss oracle", loss_oracle},
	    {"rasterizer oracle", rasterizer_oracle},
	    {"landmark round trip", landmark_round_trip},
	    {"procrustes exactness", procrustes_exactness},
	    {"IEF learning experiment", ief_experiment},
	    {"texture round trip", texture_round_trip},
	    {"determinism", determinism},
	    {"end-to-end walkthrough", walkthrough},
	};
	int passed = 0;
	for (std::size_t i = 0; i < criteria.size(); ++i) {
		Outcome outcome;
		try {
			outcome = criteria[i].second();
		} catch (const std::exception& e) {
			outcome = {false, std::string("error: ") + e.what()};
		}
		passed += outcome.pass;
		fmt::print("criterion {} {}: {}: {}\n", i + 1, outcome.pass ? "PASS" : "FAIL", criteria[i].first,
		           outcome.detail);
		std::fflush(stdout);
	}
	fmt::print("{}/{} criteria passed\n", passed, criteria.size());
	return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
