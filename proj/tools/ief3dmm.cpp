/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: tools/ief3dmm.cpp
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
#include "ief3dmm/ief3dmm.hpp"

#include "CLI11.hpp"
#include "fmt/format.h"
#include "json.hpp"

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

using namespace ief3dmm;
namespace fs = std::filesystem;

namespace {

struct ModelGenArgs
{
	std::uint64_t seed = 1;
	int n_id = defaults::num_identity;
	int n_exp = defaults::num_expression;
	int n_tex = defaults::num_texture;
	int grid = defaults::grid_resolution;
	fs::path out;
};

struct DatagenArgs
{
	fs::path model;
	fs::path out;
	std::uint64_t seed = 1;
	std::size_t count = 100;
	int width = defaults::image_width;
	int height = defaults::image_height;
	unsigned workers = 1;
};

struct TrainArgs
{
	fs::path model;
	fs::path data;
	fs::path out;
	std::vector<double> ridge{1e-2, 1e-1, 1.0};
	double validation_fraction = 0.1;
	int iterations = defaults::ief_iterations;
	int downsample = defaults::feature_downsample;
};

struct ReconstructArgs
{
	fs::path model;
	fs::path predictor;
	fs::path image;
	fs::path pose_file;
	fs::path out;
	int iterations = defaults::ief_iterations;
	int downsample = defaults::feature_downsample;
};

struct EvalArgs
{
	fs::path model;
	fs::path predictor;
	fs::path data;
	fs::path out;
	fs::path landmarks_file;
	fs::path pose_file;
	std::size_t landmarks = 10;
	double landmark_lambda = defaults::landmark_lambda;
	std::size_t sample = 0;
	int iterations = defaults::ief_iterations;
	int downsample = defaults::feature_downsample;
};

void ensure_dir(const fs::path& dir)
{
	std::error_code ec;
	fs::create_directories(dir, ec);
	if (ec) {
		throw io::IoError("cannot create '" + dir.string() + "': " + ec.message());
	}
}

reconstruct::IEFConfig ief_config(int iterations, int downsample, int width, int height)
{
	reconstruct::IEFConfig config;
	config.iterations = iterations;
	config.feature_downsample = downsample;
	config.width = width;
	config.height = height;
	reconstruct::validate(config);
	return config;
}

datagen::DatasetManifest load_manifest_for(const fs::path& dir, const morphablemodel::MorphableModel& model,
                                           const fs::path& model_path)
{
	auto manifest = datagen::read_manifest(dir);
	if (manifest.model_hash != datagen::model_digest(model)) {
		throw std::runtime_error("dataset '" + dir.string() + "' was generated from a different model than '"
		                         + model_path.string() + "'");
	}
	return manifest;
}

reconstruct::LinearPredictor load_predictor_for(const fs::path& path, const morphablemodel::MorphableModel& model,
                                                const reconstruct::IEFConfig& config)
{
	auto predictor = reconstruct::load_predictor(path);
	if (predictor.coeff_dim() != model.num_shape()) {
		throw std::runtime_error("predictor '" + path.string() + "' outputs " + std::to_string(predictor.coeff_dim())
		                         + " coefficients, model has " + std::to_string(model.num_shape()));
	}
	predictor.set_config(config);
	return predictor;
}

void write_coefficient_text(const std::vector<morphablemodel::GeometryCoefficients>& iterates, const fs::path& path)
{
	std::string text = "# iterate, then stacked identity and expression coefficients\n";
	for (std::size_t t = 0; t < iterates.size(); ++t) {
		text += std::to_string(t);
		const Eigen::VectorXd v = iterates[t].stacked();
		for (Eigen::Index i = 0; i < v.size(); ++i) {
			text += " " + io::format_double(v(i));
		}
		text += "\n";
	}
	io::write_text(text, path);
}

int run_defaults()
{
	nlohmann::ordered_json j;
	j["n_id"] = defaults::num_identity;
	j["n_exp"] = defaults::num_expression;
	j["n_shape"] = defaults::num_identity + defaults::num_expression;
	j["n_tex"] = defaults::num_texture;
	j["grid_resolution"] = defaults::grid_resolution;
	j["image_width"] = defaults::image_width;
	j["image_height"] = defaults::image_height;
	j["input_channels"] = defaults::input_channels;
	j["iterations"] = defaults::ief_iterations;
	j["feature_downsample"] = defaults::feature_downsample;
	j["shininess"] = defaults::shininess;
	j["phong_means"] = {defaults::ambient_mean, defaults::diffuse_mean, defaults::specular_mean};
	j["phong_sigmas"] = {defaults::ambient_sigma, defaults::diffuse_sigma, defaults::specular_sigma};
	j["pose_angle_sigma_deg"] = defaults::pose_angle_sigma_deg;
	j["pose_translation_fraction"] = defaults::pose_translation_fraction;
	j["pose_scale_fraction"] = defaults::pose_scale_fraction;
	j["landmark_lambda"] = defaults::landmark_lambda;
	j["num_landmarks"] = defaults::num_landmarks;
	std::cout << j.dump(2) << "\n";
	return 0;
}

int run_model_gen(const ModelGenArgs& a)
{
	morphablemodel::ProceduralModelConfig config;
	config.seed = a.seed;
	config.num_identity = a.n_id;
	config.num_expression = a.n_exp;
	config.num_texture = a.n_tex;
	config.grid_resolution = a.grid;
	const auto model = morphablemodel::build_procedural_model(config);
	if (a.out.has_parent_path()) {
		ensure_dir(a.out.parent_path());
	}
	morphablemodel::save_model(model, a.out);
	fmt::print("model {}: {} vertices, {} triangles, n_id {}, n_exp {}, n_tex {}, {} landmarks\n", a.out.string(),
	           model.num_vertices(), model.triangles()->size(), model.num_identity(), model.num_expression(),
	           model.num_texture(), model.landmark_vertices().size());
	return 0;
}

int run_datagen(const DatagenArgs& a)
{
	const auto model = morphablemodel::load_model(a.model);
	const auto options = datagen::default_sample_options(model, a.width, a.height);
	const auto manifest = datagen::generate_dataset(a.seed, model, a.count, a.out, options, a.workers);
	fmt::print("dataset {}: {} samples, {}x{}\n", (a.out / "manifest.txt").string(), manifest.count(), a.width,
	           a.height);
	return 0;
}

int run_train(const TrainArgs& a)
{
	const auto model = morphablemodel::load_model(a.model);
	const auto manifest = load_manifest_for(a.data, model, a.model);
	const auto config = ief_config(a.iterations, a.downsample, manifest.width, manifest.height);
	if (!(a.validation_fraction >= 0.0 && a.validation_fraction < 1.0)) {
		throw std::invalid_argument("validation fraction must be in [0, 1)");
	}
	const std::size_t n = manifest.count();
	std::size_t n_val = a.ridge.size() > 1 ? static_cast<std::size_t>(a.validation_fraction * n) : 0;
	if (a.ridge.size() > 1 && (n_val == 0 || n_val >= n)) {
		throw std::invalid_argument("selecting among several ridge values needs a nonempty validation split and "
		                            "training split; dataset has "
		                            + std::to_string(n) + " samples");
	}
	reconstruct::LinearPredictorTrainer trainer(model, config);
	for (std::size_t i = 0; i < n - n_val; ++i) {
		trainer.add(datagen::load_sample(a.data, manifest.samples[i], model));
	}
	reconstruct::LinearPredictor predictor;
	double lambda = a.ridge.front();
	if (n_val > 0) {
		std::vector<datagen::TrainingSample> validation;
		for (std::size_t i = n - n_val; i < n; ++i) {
			validation.push_back(datagen::load_sample(a.data, manifest.samples[i], model));
		}
		auto selection = reconstruct::select_ridge(trainer, a.ridge, validation, model, config);
		for (std::size_t k = 0; k < a.ridge.size(); ++k) {
			fmt::print("ridge {} validation loss {:.6f}\n", a.ridge[k], selection.validation_loss[k]);
		}
		predictor = std::move(selection.predictor);
		lambda = selection.lambda;
	} else {
		predictor = trainer.solve(lambda);
	}
	if (a.out.has_parent_path()) {
		ensure_dir(a.out.parent_path());
	}
	reconstruct::save_predictor(predictor, a.out);
	fmt::print("predictor {}: {} features, {} coefficients, ridge {}, {} training samples\n", a.out.string(),
	           predictor.feature_dim(), predictor.coeff_dim(), lambda, trainer.count());
	return 0;
}

int run_reconstruct(const ReconstructArgs& a)
{
	const auto model = morphablemodel::load_model(a.model);
	const auto image = render::read_pnm(a.image);
	if (image.channels() != 1) {
		throw std::runtime_error("'" + a.image.string() + "': expected a grey (P5) image");
	}
	const auto config = ief_config(a.iterations, a.downsample, image.width(), image.height());
	const auto predictor = load_predictor_for(a.predictor, model, config);
	const auto pose = render::read_pose(a.pose_file);
	const auto result = reconstruct::ief_reconstruct(image, pose, predictor, model, config);
	ensure_dir(a.out);
	write_coefficient_text(result.iterates, a.out / "coefficients.txt");
	io::write_off(result.mesh, a.out / "mesh.off");
	render::write_pnm(result.shading_image, a.out / "shading.pgm");
	fmt::print("reconstruction {}: {} iterations, mesh.off, shading.pgm, coefficients.txt\n", a.out.string(),
	           config.iterations);
	return 0;
}

int run_eval(const EvalArgs& a)
{
	const auto model = morphablemodel::load_model(a.model);
	const auto manifest = load_manifest_for(a.data, model, a.model);
	const auto config = ief_config(a.iterations, a.downsample, manifest.width, manifest.height);
	const auto predictor = load_predictor_for(a.predictor, model, config);
	if (a.sample >= manifest.count()) {
		throw std::invalid_argument("sample " + std::to_string(a.sample) + " out of range for a dataset of "
		                            + std::to_string(manifest.count()));
	}
	evaluate::MethodComparison comparison(model, predictor, config, a.landmarks, a.landmark_lambda);
	for (const auto& files : manifest.samples) {
		comparison.add(datagen::load_sample(a.data, files, model));
	}
	const auto table = comparison.table();
	ensure_dir(a.out);
	const std::string text = evaluate::format_comparison(table);
	io::write_text(text, a.out / "comparison.txt");
	std::cout << text;

	// Per-face artefacts for one sample.
	const auto face = datagen::load_sample(a.data, manifest.samples[a.sample], model);
	const auto pose = a.pose_file.empty() ? face.pose : render::read_pose(a.pose_file);
	const auto truth = morphablemodel::synthesize_geometry(model, face.alpha_gt);
	const auto result = reconstruct::ief_reconstruct(face.full_face_image, pose, predictor, model, config);
	const auto landmarks = a.landmarks_file.empty()
	                           ? evaluate::project_landmarks(truth, evaluate::baseline_landmarks(model, a.landmarks),
	                                                         pose, config.width, config.height)
	                           : evaluate::read_landmarks(a.landmarks_file);
	const auto fitted = evaluate::landmark_fit(landmarks, pose, model, a.landmark_lambda, config.width,
	                                           config.height);
	const auto ief_report = evaluate::aligned_error(result.mesh, truth);
	const auto lmk_report = evaluate::aligned_error(morphablemodel::synthesize_geometry(model, fitted), truth);
	evaluate::write_report(ief_report, a.out / "ief_error.txt", a.out / "ief_error.bin");
	evaluate::write_report(lmk_report, a.out / "landmark_error.txt", a.out / "landmark_error.bin");
	render::write_pnm(evaluate::error_heatmap(truth, ief_report, pose, config.width, config.height),
	                  a.out / "ief_heatmap.ppm");
	render::write_pnm(evaluate::error_heatmap(truth, lmk_report, pose, config.width, config.height),
	                  a.out / "landmark_heatmap.ppm");
	fmt::print("evaluation {}: comparison.txt, ief_heatmap.ppm, landmark_heatmap.ppm\n", a.out.string());
	return 0;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"ief3dmm: synthetic face data and iterative morphable model reconstruction"};
	app.require_subcommand(1);
	app.option_defaults()->always_capture_default();

	auto* defaults_cmd = app.add_subcommand("defaults", "Print the default configuration as JSON");

	ModelGenArgs mg;
	auto* model_gen = app.add_subcommand("model-gen", "Build a procedural morphable model (MFM1)");
	model_gen->add_option("--seed", mg.seed, "Model seed");
	model_gen->add_option("--n-id", mg.n_id, "Identity dimensions")->check(CLI::PositiveNumber);
	model_gen->add_option("--n-exp", mg.n_exp, "Expression dimensions")->check(CLI::PositiveNumber);
	model_gen->add_option("--n-tex", mg.n_tex, "Texture dimensions")->check(CLI::PositiveNumber);
	model_gen->add_option("--grid", mg.grid, "Vertices per side of the face grid")->check(CLI::Range(2, 4096));
	model_gen->add_option("--out", mg.out, "Output model file")->required();

	DatagenArgs dg;
	auto* datagen_cmd = app.add_subcommand("datagen", "Generate a training corpus");
	datagen_cmd->add_option("--model", dg.model, "Model file")->required()->check(CLI::ExistingFile);
	datagen_cmd->add_option("--out", dg.out, "Output directory")->required();
	datagen_cmd->add_option("--seed", dg.seed, "Master seed");
	datagen_cmd->add_option("--count", dg.count, "Number of samples")->check(CLI::PositiveNumber);
	datagen_cmd->add_option("--width", dg.width, "Image width")->check(CLI::PositiveNumber);
	datagen_cmd->add_option("--height", dg.height, "Image height")->check(CLI::PositiveNumber);
	datagen_cmd->add_option("--workers", dg.workers, "Worker threads")->check(CLI::PositiveNumber);

	TrainArgs tr;
	auto* train = app.add_subcommand("train", "Train a linear IEF predictor (PRD1)");
	train->add_option("--model", tr.model, "Model file")->required()->check(CLI::ExistingFile);
	train->add_option("--data", tr.data, "Dataset directory")->required()->check(CLI::ExistingDirectory);
	train->add_option("--out", tr.out, "Output predictor file")->required();
	train->add_option("--ridge", tr.ridge, "Ridge candidates; several are selected between by validation")
	    ->check(CLI::PositiveNumber);
	train->add_option("--validation", tr.validation_fraction, "Fraction of samples held out for ridge selection");
	train->add_option("--iterations", tr.iterations, "IEF iterations used for validation")
	    ->check(CLI::PositiveNumber);
	train->add_option("--downsample", tr.downsample, "Feature block size")->check(CLI::PositiveNumber);

	ReconstructArgs rc;
	auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Reconstruct geometry from one face image");
	reconstruct_cmd->add_option("--model", rc.model, "Model file")->required()->check(CLI::ExistingFile);
	reconstruct_cmd->add_option("--predictor", rc.predictor, "Predictor file")->required()->check(CLI::ExistingFile);
	reconstruct_cmd->add_option("--image", rc.image, "Grey face image (P5)")->required()->check(CLI::ExistingFile);
	reconstruct_cmd->add_option("--pose-file", rc.pose_file, "Pose file")->required()->check(CLI::ExistingFile);
	reconstruct_cmd->add_option("--out", rc.out, "Output directory")->required();
	reconstruct_cmd->add_option("--iterations", rc.iterations, "IEF iterations")->check(CLI::PositiveNumber);
	reconstruct_cmd->add_option("--downsample", rc.downsample, "Feature block size")->check(CLI::PositiveNumber);

	EvalArgs ev;
	auto* eval = app.add_subcommand("eval", "Compare IEF with the landmark baseline on a dataset");
	eval->add_option("--model", ev.model, "Model file")->required()->check(CLI::ExistingFile);
	eval->add_option("--predictor", ev.predictor, "Predictor file")->required()->check(CLI::ExistingFile);
	eval->add_option("--data", ev.data, "Dataset directory")->required()->check(CLI::ExistingDirectory);
	eval->add_option("--out", ev.out, "Output directory")->required();
	eval->add_option("--landmarks", ev.landmarks, "Landmarks used by the baseline")->check(CLI::PositiveNumber);
	eval->add_option("--landmark-lambda", ev.landmark_lambda, "Landmark fit regulariser")
	    ->check(CLI::PositiveNumber);
	eval->add_option("--sample", ev.sample, "Sample rendered as heatmaps");
	eval->add_option("--landmarks-file", ev.landmarks_file, "Landmarks ('index x y') for the heatmap sample")
	    ->check(CLI::ExistingFile);
	eval->add_option("--pose-file", ev.pose_file, "Pose for the heatmap sample")->check(CLI::ExistingFile);
	eval->add_option("--iterations", ev.iterations, "IEF iterations")->check(CLI::PositiveNumber);
	eval->add_option("--downsample", ev.downsample, "Feature block size")->check(CLI::PositiveNumber);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		return app.exit(e);
	}

	try {
		if (*defaults_cmd) {
			return run_defaults();
		}
		if (*model_gen) {
			return run_model_gen(mg);
		}
		if (*datagen_cmd) {
			return run_datagen(dg);
		}
		if (*train) {
			return run_train(tr);
		}
		if (*reconstruct_cmd) {
			return run_reconstruct(rc);
		}
		if (*eval) {
			return run_eval(ev);
		}
	} catch (const std::exception& e) {
		std::cerr << "ief3dmm: error: " << e.what() << "\n";
		return 1;
	}
	return 1;
}
