/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/evaluate/comparison.hpp
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

#ifndef IEF3DMM_EVALUATE_COMPARISON_HPP_
#define IEF3DMM_EVALUATE_COMPARISON_HPP_

#include "ief3dmm/datagen/sample.hpp"
#include "ief3dmm/evaluate/alignment.hpp"
#include "ief3dmm/evaluate/error.hpp"
#include "ief3dmm/evaluate/landmarks.hpp"
#include "ief3dmm/morphablemodel/geometry_loss.hpp"
#include "ief3dmm/morphablemodel/procedural.hpp"
#include "ief3dmm/reconstruct/ief.hpp"

#include "fmt/format.h"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ief3dmm::evaluate {

/// Summary of one method's pointwise errors, averaged over faces.
struct MethodSummary
{
	double mean = 0.0;
	double median = 0.0;
	double rms = 0.0;
};

struct ComparisonTable
{
	std::size_t faces = 0;
	std::size_t landmarks = 0;
	/// Mean geometry loss of each IEF iterate; entry 0 is the alpha = 0 baseline.
	std::vector<double> iterate_loss;
	double landmark_loss = 0.0;
	MethodSummary ief;
	MethodSummary landmark;
	MethodSummary mean_shape;
};

/// Landmark indices (into the model's landmark list) used by the baseline.
inline std::vector<std::uint32_t> baseline_landmarks(const morphablemodel::MorphableModel& model, std::size_t count)
{
	const auto& all = model.landmark_vertices();
	std::vector<std::uint32_t> out;
	for (auto k : morphablemodel::landmark_subset(all.size(), count)) {
		out.push_back(all[k]);
	}
	return out;
}

/// Pointwise error of a reconstruction after optimal similarity alignment.
inline ErrorReport aligned_error(const morphablemodel::Mesh& reconstruction, const morphablemodel::Mesh& ground_truth)
{
	return pointwise_error(optimal_similarity_align(reconstruction, ground_truth).aligned, ground_truth);
}

/**
 * Runs IEF on each face's unmasked image and fits the landmark baseline to
 * noiseless projections of `landmark_count` ground-truth landmarks, both under
 * the known pose, and accumulates losses and aligned pointwise errors. Faces
 * are added one at a time so a dataset never has to be held in memory.
 *
 * Keeps references to the model and predictor.
 */
template <reconstruct::CoefficientPredictor Predictor>
class MethodComparison
{
public:
	MethodComparison(const morphablemodel::MorphableModel& model, const Predictor& predictor,
	                 const reconstruct::IEFConfig& config, std::size_t landmark_count, double landmark_lambda)
	    : model_(model), predictor_(predictor), config_(config), indices_(baseline_landmarks(model, landmark_count)),
	      landmark_lambda_(landmark_lambda), mean_mesh_(model.mean_mesh())
	{
		reconstruct::validate(config_);
		sums_.landmarks = landmark_count;
		sums_.iterate_loss.assign(static_cast<std::size_t>(config_.iterations) + 1, 0.0);
	}

	void add(const datagen::TrainingSample& face)
	{
		const auto truth = morphablemodel::synthesize_geometry(model_, face.alpha_gt);
		const auto result = reconstruct::ief_reconstruct(face.full_face_image, face.pose, predictor_, model_, config_);
		for (std::size_t t = 0; t < result.iterates.size(); ++t) {
			sums_.iterate_loss[t] += morphablemodel::geometry_loss(model_, result.iterates[t], face.alpha_gt);
		}
		const auto observed = project_landmarks(truth, indices_, face.pose, config_.width, config_.height);
		const auto fitted = landmark_fit(observed, face.pose, model_, landmark_lambda_, config_.width, config_.height);
		sums_.landmark_loss += morphablemodel::geometry_loss(model_, fitted, face.alpha_gt);
		accumulate(sums_.ief, aligned_error(result.mesh, truth));
		accumulate(sums_.landmark, aligned_error(morphablemodel::synthesize_geometry(model_, fitted), truth));
		accumulate(sums_.mean_shape, aligned_error(mean_mesh_, truth));
		++sums_.faces;
	}

	std::size_t count() const { return sums_.faces; }

	/// Averages over the faces added so far.
	ComparisonTable table() const
	{
		if (sums_.faces == 0) {
			throw std::invalid_argument("comparison needs at least one face");
		}
		const double n = static_cast<double>(sums_.faces);
		ComparisonTable t = sums_;
		for (auto& v : t.iterate_loss) {
			v /= n;
		}
		t.landmark_loss /= n;
		for (auto* m : {&t.ief, &t.landmark, &t.mean_shape}) {
			m->mean /= n;
			m->median /= n;
			m->rms /= n;
		}
		return t;
	}

private:
	static void accumulate(MethodSummary& m, const ErrorReport& r)
	{
		m.mean += r.mean;
		m.median += r.median;
		m.rms += r.rms;
	}

	const morphablemodel::MorphableModel& model_;
	const Predictor& predictor_;
	reconstruct::IEFConfig config_;
	std::vector<std::uint32_t> indices_;
	double landmark_lambda_;
	morphablemodel::Mesh mean_mesh_;
	ComparisonTable sums_;
};

template <reconstruct::CoefficientPredictor Predictor>
ComparisonTable compare_methods(std::span<const datagen::TrainingSample> faces,
                                const morphablemodel::MorphableModel& model, const Predictor& predictor,
                                const reconstruct::IEFConfig& config, std::size_t landmark_count,
                                double landmark_lambda)
{
	MethodComparison<Predictor> comparison(model, predictor, config, landmark_count, landmark_lambda);
	for (const auto& face : faces) {
		comparison.add(face);
	}
	return comparison.table();
}

inline std::string format_comparison(const ComparisonTable& t)
{
	std::string out = fmt::format("faces {}\n", t.faces);
	for (std::size_t i = 0; i < t.iterate_loss.size(); ++i) {
		out += fmt::format("geometry_loss iterate {} {:.6f}\n", i, t.iterate_loss[i]);
	}
	out += fmt::format("geometry_loss landmark_k{} {:.6f}\n", t.landmarks, t.landmark_loss);
	out += fmt::format("{:<16} {:>12} {:>12} {:>12}\n", "method", "mean", "median", "rms");
	auto row = [&out](const std::string& name, const MethodSummary& m) {
		out += fmt::format("{:<16} {:>12.6f} {:>12.6f} {:>12.6f}\n", name, m.mean, m.median, m.rms);
	};
	row("ief", t.ief);
	row(fmt::format("landmark_k{}", t.landmarks), t.landmark);
	row("mean_shape", t.mean_shape);
	return out;
}

} // namespace ief3dmm::evaluate

#endif /* IEF3DMM_EVALUATE_COMPARISON_HPP_ */
