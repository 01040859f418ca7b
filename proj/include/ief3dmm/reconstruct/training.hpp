/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/reconstruct/training.hpp
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

#ifndef IEF3DMM_RECONSTRUCT_TRAINING_HPP_
#define IEF3DMM_RECONSTRUCT_TRAINING_HPP_

#include "ief3dmm/datagen/sample.hpp"
#include "ief3dmm/morphablemodel/MorphableModel.hpp"
#include "ief3dmm/reconstruct/LinearPredictor.hpp"
#include "ief3dmm/reconstruct/features.hpp"

#include "Eigen/Core"
#include "Eigen/Eigenvalues"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ief3dmm::reconstruct {

/**
 * Accumulates the sufficient statistics of a linear predictor's training set
 * and solves for the weights that minimise
 *
 *   sum_i L(W z_i + b, y_i) + lambda ||W||_F^2,
 *
 * with z_i = [features; alpha_t], y_i = alpha_gt and L the geometry loss, i.e.
 * residuals weighted by the basis Gram matrix G = A^T A. The bias is not
 * penalised (data are centred). Stationarity gives the Sylvester equation
 *
 *   G W C + lambda W = G B,   C = cov(z), B = cov(y, z),
 *
 * solved exactly in the eigenbases of G and C. For orthonormal bases G = I and
 * this is ordinary ridge regression.
 *
 * Samples are added one at a time, so corpora need not fit in memory.
 */
class LinearPredictorTrainer
{
public:
	LinearPredictorTrainer(const morphablemodel::MorphableModel& model, const IEFConfig& config)
	    : gram_(model.shape_gram()), config_(config)
	{
		validate(config_);
		const Eigen::Index dz = config_.feature_dim() + model.num_shape();
		sum_z_ = Eigen::VectorXd::Zero(dz);
		sum_y_ = Eigen::VectorXd::Zero(model.num_shape());
		zz_ = Eigen::MatrixXd::Zero(dz, dz);
		yz_ = Eigen::MatrixXd::Zero(model.num_shape(), dz);
	}

	void add(const Eigen::VectorXd& features, const Eigen::VectorXd& current, const Eigen::VectorXd& target)
	{
		if (features.size() != config_.feature_dim() || current.size() != coeff_dim()
		    || target.size() != coeff_dim()) {
			throw std::invalid_argument("training example has inconsistent dimensions");
		}
		Eigen::VectorXd z(sum_z_.size());
		z << features, current;
		sum_z_ += z;
		sum_y_ += target;
		zz_.selfadjointView<Eigen::Lower>().rankUpdate(z);
		yz_.noalias() += target * z.transpose();
		++count_;
	}

	void add(const datagen::TrainingSample& sample)
	{
		add(extract_features(sample.face_image, sample.shading_image, config_), sample.alpha_t.stacked(),
		    sample.alpha_gt.stacked());
	}

	std::size_t count() const { return count_; }
	Eigen::Index coeff_dim() const { return sum_y_.size(); }

	/// Solves for several regularisation strengths sharing one pair of
	/// eigendecompositions.
	std::vector<LinearPredictor> solve(std::span<const double> lambdas) const
	{
		if (count_ == 0) {
			throw std::invalid_argument("cannot train a predictor on an empty dataset");
		}
		for (double lambda : lambdas) {
			if (!(lambda > 0.0)) {
				throw std::invalid_argument("ridge lambda must be positive");
			}
		}
		const double n = static_cast<double>(count_);
		const Eigen::VectorXd mean_z = sum_z_ / n;
		const Eigen::VectorXd mean_y = sum_y_ / n;
		Eigen::MatrixXd cov_zz = zz_.selfadjointView<Eigen::Lower>();
		cov_zz.noalias() -= n * mean_z * mean_z.transpose();
		const Eigen::MatrixXd cov_yz = yz_ - n * mean_y * mean_z.transpose();

		const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_z(cov_zz);
		const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_g(gram_);
		const Eigen::VectorXd sigma = eig_z.eigenvalues().cwiseMax(0.0);
		const Eigen::VectorXd gamma = eig_g.eigenvalues().cwiseMax(0.0);
		const Eigen::MatrixXd rotated = eig_g.eigenvectors().transpose() * cov_yz * eig_z.eigenvectors();

		std::vector<LinearPredictor> out;
		out.reserve(lambdas.size());
		for (double lambda : lambdas) {
			Eigen::MatrixXd w(rotated.rows(), rotated.cols());
			for (Eigen::Index i = 0; i < w.rows(); ++i) {
				for (Eigen::Index j = 0; j < w.cols(); ++j) {
					w(i, j) = gamma(i) * rotated(i, j) / (gamma(i) * sigma(j) + lambda);
				}
			}
			Eigen::MatrixXd weights = eig_g.eigenvectors() * w * eig_z.eigenvectors().transpose();
			Eigen::VectorXd bias = mean_y - weights * mean_z;
			out.emplace_back(std::move(weights), std::move(bias), config_);
		}
		return out;
	}

	LinearPredictor solve(double lambda) const
	{
		return std::move(solve(std::span<const double>(&lambda, 1)).front());
	}

private:
	Eigen::MatrixXd gram_;
	IEFConfig config_;
	Eigen::VectorXd sum_z_;
	Eigen::VectorXd sum_y_;
	Eigen::MatrixXd zz_; ///< lower triangle of sum z z^T
	Eigen::MatrixXd yz_;
	std::size_t count_ = 0;
};

/// Trains a linear predictor on an in-memory corpus.
inline LinearPredictor train_linear_predictor(std::span<const datagen::TrainingSample> dataset,
                                              const morphablemodel::MorphableModel& model, const IEFConfig& config,
                                              double ridge_lambda)
{
	if (dataset.empty()) {
		throw std::invalid_argument("cannot train a predictor on an empty dataset");
	}
	if (!(ridge_lambda > 0.0)) {
		throw std::invalid_argument("ridge lambda must be positive");
	}
	LinearPredictorTrainer trainer(model, config);
	for (const auto& sample : dataset) {
		trainer.add(sample);
	}
	return trainer.solve(ridge_lambda);
}

} // namespace ief3dmm::reconstruct

#endif /* IEF3DMM_RECONSTRUCT_TRAINING_HPP_ */
