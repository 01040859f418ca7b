/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/reconstruct/LinearPredictor.hpp
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

#ifndef IEF3DMM_RECONSTRUCT_LINEARPREDICTOR_HPP_
#define IEF3DMM_RECONSTRUCT_LINEARPREDICTOR_HPP_

#include "ief3dmm/io/binary.hpp"
#include "ief3dmm/reconstruct/features.hpp"
#include "ief3dmm/render/Image.hpp"

#include "Eigen/Core"

#include <concepts>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ief3dmm::reconstruct {

/**
 * Anything that maps (masked face image, current shading image, current
 * stacked coefficients) to new stacked coefficients. Implementations must be
 * pure after training; the IEF loop runs any of them unchanged.
 */
template <typename P>
concept CoefficientPredictor = requires(const P& p, const render::Image& face, const render::Image& shading,
                                        const Eigen::VectorXd& current) {
	{ p.predict(face, shading, current) } -> std::convertible_to<Eigen::VectorXd>;
};

/**
 * Linear correction layer on pooled image features:
 *
 *   alpha_new = W [features(face, shading); alpha_current] + b
 *
 * The output is the new coefficient vector itself, not a delta; since the
 * previous estimate is an input, the layer can represent either form.
 */
class LinearPredictor
{
public:
	LinearPredictor() = default;

	/// @param weights coeff_dim x (feature_dim + coeff_dim).
	LinearPredictor(Eigen::MatrixXd weights, Eigen::VectorXd bias, Eigen::Index feature_dim)
	    : weights_(std::move(weights)), bias_(std::move(bias)), feature_dim_(feature_dim)
	{
		if (feature_dim_ < 1 || weights_.rows() != bias_.size() || weights_.cols() != feature_dim_ + bias_.size()) {
			throw std::invalid_argument("linear predictor weights must be coeff_dim x (feature_dim + coeff_dim)");
		}
		if (!weights_.allFinite() || !bias_.allFinite()) {
			throw std::invalid_argument("linear predictor has non-finite parameters");
		}
	}

	LinearPredictor(Eigen::MatrixXd weights, Eigen::VectorXd bias, const IEFConfig& config)
	    : LinearPredictor(std::move(weights), std::move(bias), config.feature_dim())
	{
		set_config(config);
	}

	Eigen::Index feature_dim() const { return feature_dim_; }
	Eigen::Index coeff_dim() const { return bias_.size(); }
	const Eigen::MatrixXd& weights() const { return weights_; }
	const Eigen::VectorXd& bias() const { return bias_; }

	/// Image geometry used to compute features; not part of the stored file.
	void set_config(const IEFConfig& config)
	{
		validate(config);
		if (config.feature_dim() != feature_dim_) {
			throw std::invalid_argument("predictor expects " + std::to_string(feature_dim_)
			                            + " features, image configuration " + std::to_string(config.width) + "x"
			                            + std::to_string(config.height) + " / " + std::to_string(config.feature_downsample)
			                            + " yields " + std::to_string(config.feature_dim()));
		}
		config_ = config;
	}

	const IEFConfig& config() const { return config_; }

	Eigen::VectorXd predict_from_features(const Eigen::VectorXd& features, const Eigen::VectorXd& current) const
	{
		if (features.size() != feature_dim_ || current.size() != coeff_dim()) {
			throw std::invalid_argument("predictor input has " + std::to_string(features.size()) + " features and "
			                            + std::to_string(current.size()) + " coefficients, expected "
			                            + std::to_string(feature_dim_) + " and " + std::to_string(coeff_dim()));
		}
		return weights_.leftCols(feature_dim_) * features + weights_.rightCols(coeff_dim()) * current + bias_;
	}

	Eigen::VectorXd predict(const render::Image& face, const render::Image& shading,
	                        const Eigen::VectorXd& current) const
	{
		return predict_from_features(extract_features(face, shading, config_), current);
	}

private:
	Eigen::MatrixXd weights_;
	Eigen::VectorXd bias_;
	Eigen::Index feature_dim_ = 0;
	IEFConfig config_;
};

static_assert(CoefficientPredictor<LinearPredictor>);

/*
 * PRD1 layout, little-endian:
 *
 *   "PRD1", u32 feature_dim, u32 coeff_dim,
 *   f64 weights[coeff_dim][feature_dim + coeff_dim] (row-major), f64 bias[coeff_dim]
 */
inline constexpr std::string_view prd1_magic = "PRD1";

inline std::vector<char> serialize_predictor(const LinearPredictor& predictor)
{
	io::BinaryWriter w;
	w.write_bytes(prd1_magic);
	w.write_u32(static_cast<std::uint32_t>(predictor.feature_dim()));
	w.write_u32(static_cast<std::uint32_t>(predictor.coeff_dim()));
	const auto& weights = predictor.weights();
	for (Eigen::Index r = 0; r < weights.rows(); ++r) {
		for (Eigen::Index c = 0; c < weights.cols(); ++c) {
			w.write_f64(weights(r, c));
		}
	}
	for (Eigen::Index i = 0; i < predictor.bias().size(); ++i) {
		w.write_f64(predictor.bias()(i));
	}
	return w.buffer();
}

inline void save_predictor(const LinearPredictor& predictor, const std::filesystem::path& path)
{
	io::BinaryWriter w;
	const auto bytes = serialize_predictor(predictor);
	w.write_bytes(std::string_view(bytes.data(), bytes.size()));
	w.save(path);
}

inline LinearPredictor load_predictor(const std::filesystem::path& path)
{
	auto r = io::BinaryReader::from_file(path);
	if (r.read_bytes(4) != prd1_magic) {
		r.fail("not a PRD1 predictor file (bad magic)");
	}
	const Eigen::Index feature_dim = r.read_u32();
	const Eigen::Index coeff_dim = r.read_u32();
	const auto expected = static_cast<std::size_t>(coeff_dim) * (feature_dim + coeff_dim + 1) * 8;
	if (r.remaining() != expected) {
		r.fail("size does not match header (" + std::to_string(feature_dim) + " features, "
		       + std::to_string(coeff_dim) + " coefficients)");
	}
	Eigen::MatrixXd weights(coeff_dim, feature_dim + coeff_dim);
	for (Eigen::Index row = 0; row < weights.rows(); ++row) {
		for (Eigen::Index c = 0; c < weights.cols(); ++c) {
			weights(row, c) = r.read_f64();
		}
	}
	Eigen::VectorXd bias(coeff_dim);
	for (Eigen::Index i = 0; i < coeff_dim; ++i) {
		bias(i) = r.read_f64();
	}
	try {
		return LinearPredictor(std::move(weights), std::move(bias), feature_dim);
	} catch (const std::invalid_argument& e) {
		r.fail(e.what());
	}
}

} // namespace ief3dmm::reconstruct

#endif /* IEF3DMM_RECONSTRUCT_LINEARPREDICTOR_HPP_ */
