/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/defaults.hpp
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

#ifndef IEF3DMM_DEFAULTS_HPP_
#define IEF3DMM_DEFAULTS_HPP_

// Default configuration of the pipeline. Everything here is a default, not a
// hard-coded constant: each value can be overridden through the corresponding
// config struct or CLI flag.
namespace ief3dmm::defaults {

inline constexpr int num_identity = 200;
inline constexpr int num_expression = 84;
inline constexpr int num_texture = 200;
inline constexpr int grid_resolution = 64;

inline constexpr int image_width = 200;
inline constexpr int image_height = 200;
/// Predictor input planes: masked face image and current shading image.
inline constexpr int input_channels = 2;

inline constexpr int ief_iterations = 3;
inline constexpr int feature_downsample = 8;

inline constexpr double shininess = 10.0;
inline constexpr double ambient_mean = 0.5;
inline constexpr double diffuse_mean = 0.7;
inline constexpr double specular_mean = 0.05;
inline constexpr double ambient_sigma = 0.1;
inline constexpr double diffuse_sigma = 0.1;
inline constexpr double specular_sigma = 0.02;

inline constexpr double pose_angle_sigma_deg = 15.0;
inline constexpr double pose_translation_fraction = 0.03;
inline constexpr double pose_scale_fraction = 0.1;
/// Fraction of the image height covered by the mean face at the mean scale.
inline constexpr double face_height_fraction = 0.8;

inline constexpr double texture_lambda = 1e-6;
inline constexpr double landmark_lambda = 1e-4;
inline constexpr int num_landmarks = 68;
inline constexpr int empty_mask_retries = 8;

} // namespace ief3dmm::defaults

#endif /* IEF3DMM_DEFAULTS_HPP_ */
