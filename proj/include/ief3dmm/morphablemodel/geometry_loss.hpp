/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/morphablemodel/geometry_loss.hpp
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

#ifndef IEF3DMM_GEOMETRY_LOSS_HPP_
#define IEF3DMM_GEOMETRY_LOSS_HPP_

#include "ief3dmm/morphablemodel/MorphableModel.hpp"

#include "Eigen/Core"

namespace ief3dmm::morphablemodel {

/**
 * Squared vertex-space distance between two geometries that share the mean:
 *
 *   L(x, y) = || [A_id | A_exp] x - [A_id | A_exp] y ||^2
 *
 * Coefficients are compared through the basis, so directions that barely move
 * the surface contribute little. No orthonormality of the basis is assumed.
 */
inline double geometry_loss(const MorphableModel& model, const GeometryCoefficients& x, const GeometryCoefficients& y)
{
	check_dims(model, x);
	check_dims(model, y);
	const Eigen::VectorXd diff = x.stacked() - y.stacked();
	return (model.shape_basis() * diff).squaredNorm();
}

/// Gradient of geometry_loss with respect to x, 2 A^T A (x - y), stacked as
/// [identity; expression].
inline Eigen::VectorXd geometry_loss_gradient(const MorphableModel& model, const GeometryCoefficients& x,
                                              const GeometryCoefficients& y)
{
	check_dims(model, x);
	check_dims(model, y);
	return 2.0 * (model.shape_gram() * (x.stacked() - y.stacked()));
}

} // namespace ief3dmm::morphablemodel

#endif /* IEF3DMM_GEOMETRY_LOSS_HPP_ */
