/*
 * ief3dmm - synthetic face data and iterative morphable model reconstruction.
 *
 * File: include/ief3dmm/ief3dmm.hpp
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

#ifndef IEF3DMM_IEF3DMM_HPP_
#define IEF3DMM_IEF3DMM_HPP_

#include "ief3dmm/datagen/dataset.hpp"
#include "ief3dmm/datagen/sample.hpp"
#include "ief3dmm/datagen/streams.hpp"
#include "ief3dmm/defaults.hpp"
#include "ief3dmm/evaluate/alignment.hpp"
#include "ief3dmm/evaluate/comparison.hpp"
#include "ief3dmm/evaluate/error.hpp"
#include "ief3dmm/evaluate/landmarks.hpp"
#include "ief3dmm/io/binary.hpp"
#include "ief3dmm/io/digest.hpp"
#include "ief3dmm/io/off.hpp"
#include "ief3dmm/io/text.hpp"
#include "ief3dmm/morphablemodel/MorphableModel.hpp"
#include "ief3dmm/morphablemodel/geometry_loss.hpp"
#include "ief3dmm/morphablemodel/io.hpp"
#include "ief3dmm/morphablemodel/procedural.hpp"
#include "ief3dmm/morphablemodel/sampling.hpp"
#include "ief3dmm/morphablemodel/texture_projection.hpp"
#include "ief3dmm/reconstruct/LinearPredictor.hpp"
#include "ief3dmm/reconstruct/features.hpp"
#include "ief3dmm/reconstruct/ief.hpp"
#include "ief3dmm/reconstruct/selection.hpp"
#include "ief3dmm/reconstruct/training.hpp"
#include "ief3dmm/render/Image.hpp"
#include "ief3dmm/render/Pose.hpp"
#include "ief3dmm/render/image_io.hpp"
#include "ief3dmm/render/normals.hpp"
#include "ief3dmm/render/phong.hpp"
#include "ief3dmm/render/pose_io.hpp"
#include "ief3dmm/render/projection.hpp"
#include "ief3dmm/render/rasterizer.hpp"
#include "ief3dmm/render/sampling.hpp"
#include "ief3dmm/render/shading.hpp"

#endif /* IEF3DMM_IEF3DMM_HPP_ */
