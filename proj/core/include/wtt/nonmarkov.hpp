// Copyright 2026 The wtt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Breuer-Laine-Piilo non-Markovianity of a single working-substance qubit.
//
// The probed qubit starts in a pure state, the other system qubits in |0>.
// Because every collision acts linearly on the system state, the map from the
// probed qubit's initial Bloch vector a to its marginal at time t is affine,
// b(t) = b0(t) + R(t) a. Tabulating R(t) once turns the trace distance of any
// pair into 1/2 |R(t)(a1 - a2)|, which makes the pair search cheap.

#pragma once

#include <array>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "wtt/collision.hpp"
#include "wtt/model.hpp"

namespace wtt {

struct BlochState {
  double theta = 0.0;
  double phi = 0.0;

  Eigen::Vector3d vector() const;
  /// (I + a.sigma) / 2 with |a| = 1.
  ComplexMatrix density() const;
  /// The diametrically opposite state.
  BlochState antipode() const;
};

struct BlochPair {
  BlochState first;
  BlochState second;
};

struct SearchConfig {
  int theta_points = 24;
  int phi_points = 48;
  /// Coordinate descent stops when the step falls below this (radians).
  double angular_tolerance = 1e-3;
  /// Search general pairs over four angles instead of antipodal pairs.
  bool general_pairs = false;
  /// Increments of D(t) at or below this count as zero (absorbs roundoff).
  double increment_floor = 1e-12;
  int workers = 1;
};

struct BLPResult {
  Terminal terminal = Terminal::L;
  double value = 0.0;
  BlochPair optimal_pair;
  std::vector<double> times;
  std::vector<double> distance_series;
  /// Maximal runs [t_start, t_end] over which D increases.
  std::vector<std::array<double, 2>> growth_windows;
};

/// Affine Bloch map of one qubit, tabulated at every sample time of [0, t_max].
class QubitDynamicalMap {
 public:
  static QubitDynamicalMap tabulate(const ModelConfig& config, Terminal terminal, double t_max,
                                    std::shared_ptr<const CollisionHamiltonian> cache = nullptr);

  const std::vector<double>& times() const { return times_; }
  std::size_t size() const { return times_.size(); }
  const Eigen::Matrix3d& linear(std::size_t k) const { return linear_[k]; }
  const Eigen::Vector3d& offset(std::size_t k) const { return offset_[k]; }

  /// Marginal at sample k for a pure initial state.
  ComplexMatrix apply(std::size_t k, const BlochState& initial) const;
  /// Trace distance at sample k between the images of two initial states.
  double distance(std::size_t k, const BlochPair& pair) const;
  std::vector<double> distance_series(const BlochPair& pair) const;

 private:
  std::vector<double> times_;
  std::vector<Eigen::Matrix3d> linear_;
  std::vector<Eigen::Vector3d> offset_;
};

/// Marginal of `terminal` at every sample of [0, t_max] by direct simulation.
std::vector<ComplexMatrix> qubit_reduced_dynamics(const ModelConfig& config, Terminal terminal,
                                                  const BlochState& initial, double t_max);

/// Trace distance of the two marginals at every sample, by direct simulation.
std::vector<double> distance_series(const ModelConfig& config, Terminal terminal, const BlochPair& pair,
                                    double t_max);

/// Sum of increments above `floor` (the discrete integral of positive sigma).
double positive_increment_sum(const std::vector<double>& series, double floor = 0.0);

std::vector<std::array<double, 2>> growth_windows(const std::vector<double>& times,
                                                  const std::vector<double>& series, double floor = 0.0);

BLPResult blp_measure(const ModelConfig& config, Terminal terminal, double t_max,
                      const SearchConfig& search = {});

}  // namespace wtt
