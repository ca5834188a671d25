#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>

#include "ntsense/data.hpp"

namespace ntsense {

inline constexpr std::size_t kHiddenUnits = 4;

struct NetworkParams {
  double learning_rate = 0.3;
  int batch_size = 100;
  int epochs = 500;
  double momentum = 0.2;

  void validate(std::size_t n_rows) const;  // throws InvalidHyperparameters
};

// Fixed 8 -> 4 -> 1 architecture: sigmoid hidden units, linear output.
struct NetworkModel {
  std::array<std::array<double, kNumFeatures>, kHiddenUnits> hidden_weights{};
  std::array<double, kHiddenUnits> hidden_bias{};
  std::array<double, kHiddenUnits> output_weights{};
  double output_bias = 0.0;

  double predict(std::span<const double> features) const {
    double out = output_bias;
    for (std::size_t j = 0; j < kHiddenUnits; ++j) {
      double a = hidden_bias[j];
      for (std::size_t k = 0; k < kNumFeatures; ++k) {
        a += hidden_weights[j][k] * features[k];
      }
      out += output_weights[j] * (1.0 / (1.0 + std::exp(-a)));
    }
    return out;
  }
};

// Gradients of the batch-mean squared error, same shapes as the model.
struct NetworkGradients {
  std::array<std::array<double, kNumFeatures>, kHiddenUnits> hidden_weights{};
  std::array<double, kHiddenUnits> hidden_bias{};
  std::array<double, kHiddenUnits> output_weights{};
  double output_bias = 0.0;
};

// All weights and biases uniform in [-0.5, 0.5].
NetworkModel init_network(std::uint64_t seed);

double network_loss(const NetworkModel& model, const Columns& data,
                    std::span<const std::size_t> batch);
NetworkGradients network_gradient(const NetworkModel& model, const Columns& data,
                                  std::span<const std::size_t> batch);

// Mini-batch gradient descent with momentum on the MSE loss. Rows are
// reshuffled every epoch from the seed; the trailing short batch is kept.
// Throws DivergedTraining when the loss stops being finite.
NetworkModel fit_network(const Columns& data, const NetworkParams& params,
                         std::uint64_t seed);
NetworkModel fit_network(const Dataset& train, const NetworkParams& params,
                         std::uint64_t seed);

}  // namespace ntsense
