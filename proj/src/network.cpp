#include "ntsense/network.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "ntsense/errors.hpp"
#include "ntsense/rng.hpp"

namespace ntsense {

void NetworkParams::validate(std::size_t n_rows) const {
  if (!(learning_rate > 0.0)) throw InvalidHyperparameters("learning_rate must be > 0");
  if (batch_size < 1) throw InvalidHyperparameters("batch_size must be >= 1");
  if (static_cast<std::size_t>(batch_size) > n_rows) {
    throw InvalidHyperparameters("batch_size exceeds the number of records");
  }
  if (epochs < 0) throw InvalidHyperparameters("epochs must be >= 0");
  if (momentum < 0.0 || momentum >= 1.0) {
    throw InvalidHyperparameters("momentum must be in [0, 1)");
  }
}

NetworkModel init_network(std::uint64_t seed) {
  Rng rng(seed);
  NetworkModel model;
  for (auto& row : model.hidden_weights) {
    for (double& w : row) w = rng.real(-0.5, 0.5);
  }
  for (double& b : model.hidden_bias) b = rng.real(-0.5, 0.5);
  for (double& w : model.output_weights) w = rng.real(-0.5, 0.5);
  model.output_bias = rng.real(-0.5, 0.5);
  return model;
}

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void check_width(const Columns& data) {
  if (data.cols() != kNumFeatures) {
    throw InvalidHyperparameters("network input layer is fixed at " +
                                 std::to_string(kNumFeatures) + " features");
  }
}

// One backward pass over the batch; returns the batch-mean squared error.
double accumulate_gradient(const NetworkModel& model, const Columns& data,
                           std::span<const std::size_t> batch,
                           NetworkGradients& grad) {
  double row[kNumFeatures];
  const double inv_batch = 1.0 / static_cast<double>(batch.size());
  double loss = 0.0;

  for (std::size_t i : batch) {
    data.row(i, row);
    double hidden[kHiddenUnits];
    double out = model.output_bias;
    for (std::size_t j = 0; j < kHiddenUnits; ++j) {
      double a = model.hidden_bias[j];
      for (std::size_t k = 0; k < kNumFeatures; ++k) {
        a += model.hidden_weights[j][k] * row[k];
      }
      hidden[j] = sigmoid(a);
      out += model.output_weights[j] * hidden[j];
    }

    const double err = out - data.targets[i];
    loss += err * err * inv_batch;
    const double dout = 2.0 * err * inv_batch;  // d(mean sq. error)/d(output)
    grad.output_bias += dout;
    for (std::size_t j = 0; j < kHiddenUnits; ++j) {
      grad.output_weights[j] += dout * hidden[j];
      const double dhidden = dout * model.output_weights[j] * hidden[j] * (1.0 - hidden[j]);
      grad.hidden_bias[j] += dhidden;
      for (std::size_t k = 0; k < kNumFeatures; ++k) {
        grad.hidden_weights[j][k] += dhidden * row[k];
      }
    }
  }
  return loss;
}

}  // namespace

double network_loss(const NetworkModel& model, const Columns& data,
                    std::span<const std::size_t> batch) {
  check_width(data);
  double row[kNumFeatures];
  double sum = 0.0;
  for (std::size_t i : batch) {
    data.row(i, row);
    const double err = model.predict({row, kNumFeatures}) - data.targets[i];
    sum += err * err;
  }
  return sum / static_cast<double>(batch.size());
}

NetworkGradients network_gradient(const NetworkModel& model, const Columns& data,
                                  std::span<const std::size_t> batch) {
  check_width(data);
  NetworkGradients grad;
  accumulate_gradient(model, data, batch, grad);
  return grad;
}

NetworkModel fit_network(const Columns& data, const NetworkParams& params,
                         std::uint64_t seed) {
  check_width(data);
  params.validate(data.rows());

  NetworkModel model = init_network(seed);
  NetworkGradients velocity;
  Rng shuffle_rng(derive_seed(seed, 0x6e657477ULL));  // shuffles stay clear of init draws

  std::vector<std::size_t> order(data.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t batch_size = static_cast<std::size_t>(params.batch_size);

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
      const std::size_t end = std::min(start + batch_size, order.size());
      const std::span<const std::size_t> batch(order.data() + start, end - start);

      NetworkGradients grad;
      const double loss = accumulate_gradient(model, data, batch, grad);
      if (!std::isfinite(loss)) {
        throw DivergedTraining("loss became non-finite at epoch " + std::to_string(epoch));
      }

      // Classic momentum: velocity = m * velocity - lr * grad, then step.
      for (std::size_t j = 0; j < kHiddenUnits; ++j) {
        for (std::size_t k = 0; k < kNumFeatures; ++k) {
          double& v = velocity.hidden_weights[j][k];
          v = params.momentum * v - params.learning_rate * grad.hidden_weights[j][k];
          model.hidden_weights[j][k] += v;
        }
        double& vb = velocity.hidden_bias[j];
        vb = params.momentum * vb - params.learning_rate * grad.hidden_bias[j];
        model.hidden_bias[j] += vb;
        double& vo = velocity.output_weights[j];
        vo = params.momentum * vo - params.learning_rate * grad.output_weights[j];
        model.output_weights[j] += vo;
      }
      double& vc = velocity.output_bias;
      vc = params.momentum * vc - params.learning_rate * grad.output_bias;
      model.output_bias += vc;
    }
  }

  for (const auto& row : model.hidden_weights) {
    for (double w : row) {
      if (!std::isfinite(w)) throw DivergedTraining("non-finite weights after training");
    }
  }
  return model;
}

NetworkModel fit_network(const Dataset& train, const NetworkParams& params,
                         std::uint64_t seed) {
  return fit_network(to_columns(train), params, seed);
}

}  // namespace ntsense
