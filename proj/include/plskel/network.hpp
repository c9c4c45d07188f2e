#pragma once

/// @file network.hpp
/// @brief Fully-connected ReLU networks and their reference forward pass.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "plskel/geometry.hpp"

namespace plskel {

enum class Activation { relu, linear };

struct Layer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<double> weights;  ///< row-major, outputs x inputs
  std::vector<double> biases;
  Activation activation = Activation::relu;

  double weight(std::size_t out, std::size_t in) const { return weights[out * inputs + in]; }
  std::span<const double> row(std::size_t out) const {
    return std::span<const double>(weights).subspan(out * inputs, inputs);
  }
};

/// ReLU hidden layers followed by one linear output layer. The constructor
/// checks shapes, finiteness and activation tags (throws InputError).
class Network {
 public:
  Network(std::size_t input_dim, std::vector<Layer> layers, std::string name = {});

  std::size_t input_dim() const { return input_dim_; }
  std::size_t output_dim() const { return layers_.back().outputs; }
  std::size_t hidden_layers() const { return layers_.size() - 1; }
  std::span<const Layer> layers() const { return layers_; }
  const std::string& name() const { return name_; }

  /// Logits for x. Throws InputError on a dimension mismatch.
  std::vector<double> forward(std::span<const double> x) const;
  /// Forward pass for an (embedded) 1-D or 2-D point.
  std::vector<double> forward(Point x) const;
  /// On/off state (pre-activation > 0) of every hidden unit, layer by layer.
  std::vector<bool> activation_pattern(Point x) const;

 private:
  std::size_t input_dim_;
  std::vector<Layer> layers_;
  std::string name_;
};

/// Layer widths of a random network; weights and biases are standard normal.
struct RandomShape {
  std::size_t input_dim = 2;
  std::vector<std::size_t> hidden;
  std::size_t outputs = 2;
};

Network random_network(const RandomShape& shape, std::uint64_t seed);

/// Member of the reference random corpus: 1 + seed % 3 hidden layers with
/// widths drawn from [2, 8], two inputs and the given number of outputs.
Network corpus_network(std::uint64_t seed, std::size_t outputs = 2);

}  // namespace plskel
