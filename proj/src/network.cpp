#include "plskel/network.hpp"

#include <cmath>
#include <random>

#include "plskel/errors.hpp"

namespace plskel {

Network::Network(std::size_t input_dim, std::vector<Layer> layers, std::string name)
    : input_dim_(input_dim), layers_(std::move(layers)), name_(std::move(name)) {
  if (input_dim_ == 0) throw InputError("network input dimension must be positive");
  if (layers_.empty()) throw InputError("network needs at least one layer");
  std::size_t width = input_dim_;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto& l = layers_[i];
    std::string where = "layer " + std::to_string(i);
    if (l.inputs != width) throw InputError(where + ": expected " + std::to_string(width) + " inputs");
    if (l.outputs == 0) throw InputError(where + ": no outputs");
    if (l.weights.size() != l.inputs * l.outputs) throw InputError(where + ": weight shape mismatch");
    if (l.biases.size() != l.outputs) throw InputError(where + ": bias shape mismatch");
    for (double w : l.weights) {
      if (!std::isfinite(w)) throw InputError(where + ": non-finite weight");
    }
    for (double b : l.biases) {
      if (!std::isfinite(b)) throw InputError(where + ": non-finite bias");
    }
    bool last = i + 1 == layers_.size();
    if (last && l.activation != Activation::linear) throw InputError("output layer must be linear");
    if (!last && l.activation != Activation::relu) throw InputError(where + ": hidden layers must be relu");
    width = l.outputs;
  }
}

std::vector<double> Network::forward(std::span<const double> x) const {
  if (x.size() != input_dim_) throw InputError("input has the wrong dimension");
  std::vector<double> cur(x.begin(), x.end());
  std::vector<double> next;
  for (const auto& l : layers_) {
    next.assign(l.biases.begin(), l.biases.end());
    for (std::size_t o = 0; o < l.outputs; ++o) {
      for (std::size_t i = 0; i < l.inputs; ++i) next[o] += l.weight(o, i) * cur[i];
      if (l.activation == Activation::relu) next[o] = std::max(0.0, next[o]);
    }
    cur.swap(next);
  }
  return cur;
}

std::vector<double> Network::forward(Point x) const {
  if (input_dim_ == 1) {
    double v[1] = {x.x};
    return forward(std::span<const double>(v));
  }
  double v[2] = {x.x, x.y};
  return forward(std::span<const double>(v, input_dim_ == 2 ? 2 : 0));
}

std::vector<bool> Network::activation_pattern(Point x) const {
  std::vector<double> cur = input_dim_ == 1 ? std::vector<double>{x.x}
                                            : std::vector<double>{x.x, x.y};
  if (cur.size() != input_dim_) throw InputError("input has the wrong dimension");
  std::vector<bool> pattern;
  std::vector<double> next;
  for (std::size_t li = 0; li + 1 < layers_.size(); ++li) {
    const auto& l = layers_[li];
    next.assign(l.biases.begin(), l.biases.end());
    for (std::size_t o = 0; o < l.outputs; ++o) {
      for (std::size_t i = 0; i < l.inputs; ++i) next[o] += l.weight(o, i) * cur[i];
      pattern.push_back(next[o] > 0);
      next[o] = std::max(0.0, next[o]);
    }
    cur.swap(next);
  }
  return pattern;
}

Network random_network(const RandomShape& shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Layer> layers;
  std::size_t width = shape.input_dim;
  auto make = [&](std::size_t outputs, Activation act) {
    Layer l{width, outputs, {}, {}, act};
    l.weights.resize(width * outputs);
    for (auto& w : l.weights) w = normal(rng);
    l.biases.resize(outputs);
    for (auto& b : l.biases) b = normal(rng);
    width = outputs;
    return l;
  };
  for (std::size_t h : shape.hidden) layers.push_back(make(h, Activation::relu));
  layers.push_back(make(shape.outputs, Activation::linear));
  return Network(shape.input_dim, std::move(layers), "random-" + std::to_string(seed));
}

Network corpus_network(std::uint64_t seed, std::size_t outputs) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_int_distribution<std::size_t> width(2, 8);
  RandomShape shape;
  shape.outputs = outputs;
  for (std::uint64_t i = 0; i <= seed % 3; ++i) shape.hidden.push_back(width(rng));
  return random_network(shape, seed);
}

}  // namespace plskel
