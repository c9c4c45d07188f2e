#pragma once

#include "plskel/network.hpp"

namespace fixture {

/// 2-2-1 network whose membership is relu(-x1-x2-1) + relu(-x1+x2-1).
inline plskel::Network two_neuron() {
  using plskel::Activation;
  plskel::Layer l1{2, 2, {-1, -1, -1, 1}, {-1, -1}, Activation::relu};
  plskel::Layer l2{2, 1, {1, 1}, {0}, Activation::linear};
  return plskel::Network(2, {l1, l2}, "two-neuron");
}

/// 1-2-1-1 network computing max(0, max(0, x+1) - 2 max(0, x)): a tent on
/// [-1, 1] peaking at x = 0.
inline plskel::Network tent() {
  using plskel::Activation;
  plskel::Layer l1{1, 2, {1, 1}, {1, 0}, Activation::relu};
  plskel::Layer l2{2, 1, {1, -2}, {0}, Activation::relu};
  plskel::Layer l3{1, 1, {1}, {0}, Activation::linear};
  return plskel::Network(1, {l1, l2, l3}, "tent");
}

}  // namespace fixture
