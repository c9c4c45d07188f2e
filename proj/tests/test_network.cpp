#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "plskel/errors.hpp"
#include "plskel/network.hpp"

using namespace plskel;

TEST_CASE("forward pass examples") {
  Layer z1{2, 3, std::vector<double>(6, 0.0), {0, 0, 0}, Activation::relu};
  Layer z2{3, 2, std::vector<double>(6, 0.0), {0, 0}, Activation::linear};
  Network zero(2, {z1, z2});
  CHECK(zero.forward(Point{1.5, -2}) == std::vector<double>{0, 0});

  auto net = fixture::two_neuron();
  CHECK(net.forward(Point{-2, 0})[0] == 2.0);
  CHECK(net.forward(Point{-4, 0})[0] == 6.0);
  CHECK(net.forward(Point{0, 0})[0] == 0.0);

  auto tent = fixture::tent();
  CHECK(tent.forward(Point{0, 0})[0] == 1.0);
  CHECK(tent.forward(Point{-1, 0})[0] == 0.0);
  CHECK(tent.forward(Point{0.25, 0})[0] == 0.75);
  CHECK(tent.forward(Point{5, 0})[0] == 0.0);
  std::vector<double> x = {-0.5};
  CHECK(tent.forward(x)[0] == 0.5);
  std::vector<double> wrong = {1, 2};
  CHECK_THROWS_AS(tent.forward(wrong), InputError);
}

TEST_CASE("activation patterns") {
  auto net = fixture::two_neuron();
  CHECK(net.activation_pattern({-4, 0}) == std::vector<bool>{true, true});
  CHECK(net.activation_pattern({0, 0}) == std::vector<bool>{false, false});
  CHECK(net.activation_pattern({0, -3}) == std::vector<bool>{true, false});
  // Exactly on the zero set counts as off.
  CHECK(net.activation_pattern({-1, 0}) == std::vector<bool>{false, false});
}

TEST_CASE("network validation") {
  Layer h{2, 2, {1, 0, 0, 1}, {0, 0}, Activation::relu};
  Layer o{2, 1, {1, 1}, {0}, Activation::linear};
  CHECK_NOTHROW(Network(2, {h, o}));
  CHECK_THROWS_AS(Network(3, {h, o}), InputError);
  CHECK_THROWS_AS(Network(2, {}), InputError);
  CHECK_THROWS_AS(Network(2, {h, h}), InputError);
  CHECK_THROWS_AS(Network(2, {o, o}), InputError);
  Layer bad = h;
  bad.weights[1] = INFINITY;
  CHECK_THROWS_AS(Network(2, {bad, o}), InputError);
  bad = h;
  bad.biases.pop_back();
  CHECK_THROWS_AS(Network(2, {bad, o}), InputError);
  bad = h;
  bad.weights.pop_back();
  CHECK_THROWS_AS(Network(2, {bad, o}), InputError);
}

TEST_CASE("random corpus is deterministic and matches its shape rule") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Network a = corpus_network(seed);
    Network b = corpus_network(seed);
    CHECK(a.hidden_layers() == 1 + seed % 3);
    CHECK(a.input_dim() == 2);
    CHECK(a.output_dim() == 2);
    for (std::size_t i = 0; i < a.layers().size(); ++i) {
      CHECK(a.layers()[i].weights == b.layers()[i].weights);
      CHECK(a.layers()[i].biases == b.layers()[i].biases);
      if (i + 1 < a.layers().size()) {
        CHECK(a.layers()[i].outputs >= 2);
        CHECK(a.layers()[i].outputs <= 8);
      }
    }
  }
  CHECK(corpus_network(4, 3).output_dim() == 3);
  CHECK(corpus_network(1).layers()[0].weights != corpus_network(2).layers()[0].weights);
}
