#pragma once

/// @file extract.hpp
/// @brief Exact skeleton extraction for ReLU networks.
///
/// Layer by layer, every pre-activation skeleton is passed through ReLU
/// (apply_relu) and the resulting activation skeletons are folded into the
/// pre-activations of the next layer (merge_activations). The output layer
/// is linear, so the last pre-activations are the membership functions.

#include <cstddef>
#include <span>
#include <vector>

#include "plskel/network.hpp"
#include "plskel/skeleton.hpp"

namespace plskel {

struct ExtractOptions {
  /// Merge edge-adjacent pieces with the same affine function after ReLU.
  /// Disabling it leaves the pipeline working on activation regions.
  bool merge_same_affine = true;
};

/// ReLU of a pre-activation skeleton. Each region is split along its zero
/// line; the negative side is clamped to the zero function. New crossing
/// vertices are tagged with the activation stage.
Skeleton apply_relu(const Skeleton& g, const ExtractOptions& options = {});

/// sum_j weights[j] * fs[j] + bias over the common refinement of the fs,
/// built by a left-to-right fold of pairwise region intersections.
/// Skeletons with a zero weight are skipped. Throws StructuralError when the
/// bounds differ or the weight count is wrong.
Skeleton merge_activations(std::span<const Skeleton> fs, std::span<const double> weights,
                           double bias);

/// Every intermediate skeleton of one extraction.
struct ExtractionTrace {
  struct Entry {
    Stage stage;
    std::size_t neuron;
    Skeleton skeleton;
  };
  std::vector<Entry> entries;
};

/// Membership-function skeletons (one per output) of net over bounds.
/// Throws UnsupportedDimension unless bounds is 1-D or 2-D, and InputError
/// when the network's input dimension does not match.
std::vector<Skeleton> extract_skeletons(const Network& net, const Hyperrectangle& bounds,
                                        const ExtractOptions& options = {},
                                        ExtractionTrace* trace = nullptr);

}  // namespace plskel
