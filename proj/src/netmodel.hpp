// netmodel.hpp - workload representation: layer descriptions, shape
// inference, the network file format and the built-in VGG-16 trunk.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fusecost {

enum class LayerKind { Conv, Pool };

const char* layer_kind_name(LayerKind kind);

// A layer as written in a network file, before shape inference.
struct LayerSpec {
  LayerKind kind = LayerKind::Conv;
  uint32_t out_channels = 0;  // conv only; pools keep their channel count
  uint32_t kernel_h = 1, kernel_w = 1;
  uint32_t stride_h = 1, stride_w = 1;
  uint32_t pad_h = 0, pad_w = 0;  // conv only; pools are unpadded
  std::string name;
  bool operator==(const LayerSpec&) const = default;
};

// A layer with resolved tensor shapes. Output dimensions follow
//   out = floor((in + 2*pad - kernel) / stride) + 1
// and consecutive layers chain exactly: layer k+1 sees layer k's output.
struct ConvLayer {
  uint32_t id = 0;
  LayerKind kind = LayerKind::Conv;
  uint64_t in_channels = 0;
  uint64_t out_channels = 0;  // equals in_channels for pools
  uint64_t in_h = 0, in_w = 0;
  uint64_t kernel_h = 1, kernel_w = 1;
  uint64_t stride_h = 1, stride_w = 1;
  uint64_t pad_h = 0, pad_w = 0;
  uint64_t out_h = 0, out_w = 0;
  std::string name;

  bool is_pool() const { return kind == LayerKind::Pool; }
  uint64_t weight_elements() const;  // pools carry no weights
  uint64_t input_elements() const { return in_channels * in_h * in_w; }
  uint64_t output_elements() const { return out_channels * out_h * out_w; }
  bool operator==(const ConvLayer&) const = default;
};

struct NetworkModel {
  std::string name;
  uint32_t input_channels = 0;
  uint32_t input_h = 0, input_w = 0;
  uint32_t bytes_per_element = 1;
  std::vector<LayerSpec> specs;
  std::vector<ConvLayer> layers;  // empty until resolve_shapes()

  bool resolved() const { return !layers.empty(); }
  uint32_t layer_count() const { return static_cast<uint32_t>(specs.size()); }
  bool operator==(const NetworkModel&) const = default;
};

// Parses a network description document; shapes stay unresolved. Throws
// MalformedDocument on JSON syntax errors and SchemaViolation on unknown
// keys, unsupported layer kinds, missing fields or out-of-range values.
NetworkModel parse_network(std::string_view text);

// Propagates the model input shape through every layer. Throws
// DegenerateShape if a kernel exceeds its padded input anywhere.
NetworkModel resolve_shapes(const NetworkModel& raw);

// The 13-conv / 5-pool VGG-16 convolutional trunk on a 3x224x224 input,
// returned with shapes resolved.
NetworkModel build_vgg16();

// Canonical network file text. parse_network(emit_network(m)) reproduces
// the header and specs exactly; resolving it reproduces m in full.
std::string emit_network(const NetworkModel& model);

void require_resolved(const NetworkModel& model);

}  // namespace fusecost
