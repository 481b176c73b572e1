#include "netmodel.hpp"

#include <json.hpp>

#include <initializer_list>
#include <limits>
#include <tuple>
#include <utility>

#include "errors.hpp"

namespace fusecost {
namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& message) {
  throw Error(ErrorCode::SchemaViolation, message);
}

const json& require_key(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(where + ": missing required field '" + key + "'");
  return *it;
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) schema_error(where + ": unknown field '" + item.key() + "'");
  }
}

uint32_t bounded_u32(const json& value, const char* field, const std::string& where,
                     uint32_t minimum) {
  if (!value.is_number_unsigned())
    schema_error(where + ": '" + field + "' must be a non-negative integer");
  const uint64_t v = value.get<uint64_t>();
  if (v < minimum)
    schema_error(where + ": '" + field + "' must be at least " + std::to_string(minimum));
  if (v > std::numeric_limits<uint32_t>::max())
    schema_error(where + ": '" + field + "' is out of range");
  return static_cast<uint32_t>(v);
}

std::pair<uint32_t, uint32_t> dim_pair(const json& value, const char* field,
                                       const std::string& where, uint32_t minimum) {
  if (!value.is_array() || value.size() != 2)
    schema_error(where + ": '" + field + "' must be a two-element array");
  return {bounded_u32(value[0], field, where, minimum),
          bounded_u32(value[1], field, where, minimum)};
}

LayerSpec parse_layer(const json& entry, size_t index) {
  const std::string where = "layers[" + std::to_string(index) + "]";
  if (!entry.is_object()) schema_error(where + ": layer entry must be an object");
  const json& type = require_key(entry, "type", where);
  if (!type.is_string()) schema_error(where + ": 'type' must be a string");
  const std::string kind = type.get<std::string>();

  LayerSpec spec;
  if (kind == "conv") {
    spec.kind = LayerKind::Conv;
    reject_unknown_keys(entry, {"type", "name", "out_channels", "kernel", "stride", "padding"},
                        where);
    spec.out_channels = bounded_u32(require_key(entry, "out_channels", where),
                                    "out_channels", where, 1);
    std::tie(spec.kernel_h, spec.kernel_w) =
        dim_pair(require_key(entry, "kernel", where), "kernel", where, 1);
    std::tie(spec.stride_h, spec.stride_w) =
        dim_pair(require_key(entry, "stride", where), "stride", where, 1);
    std::tie(spec.pad_h, spec.pad_w) =
        dim_pair(require_key(entry, "padding", where), "padding", where, 0);
  } else if (kind == "pool") {
    spec.kind = LayerKind::Pool;
    reject_unknown_keys(entry, {"type", "name", "kernel", "stride"}, where);
    std::tie(spec.kernel_h, spec.kernel_w) =
        dim_pair(require_key(entry, "kernel", where), "kernel", where, 1);
    std::tie(spec.stride_h, spec.stride_w) =
        dim_pair(require_key(entry, "stride", where), "stride", where, 1);
  } else {
    schema_error(where + ": unsupported layer type '" + kind + "'");
  }

  if (const auto it = entry.find("name"); it != entry.end()) {
    if (!it->is_string()) schema_error(where + ": 'name' must be a string");
    spec.name = it->get<std::string>();
  }
  if (spec.name.empty())
    spec.name = std::string(layer_kind_name(spec.kind)) + std::to_string(index);
  return spec;
}

}  // namespace

const char* layer_kind_name(LayerKind kind) {
  return kind == LayerKind::Conv ? "conv" : "pool";
}

uint64_t ConvLayer::weight_elements() const {
  if (kind == LayerKind::Pool) return 0;
  return in_channels * kernel_h * kernel_w * out_channels;
}

NetworkModel parse_network(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument,
                std::string("network document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_error("network document must be a JSON object");
  reject_unknown_keys(doc, {"name", "input", "bytes_per_element", "layers"}, "network");

  NetworkModel model;
  const json& name = require_key(doc, "name", "network");
  if (!name.is_string()) schema_error("network: 'name' must be a string");
  model.name = name.get<std::string>();

  const json& input = require_key(doc, "input", "network");
  if (!input.is_object()) schema_error("network: 'input' must be an object");
  reject_unknown_keys(input, {"channels", "height", "width"}, "input");
  model.input_channels = bounded_u32(require_key(input, "channels", "input"), "channels", "input", 1);
  model.input_h = bounded_u32(require_key(input, "height", "input"), "height", "input", 1);
  model.input_w = bounded_u32(require_key(input, "width", "input"), "width", "input", 1);

  if (const auto it = doc.find("bytes_per_element"); it != doc.end())
    model.bytes_per_element = bounded_u32(*it, "bytes_per_element", "network", 1);

  const json& layers = require_key(doc, "layers", "network");
  if (!layers.is_array()) schema_error("network: 'layers' must be an array");
  if (layers.empty()) schema_error("network: 'layers' must not be empty");
  model.specs.reserve(layers.size());
  for (size_t i = 0; i < layers.size(); ++i) model.specs.push_back(parse_layer(layers[i], i));
  return model;
}

NetworkModel resolve_shapes(const NetworkModel& raw) {
  if (raw.specs.empty())
    throw Error(ErrorCode::SchemaViolation, "model has no layers");
  if (raw.input_channels == 0 || raw.input_h == 0 || raw.input_w == 0 ||
      raw.bytes_per_element == 0)
    throw Error(ErrorCode::SchemaViolation,
                "model input shape and bytes_per_element must be positive");

  NetworkModel model = raw;
  model.layers.clear();
  model.layers.reserve(model.specs.size());
  uint64_t channels = model.input_channels;
  uint64_t height = model.input_h;
  uint64_t width = model.input_w;
  for (size_t i = 0; i < model.specs.size(); ++i) {
    const LayerSpec& spec = model.specs[i];
    ConvLayer layer;
    layer.id = static_cast<uint32_t>(i);
    layer.kind = spec.kind;
    layer.name = spec.name;
    layer.in_channels = channels;
    layer.in_h = height;
    layer.in_w = width;
    layer.kernel_h = spec.kernel_h;
    layer.kernel_w = spec.kernel_w;
    layer.stride_h = spec.stride_h;
    layer.stride_w = spec.stride_w;
    layer.pad_h = spec.pad_h;
    layer.pad_w = spec.pad_w;
    layer.out_channels = spec.kind == LayerKind::Conv ? spec.out_channels : channels;

    const uint64_t padded_h = height + 2 * layer.pad_h;
    const uint64_t padded_w = width + 2 * layer.pad_w;
    if (padded_h < layer.kernel_h || padded_w < layer.kernel_w)
      throw Error(ErrorCode::DegenerateShape,
                  "layer '" + layer.name + "' (index " + std::to_string(i) + "): kernel " +
                      std::to_string(layer.kernel_h) + "x" + std::to_string(layer.kernel_w) +
                      " exceeds padded input " + std::to_string(padded_h) + "x" +
                      std::to_string(padded_w));
    layer.out_h = (padded_h - layer.kernel_h) / layer.stride_h + 1;
    layer.out_w = (padded_w - layer.kernel_w) / layer.stride_w + 1;

    channels = layer.out_channels;
    height = layer.out_h;
    width = layer.out_w;
    model.layers.push_back(std::move(layer));
  }
  return model;
}

NetworkModel build_vgg16() {
  NetworkModel model;
  model.name = "vgg16";
  model.input_channels = 3;
  model.input_h = 224;
  model.input_w = 224;
  model.bytes_per_element = 1;

  const std::vector<std::vector<uint32_t>> blocks = {
      {64, 64}, {128, 128}, {256, 256, 256}, {512, 512, 512}, {512, 512, 512}};
  for (size_t b = 0; b < blocks.size(); ++b) {
    for (size_t j = 0; j < blocks[b].size(); ++j) {
      LayerSpec conv;
      conv.kind = LayerKind::Conv;
      conv.out_channels = blocks[b][j];
      conv.kernel_h = conv.kernel_w = 3;
      conv.stride_h = conv.stride_w = 1;
      conv.pad_h = conv.pad_w = 1;
      conv.name = "conv" + std::to_string(b + 1) + "_" + std::to_string(j + 1);
      model.specs.push_back(conv);
    }
    LayerSpec pool;
    pool.kind = LayerKind::Pool;
    pool.kernel_h = pool.kernel_w = 2;
    pool.stride_h = pool.stride_w = 2;
    pool.name = "pool" + std::to_string(b + 1);
    model.specs.push_back(pool);
  }
  return resolve_shapes(model);
}

std::string emit_network(const NetworkModel& model) {
  ordered_json doc;
  doc["name"] = model.name;
  doc["input"] = ordered_json{{"channels", model.input_channels},
                              {"height", model.input_h},
                              {"width", model.input_w}};
  doc["bytes_per_element"] = model.bytes_per_element;
  ordered_json layers = ordered_json::array();
  for (const LayerSpec& spec : model.specs) {
    ordered_json entry;
    entry["type"] = layer_kind_name(spec.kind);
    entry["name"] = spec.name;
    if (spec.kind == LayerKind::Conv) entry["out_channels"] = spec.out_channels;
    entry["kernel"] = {spec.kernel_h, spec.kernel_w};
    entry["stride"] = {spec.stride_h, spec.stride_w};
    if (spec.kind == LayerKind::Conv) entry["padding"] = {spec.pad_h, spec.pad_w};
    layers.push_back(std::move(entry));
  }
  doc["layers"] = std::move(layers);
  return doc.dump(2) + "\n";
}

void require_resolved(const NetworkModel& model) {
  if (!model.resolved() || model.layers.size() != model.specs.size())
    throw Error(ErrorCode::InvalidArgument, "model shapes are not resolved");
}

}  // namespace fusecost
