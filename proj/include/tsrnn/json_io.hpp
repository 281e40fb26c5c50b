#pragma once

#include <json.hpp>

#include "tsrnn/augment.hpp"
#include "tsrnn/network.hpp"
#include "tsrnn/trainer.hpp"

namespace tsrnn {

inline void to_json(nlohmann::json& j, const NetworkSpec& s) {
    j = {{"variant", variant_name(s.variant)},
         {"layer_widths", s.layer_widths},
         {"part_widths", s.part_widths},
         {"input_dim", s.input_dim},
         {"class_count", s.class_count},
         {"part_input_dims", s.part_input_dims}};
}

inline void from_json(const nlohmann::json& j, NetworkSpec& s) {
    s.variant = parse_variant(j.at("variant").get<std::string>());
    s.layer_widths = j.at("layer_widths").get<std::vector<int>>();
    s.part_widths = j.value("part_widths", std::vector<int>{});
    s.input_dim = j.at("input_dim").get<int>();
    s.class_count = j.at("class_count").get<int>();
    s.part_input_dims = j.value("part_input_dims", std::vector<int>{});
}

inline void to_json(nlohmann::json& j, const Interval& r) { j = {r.lo, r.hi}; }

inline void from_json(const nlohmann::json& j, Interval& r) {
    if (j.is_number()) {  // symmetric shorthand: x means [-x, x]
        r.hi = std::abs(j.get<double>());
        r.lo = -r.hi;
    } else {
        r.lo = j.at(0).get<double>();
        r.hi = j.at(1).get<double>();
    }
}

inline void to_json(nlohmann::json& j, const AugmentConfig& c) {
    j = {{"rotation", c.rotation_enabled}, {"scaling", c.scaling_enabled},
         {"shear", c.shear_enabled},       {"rot_range_x", c.rot_range_x},
         {"rot_range_y", c.rot_range_y},   {"rot_range_z", c.rot_range_z},
         {"scale_range", c.scale_range},   {"shear_range", c.shear_range},
         {"seed", c.seed}};
}

inline void from_json(const nlohmann::json& j, AugmentConfig& c) {
    AugmentConfig d;
    c.rotation_enabled = j.value("rotation", d.rotation_enabled);
    c.scaling_enabled = j.value("scaling", d.scaling_enabled);
    c.shear_enabled = j.value("shear", d.shear_enabled);
    c.rot_range_x = j.value("rot_range_x", d.rot_range_x);
    c.rot_range_y = j.value("rot_range_y", d.rot_range_y);
    c.rot_range_z = j.value("rot_range_z", d.rot_range_z);
    c.scale_range = j.value("scale_range", d.scale_range);
    c.shear_range = j.value("shear_range", d.shear_range);
    c.seed = j.value("seed", d.seed);
}

inline void to_json(nlohmann::json& j, const TrainConfig& c) {
    j = {{"lr0", c.lr0},
         {"decay_factor", c.decay_factor},
         {"decay_every", c.decay_every},
         {"epochs", c.epochs},
         {"batch_size", c.batch_size},
         {"seed", c.seed}};
    if (c.grad_clip) j["grad_clip"] = *c.grad_clip;
}

inline void from_json(const nlohmann::json& j, TrainConfig& c) {
    TrainConfig d;
    c.lr0 = j.value("lr0", d.lr0);
    c.decay_factor = j.value("decay_factor", d.decay_factor);
    c.decay_every = j.value("decay_every", d.decay_every);
    c.epochs = j.value("epochs", d.epochs);
    c.batch_size = j.value("batch_size", d.batch_size);
    c.seed = j.value("seed", d.seed);
    if (j.contains("grad_clip") && !j.at("grad_clip").is_null())
        c.grad_clip = j.at("grad_clip").get<double>();
    else if (!j.contains("grad_clip"))
        c.grad_clip = d.grad_clip;
    else
        c.grad_clip.reset();
}

}  // namespace tsrnn
